//! Adaptive Dormand-Prince 5(4) integrator for small fixed-size systems,
//! with a per-step ceiling so trajectories land exactly on requested nodes.

pub type State = [f64; 4];

pub struct DormandPrince<'a> {
    pub rhs: &'a dyn Fn(f64, &State) -> State,
    pub rtol: f64,
    pub atol: f64,
}

pub enum StepOutcome {
    /// Reached the requested endpoint.
    Reached(State),
    /// Step size underflowed at the reported position.
    Underflow { r: f64, state: State },
}

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn axpy(y: &State, h: f64, terms: &[(f64, &State)]) -> State {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..4 {
            out[i] += h * c * k[i];
        }
    }
    out
}

impl<'a> DormandPrince<'a> {
    /// Advance from `(r, y)` to `r_end`, calling `watch` after every accepted
    /// step; `watch` may return `false` to halt (e.g. a blowup guard).
    pub fn integrate_to(
        &self,
        mut r: f64,
        mut y: State,
        r_end: f64,
        watch: &mut dyn FnMut(f64, &State) -> bool,
    ) -> StepOutcome {
        let mut h = ((r_end - r) / 64.0).min(0.1 * r.abs().max(1e-8));
        let hmin = 1e-14 * r_end.abs().max(1.0);
        let mut k1 = (self.rhs)(r, &y);
        while r < r_end {
            h = h.min(r_end - r);
            let k2 = (self.rhs)(r + 0.2 * h, &axpy(&y, h, &[(A21, &k1)]));
            let k3 = (self.rhs)(r + 0.3 * h, &axpy(&y, h, &[(A31, &k1), (A32, &k2)]));
            let k4 = (self.rhs)(r + 0.8 * h, &axpy(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
            let k5 = (self.rhs)(
                r + 8.0 / 9.0 * h,
                &axpy(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
            );
            let k6 = (self.rhs)(
                r + h,
                &axpy(&y, h, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
            );
            let ynew = axpy(&y, h, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
            let k7 = (self.rhs)(r + h, &ynew);
            // embedded 4th-order error estimate
            let mut err: f64 = 0.0;
            for i in 0..4 {
                let e = h
                    * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i]
                        + E7 * k7[i]);
                let sc = self.atol + self.rtol * y[i].abs().max(ynew[i].abs());
                err = err.max((e / sc).abs());
            }
            if err <= 1.0 || h <= hmin {
                r += h;
                y = ynew;
                k1 = k7; // FSAL
                if !watch(r, &y) {
                    return StepOutcome::Reached(y);
                }
                if h <= hmin && err > 1.0 {
                    return StepOutcome::Underflow { r, state: y };
                }
            }
            let factor = (0.9 * err.powf(-0.2)).clamp(0.2, 5.0);
            h = (h * factor).max(hmin);
            if !y.iter().all(|v| v.is_finite()) {
                return StepOutcome::Underflow { r, state: y };
            }
        }
        StepOutcome::Reached(y)
    }
}

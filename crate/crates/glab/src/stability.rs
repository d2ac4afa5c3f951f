//! Computational skeleton of the homogeneous-solution stability test, the
//! cutoff log-coefficient extraction, and the fourth-order Hardy-Rellich
//! sign test on the family `ψ_ε = r^{-(n-4)/2} η_ε(r)`.

use crate::constants::{hardy_constant, ParamPoint};
use crate::quad;
use crate::{Error, Result};

/// Radially symmetric smooth bump: `1` on `[0, 1]`, `0` beyond `1 + width`,
/// with a C² quintic-smoothstep transition. The two-sided cutoff built from
/// it is `η_ε(r) = (1 - η(2r/ε)) η(εr)`, which equals `1` on `[ε, 1/ε]` and
/// vanishes off `[ε/2, (1+width)/ε]`.
#[derive(Debug, Clone, Copy)]
pub struct Cutoff {
    width: f64,
}

impl Default for Cutoff {
    fn default() -> Self {
        Cutoff { width: 1.0 }
    }
}

impl Cutoff {
    pub fn with_width(width: f64) -> Result<Self> {
        if !(width > 0.0 && width <= 1.0) {
            return Err(Error::Domain(format!("cutoff width must be in (0,1], got {width}")));
        }
        Ok(Cutoff { width })
    }

    /// `η(x)` and its first two derivatives.
    pub fn eta(&self, x: f64) -> (f64, f64, f64) {
        if x <= 1.0 {
            return (1.0, 0.0, 0.0);
        }
        if x >= 1.0 + self.width {
            return (0.0, 0.0, 0.0);
        }
        let w = (x - 1.0) / self.width;
        // quintic smoothstep 1 - w^3(10 - 15w + 6w^2), C^2 at both knots
        let v = 1.0 - w * w * w * (10.0 - 15.0 * w + 6.0 * w * w);
        let d1 = -30.0 * w * w * (1.0 - w) * (1.0 - w) / self.width;
        let d2 = -60.0 * w * (1.0 - w) * (1.0 - 2.0 * w) / (self.width * self.width);
        (v, d1, d2)
    }

    /// `η_ε(r)` with first two derivatives in `r`.
    pub fn eta_eps(&self, r: f64, eps: f64) -> (f64, f64, f64) {
        let (a, a1, a2) = self.eta(2.0 * r / eps);
        let (b, b1, b2) = self.eta(eps * r);
        let inner = 1.0 - a;
        let inner1 = -a1 * 2.0 / eps;
        let inner2 = -a2 * 4.0 / (eps * eps);
        let outer1 = b1 * eps;
        let outer2 = b2 * eps * eps;
        (
            inner * b,
            inner1 * b + inner * outer1,
            inner2 * b + 2.0 * inner1 * outer1 + inner * outer2,
        )
    }

    /// Radii at which `η_ε` changes polynomial piece, for panel splitting.
    fn knots(&self, eps: f64) -> [f64; 4] {
        [
            0.5 * eps,
            0.5 * eps * (1.0 + self.width),
            1.0 / eps,
            (1.0 + self.width) / eps,
        ]
    }
}

/// Angular data for the homogeneous comparison.
pub enum Tau {
    Constant(f64),
    /// Samples `(θ, τ(θ))` on `[0, π]`, integrated via linear interpolation
    /// against the axisymmetric sphere measure.
    Axisymmetric(Vec<(f64, f64)>),
}

/// Result of the homogeneous-solution comparison: the stability inequality
/// for `τ(θ) - 2s log r` reduces to `Λ_{n,s} |S^{n-1}| ≥ ∫ e^τ dθ`.
#[derive(Debug, Clone, Copy)]
pub struct ComparisonReport {
    pub lhs_coeff: f64,
    pub rhs_coeff: f64,
    pub stable_possible: bool,
}

/// Compare `Λ_{n,s}|S^{n-1}|` against the sphere integral of `e^τ`.
pub fn homogeneous_comparison(n: f64, s: f64, tau: &Tau) -> Result<ComparisonReport> {
    let p = ParamPoint::new(n, s)?;
    let sphere = crate::constants::surface_area(n);
    let lhs = hardy_constant(p) * sphere;
    let rhs = match tau {
        Tau::Constant(c) => c.exp() * sphere,
        Tau::Axisymmetric(samples) => {
            if samples.len() < 2 {
                return Err(Error::Domain("need at least 2 angular samples".into()));
            }
            let mut samples = samples.clone();
            samples.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            if samples.first().unwrap().0 > 1e-9
                || (samples.last().unwrap().0 - std::f64::consts::PI).abs() > 1e-9
            {
                return Err(Error::Domain("samples must span [0, pi]".into()));
            }
            let interp = |th: f64| -> f64 {
                let j = samples.partition_point(|p| p.0 <= th).clamp(1, samples.len() - 1);
                let (t0, v0) = samples[j - 1];
                let (t1, v1) = samples[j];
                v0 + (v1 - v0) * (th - t0) / (t1 - t0)
            };
            let ring = crate::constants::surface_area(n - 1.0);
            let f = |th: f64| interp(th).exp() * th.sin().powf(n - 2.0);
            let edges: Vec<f64> = samples.iter().map(|p| p.0).collect();
            ring * quad::panels(&f, &edges, 16)
        }
    };
    Ok(ComparisonReport {
        lhs_coeff: lhs,
        rhs_coeff: rhs,
        stable_possible: lhs >= rhs,
    })
}

/// `(ε, I(ε))` rows and the fitted slope of `I` against `log(1/ε)`.
#[derive(Debug, Clone)]
pub struct CutoffSweep {
    pub rows: Vec<(f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
}

fn check_eps_list(eps_list: &[f64]) -> Result<()> {
    if eps_list.len() < 3 {
        return Err(Error::Domain("need at least 3 epsilon values".into()));
    }
    if eps_list.iter().any(|&e| !(e > 0.0 && e <= 0.2)) {
        return Err(Error::Domain("epsilons must lie in (0, 0.2]".into()));
    }
    Ok(())
}

fn fit_line(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    let slope = num / den;
    (slope, my - slope * mx)
}

/// `I(ε) = ∫₀^∞ r^{-1} η_ε²(r) dr` for each ε, with the slope of `I` against
/// `log(1/ε)`. For the two-sided cutoff the measured slope is 2; the plateau
/// contributes `2 log(1/ε)` exactly and the transition regions are O(1).
pub fn cutoff_log_coefficient(eps_list: &[f64], cutoff: &Cutoff) -> Result<CutoffSweep> {
    check_eps_list(eps_list)?;
    let mut rows = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        // substitute x = log r: the integrand becomes eta_eps(e^x)^2 dx
        let k = cutoff.knots(eps);
        let edges: Vec<f64> = k.iter().map(|r| r.ln()).collect();
        let f = |x: f64| {
            let (v, _, _) = cutoff.eta_eps(x.exp(), eps);
            v * v
        };
        let val = quad::panels(&f, &edges, 32);
        rows.push((eps, val));
    }
    let xs: Vec<f64> = rows.iter().map(|r| (1.0 / r.0).ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let (slope, intercept) = fit_line(&xs, &ys);
    Ok(CutoffSweep { rows, slope, intercept })
}

/// `f_ε(t) = ∫₀^∞ r^{-1} η_ε(r) (η_ε(r) - η_ε(rt)) dr`, the O(log t)
/// off-diagonal integral of the stability computation.
pub fn cutoff_pair_integral(t: f64, eps: f64, cutoff: &Cutoff) -> Result<f64> {
    if !(t > 0.0) || !(eps > 0.0 && eps <= 0.2) {
        return Err(Error::Domain(format!("need t > 0, eps in (0, 0.2]: t={t}, eps={eps}")));
    }
    // knots of both factors in x = log r
    let shift = t.ln();
    let mut edges: Vec<f64> = cutoff
        .knots(eps)
        .iter()
        .flat_map(|r| [r.ln(), r.ln() - shift])
        .collect();
    edges.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let f = |x: f64| {
        let (a, _, _) = cutoff.eta_eps(x.exp(), eps);
        let (b, _, _) = cutoff.eta_eps((x + shift).exp(), eps);
        a * (a - b)
    };
    Ok(quad::panels(&f, &edges, 32))
}

/// One Hardy-Rellich sweep row and the extracted leading coefficient.
#[derive(Debug, Clone)]
pub struct RellichSweep {
    /// `(ε, Q(ψ_ε)/|S^{n-1}|)`.
    pub rows: Vec<(f64, f64)>,
    /// Coefficient of `2 log(1/ε)`, the per-unit-sphere limiting
    /// log-coefficient; its sign decides stability of the singular solution.
    pub log_coefficient: f64,
}

/// Quadratic form `Q(ψ) = ∫|Δψ|² - 8(n-2)(n-4)∫ψ²/r⁴` on
/// `ψ_ε = r^{-(n-4)/2} η_ε(r)`, per unit sphere, swept over ε. The
/// coefficient of `2 log(1/ε)` tends to `n²(n-4)²/16 - 8(n-2)(n-4)`.
pub fn rellich_family_sign(n: u32, eps_list: &[f64], cutoff: &Cutoff) -> Result<RellichSweep> {
    if n < 5 {
        return Err(Error::Domain(format!("rellich test requires n >= 5, got {n}")));
    }
    check_eps_list(eps_list)?;
    let nf = n as f64;
    let beta = (nf - 4.0) / 2.0;
    let hr = nf * (nf - 4.0) / 4.0; // n(n-4)/4, the plateau Laplacian factor
    let a2 = 8.0 * (nf - 2.0) * (nf - 4.0);
    let mut rows = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let k = cutoff.knots(eps);
        let edges: Vec<f64> = k.iter().map(|r| r.ln()).collect();
        // x = log r; dr = r dx; Δψ = r^{-β}[η'' + 3η'/r - (n(n-4)/4) η/r²]
        let f = |x: f64| {
            let r: f64 = x.exp();
            let (e, e1, e2) = cutoff.eta_eps(r, eps);
            let lap = r.powf(-beta) * (e2 + 3.0 * e1 / r - hr * e / (r * r));
            let psi = r.powf(-beta) * e;
            (lap * lap - a2 * psi * psi / r.powi(4)) * r.powf(nf)
        };
        let val = quad::panels(&f, &edges, 48);
        rows.push((eps, val));
    }
    let xs: Vec<f64> = rows.iter().map(|r| 2.0 * (1.0 / r.0).ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let (slope, _) = fit_line(&xs, &ys);
    Ok(RellichSweep { rows, log_coefficient: slope })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::nonlinear_coefficient;

    #[test]
    fn cutoff_plateau_and_support() {
        let c = Cutoff::default();
        for eps in [0.1, 0.01] {
            for r in [eps, 0.5, 1.0, 1.0 / eps] {
                let (v, _, _) = c.eta_eps(r, eps);
                assert!((v - 1.0).abs() < 1e-14, "eta_eps != 1 at r={r}, eps={eps}");
            }
            for r in [0.25 * eps, 0.5 * eps, 2.1 / eps, 10.0 / eps] {
                let (v, _, _) = c.eta_eps(r, eps);
                assert_eq!(v, 0.0, "eta_eps != 0 at r={r}, eps={eps}");
            }
        }
    }

    #[test]
    fn cutoff_is_c2() {
        // derivative consistency across a knot by finite differences
        let c = Cutoff::default();
        let h = 1e-6;
        for x in [1.0, 1.3, 2.0 - 1e-9] {
            let (_, d1, d2) = c.eta(x + 2.0 * h);
            let num1 = (c.eta(x + 3.0 * h).0 - c.eta(x + h).0) / (2.0 * h);
            let num2 = (c.eta(x + 3.0 * h).0 - 2.0 * c.eta(x + 2.0 * h).0 + c.eta(x + h).0)
                / (h * h);
            assert!((d1 - num1).abs() < 1e-5);
            assert!((d2 - num2).abs() < 1e-3);
        }
    }

    #[test]
    fn homogeneous_comparison_boundary_case() {
        // at (n, s) = (10, 1) the Hardy constant equals A, so equality
        let a = nonlinear_coefficient(ParamPoint::new(10.0, 1.0).unwrap());
        let rep = homogeneous_comparison(10.0, 1.0, &Tau::Constant(a.ln())).unwrap();
        assert!(((rep.lhs_coeff - rep.rhs_coeff) / rep.lhs_coeff).abs() < 1e-10);
        assert!(rep.stable_possible);
    }

    #[test]
    fn homogeneous_comparison_sides() {
        let a = nonlinear_coefficient(ParamPoint::new(13.0, 1.5).unwrap());
        let rep = homogeneous_comparison(13.0, 1.5, &Tau::Constant(a.ln())).unwrap();
        assert!(rep.stable_possible, "13 > n0(1.5)");
        let a = nonlinear_coefficient(ParamPoint::new(10.0, 1.5).unwrap());
        let rep = homogeneous_comparison(10.0, 1.5, &Tau::Constant(a.ln())).unwrap();
        assert!(!rep.stable_possible, "10 < n0(1.5)");
    }

    #[test]
    fn homogeneous_threshold_grid_matches_critdim() {
        for i in 0..5 {
            let s = 1.0 + 0.25 * i as f64;
            let n0 = crate::critdim::critical_dimension(s, 1e-9).unwrap().root;
            for j in 0..10 {
                let n = 2.0 * s + 0.5 + j as f64;
                let a = nonlinear_coefficient(ParamPoint::new(n, s).unwrap());
                let rep = homogeneous_comparison(n, s, &Tau::Constant(a.ln())).unwrap();
                assert_eq!(
                    rep.stable_possible,
                    n >= n0 - 1e-9,
                    "verdict mismatch at n={n}, s={s}, n0={n0}"
                );
            }
        }
    }

    #[test]
    fn axisymmetric_sampling_matches_constant() {
        let tau = 1.3;
        let samples: Vec<(f64, f64)> = (0..=16)
            .map(|i| (std::f64::consts::PI * i as f64 / 16.0, tau))
            .collect();
        let a = homogeneous_comparison(6.0, 1.2, &Tau::Axisymmetric(samples)).unwrap();
        let b = homogeneous_comparison(6.0, 1.2, &Tau::Constant(tau)).unwrap();
        assert!(((a.rhs_coeff - b.rhs_coeff) / b.rhs_coeff).abs() < 1e-6);
    }

    #[test]
    fn cutoff_log_slope_is_two() {
        let sweep =
            cutoff_log_coefficient(&[0.1, 0.01, 0.001], &Cutoff::default()).unwrap();
        assert!((sweep.slope - 2.0).abs() < 0.05, "slope = {}", sweep.slope);
    }

    #[test]
    fn cutoff_difference_kills_constant() {
        let sweep = cutoff_log_coefficient(&[0.2, 0.1], &Cutoff::default());
        // needs >= 3 values
        assert!(sweep.is_err());
        let sweep =
            cutoff_log_coefficient(&[0.2, 0.1, 0.05], &Cutoff::default()).unwrap();
        let i01 = sweep.rows[1].1;
        let i02 = sweep.rows[0].1;
        let want = 2.0 * std::f64::consts::LN_2;
        assert!(((i01 - i02) - want).abs() < 0.05 * want, "diff = {}", i01 - i02);
    }

    #[test]
    fn pair_integral_log_bound() {
        let f = cutoff_pair_integral(10.0, 0.01, &Cutoff::default()).unwrap();
        assert!(f.abs() <= 3.0 * 10.0_f64.ln(), "f_eps(10) = {f}");
        assert!(f.abs() > 0.1, "pair integral unexpectedly tiny");
    }

    #[test]
    fn log_coefficient_stable_under_width_halving() {
        let eps = [0.05, 0.02, 0.01, 0.005];
        let full = rellich_family_sign(9, &eps, &Cutoff::default()).unwrap();
        let half = rellich_family_sign(9, &eps, &Cutoff::with_width(0.5).unwrap()).unwrap();
        let rel = ((full.log_coefficient - half.log_coefficient) / full.log_coefficient).abs();
        assert!(rel < 0.02, "coefficient shifted by {rel} under width halving");
    }

    #[test]
    fn rellich_flip_values() {
        let eps = [0.05, 0.02, 0.01, 0.005];
        let sweep = rellich_family_sign(12, &eps, &Cutoff::default()).unwrap();
        assert!(
            (sweep.log_coefficient + 64.0).abs() < 2.0,
            "n=12 coefficient = {}",
            sweep.log_coefficient
        );
        let sweep = rellich_family_sign(13, &eps, &Cutoff::default()).unwrap();
        assert!(
            (sweep.log_coefficient - 63.5625).abs() < 2.0,
            "n=13 coefficient = {}",
            sweep.log_coefficient
        );
        let sweep = rellich_family_sign(5, &eps, &Cutoff::default()).unwrap();
        assert!(sweep.log_coefficient < 0.0, "n=5 should be negative");
    }

    #[test]
    fn rellich_sign_matches_closed_form() {
        let eps = [0.05, 0.02, 0.01];
        for n in 5..=20u32 {
            let nf = n as f64;
            let want = nf * nf * (nf - 4.0) * (nf - 4.0) / 16.0 - 8.0 * (nf - 2.0) * (nf - 4.0);
            let sweep = rellich_family_sign(n, &eps, &Cutoff::default()).unwrap();
            assert_eq!(
                sweep.log_coefficient.signum(),
                want.signum(),
                "sign mismatch at n={n}: got {}, closed form {want}",
                sweep.log_coefficient
            );
        }
    }
}

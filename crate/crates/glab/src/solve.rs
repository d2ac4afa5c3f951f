//! Bracketed scalar root finding: coarse sign scan plus a bisection/secant
//! hybrid refined to a residual tolerance.

use crate::{Error, Result};

/// Outcome of a bracketed solve.
#[derive(Debug, Clone, Copy)]
pub struct RootResult {
    pub root: f64,
    pub bracket: (f64, f64),
    pub iterations: usize,
    pub residual: f64,
}

/// Scan `[start, max_x]` with the given step for the first sign change of `f`.
pub fn first_sign_change<F: Fn(f64) -> f64>(
    f: &F,
    start: f64,
    step: f64,
    max_x: f64,
) -> Option<(f64, f64)> {
    let mut a = start;
    let mut fa = f(a);
    while a < max_x {
        let b = (a + step).min(max_x);
        let fb = f(b);
        if fa == 0.0 {
            return Some((a, a));
        }
        if fa * fb <= 0.0 {
            return Some((a, b));
        }
        a = b;
        fa = fb;
        if a >= max_x {
            break;
        }
    }
    None
}

/// Refine a sign-change bracket until `|f| <= tol_f`, alternating secant
/// steps (when they fall inside the bracket) with bisection.
pub fn bisect_secant<F: Fn(f64) -> f64>(
    f: &F,
    mut lo: f64,
    mut hi: f64,
    tol_f: f64,
    max_iter: usize,
) -> Result<RootResult> {
    if lo == hi {
        return Ok(RootResult {
            root: lo,
            bracket: (lo, hi),
            iterations: 0,
            residual: f(lo),
        });
    }
    let original = (lo, hi);
    let mut flo = f(lo);
    let mut fhi = f(hi);
    if flo == 0.0 {
        return Ok(RootResult { root: lo, bracket: original, iterations: 0, residual: 0.0 });
    }
    if fhi == 0.0 {
        return Ok(RootResult { root: hi, bracket: original, iterations: 0, residual: 0.0 });
    }
    if flo * fhi > 0.0 {
        return Err(Error::Domain(format!(
            "bracket [{lo}, {hi}] does not straddle a sign change"
        )));
    }
    let mut best = if flo.abs() < fhi.abs() { (lo, flo) } else { (hi, fhi) };
    for it in 1..=max_iter {
        // secant candidate; fall back to the midpoint if it leaves the bracket
        let mut x = hi - fhi * (hi - lo) / (fhi - flo);
        let mid = 0.5 * (lo + hi);
        if !x.is_finite() || x <= lo || x >= hi {
            x = mid;
        } else if it % 2 == 0 {
            // alternate in a bisection step to guarantee bracket shrinkage
            x = mid;
        }
        let fx = f(x);
        if fx.abs() < best.1.abs() {
            best = (x, fx);
        }
        if fx.abs() <= tol_f {
            return Ok(RootResult {
                root: x,
                bracket: original,
                iterations: it,
                residual: fx,
            });
        }
        if flo * fx < 0.0 {
            hi = x;
            fhi = fx;
        } else {
            lo = x;
            flo = fx;
        }
        if (hi - lo).abs() <= f64::EPSILON * (lo.abs() + hi.abs()).max(1e-300) {
            // bracket exhausted in double precision; report the best point
            return Ok(RootResult {
                root: best.0,
                bracket: original,
                iterations: it,
                residual: best.1,
            });
        }
    }
    Err(Error::NonConvergence(format!(
        "root refinement did not reach |f| <= {tol_f} in {max_iter} iterations (best residual {})",
        best.1
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_cubic_root() {
        let f = |x: f64| x * x * x - 8.0 * x + 4.0;
        let r = bisect_secant(&f, 2.0, 3.0, 1e-13, 200).unwrap();
        assert!((r.root - 2.5340701967227316).abs() < 1e-10);
        assert!(r.residual.abs() <= 1e-13);
    }

    #[test]
    fn scan_locates_first_bracket() {
        // sin(x - 3.7) crosses first at x = 3.7 - pi
        let f = |x: f64| (x - 3.7).sin();
        let (a, b) = first_sign_change(&f, 0.2, 0.1, 10.0).unwrap();
        let first = 3.7 - std::f64::consts::PI;
        assert!(a <= first && first <= b + 1e-12, "bracket [{a}, {b}]");
    }

    #[test]
    fn rejects_bad_bracket() {
        let f = |x: f64| x * x + 1.0;
        assert!(bisect_secant(&f, 0.0, 1.0, 1e-10, 100).is_err());
    }
}

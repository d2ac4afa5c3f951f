//! Critical stability dimension `n₀(s)`: the first root of
//! `g(x) = f(x) - Γ(1+s)` past `x = 2s`, where
//! `f(x) = [Γ²((x+2s)/4)/Γ²((x-2s)/4)] · [Γ((x-2s)/2)/Γ(x/2)]`,
//! together with the fourth-order threshold cubic `n³ - 4n² - 128n + 256`.

use crate::solve::{bisect_secant, first_sign_change, RootResult};
use crate::specfun::lgamma;
use crate::{Error, Result};

const SCAN_STEP: f64 = 0.1;
const SCAN_OFFSET: f64 = 0.05;
const X_MAX: f64 = 64.0;

/// `g(x) = f(x) - Γ(1+s)`, assembled fully in log space. `g < 0` is exactly
/// the instability condition `Λ_{x,s} < A_{x,s}`.
pub fn g_value(x: f64, s: f64) -> Result<f64> {
    if !(s > 0.0 && s <= 2.0) {
        return Err(Error::Domain(format!("g requires s in (0,2], got {s}")));
    }
    if x <= 2.0 * s {
        return Err(Error::Domain(format!("g requires x > 2s, got x={x}, s={s}")));
    }
    let lf = 2.0 * (lgamma((x + 2.0 * s) / 4.0) - lgamma((x - 2.0 * s) / 4.0))
        + lgamma((x - 2.0 * s) / 2.0)
        - lgamma(x / 2.0);
    Ok(lf.exp() - lgamma(1.0 + s).exp())
}

/// Smallest root of `g(·, s)` on `(2s, 64]`, located by a 0.1-step sign scan
/// and refined to `|g| ≤ tol`. Supported for `s ∈ [1, 2]`.
pub fn critical_dimension(s: f64, tol: f64) -> Result<RootResult> {
    if !(1.0..=2.0).contains(&s) {
        return Err(Error::Domain(format!(
            "critical_dimension supports s in [1, 2], got s={s}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tol must be positive, got {tol}")));
    }
    let g = |x: f64| g_value(x, s).expect("scan stays inside x > 2s");
    let start = 2.0 * s + SCAN_OFFSET;
    let (lo, hi) = first_sign_change(&g, start, SCAN_STEP, X_MAX).ok_or(Error::NoRoot {
        what: format!("g(x, s={s})"),
        lo: start,
        hi: X_MAX,
    })?;
    bisect_secant(&g, lo, hi, tol, 300)
}

/// Largest real root of the fourth-order threshold polynomial
/// `p(n) = n³ - 4n² - 128n + 256`, bracketed in `[10, 20]`.
pub fn fourth_order_threshold() -> RootResult {
    let p = |n: f64| ((n - 4.0) * n - 128.0) * n + 256.0;
    bisect_secant(&p, 10.0, 20.0, 1e-10, 300).expect("p changes sign on [10, 20]")
}

/// One row of the critical curve.
#[derive(Debug, Clone, Copy)]
pub struct CurvePoint {
    pub s: f64,
    pub n0: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// Tabulate `n₀(s)` on an even grid of `steps` samples over `[s_min, s_max]`.
pub fn critical_curve(s_min: f64, s_max: f64, steps: usize) -> Result<Vec<CurvePoint>> {
    if !(1.0 <= s_min && s_min < s_max && s_max <= 2.0) {
        return Err(Error::Domain(format!(
            "require 1 <= s_min < s_max <= 2, got [{s_min}, {s_max}]"
        )));
    }
    if steps < 2 {
        return Err(Error::Domain("curve needs at least 2 samples".into()));
    }
    use rayon::prelude::*;
    let rows: Result<Vec<CurvePoint>> = (0..steps)
        .into_par_iter()
        .map(|i| {
            let s = s_min + (s_max - s_min) * i as f64 / (steps - 1) as f64;
            let r = critical_dimension(s, 1e-10).map_err(|e| match e {
                Error::NoRoot { what, lo, hi } => Error::NoRoot {
                    what: format!("{what} at s={s}"),
                    lo,
                    hi,
                },
                other => other,
            })?;
            Ok(CurvePoint {
                s,
                n0: r.root,
                residual: r.residual,
                iterations: r.iterations,
            })
        })
        .collect();
    let rows = rows?;
    debug_assert!(rows.windows(2).all(|w| w[1].n0 >= w[0].n0 - 1e-9));
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{hardy_constant, nonlinear_coefficient, ParamPoint};
    use rand::Rng;
    use rand::SeedableRng;

    #[test]
    fn g_examples() {
        assert!(g_value(10.0, 1.0).unwrap().abs() < 1e-12);
        assert!((g_value(12.0, 2.0).unwrap() + 0.2).abs() < 1e-12);
        // limit x -> 2s+ : g -> -Γ(1+s)
        let g = g_value(3.0 + 1e-6, 1.5).unwrap();
        assert!((g + 1.3293403881791370).abs() < 1e-3, "got {g}");
        assert!(g_value(2.0, 1.0).is_err());
    }

    #[test]
    fn critical_dimension_endpoints() {
        let r = critical_dimension(1.0, 1e-8).unwrap();
        assert!((r.root - 10.0).abs() < 1e-6, "n0(1) = {}", r.root);
        assert!(r.residual.abs() <= 1e-8);

        let r = critical_dimension(2.0, 1e-10).unwrap();
        assert!((r.root - 12.565344462621457).abs() < 5e-3);
        let q = fourth_order_threshold();
        assert!((r.root - q.root).abs() < 1e-6, "g-root {} vs cubic {}", r.root, q.root);
    }

    #[test]
    fn critical_dimension_midpoint() {
        // independent oracle: mpmath secant root of g at s = 1.5
        let r = critical_dimension(1.5, 1e-10).unwrap();
        assert!((r.root - 11.304964758747469).abs() < 1e-6);
        assert!(r.root > 10.0 && r.root < 12.57);
    }

    #[test]
    fn quartic_threshold_brackets() {
        let q = fourth_order_threshold();
        assert!((q.root - 12.565344462621457).abs() < 1e-9);
        assert!(q.residual.abs() <= 1e-10);
        let p = |n: f64| ((n - 4.0) * n - 128.0) * n + 256.0;
        assert!(p(12.5) < 0.0);
        assert!((p(12.5) + 15.875).abs() < 1e-9);
        assert!(p(12.6) > 0.0);
    }

    #[test]
    fn curve_grid() {
        let rows = critical_curve(1.0, 2.0, 11).unwrap();
        assert_eq!(rows.len(), 11);
        for w in rows.windows(2) {
            assert!(w[1].n0 >= w[0].n0, "curve not monotone");
        }
        assert!(rows.iter().all(|r| r.n0 >= 10.0 - 1e-9 && r.n0 <= 12.57));
        // oracle spot check at s = 1.2
        let near = rows.iter().min_by(|a, b| {
            (a.s - 1.2).abs().partial_cmp(&(b.s - 1.2).abs()).unwrap()
        });
        assert!((near.unwrap().n0 - 10.528431037595885).abs() < 1e-6);
    }

    #[test]
    fn curve_endpoints_and_continuity() {
        let rows = critical_curve(1.0, 2.0, 2).unwrap();
        assert!((rows[0].n0 - 10.0).abs() < 1e-8);
        assert!((rows[1].n0 - 12.565344462621457).abs() < 1e-8);
        let rows = critical_curve(1.0, 1.0 + 1e-9, 2).unwrap();
        assert!((rows[0].n0 - rows[1].n0).abs() < 1e-6);
    }

    #[test]
    fn sign_structure_around_root() {
        for s in [1.0, 1.4, 2.0] {
            let n0 = critical_dimension(s, 1e-10).unwrap().root;
            for k in 1..=50 {
                let t = k as f64 / 51.0;
                let below = 2.0 * s + 1e-3 + (n0 - 2.0 * s - 2e-3) * t;
                let above = n0 + 2.0 * t;
                assert!(g_value(below, s).unwrap() < 0.0, "g >= 0 below root, s={s}");
                assert!(g_value(above, s).unwrap() > 0.0, "g <= 0 above root, s={s}");
            }
        }
    }

    #[test]
    fn sign_matches_hardy_vs_coefficient() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let s: f64 = rng.gen_range(0.2..2.0);
            let n: f64 = rng.gen_range(2.0 * s + 0.2..40.0);
            let g = g_value(n, s).unwrap();
            let p = ParamPoint::new(n, s).unwrap();
            let diff = hardy_constant(p) - nonlinear_coefficient(p);
            assert!(
                g.signum() == diff.signum() || g.abs() < 1e-10,
                "sign mismatch at n={n}, s={s}: g={g}, Lambda-A={diff}"
            );
        }
    }
}

//! Closed-form constants of the theory: the sharp Hardy constant `Λ_{n,s}`,
//! the singular-solution coefficient `A_{n,s}`, and the extension/Poisson
//! normalizations. All assembled in log space from [`crate::specfun`].

use crate::specfun::lgamma;
use crate::{Error, Result};

const LN_PI: f64 = 1.144_729_885_849_400_2;
const LN_2: f64 = std::f64::consts::LN_2;

/// A parameter pair `(n, s)` with `s ∈ (0, 2]` and `n > 2s`. `n` is treated
/// as a real parameter throughout; only the PDE-profile modules restrict it
/// to integers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamPoint {
    n: f64,
    s: f64,
}

impl ParamPoint {
    pub fn new(n: f64, s: f64) -> Result<Self> {
        if !(s > 0.0 && s <= 2.0) {
            return Err(Error::Domain(format!("require s in (0, 2], got s={s}")));
        }
        if !(n > 2.0 * s) {
            return Err(Error::Domain(format!("require n > 2s, got n={n}, s={s}")));
        }
        Ok(ParamPoint { n, s })
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn s(&self) -> f64 {
        self.s
    }
}

/// Sharp constant of the fractional Hardy inequality,
/// `Λ_{n,s} = 2^{2s} Γ²((n+2s)/4) / Γ²((n-2s)/4)`.
pub fn hardy_constant(p: ParamPoint) -> f64 {
    let (n, s) = (p.n, p.s);
    (2.0 * s * LN_2 + 2.0 * (lgamma((n + 2.0 * s) / 4.0) - lgamma((n - 2.0 * s) / 4.0))).exp()
}

/// Coefficient of the explicit singular solution `-2s log|x| + log A_{n,s}`,
/// `A_{n,s} = 2^{2s} Γ(n/2) Γ(1+s) / Γ((n-2s)/2)`.
pub fn nonlinear_coefficient(p: ParamPoint) -> f64 {
    let (n, s) = (p.n, p.s);
    (2.0 * s * LN_2 + lgamma(n / 2.0) + lgamma(1.0 + s) - lgamma((n - 2.0 * s) / 2.0)).exp()
}

/// Normalization of the singular-integral fractional Laplacian of order
/// `t ∈ (0, 1)`: `C_{n,t} = 2^{2t} Γ(n/2+t) / (π^{n/2} |Γ(-t)|)`, written via
/// the reflection formula as `2^{2t} Γ(n/2+t) Γ(1+t) sin(πt) / π^{n/2+1}`.
pub fn frac_lap_norm(n: f64, t: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::Domain(format!("C_{{n,t}} requires t in (0,1), got t={t}")));
    }
    Ok(frac_lap_norm_continued(n, t))
}

/// Analytic continuation of `C_{n,s}` in `s` over `(0, 2)`. The `sin(πs)`
/// factor carries the continuation: positive on `(0, 1)`, negative on
/// `(1, 2)`, zero at `s = 1`.
pub fn frac_lap_norm_continued(n: f64, s: f64) -> f64 {
    (2.0 * s * LN_2 + lgamma(n / 2.0 + s) + lgamma(1.0 + s) - (n / 2.0 + 1.0) * LN_PI).exp()
        * (std::f64::consts::PI * s).sin()
}

/// Poisson-kernel normalization `κ_{n,s} = Γ(n/2+s) / (Γ(s) π^{n/2})` of the
/// order-`2s` half-space extension.
pub fn poisson_norm(n: f64, s: f64) -> Result<f64> {
    if s <= 0.0 {
        return Err(Error::Domain(format!("kappa_{{n,s}} requires s > 0, got {s}")));
    }
    Ok((lgamma(n / 2.0 + s) - lgamma(s) - n / 2.0 * LN_PI).exp())
}

/// Neumann normalization `κ_s = Γ(1-s/2) / (2^{s-1} Γ(s/2))` of the
/// order-`s/2` Caffarelli-Silvestre extension; requires `s ∈ (0, 2)`.
pub fn neumann_norm(s: f64) -> Result<f64> {
    if !(s > 0.0 && s < 2.0) {
        return Err(Error::Domain(format!("kappa_s requires s in (0,2), got {s}")));
    }
    Ok((lgamma(1.0 - s / 2.0) - (s - 1.0) * LN_2 - lgamma(s / 2.0)).exp())
}

/// Weight exponent of the degenerate extension operator, `b = 3 - 2s`.
pub fn b_weight(s: f64) -> f64 {
    3.0 - 2.0 * s
}

/// Surface area of the unit sphere `S^{n-1}` in dimension `n` (real `n`).
pub fn surface_area(n: f64) -> f64 {
    (LN_2 + (n / 2.0) * LN_PI - lgamma(n / 2.0)).exp()
}

/// Volume of the unit ball in dimension `n`.
pub fn unit_ball_volume(n: f64) -> f64 {
    surface_area(n) / n
}

/// The named constants of a parameter point in one bundle.
///
/// `frac_lap_norm` is populated at the fractional-part order (`t = s` for
/// `s < 1`, `t = s - 1` for `1 < s < 2`) and absent when no such order
/// exists; `neumann_norm` is absent at `s = 2`.
#[derive(Debug, Clone, Copy)]
pub struct ConstantBundle {
    pub hardy: f64,
    pub coeff: f64,
    pub frac_lap_norm: Option<f64>,
    pub poisson_norm: f64,
    pub neumann_norm: Option<f64>,
    pub b: f64,
}

impl ConstantBundle {
    pub fn compute(p: ParamPoint) -> Result<Self> {
        let s = p.s();
        let n = p.n();
        let t = if s < 1.0 {
            Some(s)
        } else if s > 1.0 && s < 2.0 {
            Some(s - 1.0)
        } else {
            None
        };
        Ok(ConstantBundle {
            hardy: hardy_constant(p),
            coeff: nonlinear_coefficient(p),
            frac_lap_norm: t.map(|t| frac_lap_norm(n, t)).transpose()?,
            poisson_norm: poisson_norm(n, s)?,
            neumann_norm: if s < 2.0 { Some(neumann_norm(s)?) } else { None },
            b: b_weight(s),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(n: f64, s: f64) -> ParamPoint {
        ParamPoint::new(n, s).unwrap()
    }

    #[test]
    fn param_point_domain() {
        assert!(ParamPoint::new(10.0, 0.0).is_err());
        assert!(ParamPoint::new(10.0, 2.5).is_err());
        assert!(ParamPoint::new(2.0, 1.0).is_err());
        assert!(ParamPoint::new(2.1, 1.0).is_ok());
    }

    #[test]
    fn hardy_examples() {
        assert!((hardy_constant(pp(10.0, 1.0)) - 16.0).abs() < 1e-12);
        assert!((hardy_constant(pp(12.0, 2.0)) - 576.0).abs() < 1e-9);
        // independent high-precision Gamma oracle: 8 (Γ(3.25)/Γ(1.75))^2
        let want = 61.549864178244655;
        assert!(((hardy_constant(pp(10.0, 1.5)) - want) / want).abs() < 1e-13);
    }

    #[test]
    fn coefficient_examples() {
        assert!((nonlinear_coefficient(pp(10.0, 1.0)) - 16.0).abs() < 1e-12);
        assert!((nonlinear_coefficient(pp(12.0, 2.0)) - 640.0).abs() < 1e-9);
        let pi_half = std::f64::consts::FRAC_PI_2;
        assert!((nonlinear_coefficient(pp(3.0, 0.5)) - pi_half).abs() < 1e-13);
    }

    #[test]
    fn bundle_examples() {
        // b = 3 - 2s vanishes at s = 3/2 (the bundle itself needs n > 2s)
        assert_eq!(b_weight(1.5), 0.0);
        let b = ConstantBundle::compute(pp(2.0, 0.5)).unwrap();
        let want = 1.0 / (2.0 * std::f64::consts::PI);
        assert!(((b.poisson_norm - want) / want).abs() < 1e-13);
        assert!((neumann_norm(1.0).unwrap() - 1.0).abs() < 1e-13);
        // kappa_{10,1.5} against a high-precision oracle
        let b = ConstantBundle::compute(pp(10.0, 1.5)).unwrap();
        let want = 1.0615125959231232;
        assert!(((b.poisson_norm - want) / want).abs() < 1e-13);
        assert!(b.frac_lap_norm.is_some());
        // s = 2: no fractional-part order, no Neumann constant
        let b = ConstantBundle::compute(pp(12.0, 2.0)).unwrap();
        assert!(b.frac_lap_norm.is_none());
        assert!(b.neumann_norm.is_none());
    }

    #[test]
    fn frac_lap_norm_example() {
        // C_{3,1/2} = 2 Γ(2) Γ(1.5) / pi^{5/2}
        let want = 0.10132118364233777;
        let got = frac_lap_norm(3.0, 0.5).unwrap();
        assert!(((got - want) / want).abs() < 1e-13);
        assert!(frac_lap_norm(3.0, 1.0).is_err());
        // continuation is negative on (1,2)
        assert!(frac_lap_norm_continued(10.0, 1.5) < 0.0);
    }

    #[test]
    fn local_closed_forms() {
        // Λ_{n,2} = n²(n-4)²/16 and A_{n,2} = 8(n-2)(n-4), n = 5..16
        for n in 5..=16 {
            let nf = n as f64;
            let p = pp(nf, 2.0);
            let lam = hardy_constant(p);
            let a = nonlinear_coefficient(p);
            let lam_ref = nf * nf * (nf - 4.0) * (nf - 4.0) / 16.0;
            let a_ref = 8.0 * (nf - 2.0) * (nf - 4.0);
            assert!(((lam - lam_ref) / lam_ref).abs() < 1e-12, "Lambda at n={n}");
            assert!(((a - a_ref) / a_ref).abs() < 1e-12, "A at n={n}");
        }
    }

    #[test]
    fn composition_identity() {
        // A_{n,s-1} 2s(n-2s) = A_{n,s}
        for (n, s) in [
            (10.0, 1.5),
            (6.0, 1.25),
            (12.0, 1.9),
            (5.0, 1.1),
            (9.0, 1.75),
        ] {
            let a_s = nonlinear_coefficient(pp(n, s));
            let a_t = nonlinear_coefficient(pp(n, s - 1.0));
            let lhs = a_t * 2.0 * s * (n - 2.0 * s);
            assert!(((lhs - a_s) / a_s).abs() < 1e-12, "composition at ({n},{s})");
        }
    }

    #[test]
    fn continuity_in_parameters() {
        // finite-difference continuity of Λ and A on a compact subset
        let h = 1e-6;
        for (n, s) in [(8.0, 1.3), (11.0, 1.8), (6.0, 0.7)] {
            let l0 = hardy_constant(pp(n, s));
            let l1 = hardy_constant(pp(n + h, s));
            let l2 = hardy_constant(pp(n, s + h));
            assert!((l1 - l0).abs() < 1e-4 * l0.abs().max(1.0));
            assert!((l2 - l0).abs() < 1e-4 * l0.abs().max(1.0));
            let a0 = nonlinear_coefficient(pp(n, s));
            let a1 = nonlinear_coefficient(pp(n + h, s));
            assert!((a1 - a0).abs() < 1e-4 * a0.abs().max(1.0));
        }
    }

    #[test]
    fn sphere_measures() {
        let pi = std::f64::consts::PI;
        assert!((surface_area(2.0) - 2.0 * pi).abs() < 1e-13);
        assert!((surface_area(3.0) - 4.0 * pi).abs() < 1e-12);
        assert!((unit_ball_volume(3.0) - 4.0 * pi / 3.0).abs() < 1e-12);
    }
}

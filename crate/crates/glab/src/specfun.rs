//! Real special functions: log-Gamma and overflow-safe Gamma ratios.
//!
//! Every constant in this crate is a ratio of Gamma values; all of them are
//! assembled from `log_gamma` in log space so that arguments like 171.5,
//! where `Γ` itself overflows an `f64`, stay finite.

use crate::{Error, Result};

/// A strictly positive real number, the admissible argument of `Γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositiveReal(f64);

impl PositiveReal {
    pub fn new(value: f64) -> Result<Self> {
        if value > 0.0 && value.is_finite() {
            Ok(PositiveReal(value))
        } else {
            Err(Error::Domain(format!(
                "PositiveReal requires a finite value > 0, got {value}"
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

// Lanczos coefficients (g = 10.900511, 11 terms), good to ~1e-14 relative.
const GAMMA_R: f64 = 10.900511;
const GAMMA_DK: [f64; 11] = [
    2.485_740_891_387_535_5e-5,
    1.051_423_785_817_219_7,
    -3.456_870_972_220_162_5,
    4.512_277_094_668_948,
    -2.982_852_253_235_766_4,
    1.056_397_115_771_267,
    -1.954_287_731_916_458_7e-1,
    1.709_705_434_044_412e-2,
    -5.719_261_174_043_057e-4,
    4.633_994_733_599_057e-6,
    -2.719_949_084_886_077_2e-9,
];
const LN_2_SQRT_E_OVER_PI: f64 = 0.620_782_237_635_245_2;
const LN_PI: f64 = 1.144_729_885_849_400_2;

// Stirling series coefficients B_{2k} / (2k (2k-1)).
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_7;

/// `ln Γ(x)` for `x > 0`, without the domain check. Lanczos below 20,
/// Stirling series above.
pub(crate) fn lgamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x > 20.0 {
        // Stirling: (x - 1/2) ln x - x + ln(2π)/2 + sum B_{2k}/((2k)(2k-1) x^{2k-1})
        let mut series = 0.0;
        let inv2 = 1.0 / (x * x);
        let mut p = 1.0 / x;
        for c in STIRLING {
            series += c * p;
            p *= inv2;
        }
        (x - 0.5) * x.ln() - x + HALF_LN_TWO_PI + series
    } else if x < 0.5 {
        let s = GAMMA_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(GAMMA_DK[0], |s, (i, c)| s + c / (i as f64 - x));
        LN_PI
            - (std::f64::consts::PI * x).sin().ln()
            - s.ln()
            - LN_2_SQRT_E_OVER_PI
            - (0.5 - x) * ((0.5 - x + GAMMA_R) / std::f64::consts::E).ln()
    } else {
        let s = GAMMA_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(GAMMA_DK[0], |s, (i, c)| s + c / (x + i as f64 - 1.0));
        s.ln() + LN_2_SQRT_E_OVER_PI + (x - 0.5) * ((x - 0.5 + GAMMA_R) / std::f64::consts::E).ln()
    }
}

/// `ln Γ(x)`.
pub fn log_gamma(x: PositiveReal) -> f64 {
    lgamma(x.value())
}

/// `Γ(a)/Γ(b)` computed as `exp(ln Γ(a) - ln Γ(b))`; finite whenever the
/// ratio is representable, even when `Γ(a)` alone overflows.
pub fn gamma_ratio(a: PositiveReal, b: PositiveReal) -> f64 {
    (lgamma(a.value()) - lgamma(b.value())).exp()
}

/// Convenience wrapper validating the argument.
pub fn ln_gamma(x: f64) -> Result<f64> {
    Ok(log_gamma(PositiveReal::new(x)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;

    fn pr(x: f64) -> PositiveReal {
        PositiveReal::new(x).unwrap()
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(PositiveReal::new(0.0).is_err());
        assert!(PositiveReal::new(-3.0).is_err());
        assert!(PositiveReal::new(f64::NAN).is_err());
    }

    #[test]
    fn known_values() {
        assert!(log_gamma(pr(1.0)).abs() < 1e-14);
        assert!((log_gamma(pr(0.5)) - 0.5723649429247001).abs() < 1e-14);
        assert!((log_gamma(pr(5.0)) - 24.0_f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn reference_values_to_1e13() {
        // high-precision references spanning [1e-3, 1e4]
        let refs: [(f64, f64); 10] = [
            (0.001, 6.9071788853838537),
            (0.5, 0.5723649429247001),
            (1.5, -0.12078223763524522),
            (2.5, 0.2846828704729192),
            (7.5, 7.534364236758733),
            (19.99, 39.310181511256352),
            (20.01, 39.369591990225154),
            (100.0, 359.1342053695754),
            (1234.5, 7550.5509010778949),
            (10000.0, 82099.717496442377),
        ];
        for (x, want) in refs {
            let got = log_gamma(pr(x));
            let denom = want.abs().max(1.0);
            assert!(
                ((got - want) / denom).abs() < 1e-13,
                "lgamma({x}) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn ratio_examples() {
        assert!((gamma_ratio(pr(5.0), pr(4.0)) - 4.0).abs() < 1e-12);
        assert!((gamma_ratio(pr(3.0), pr(2.0)) - 2.0).abs() < 1e-12);
        // direct Γ(171.5) overflows; the log-space path must not
        let r = gamma_ratio(pr(171.5), pr(170.5));
        assert!((r - 170.5).abs() < 1e-9 * 170.5);
    }

    #[test]
    fn recurrence_property() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..200 {
            let x: f64 = rng.gen_range(0.1..50.0);
            let r = gamma_ratio(pr(x + 1.0), pr(x));
            assert!((r - x).abs() <= 1e-11 * x, "recurrence at x={x}: {r}");
        }
    }

    #[test]
    fn reflection_property() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let x: f64 = rng.gen_range(0.01..0.99);
            let lhs = (lgamma(x) + lgamma(1.0 - x)).exp();
            let rhs = std::f64::consts::PI / (std::f64::consts::PI * x).sin();
            assert!(((lhs - rhs) / rhs).abs() < 1e-11, "reflection at x={x}");
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(128))]

        #[test]
        fn recurrence_holds_everywhere(x in 0.05f64..200.0) {
            let r = gamma_ratio(pr(x + 1.0), pr(x));
            proptest::prop_assert!((r - x).abs() <= 1e-10 * x.max(1.0));
        }

        #[test]
        fn duplication_formula(x in 0.1f64..80.0) {
            // ln Γ(2x) = ln Γ(x) + ln Γ(x + 1/2) + (2x-1) ln 2 - ln(π)/2
            let lhs = lgamma(2.0 * x);
            let rhs = lgamma(x) + lgamma(x + 0.5) + (2.0 * x - 1.0) * std::f64::consts::LN_2
                - 0.5 * std::f64::consts::PI.ln();
            proptest::prop_assert!((lhs - rhs).abs() <= 1e-11 * lhs.abs().max(1.0));
        }
    }

    #[test]
    fn monotone_beyond_two() {
        let mut prev = lgamma(2.0);
        let mut x = 2.0;
        while x < 1e4 {
            x *= 1.17;
            let v = lgamma(x);
            assert!(v >= prev, "lgamma not monotone at {x}");
            prev = v;
        }
    }
}

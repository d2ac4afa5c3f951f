//! Moser-iteration exponent machinery: the cubic `X³ - 8X + 4`, the gap
//! function `δ(α)`, the terminal exponents `α_s` / `ᾱ`, and a simulator of
//! the bootstrap ladder that alternates `α → α + 1/2` with
//! `α → (n/(n-s))·α` below the applicability cap.

use crate::solve::bisect_secant;
use crate::{Error, Result};

/// The three real roots of `X³ - 8X + 4`.
#[derive(Debug, Clone, Copy)]
pub struct CubicRoots {
    pub alpha_sharp: f64,
    pub alpha_star: f64,
    pub alpha_neg: f64,
}

fn cubic(x: f64) -> f64 {
    x * x * x - 8.0 * x + 4.0
}

/// Solve the cubic on its three bracketing intervals to 1e-12 residual.
pub fn moser_cubic_roots() -> CubicRoots {
    let sharp = bisect_secant(&cubic, 0.0, 1.0, 1e-12, 300).expect("sign change on [0,1]");
    let star = bisect_secant(&cubic, 2.0, 3.0, 1e-12, 300).expect("sign change on [2,3]");
    let neg = bisect_secant(&cubic, -4.0, -2.0, 1e-12, 300).expect("sign change on [-4,-2]");
    CubicRoots {
        alpha_sharp: sharp.root,
        alpha_star: star.root,
        alpha_neg: neg.root,
    }
}

/// Gap function `δ(α) = 2√(2α-1)/(α√α) - 1`; positive exactly on the open
/// interval between the two largest cubic roots.
pub fn delta_gap(alpha: f64) -> Result<f64> {
    if alpha <= 0.5 {
        return Err(Error::Domain(format!("delta requires alpha > 1/2, got {alpha}")));
    }
    Ok(2.0 * (2.0 * alpha - 1.0).sqrt() / (alpha * alpha.sqrt()) - 1.0)
}

/// Which structural constants the ladder uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    /// `1 < s < 2`: factor `n/(n-s)`, cap `min{n/(2s), α*}`.
    Fractional,
    /// Fourth-order local problem: factor `n/(n-2)`, cap `min{n/4, α*}`.
    Local,
}

impl Flavor {
    fn factor(self, n: f64, s: f64) -> f64 {
        match self {
            Flavor::Fractional => n / (n - s),
            Flavor::Local => n / (n - 2.0),
        }
    }

    fn cap(self, n: f64, s: f64, alpha_star: f64) -> f64 {
        match self {
            Flavor::Fractional => (n / (2.0 * s)).min(alpha_star),
            Flavor::Local => (n / 4.0).min(alpha_star),
        }
    }

    fn start_hi(self, n: f64, s: f64) -> f64 {
        match self {
            Flavor::Fractional => (n / (2.0 * n - 2.0 * s)).min(1.0),
            Flavor::Local => (n / (2.0 * n - 4.0)).min(1.0),
        }
    }
}

/// Terminal admissible exponent:
/// `max{ factor · cap, cap + 1/2 }` with the flavor's factor and cap.
pub fn alpha_bar(n: f64, s: f64, flavor: Flavor) -> Result<f64> {
    match flavor {
        Flavor::Fractional => {
            if !(s > 0.0 && s < 2.0) {
                return Err(Error::Domain(format!(
                    "fractional alpha_bar requires s in (0,2), got {s}"
                )));
            }
            if n <= 2.0 * s {
                return Err(Error::Domain(format!("require n > 2s, got n={n}, s={s}")));
            }
        }
        Flavor::Local => {
            if n <= 4.0 {
                return Err(Error::Domain(format!("local alpha_bar requires n > 4, got {n}")));
            }
        }
    }
    let star = moser_cubic_roots().alpha_star;
    let cap = flavor.cap(n, s, star);
    Ok((flavor.factor(n, s) * cap).max(cap + 0.5))
}

/// How one ladder step was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderRule {
    Start,
    PlusHalf,
    DimensionFactor,
}

impl LadderRule {
    pub fn label(self) -> &'static str {
        match self {
            LadderRule::Start => "start",
            LadderRule::PlusHalf => "plus-half",
            LadderRule::DimensionFactor => "dimension-factor",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct LadderStep {
    pub exponent: f64,
    pub rule: LadderRule,
}

/// Record of a bootstrap run. `steps[k].exponent` is the working exponent
/// bound after step `k`; integrability holds for every `p` below it.
#[derive(Debug, Clone)]
pub struct LadderTrace {
    pub steps: Vec<LadderStep>,
    pub reached: f64,
    pub target: f64,
}

/// Simulate the bootstrap from the midpoint of the admissible start bracket,
/// greedily taking the larger of the two improvements. A working bound that
/// overshoots the cap is clipped back to the cap for its final application:
/// the integral estimates are downward-closed in the exponent, so every
/// value below the working bound is available as an input.
pub fn bootstrap_ladder(n: f64, s: f64, target_p: f64, flavor: Flavor) -> Result<LadderTrace> {
    let bar = alpha_bar(n, s, flavor)?;
    if target_p >= bar {
        return Err(Error::UnreachableTarget {
            target: target_p,
            alpha_bar: bar,
        });
    }
    let roots = moser_cubic_roots();
    let start_hi = flavor.start_hi(n, s);
    if roots.alpha_sharp >= start_hi {
        return Err(Error::Domain(format!(
            "no valid start: alpha_sharp={} >= min(n/(2n-2s),1)={start_hi}",
            roots.alpha_sharp
        )));
    }
    let cap = flavor.cap(n, s, roots.alpha_star);
    let factor = flavor.factor(n, s);

    let mut cur = 0.5 * (roots.alpha_sharp + start_hi);
    let mut steps = vec![LadderStep { exponent: cur, rule: LadderRule::Start }];
    let mut cap_used = false;
    while cur < target_p {
        let input = cur.min(cap);
        if input >= cap {
            if cap_used {
                // the cap-step is a fixed point; no further growth possible
                return Err(Error::UnreachableTarget { target: target_p, alpha_bar: bar });
            }
            cap_used = true;
        }
        let plus = input + 0.5;
        let scaled = factor * input;
        let (next, rule) = if scaled > plus {
            (scaled, LadderRule::DimensionFactor)
        } else {
            (plus, LadderRule::PlusHalf)
        };
        if next <= cur {
            return Err(Error::UnreachableTarget { target: target_p, alpha_bar: bar });
        }
        steps.push(LadderStep { exponent: next, rule });
        cur = next;
    }
    Ok(LadderTrace { steps, reached: cur, target: target_p })
}

//! Gauss-Legendre panel quadrature with dyadically graded panel layouts.
//!
//! The layouts are deterministic and self-similar around singular endpoints,
//! so refinement studies and finite-part subtractions see a constant relative
//! quadrature bias instead of a wandering one. Panels are summed in index
//! order; concurrent callers split by panel and reduce in order.

use crate::{Error, Result};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

fn gl_cache() -> &'static Mutex<HashMap<usize, (Vec<f64>, Vec<f64>)>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, (Vec<f64>, Vec<f64>)>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Nodes and weights of the `m`-point Gauss-Legendre rule on `[-1, 1]`,
/// by Newton iteration on `P_m`; cached per order.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(m >= 2);
    if let Some(v) = gl_cache().lock().unwrap().get(&m) {
        return v.clone();
    }
    let mut xs = vec![0.0; m];
    let mut ws = vec![0.0; m];
    let nf = m as f64;
    for i in 0..(m + 1) / 2 {
        // Tricomi initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // evaluate P_m(x) and P_m'(x) by recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=m {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        xs[i] = -x;
        xs[m - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        ws[i] = w;
        ws[m - 1 - i] = w;
    }
    gl_cache().lock().unwrap().insert(m, (xs.clone(), ws.clone()));
    (xs, ws)
}

/// Integrate `f` over a single interval with an `order`-point rule.
pub fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, order: usize) -> f64 {
    let (xs, ws) = gauss_legendre(order);
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut acc = 0.0;
    for (x, w) in xs.iter().zip(&ws) {
        acc += w * f(c + h * x);
    }
    acc * h
}

/// Integrate over consecutive panels given by `edges` (ascending).
pub fn panels<F: Fn(f64) -> f64>(f: &F, edges: &[f64], order: usize) -> f64 {
    edges
        .windows(2)
        .map(|e| panel(f, e[0], e[1], order))
        .sum()
}

/// Panel edges from `lo` to `hi` graded dyadically toward `lo = 0⁺`:
/// `[lo, lo·2, lo·4, …, hi]`. `lo` must be positive.
pub fn dyadic_up(lo: f64, hi: f64) -> Vec<f64> {
    debug_assert!(lo > 0.0 && hi > lo);
    let mut edges = vec![lo];
    let mut x = lo;
    while x * 2.0 < hi {
        x *= 2.0;
        edges.push(x);
    }
    edges.push(hi);
    edges
}

/// Panel edges over `[a, b]` refined dyadically toward the endpoint `a`,
/// down to a smallest panel of width `(b-a)·2^{-levels}`.
pub fn graded_toward(a: f64, b: f64, levels: u32) -> Vec<f64> {
    let span = b - a;
    let mut edges = Vec::with_capacity(levels as usize + 2);
    edges.push(a);
    for k in (0..=levels).rev() {
        edges.push(a + span / (1u64 << k) as f64);
    }
    edges
}

/// Evenly spaced edges.
pub fn linear_edges(a: f64, b: f64, count: usize) -> Vec<f64> {
    (0..=count)
        .map(|i| a + (b - a) * i as f64 / count as f64)
        .collect()
}

/// Integrate over fixed `edges`, escalating the rule order until two
/// consecutive orders agree to `rtol` (relative to a caller-supplied scale,
/// or to the integral itself when the scale is zero).
pub fn panels_auto<F: Fn(f64) -> f64>(f: &F, edges: &[f64], rtol: f64, scale: f64) -> Result<f64> {
    let orders = [16usize, 24, 32, 48, 64];
    let mut prev = panels(f, edges, orders[0]);
    for &ord in &orders[1..] {
        let cur = panels(f, edges, ord);
        let denom = if scale > 0.0 { scale } else { cur.abs().max(1e-300) };
        if (cur - prev).abs() <= rtol * denom {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::NonConvergence(format!(
        "panel quadrature stalled above rtol={rtol}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_nodes_integrate_polynomials() {
        // order m integrates degree 2m-1 exactly
        let f = |x: f64| 5.0 * x.powi(7) - 3.0 * x.powi(4) + x - 2.0;
        let got = panel(&f, -1.0, 3.0, 8);
        // exact: 5/8 x^8 - 3/5 x^5 + x^2/2 - 2x on [-1,3]
        let anti = |x: f64| 5.0 / 8.0 * x.powi(8) - 0.6 * x.powi(5) + 0.5 * x * x - 2.0 * x;
        let want = anti(3.0) - anti(-1.0);
        assert!(((got - want) / want).abs() < 1e-14);
    }

    #[test]
    fn graded_panels_handle_algebraic_singularity() {
        // int_0^1 x^{-1/2} dx = 2 with integrand singular at 0; the
        // truncated sliver below 2^-60 carries ~2^-29 of mass
        let edges = graded_toward(0.0, 1.0, 60);
        let f = |x: f64| x.sqrt().recip();
        let got = panels(&f, &edges[1..], 24);
        assert!((got - 2.0).abs() < 1e-8, "got {got}");
    }

    #[test]
    fn auto_escalation_converges() {
        let edges = linear_edges(0.0, std::f64::consts::PI, 4);
        let v = panels_auto(&|x: f64| x.sin(), &edges, 1e-12, 0.0).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
    }
}

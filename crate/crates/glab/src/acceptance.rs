//! The acceptance suite: one function per criterion, each timed against its
//! stated budget, returning a pass/fail row. The CLI `acceptance` command
//! and the integration suite both drive [`run_all`].

use crate::biharmonic::{
    bisect_initial_slope, energy_derivative_bound, energy_derivative_fd, energy_local,
    perturbed_singular_profile, singular_profile, ShootOutcome,
};
use crate::constants::{hardy_constant, nonlinear_coefficient, ParamPoint};
use crate::critdim::{critical_curve, critical_dimension, fourth_order_threshold};
use crate::exponents::{alpha_bar, bootstrap_ladder, delta_gap, moser_cubic_roots, Flavor};
use crate::extension::{energy_fractional, field_grids, kernel_normalization, poisson_extend};
use crate::fraclap::{fall_hardy_integral, radial_frac_lap, RadialFunction};
use crate::radial::log_grid;
use crate::stability::{rellich_family_sign, Cutoff};
use std::time::{Duration, Instant};

/// Result row of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub runtime: Duration,
    pub limit: Duration,
}

struct Check {
    passed: bool,
    detail: String,
}

fn check(passed: bool, detail: String) -> Check {
    Check { passed, detail }
}

fn c1() -> Check {
    match critical_dimension(1.0, 1e-8) {
        Ok(r) => {
            let ok = (r.root - 10.0).abs() < 1e-6 && r.residual.abs() <= 1e-8;
            check(ok, format!("n0(1) = {:.9}, |g| = {:.2e}", r.root, r.residual.abs()))
        }
        Err(e) => check(false, e.to_string()),
    }
}

fn c2() -> Check {
    let q = fourth_order_threshold();
    match critical_dimension(2.0, 1e-10) {
        Ok(r) => {
            let ok = (r.root - 12.565).abs() < 5e-3 && (r.root - q.root).abs() < 1e-6;
            check(
                ok,
                format!(
                    "n0(2) = {:.9}, cubic root = {:.9}, gap = {:.2e}",
                    r.root,
                    q.root,
                    (r.root - q.root).abs()
                ),
            )
        }
        Err(e) => check(false, e.to_string()),
    }
}

fn c3() -> Check {
    match critical_curve(1.0, 2.0, 21) {
        Ok(rows) => {
            let in_range = rows.iter().all(|r| r.n0 >= 10.0 - 1e-9 && r.n0 <= 12.57);
            let monotone = rows.windows(2).all(|w| w[1].n0 >= w[0].n0);
            check(
                in_range && monotone,
                format!(
                    "21 samples, n0 in [{:.4}, {:.4}], monotone = {monotone}",
                    rows.first().unwrap().n0,
                    rows.last().unwrap().n0
                ),
            )
        }
        Err(e) => check(false, e.to_string()),
    }
}

fn c4() -> Check {
    let r = moser_cubic_roots();
    let mut ok = (r.alpha_sharp - 0.517304).abs() < 1e-5 && (r.alpha_star - 2.53407).abs() < 1e-5;
    ok &= delta_gap(r.alpha_sharp).unwrap().abs() <= 1e-9;
    ok &= delta_gap(r.alpha_star).unwrap().abs() <= 1e-9;
    let mut interior_ok = true;
    for k in 1..=50 {
        let t = k as f64 / 51.0;
        let a = r.alpha_sharp + (r.alpha_star - r.alpha_sharp) * t;
        interior_ok &= delta_gap(a).unwrap() > 0.0;
    }
    check(
        ok && interior_ok,
        format!(
            "alpha# = {:.6}, alpha* = {:.5}, |delta| at roots <= {:.1e}, interior positive: {interior_ok}",
            r.alpha_sharp,
            r.alpha_star,
            delta_gap(r.alpha_sharp).unwrap().abs().max(delta_gap(r.alpha_star).unwrap().abs()),
        ),
    )
}

fn c5() -> Check {
    let mut worst: f64 = 0.0;
    for n in 5..=16 {
        let nf = n as f64;
        let p = ParamPoint::new(nf, 2.0).unwrap();
        let lam_ref = nf * nf * (nf - 4.0) * (nf - 4.0) / 16.0;
        let a_ref = 8.0 * (nf - 2.0) * (nf - 4.0);
        worst = worst.max(((hardy_constant(p) - lam_ref) / lam_ref).abs());
        worst = worst.max(((nonlinear_coefficient(p) - a_ref) / a_ref).abs());
    }
    check(worst <= 1e-12, format!("worst relative deviation over n = 5..16: {worst:.2e}"))
}

fn c6() -> Check {
    let mut worst: f64 = 0.0;
    for (n, t) in [(3u32, 0.5), (5u32, 0.25), (10u32, 0.75)] {
        let u = RadialFunction::log_family(-2.0 * t, 0.0);
        let a = nonlinear_coefficient(ParamPoint::new(n as f64, t).unwrap());
        for r in [0.5, 1.0, 2.0] {
            match radial_frac_lap(&u, n, t, r, 1e-4) {
                Ok(v) => {
                    let want = a / r.powf(2.0 * t);
                    worst = worst.max(((v - want) / want).abs());
                }
                Err(e) => return check(false, format!("(n={n}, t={t}, r={r}): {e}")),
            }
        }
    }
    check(worst <= 2e-3, format!("worst relative error {worst:.2e} over 9 points"))
}

fn c7() -> Check {
    let mut worst: f64 = 0.0;
    for (n, s) in [(10u32, 1.0), (10u32, 1.5), (5u32, 0.5)] {
        match fall_hardy_integral(n, s, 1e-4) {
            Ok(v) => {
                let want = hardy_constant(ParamPoint::new(n as f64, s).unwrap());
                worst = worst.max(((v - want) / want).abs());
            }
            Err(e) => return check(false, format!("(n={n}, s={s}): {e}")),
        }
    }
    check(worst <= 1e-2, format!("worst relative error {worst:.2e}"))
}

fn c8() -> Check {
    let mut worst: f64 = 0.0;
    let grid = [
        (10.0, 1.5),
        (6.0, 1.25),
        (12.0, 1.9),
        (5.0, 1.1),
        (9.0, 1.75),
        (11.0, 1.3),
        (7.0, 1.6),
        (8.5, 1.45),
        (13.0, 1.05),
        (10.5, 1.85),
    ];
    for (n, s) in grid {
        let a_s = nonlinear_coefficient(ParamPoint::new(n, s).unwrap());
        let a_t = nonlinear_coefficient(ParamPoint::new(n, s - 1.0).unwrap());
        worst = worst.max(((a_t * 2.0 * s * (n - 2.0 * s) - a_s) / a_s).abs());
    }
    check(worst <= 1e-12, format!("worst relative deviation {worst:.2e} on 10 points"))
}

fn c9() -> Check {
    let eps = [0.05, 0.02, 0.01];
    let cutoff = Cutoff::default();
    let mut ok = true;
    let mut flip = String::new();
    for n in 5..=16u32 {
        match rellich_family_sign(n, &eps, &cutoff) {
            Ok(sweep) => {
                let want_negative = n <= 12;
                if (sweep.log_coefficient < 0.0) != want_negative {
                    ok = false;
                }
                if n == 12 || n == 13 {
                    flip.push_str(&format!("c({n}) = {:+.3}; ", sweep.log_coefficient));
                }
            }
            Err(e) => return check(false, e.to_string()),
        }
    }
    check(ok, format!("signs match the closed form on 5..16; {flip}"))
}

fn c10() -> Check {
    let grid = log_grid(1e-3, 10.0, 900);
    let mut worst: f64 = 0.0;
    for n in [5u32, 8, 12, 13] {
        let p = match singular_profile(n, grid.clone()) {
            Ok(p) => p,
            Err(e) => return check(false, e.to_string()),
        };
        let mut vals = Vec::new();
        for k in 0..7 {
            let r = 1.0 + 3.0 * k as f64 / 6.0;
            match energy_local(&p, n, r) {
                Ok(e) => vals.push(e.total),
                Err(e) => return check(false, e.to_string()),
            }
        }
        let (lo, hi) = vals
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
        worst = worst.max((hi - lo) / hi.abs());
    }
    check(worst <= 1e-3, format!("worst relative variation over r in [1,4]: {worst:.2e}"))
}

fn c11() -> Check {
    // bisected entire-like shooting profile at n = 13
    let res = match bisect_initial_slope(13, 0.0, -2.0, 1.0, 30.0) {
        Ok(r) => r,
        Err(e) => return check(false, e.to_string()),
    };
    if res.outcome != ShootOutcome::EntireLike {
        return check(false, format!("n=13 bisection outcome {:?}", res.outcome));
    }
    let mut worst = f64::INFINITY;
    for i in 0..10 {
        let r = 0.5 * (20.0f64 / 0.5).powf(i as f64 / 9.0);
        let d = match energy_derivative_fd(&res.profile, 13, r, 1e-4 * r) {
            Ok(d) => d,
            Err(e) => return check(false, e.to_string()),
        };
        worst = worst.min(d - energy_derivative_bound(&res.profile, 13, r));
    }
    // small (approximate-solution) perturbation of the singular profile
    let grid = log_grid(1e-3, 12.0, 1100);
    let pert = match perturbed_singular_profile(12, grid, 1e-4, 2.0, 0.5) {
        Ok(p) => p,
        Err(e) => return check(false, e.to_string()),
    };
    let mut worst_p = f64::INFINITY;
    for i in 0..10 {
        let r = 1.0 + 3.0 * i as f64 / 9.0;
        let d = match energy_derivative_fd(&pert, 12, r, 1e-4 * r) {
            Ok(d) => d,
            Err(e) => return check(false, e.to_string()),
        };
        worst_p = worst_p.min(d - energy_derivative_bound(&pert, 12, r));
    }
    let ok = worst >= -1e-4 && worst_p >= -1e-4;
    check(
        ok,
        format!("min(dE/dr - bound): shooting n=13: {worst:+.2e}, perturbed n=12: {worst_p:+.2e}"),
    )
}

fn c12() -> Check {
    let (n, s) = (10u32, 1.5);
    let norm = match kernel_normalization(5, 1.5, 1.0, 1.0) {
        Ok(v) => (v - 1.0).abs(),
        Err(e) => return check(false, e.to_string()),
    };
    if norm > 1e-6 {
        return check(false, format!("kernel normalization error {norm:.2e}"));
    }
    let one = RadialFunction::constant(1.0);
    let (rho, y) = field_grids(2.0, 12);
    let f = match poisson_extend(&one, 5, 1.5, rho, y) {
        Ok(f) => f,
        Err(e) => return check(false, e.to_string()),
    };
    let mut const_err: f64 = 0.0;
    for i in 0..f.rho().len() {
        for j in 0..f.y().len() {
            const_err = const_err.max((f.get(i, j) - 1.0).abs());
        }
    }
    if const_err > 1e-8 {
        return check(false, format!("constant extension error {const_err:.2e}"));
    }
    let a = nonlinear_coefficient(ParamPoint::new(n as f64, s).unwrap());
    let u = RadialFunction::log_family(-2.0 * s, a.ln());
    let (rho, y) = field_grids(4.2, 48);
    let field = match poisson_extend(&u, n, s, rho, y) {
        Ok(f) => f,
        Err(e) => return check(false, e.to_string()),
    };
    let e1 = match energy_fractional(&field, n, s, 1.0, 1.0) {
        Ok(e) => e.total,
        Err(e) => return check(false, e.to_string()),
    };
    let e2 = match energy_fractional(&field, n, s, 2.0, 1.0) {
        Ok(e) => e.total,
        Err(e) => return check(false, e.to_string()),
    };
    let dev = (e1 - e2).abs() / e1.abs().max(e2.abs());
    check(
        dev <= 5e-2,
        format!("normalization {norm:.1e}, constant {const_err:.1e}, E(1) vs E(2) deviation {dev:.3}"),
    )
}

fn c13() -> Check {
    let grid = [
        (6.0, 1.2, Flavor::Fractional),
        (8.0, 1.5, Flavor::Fractional),
        (10.0, 1.5, Flavor::Fractional),
        (11.0, 1.8, Flavor::Fractional),
        (12.0, 1.9, Flavor::Fractional),
        (9.0, 1.3, Flavor::Fractional),
        (5.0, 2.0, Flavor::Local),
        (8.0, 2.0, Flavor::Local),
        (12.0, 2.0, Flavor::Local),
        (13.0, 2.0, Flavor::Local),
    ];
    for (i, &(n, s, flavor)) in grid.iter().enumerate() {
        let bar = match alpha_bar(n, s, flavor) {
            Ok(b) => b,
            Err(e) => return check(false, e.to_string()),
        };
        // stagger the targets, including some just below the terminal bound
        let frac = [0.5, 0.8, 0.95, 0.999][i % 4];
        let target = (bar * frac).max(1.0).min(bar - 1e-9);
        match bootstrap_ladder(n, s, target, flavor) {
            Ok(t) if t.reached >= target => {}
            Ok(t) => {
                return check(false, format!("({n},{s}): reached {} < target {target}", t.reached))
            }
            Err(e) => return check(false, format!("({n},{s}, target {target}): {e}")),
        }
        if bootstrap_ladder(n, s, bar, flavor).is_ok()
            || bootstrap_ladder(n, s, bar + 0.1, flavor).is_ok()
        {
            return check(false, format!("({n},{s}): accepted target >= alpha_bar"));
        }
    }
    check(true, "10-point grid reached; over-target refusals correct".into())
}

type CriterionFn = fn() -> Check;

const CRITERIA: [(u32, &str, CriterionFn, u64); 13] = [
    (1, "critical dimension at s=1", c1, 10),
    (2, "critical dimension at s=2 vs threshold cubic", c2, 10),
    (3, "critical curve monotone in [10, 12.57]", c3, 1_000),
    (4, "Moser cubic roots and gap function", c4, 10),
    (5, "closed forms of Lambda and A at s=2", c5, 10),
    (6, "radial fractional Laplacian log identity", c6, 30_000),
    (7, "Fall integral reproduces the Hardy constant", c7, 60_000),
    (8, "composition identity for A", c8, 10),
    (9, "Hardy-Rellich sign flip at n=13", c9, 10_000),
    (10, "fourth-order energy constant on singular solution", c10, 5_000),
    (11, "energy derivative lower bound", c11, 30_000),
    (12, "extension kernel and energy constancy", c12, 300_000),
    (13, "bootstrap ladder reach and refusal", c13, 10),
];

/// Run every criterion, then append the whole-suite budget row.
pub fn run_all() -> Vec<CriterionReport> {
    let t_all = Instant::now();
    let mut out = Vec::with_capacity(CRITERIA.len() + 1);
    for &(id, name, f, limit_ms) in &CRITERIA {
        let t0 = Instant::now();
        let c = f();
        let runtime = t0.elapsed();
        let limit = Duration::from_millis(limit_ms);
        out.push(CriterionReport {
            id,
            name,
            passed: c.passed && runtime <= limit,
            detail: if runtime <= limit {
                c.detail
            } else {
                format!("{} [over budget: {runtime:?} > {limit:?}]", c.detail)
            },
            runtime,
            limit,
        });
    }
    let total = t_all.elapsed();
    let limit = Duration::from_secs(600);
    out.push(CriterionReport {
        id: 14,
        name: "full suite under ten minutes",
        passed: total <= limit,
        detail: format!("total {total:?}"),
        runtime: total,
        limit,
    });
    out
}

/// One pass/fail line per criterion, as printed by the CLI.
pub fn format_report(r: &CriterionReport) -> String {
    format!(
        "[{}] criterion {:>2}: {:<52} ({:>10.3?})  {}",
        if r.passed { "PASS" } else { "FAIL" },
        r.id,
        r.name,
        r.runtime,
        r.detail
    )
}

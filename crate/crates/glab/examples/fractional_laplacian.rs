//! Principal-value quadrature of the radial fractional Laplacian against
//! the closed-form identity (-Δ)^t log(1/|x|^{2t}) = A_{n,t} |x|^{-2t},
//! and the composition route to order s in (1, 2).

use glab::constants::{nonlinear_coefficient, ParamPoint};
use glab::fraclap::{compose_with_laplacian, radial_frac_lap, RadialFunction};

fn main() {
    println!("direct quadrature, order t in (0, 1):");
    println!("{:>4} {:>6} {:>6} {:>14} {:>14} {:>10}", "n", "t", "r", "quadrature", "A/r^2t", "rel err");
    for (n, t) in [(3u32, 0.5), (5, 0.25), (10, 0.75)] {
        let u = RadialFunction::log_family(-2.0 * t, 0.0);
        let a = nonlinear_coefficient(ParamPoint::new(n as f64, t).unwrap());
        for r in [0.5, 1.0, 2.0] {
            let v = radial_frac_lap(&u, n, t, r, 1e-4).unwrap();
            let want = a / r.powf(2.0 * t);
            println!(
                "{n:>4} {t:>6.2} {r:>6.2} {v:>14.8} {want:>14.8} {:>10.1e}",
                ((v - want) / want).abs()
            );
        }
    }

    println!("\ncomposition route, order s in (1, 2):");
    println!("{:>4} {:>6} {:>14} {:>14} {:>10}", "n", "s", "composed", "A_(n,s)", "rel err");
    for (n, s) in [(10u32, 1.5), (6u32, 1.25), (9u32, 1.75)] {
        let u = RadialFunction::log_family(-2.0 * s, 0.0);
        let v = compose_with_laplacian(&u, n, s, 1.0, 1e-4).unwrap();
        let want = nonlinear_coefficient(ParamPoint::new(n as f64, s).unwrap());
        println!("{n:>4} {s:>6.2} {v:>14.8} {want:>14.8} {:>10.1e}", ((v - want) / want).abs());
    }

    // a constant is annihilated; a bump transforms covariantly
    let c = RadialFunction::constant(7.0);
    println!("\n(-Δ)^0.5 of the constant 7 at r = 1: {:+.2e}", radial_frac_lap(&c, 3, 0.5, 1.0, 1e-6).unwrap());
}

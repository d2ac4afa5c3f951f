//! Tabulate the closed-form constants over a small (n, s) sweep and verify
//! the s = 2 closed forms and the composition identity on the fly.

use glab::constants::{
    hardy_constant, nonlinear_coefficient, ConstantBundle, ParamPoint,
};

fn main() {
    println!("{:>5} {:>5} {:>14} {:>14} {:>12} {:>8}", "n", "s", "Lambda", "A", "kappa", "b");
    for &s in &[1.0, 1.25, 1.5, 1.75, 2.0] {
        for &n in &[6.0, 8.0, 10.0, 12.0, 14.0] {
            if n <= 2.0 * s {
                continue;
            }
            let p = ParamPoint::new(n, s).unwrap();
            let b = ConstantBundle::compute(p).unwrap();
            println!(
                "{n:>5} {s:>5} {:>14.6} {:>14.6} {:>12.6} {:>8.2}",
                b.hardy, b.coeff, b.poisson_norm, b.b
            );
        }
    }

    println!("\nclosed forms at s = 2 (relative deviation):");
    for n in [5, 8, 12, 16] {
        let nf = n as f64;
        let p = ParamPoint::new(nf, 2.0).unwrap();
        let lam = hardy_constant(p);
        let a = nonlinear_coefficient(p);
        println!(
            "  n = {n:>2}:  Lambda vs n²(n-4)²/16: {:+.2e},  A vs 8(n-2)(n-4): {:+.2e}",
            lam / (nf * nf * (nf - 4.0) * (nf - 4.0) / 16.0) - 1.0,
            a / (8.0 * (nf - 2.0) * (nf - 4.0)) - 1.0
        );
    }

    println!("\ncomposition identity A(n, s-1) * 2s(n-2s) = A(n, s):");
    for (n, s) in [(10.0, 1.5), (6.0, 1.25), (12.0, 1.9)] {
        let a_s = nonlinear_coefficient(ParamPoint::new(n, s).unwrap());
        let a_t = nonlinear_coefficient(ParamPoint::new(n, s - 1.0).unwrap());
        println!(
            "  (n={n}, s={s}):  {:>12.6} vs {:>12.6}  (rel {:+.2e})",
            a_t * 2.0 * s * (n - 2.0 * s),
            a_s,
            a_t * 2.0 * s * (n - 2.0 * s) / a_s - 1.0
        );
    }
}

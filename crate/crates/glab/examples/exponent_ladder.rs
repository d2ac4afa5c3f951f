//! The Moser-iteration exponent machinery: cubic roots, the gap function,
//! terminal exponents, and full ladder traces.

use glab::exponents::{alpha_bar, bootstrap_ladder, delta_gap, moser_cubic_roots, Flavor};

fn main() {
    let roots = moser_cubic_roots();
    println!("roots of X³ - 8X + 4:");
    println!("  alpha#  = {:.9}", roots.alpha_sharp);
    println!("  alpha*  = {:.9}", roots.alpha_star);
    println!("  alpha₋  = {:.9}   (sum = {:+.1e})\n", roots.alpha_neg,
        roots.alpha_sharp + roots.alpha_star + roots.alpha_neg);

    println!("gap function delta(alpha) = 2 sqrt(2a-1)/(a sqrt(a)) - 1:");
    for a in [0.6, 1.0, 1.5, 2.0, roots.alpha_star] {
        println!("  delta({a:.6}) = {:+.6}", delta_gap(a).unwrap());
    }

    println!("\nterminal exponents:");
    for (n, s, flavor, label) in [
        (10.0, 1.5, Flavor::Fractional, "fractional"),
        (12.0, 2.0, Flavor::Local, "local"),
        (5.0, 2.0, Flavor::Local, "local"),
    ] {
        println!("  alpha_bar({n}, {s}, {label}) = {:.6}", alpha_bar(n, s, flavor).unwrap());
    }

    println!("\nladder trace at (n=12, s=2, local), target 3.04:");
    let trace = bootstrap_ladder(12.0, 2.0, 3.04, Flavor::Local).unwrap();
    for (i, st) in trace.steps.iter().enumerate() {
        println!("  step {i:>2}: alpha = {:.6}  [{}]", st.exponent, st.rule.label());
    }
    println!("  reached {:.6} >= target {}", trace.reached, trace.target);

    println!("\nrefusal above the terminal exponent:");
    match bootstrap_ladder(10.0, 1.5, 3.5, Flavor::Fractional) {
        Err(e) => println!("  target 3.5 at (10, 1.5): {e}"),
        Ok(_) => println!("  unexpected success"),
    }
}

//! The critical stability dimension n0(s): endpoint values, the threshold
//! cubic at s = 2, and the curve across s in [1, 2].

use glab::critdim::{critical_curve, critical_dimension, fourth_order_threshold, g_value};

fn main() {
    let r1 = critical_dimension(1.0, 1e-10).unwrap();
    let r2 = critical_dimension(2.0, 1e-10).unwrap();
    let q = fourth_order_threshold();
    println!("n0(1) = {:.9}   (residual {:.1e}, {} iterations)", r1.root, r1.residual.abs(), r1.iterations);
    println!("n0(2) = {:.9}   (residual {:.1e})", r2.root, r2.residual.abs());
    println!("largest root of n³-4n²-128n+256 = {:.9}", q.root);
    println!("agreement of the two s = 2 routes: {:.2e}\n", (r2.root - q.root).abs());

    println!("{:>6} {:>12} {:>10}", "s", "n0(s)", "g-residual");
    for row in critical_curve(1.0, 2.0, 11).unwrap() {
        println!("{:>6.2} {:>12.6} {:>10.1e}", row.s, row.n0, row.residual.abs());
    }

    // instability window: g < 0 exactly between 2s and n0(s)
    let s = 1.5;
    let n0 = critical_dimension(s, 1e-10).unwrap().root;
    println!("\nsign of g(x, s=1.5) around n0 = {n0:.4}:");
    for x in [3.5, 6.0, 10.0, n0 - 0.1, n0 + 0.1, 13.0] {
        println!("  g({x:>7.4}) = {:+.5}", g_value(x, s).unwrap());
    }
}

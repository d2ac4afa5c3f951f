//! The Fall double-integral representation of the Hardy constant across the
//! full order range, including the finite-part continuation above s = 1
//! where the symmetrized integrand stops being absolutely integrable.

use glab::constants::{hardy_constant, ParamPoint};
use glab::fraclap::fall_hardy_integral;

fn main() {
    println!("{:>4} {:>6} {:>16} {:>16} {:>10}", "n", "s", "fall integral", "Lambda(n,s)", "rel err");
    for (n, s) in [
        (5u32, 0.5),
        (10u32, 0.5),
        (5u32, 0.9),
        (10u32, 1.0),
        (10u32, 1.25),
        (10u32, 1.5),
        (5u32, 1.5),
        (10u32, 1.75),
    ] {
        let want = hardy_constant(ParamPoint::new(n as f64, s).unwrap());
        match fall_hardy_integral(n, s, 1e-4) {
            Ok(v) => println!(
                "{n:>4} {s:>6.2} {v:>16.8} {want:>16.8} {:>10.1e}",
                ((v - want) / want).abs()
            ),
            Err(e) => println!("{n:>4} {s:>6.2} {e:>16}"),
        }
    }
    println!();
    println!("below s = 1 the symmetrized integral converges absolutely; at and");
    println!("above s = 1 the value shown is the measured-coefficient finite part");
    println!("paired with the analytically continued (signed) constant. Agreement");
    println!("with the closed form is the numerical adjudication that the");
    println!("representation remains valid on 1 < s < 2. Accuracy degrades as");
    println!("s -> 2, where the subtracted family would need its next term.");
}

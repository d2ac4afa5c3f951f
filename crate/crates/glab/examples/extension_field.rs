//! The half-space extension at (n, s) = (10, 3/2): kernel checks, system
//! residuals with the fitted source constant, and constancy of the dilation
//! energy on the extension of the singular solution.

use glab::constants::{nonlinear_coefficient, ParamPoint};
use glab::extension::{
    energy_fractional, field_grids, kernel_normalization, poisson_extend, yang_residuals,
};
use glab::fraclap::RadialFunction;

fn main() {
    let (n, s) = (10u32, 1.5);

    let norm = kernel_normalization(5, 1.5, 1.0, 1.0).unwrap();
    println!("kernel normalization at (rho, y) = (1, 1), n = 5: {norm:.12}");

    println!("\nextension-system residuals (bump boundary data, n = 5):");
    let bump = RadialFunction::gaussian_bump(1.0, 1.0, 0.4);
    let res = yang_residuals(&bump, 5, 1.5, 4.0, 32).unwrap();
    println!("  interior |Δ_b²u_e|·|X|⁴  = {:.4}", res.interior);
    println!("  weighted Neumann trace   = {:.2e}", res.neumann);
    if let (Some(dev), Some(k)) = (res.source, res.source_constant) {
        println!("  source shape deviation   = {dev:.3}  (fitted constant {k:.4})");
    }

    println!("\nsource trace of the singular boundary data at (10, 1.5):");
    let a = nonlinear_coefficient(ParamPoint::new(n as f64, s).unwrap());
    let u = RadialFunction::log_family(-2.0 * s, a.ln());
    let res = yang_residuals(&u, n, s, 4.0, 32).unwrap();
    if let (Some(dev), Some(k)) = (res.source, res.source_constant) {
        println!("  shape deviation from const·e^u = {dev:.3}, fitted constant = {k:.5}");
    }

    println!("\ndilation energy on the singular extension (should be constant):");
    let (rho, y) = field_grids(4.2, 48);
    let field = poisson_extend(&u, n, s, rho, y).unwrap();
    for lambda in [1.0, 1.5, 2.0] {
        let e = energy_fractional(&field, n, s, lambda, 1.0).unwrap();
        println!(
            "  E({lambda:>3}) = {:>12.4}   (bulk {:>10.4}, tangential {:>8.4})",
            e.total, e.bulk_dirichlet, e.tangential
        );
    }
}

//! Half-space extension machinery for `1 < s < 2`: the order-`2s` Poisson
//! kernel extension, the weighted operator `Δ_b = Δ + (b/y)∂_y` with
//! `b = 3 - 2s`, residual diagnostics for the extension system
//! (`Δ_b² u_e = 0`, vanishing weighted Neumann trace, weighted third-order
//! trace proportional to `e^u`), and the dilation energy `E(λ, 0, u_e)`.
//!
//! Everything here works on tensor-grid fields; tolerances are an order of
//! magnitude looser than the local fourth-order module, whose quadratic
//! suite carries the precise assertions.

use crate::constants::{b_weight, poisson_norm, surface_area};
use crate::fraclap::{DecayTag, RadialFunction};
use crate::quad::{self, gauss_legendre};
use crate::specfun::lgamma;
use crate::{Error, Result};
use rayon::prelude::*;

/// Axisymmetric scalar field on a `(ρ, y)` half-plane tensor grid.
/// `values[i * ny + j]` holds the value at `(rho[i], y[j])`; entries may be
/// NaN where a finite-difference operator had no stencil.
#[derive(Debug, Clone)]
pub struct HalfSpaceField {
    rho: Vec<f64>,
    y: Vec<f64>,
    values: Vec<f64>,
    b: f64,
}

impl HalfSpaceField {
    pub fn new(rho: Vec<f64>, y: Vec<f64>, values: Vec<f64>, b: f64) -> Result<Self> {
        if rho.len() < 5 || y.len() < 5 {
            return Err(Error::Domain("field grids need at least 5 nodes per direction".into()));
        }
        if rho.windows(2).any(|w| w[1] <= w[0]) || y.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Domain("grids must be strictly increasing".into()));
        }
        if rho[0] < 0.0 || y[0] <= 0.0 {
            return Err(Error::Domain("require rho >= 0 and y > 0".into()));
        }
        if y[0] > 1e-3 * (1.0 + 1e-9) {
            return Err(Error::Domain(format!("y grid must reach below 1e-3, starts at {}", y[0])));
        }
        if values.len() != rho.len() * y.len() {
            return Err(Error::Domain("value buffer does not match the grid".into()));
        }
        Ok(HalfSpaceField { rho, y, values, b })
    }

    /// Sample a closure on the given grids.
    pub fn from_fn(
        rho: Vec<f64>,
        y: Vec<f64>,
        b: f64,
        f: impl Fn(f64, f64) -> f64,
    ) -> Result<Self> {
        let mut values = vec![0.0; rho.len() * y.len()];
        for (i, &r) in rho.iter().enumerate() {
            for (j, &yy) in y.iter().enumerate() {
                values[i * y.len() + j] = f(r, yy);
            }
        }
        HalfSpaceField::new(rho, y, values, b)
    }

    pub fn rho(&self) -> &[f64] {
        &self.rho
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.y.len() + j]
    }

    fn set(&mut self, i: usize, j: usize, v: f64) {
        self.values[i * self.y.len() + j] = v;
    }

    /// Bilinear interpolation, logarithmic in each coordinate away from the
    /// axis and quadratic in `ρ` between the axis column and its neighbor.
    pub fn interp(&self, r: f64, yy: f64) -> f64 {
        let ny = self.y.len();
        let j = self.y.partition_point(|&v| v < yy).clamp(1, ny - 1);
        let (y0, y1) = (self.y[j - 1], self.y[j]);
        let ty = ((yy / y0).ln() / (y1 / y0).ln()).clamp(0.0, 1.0);
        let col = |i: usize| (1.0 - ty) * self.get(i, j - 1) + ty * self.get(i, j);
        let i = self.rho.partition_point(|&v| v < r);
        if i == 0 {
            return col(0);
        }
        if self.rho[0] == 0.0 && i == 1 {
            // axisymmetric fields vary as ρ² near the axis
            let t = (r / self.rho[1]).powi(2);
            return (1.0 - t) * col(0) + t * col(1);
        }
        let i = i.clamp(1, self.rho.len() - 1);
        let (r0, r1) = (self.rho[i - 1], self.rho[i]);
        let t = ((r / r0).ln() / (r1 / r0).ln()).clamp(0.0, 1.0);
        (1.0 - t) * col(i - 1) + t * col(i)
    }
}

/// Default tensor grids for extension work: `ρ ∈ {0} ∪ log[extent·1e-3,
/// extent]`, `y ∈ log[1e-3, extent]`.
pub fn field_grids(extent: f64, nodes: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(extent > 0.1 && nodes >= 8);
    let mut rho = Vec::with_capacity(nodes);
    rho.push(0.0);
    rho.extend(crate::radial::log_grid(1e-3 * extent, extent, nodes - 1));
    let y = crate::radial::log_grid(1e-3, extent, nodes);
    (rho, y)
}

fn sin_pow_integral(n: u32) -> f64 {
    (0.5 * std::f64::consts::PI.ln() + lgamma((n as f64 - 1.0) / 2.0) - lgamma(n as f64 / 2.0))
        .exp()
}

/// One Poisson-kernel node value
/// `u_e(ρ, y) = κ_{n,s} |S^{n-2}| y^{2s} ∫₀^∞ ℓ^{n-1} u(ℓ) K(ℓ) dℓ`,
/// `K(ℓ) = ∫₀^π sin^{n-2}χ (D² + 4ρℓ sin²(χ/2))^{-m} dχ`,
/// `D² = y² + (ρ-ℓ)²`.
fn poisson_node(u: &RadialFunction, n: u32, s: f64, rho: f64, y: f64, order: usize) -> f64 {
    let nf = n as f64;
    let m = (nf + 2.0 * s) / 2.0;
    let wn = sin_pow_integral(n);
    let scale = (rho + y).max(1.0);
    let r_cut = 1e3 * scale;
    let (gx, gw) = gauss_legendre(order);

    let angular = |d2: f64, q: f64| -> f64 {
        // q = ρℓ; the kernel peaks at χ = 0 with width ~ sqrt(d2/q)
        if q == 0.0 {
            return wn * d2.powf(-m);
        }
        let chi0 = (d2 / q).sqrt().min(std::f64::consts::PI);
        let edges = quad::dyadic_up(chi0 / 1024.0, std::f64::consts::PI);
        let mut acc = 0.0;
        for e in edges.windows(2) {
            let c = 0.5 * (e[0] + e[1]);
            let h = 0.5 * (e[1] - e[0]);
            for (x, w) in gx.iter().zip(&gw) {
                let chi = c + h * x;
                let sc = (0.5 * chi).sin();
                acc += w * h * chi.sin().powi(n as i32 - 2) * (d2 + 4.0 * q * sc * sc).powf(-m);
            }
        }
        acc
    };

    let radial_integrand = |l: f64| -> f64 {
        let d2 = y * y + (rho - l) * (rho - l);
        l.powf(nf - 1.0) * u.eval(l) * angular(d2, rho * l)
    };

    // global dyadic ladder plus two-sided refinement toward ℓ = ρ
    let mut edges = quad::dyadic_up(1e-6 * scale, r_cut);
    if rho > 0.0 {
        let fine = (y / 32.0).min(0.2 * rho);
        let mut v = Vec::new();
        let mut d = 0.5 * rho;
        while d > fine {
            v.push(rho - d);
            v.push(rho + d);
            d *= 0.5;
        }
        v.push(rho - d);
        v.push(rho + d);
        v.push(rho);
        edges.extend(v);
        edges.sort_by(|a, b| a.partial_cmp(b).unwrap());
        edges.dedup();
    }
    let mut total = 0.0;
    for e in edges.windows(2) {
        let c = 0.5 * (e[0] + e[1]);
        let h = 0.5 * (e[1] - e[0]);
        for (x, w) in gx.iter().zip(&gw) {
            total += w * h * radial_integrand(c + h * x);
        }
    }

    // closed tail beyond r_cut, where the kernel is l^{-n-2s}
    let tail = match u.tag() {
        DecayTag::Log { slope, offset } => {
            let rc = r_cut.powf(-2.0 * s);
            wn * (offset * rc / (2.0 * s)
                + slope * (rc * r_cut.ln() / (2.0 * s) + rc / (4.0 * s * s)))
        }
        DecayTag::Power { coeff, exponent } => {
            wn * coeff * r_cut.powf(-2.0 * s - exponent) / (2.0 * s + exponent)
        }
        DecayTag::Compact { .. } => 0.0,
    };

    let kappa = poisson_norm(nf, s).expect("s > 1 checked by caller");
    kappa * surface_area(nf - 1.0) * y.powf(2.0 * s) * (total + tail)
}

/// Extend a boundary function into the half space through the order-`2s`
/// Poisson kernel; nodes are computed concurrently and written to disjoint
/// slots.
pub fn poisson_extend(
    u: &RadialFunction,
    n: u32,
    s: f64,
    rho_grid: Vec<f64>,
    y_grid: Vec<f64>,
) -> Result<HalfSpaceField> {
    if !(s > 1.0 && s < 2.0) {
        return Err(Error::Domain(format!("extension requires s in (1,2), got {s}")));
    }
    if n < 2 {
        return Err(Error::Domain("axisymmetric reduction requires n >= 2".into()));
    }
    let ny = y_grid.len();
    let nodes: Vec<(usize, usize)> = (0..rho_grid.len())
        .flat_map(|i| (0..ny).map(move |j| (i, j)))
        .collect();
    let vals: Vec<f64> = nodes
        .par_iter()
        .map(|&(i, j)| poisson_node(u, n, s, rho_grid[i], y_grid[j], 14))
        .collect();
    let mut values = vec![0.0; rho_grid.len() * ny];
    for (k, &(i, j)) in nodes.iter().enumerate() {
        values[i * ny + j] = vals[k];
    }
    HalfSpaceField::new(rho_grid, y_grid, values, b_weight(s))
}

/// Numeric check of the kernel normalization `∫ P_s(X, z) dz = 1`.
pub fn kernel_normalization(n: u32, s: f64, rho: f64, y: f64) -> Result<f64> {
    if !(s > 1.0 && s < 2.0) {
        return Err(Error::Domain(format!("requires s in (1,2), got {s}")));
    }
    let one = RadialFunction::constant(1.0);
    Ok(poisson_node(&one, n, s, rho, y, 16))
}

fn d1_nonuniform(fm: f64, f0: f64, fp: f64, hm: f64, hp: f64) -> f64 {
    (hm * hm * fp + (hp * hp - hm * hm) * f0 - hp * hp * fm) / (hm * hp * (hm + hp))
}

fn d2_nonuniform(fm: f64, f0: f64, fp: f64, hm: f64, hp: f64) -> f64 {
    2.0 * (hm * fp - (hm + hp) * f0 + hp * fm) / (hm * hp * (hm + hp))
}

/// Apply `Δ_b = ∂_ρρ + (n-1)/ρ ∂_ρ + ∂_yy + (b/y) ∂_y` by second-order
/// nonuniform finite differences. Boundary rows and columns come back NaN.
/// On the axis column the radial part regularizes to `n ∂_ρρ`.
pub fn delta_b_apply(f: &HalfSpaceField, n: u32) -> HalfSpaceField {
    let nf = n as f64;
    let (nr, ny) = (f.rho.len(), f.y.len());
    let mut out = f.clone();
    for v in out.values.iter_mut() {
        *v = f64::NAN;
    }
    for i in 0..nr {
        for j in 1..ny - 1 {
            let (ym, y0, yp) = (f.y[j - 1], f.y[j], f.y[j + 1]);
            let fy_m = f.get(i, j - 1);
            let fy_0 = f.get(i, j);
            let fy_p = f.get(i, j + 1);
            if !(fy_m.is_finite() && fy_0.is_finite() && fy_p.is_finite()) {
                continue;
            }
            let dy1 = d1_nonuniform(fy_m, fy_0, fy_p, y0 - ym, yp - y0);
            let dy2 = d2_nonuniform(fy_m, fy_0, fy_p, y0 - ym, yp - y0);
            let ypart = dy2 + f.b * dy1 / y0;

            let xpart = if i == 0 {
                if f.rho[0] != 0.0 {
                    continue;
                }
                let d2 = 2.0 * (f.get(1, j) - f.get(0, j)) / (f.rho[1] * f.rho[1]);
                if !d2.is_finite() {
                    continue;
                }
                nf * d2
            } else if i == nr - 1 {
                continue;
            } else {
                let (rm, r0, rp) = (f.rho[i - 1], f.rho[i], f.rho[i + 1]);
                let fr_m = f.get(i - 1, j);
                let fr_0 = f.get(i, j);
                let fr_p = f.get(i + 1, j);
                if !(fr_m.is_finite() && fr_0.is_finite() && fr_p.is_finite()) {
                    continue;
                }
                let dr1 = d1_nonuniform(fr_m, fr_0, fr_p, r0 - rm, rp - r0);
                let dr2 = d2_nonuniform(fr_m, fr_0, fr_p, r0 - rm, rp - r0);
                dr2 + (nf - 1.0) * dr1 / r0
            };
            out.set(i, j, xpart + ypart);
        }
    }
    out
}

/// Residual diagnostics of the extension system for a boundary function.
#[derive(Debug, Clone)]
pub struct YangResiduals {
    /// `sup |Δ_b² u_e| · |X|⁴` over interior probes.
    pub interior: f64,
    /// `sup |lim_{y→0} y^b ∂_y u_e|` over boundary probes.
    pub neumann: f64,
    /// Relative shape deviation of `lim y^b ∂_y Δ_b u_e` from `const·e^u`;
    /// `None` when the trace is identically zero (shape test not applicable).
    pub source: Option<f64>,
    /// The fitted proportionality constant, when the shape test ran.
    pub source_constant: Option<f64>,
}

fn weighted_dy_limit(field: &HalfSpaceField, b: f64, i: usize, rows: [usize; 3], s: f64) -> f64 {
    // fit y^b ∂_y(field) = c0 + c1 y^{2s-2} over three small-y rows
    let mut xs = [0.0; 3];
    let mut ys = [0.0; 3];
    for (k, &j) in rows.iter().enumerate() {
        let (ym, y0, yp) = (field.y[j - 1], field.y[j], field.y[j + 1]);
        let d1 = d1_nonuniform(
            field.get(i, j - 1),
            field.get(i, j),
            field.get(i, j + 1),
            y0 - ym,
            yp - y0,
        );
        xs[k] = y0.powf(2.0 * s - 2.0);
        ys[k] = y0.powf(b) * d1;
    }
    let (n, sx, sy) = (3.0, xs.iter().sum::<f64>(), ys.iter().sum::<f64>());
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| x * y).sum();
    let det = n * sxx - sx * sx;
    (sxx * sy - sx * sxy) / det
}

/// Build the extension of `u` and measure how well it satisfies the
/// fourth-order extension system. The source-trace constant is fitted, not
/// assumed.
pub fn yang_residuals(
    u: &RadialFunction,
    n: u32,
    s: f64,
    extent: f64,
    nodes: usize,
) -> Result<YangResiduals> {
    let (rho, y) = field_grids(extent, nodes);
    let field = poisson_extend(u, n, s, rho, y)?;
    let b = field.b();
    let w = delta_b_apply(&field, n);
    let w2 = delta_b_apply(&w, n);

    let (nr, ny) = (field.rho.len(), field.y.len());
    let margin = 4;
    // fixed physical probe window so refinement studies compare like with like
    let (probe_lo, probe_hi) = (0.05 * extent, 0.75 * extent);
    let mut interior: f64 = 0.0;
    for i in margin..nr - margin {
        for j in margin..ny - margin {
            let (r, yy) = (field.rho[i], field.y[j]);
            if r < probe_lo || yy < probe_lo || r.hypot(yy) > probe_hi {
                continue;
            }
            let v = w2.get(i, j);
            if v.is_finite() {
                let x2 = r * r + yy * yy;
                interior = interior.max(v.abs() * x2 * x2);
            }
        }
    }

    let probe_cols: Vec<usize> = (margin..nr - margin).collect();
    let mut neumann: f64 = 0.0;
    for &i in &probe_cols {
        neumann = neumann.max(weighted_dy_limit(&field, b, i, [1, 2, 3], s).abs());
    }

    // third-order trace against the e^u shape, constant fitted
    let traces: Vec<f64> = probe_cols
        .iter()
        .map(|&i| weighted_dy_limit(&w, b, i, [2, 3, 4], s))
        .collect();
    let eu: Vec<f64> = probe_cols.iter().map(|&i| u.eval(field.rho[i]).exp()).collect();
    let t_scale = traces.iter().fold(0.0f64, |a, t| a.max(t.abs()));
    let (source, source_constant) = if t_scale < 1e-10 {
        (None, None)
    } else {
        let k = traces.iter().zip(&eu).map(|(t, e)| t * e).sum::<f64>()
            / eu.iter().map(|e| e * e).sum::<f64>();
        let denom = eu.iter().map(|e| (k * e).abs()).fold(0.0f64, f64::max);
        let dev = traces
            .iter()
            .zip(&eu)
            .map(|(t, e)| (t - k * e).abs())
            .fold(0.0f64, f64::max);
        (Some(dev / denom), Some(k))
    };

    Ok(YangResiduals { interior, neumann, source, source_constant })
}

/// The displayed summands of the fractional dilation energy, plus total.
/// For axisymmetric fields the tangential entries hold the polar-angle
/// derivative contribution; it is not zero, because the extension of a
/// radial boundary function still varies over the half sphere.
#[derive(Debug, Clone, Copy)]
pub struct FractionalEnergyBreakdown {
    pub bulk_dirichlet: f64,
    pub boundary_potential: f64,
    pub boundary_sq: f64,
    pub d_dr_sq_term: f64,
    pub log_term: f64,
    pub radial_deriv_term: f64,
    pub tangential_d_dr: f64,
    pub tangential: f64,
    pub total: f64,
}

struct SphereQuad {
    /// `(cos φ, sin φ, weight)` with `cos^{n-1}φ` folded into the weight;
    /// panels graded toward the boundary plane where `y^b` may be singular.
    nodes: Vec<(f64, f64, f64)>,
}

fn sphere_quad(n: u32) -> SphereQuad {
    let (gx, gw) = gauss_legendre(16);
    let edges = quad::dyadic_up(1e-5, std::f64::consts::FRAC_PI_2);
    let mut nodes = Vec::new();
    for e in edges.windows(2) {
        let c = 0.5 * (e[0] + e[1]);
        let h = 0.5 * (e[1] - e[0]);
        for (x, w) in gx.iter().zip(&gw) {
            let phi = c + h * x;
            nodes.push((phi.cos(), phi.sin(), w * h * phi.cos().powi(n as i32 - 1)));
        }
    }
    SphereQuad { nodes }
}

struct FieldDerivs {
    du_drho: HalfSpaceField,
    du_dy: HalfSpaceField,
}

fn gradient_fields(f: &HalfSpaceField) -> FieldDerivs {
    let (nr, ny) = (f.rho.len(), f.y.len());
    let mut dr = f.clone();
    let mut dy = f.clone();
    for v in dr.values.iter_mut() {
        *v = f64::NAN;
    }
    for v in dy.values.iter_mut() {
        *v = f64::NAN;
    }
    for i in 0..nr {
        for j in 0..ny {
            if j >= 1 && j < ny - 1 {
                let (ym, y0, yp) = (f.y[j - 1], f.y[j], f.y[j + 1]);
                dy.set(
                    i,
                    j,
                    d1_nonuniform(f.get(i, j - 1), f.get(i, j), f.get(i, j + 1), y0 - ym, yp - y0),
                );
            }
            if i == 0 && f.rho[0] == 0.0 {
                dr.set(i, j, 0.0);
            } else if i >= 1 && i < nr - 1 {
                let (rm, r0, rp) = (f.rho[i - 1], f.rho[i], f.rho[i + 1]);
                dr.set(
                    i,
                    j,
                    d1_nonuniform(f.get(i - 1, j), f.get(i, j), f.get(i + 1, j), r0 - rm, rp - r0),
                );
            }
        }
    }
    FieldDerivs { du_drho: dr, du_dy: dy }
}

/// Sphere integrals at radius `t` against `y^b dσ`:
/// `(∂_r u + 2s/t)²`, `(∂_r u + 2s/t)`, `(u + 2s log t)`, `|∇_θ u|²/t²`.
fn sphere_integrals(
    field: &HalfSpaceField,
    grads: &FieldDerivs,
    sq: &SphereQuad,
    n: u32,
    s: f64,
    t: f64,
) -> (f64, f64, f64, f64) {
    let b = field.b();
    let om = surface_area(n as f64);
    // clamp interpolation into the region where FD gradients exist
    let lookup = |g: &HalfSpaceField, r: f64, yy: f64| -> f64 {
        let rr = r.clamp(0.0, field.rho[field.rho.len() - 2] * (1.0 - 1e-12));
        let yc = yy.clamp(field.y[1] * (1.0 + 1e-12), field.y[field.y.len() - 2] * (1.0 - 1e-12));
        g.interp(rr, yc)
    };
    let (mut i_sq, mut i_lin, mut i_log, mut i_tan) = (0.0, 0.0, 0.0, 0.0);
    for &(cphi, sphi, w) in &sq.nodes {
        let (r, yy) = (t * cphi, t * sphi);
        let uval = field.interp(r, yy.max(field.y[0]));
        let dur = lookup(&grads.du_drho, r, yy);
        let duy = lookup(&grads.du_dy, r, yy);
        let ur = cphi * dur + sphi * duy;
        let utheta = -sphi * dur + cphi * duy;
        let weight = w * yy.powf(b);
        let shifted = ur + 2.0 * s / t;
        i_sq += weight * shifted * shifted;
        i_lin += weight * shifted;
        i_log += weight * (uval + 2.0 * s * t.ln());
        i_tan += weight * utheta * utheta;
    }
    // dσ on the radius-t half sphere = t^n cos^{n-1}φ dφ |S^{n-1}|
    let scale = om * t.powf(n as f64);
    (i_sq * scale, i_lin * scale, i_log * scale, i_tan * scale)
}

/// Dilation energy `E(λ, 0, u_e)` of a half-space field. `c_ns` is the
/// constant multiplying the boundary `e^{u_e}` term, left symbolic by the
/// extension system; callers fit it via [`yang_residuals`] or pass 1.
pub fn energy_fractional(
    field: &HalfSpaceField,
    n: u32,
    s: f64,
    lambda: f64,
    c_ns: f64,
) -> Result<FractionalEnergyBreakdown> {
    let nf = n as f64;
    if !(nf > 2.0 * s - 1.0) {
        return Err(Error::Domain(format!("energy requires n > 2s-1, got n={n}, s={s}")));
    }
    let extent = field.rho.last().unwrap().min(*field.y.last().unwrap());
    if !(lambda > 0.0) || 1.06 * lambda > extent {
        return Err(Error::Domain(format!(
            "lambda={lambda} leaves no stencil margin inside extent {extent}"
        )));
    }
    let b = field.b();
    let om = surface_area(nf);
    let grads = gradient_fields(field);
    let sq = sphere_quad(n);
    let w = delta_b_apply(field, n);

    // bulk: polar quadrature of y^b |Δ_b u_e|²; the FD field is NaN on its
    // boundary rings, so interpolation points are clamped inward
    let clamp_w = |r: f64, yy: f64| -> f64 {
        let r2 = r.clamp(0.0, field.rho[field.rho.len() - 2] * (1.0 - 1e-12));
        let y2 = yy.clamp(field.y[1] * (1.0 + 1e-12), field.y[field.y.len() - 2] * (1.0 - 1e-12));
        w.interp(r2, y2)
    };
    let (gx, gw) = gauss_legendre(16);
    let redges = quad::dyadic_up(1e-4 * lambda, lambda);
    let mut bulk = 0.0;
    for e in redges.windows(2) {
        let c = 0.5 * (e[0] + e[1]);
        let h = 0.5 * (e[1] - e[0]);
        for (x, wt) in gx.iter().zip(&gw) {
            let t = c + h * x;
            let mut slice = 0.0;
            for &(cphi, sphi, wphi) in &sq.nodes {
                let lap = clamp_w(t * cphi, t * sphi);
                slice += wphi * (t * sphi).powf(b) * lap * lap;
            }
            bulk += wt * h * slice * t.powf(nf);
        }
    }
    let bulk_dirichlet = lambda.powf(2.0 * s - nf) * 0.5 * om * bulk;

    // boundary potential from the smallest-y trace row
    let trace = |r: f64| field.interp(r, field.y[0]);
    let pedges = quad::dyadic_up(1e-6 * lambda, lambda);
    let f = |r: f64| trace(r).exp() * r.powf(nf - 1.0);
    let pot = quad::panels(&f, &pedges, 16);
    let boundary_potential = -c_ns * lambda.powf(2.0 * s - nf) * om * pot;

    let (i_sq, i_lin, i_log, i_tan) = sphere_integrals(field, &grads, &sq, n, s, lambda);
    let boundary_sq = -2.0 * lambda.powf(2.0 * s - 1.0 - nf) * i_sq;
    let log_term = -4.0 * s * (2.0 * s - 2.0 - nf) * lambda.powf(2.0 * s - 3.0 - nf) * i_log;
    let radial_deriv_term =
        -2.0 * s * (2.0 * s - 2.0 - nf) * lambda.powf(2.0 * s - 2.0 - nf) * i_lin;
    let tangential = 0.5 * lambda.powf(2.0 * s - nf - 1.0) * i_tan;

    // centered d/dr of the two bracketed sphere terms at 0.95λ and 1.05λ
    let lo = 0.95 * lambda;
    let hi = 1.05 * lambda;
    let (sq_lo, _, _, tan_lo) = sphere_integrals(field, &grads, &sq, n, s, lo);
    let (sq_hi, _, _, tan_hi) = sphere_integrals(field, &grads, &sq, n, s, hi);
    let d_dr_sq_term = 0.5
        * lambda.powi(3)
        * (hi.powf(2.0 * s - 3.0 - nf) * sq_hi - lo.powf(2.0 * s - 3.0 - nf) * sq_lo)
        / (hi - lo);
    let tangential_d_dr =
        0.5 * (hi.powf(2.0 * s - nf) * tan_hi - lo.powf(2.0 * s - nf) * tan_lo) / (hi - lo);

    let total = bulk_dirichlet + boundary_potential + boundary_sq + d_dr_sq_term + log_term
        + radial_deriv_term + tangential_d_dr + tangential;
    Ok(FractionalEnergyBreakdown {
        bulk_dirichlet,
        boundary_potential,
        boundary_sq,
        d_dr_sq_term,
        log_term,
        radial_deriv_term,
        tangential_d_dr,
        tangential,
        total,
    })
}

/// `c_s = ∫_{∂B₁⁺} y^b dσ`, the weighted measure of the unit half sphere.
pub fn weighted_half_sphere_measure(n: u32, b: f64) -> f64 {
    // |S^{n-1}| ∫_0^{π/2} sin^b φ cos^{n-1} φ dφ = |S^{n-1}| B((b+1)/2, n/2)/2
    let nf = n as f64;
    surface_area(nf)
        * 0.5
        * (lgamma((b + 1.0) / 2.0) + lgamma(nf / 2.0) - lgamma((b + 1.0) / 2.0 + nf / 2.0)).exp()
}

/// Resample a field under `u_e^λ(X) = u_e(λX) + 2s log λ` onto the subgrid
/// where `λX` stays inside the source.
pub fn rescale_field(field: &HalfSpaceField, s: f64, lambda: f64) -> Result<HalfSpaceField> {
    let rmax = *field.rho.last().unwrap();
    let ymax = *field.y.last().unwrap();
    let rho: Vec<f64> = field.rho.iter().copied().filter(|&r| lambda * r <= rmax).collect();
    let y: Vec<f64> = field
        .y
        .iter()
        .copied()
        .filter(|&v| lambda * v <= ymax && lambda * v >= field.y[0])
        .collect();
    if rho.len() < 5 || y.len() < 5 {
        return Err(Error::Domain("rescaled grid clipped too small".into()));
    }
    let shift = 2.0 * s * lambda.ln();
    let mut values = vec![0.0; rho.len() * y.len()];
    for (i, &r) in rho.iter().enumerate() {
        for (j, &yy) in y.iter().enumerate() {
            values[i * y.len() + j] = field.interp(lambda * r, lambda * yy) + shift;
        }
    }
    HalfSpaceField::new(rho, y, values, field.b())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::unit_ball_volume;

    #[test]
    fn kernel_normalization_is_one() {
        let v = kernel_normalization(5, 1.5, 1.0, 1.0).unwrap();
        assert!((v - 1.0).abs() < 1e-6, "normalization {v}");
        let v = kernel_normalization(10, 1.5, 2.0, 0.5).unwrap();
        assert!((v - 1.0).abs() < 1e-6, "normalization {v}");
    }

    #[test]
    fn constant_extends_to_itself() {
        let u = RadialFunction::constant(3.0);
        let (rho, y) = field_grids(2.0, 12);
        let f = poisson_extend(&u, 5, 1.5, rho, y).unwrap();
        for i in 0..f.rho().len() {
            for j in 0..f.y().len() {
                assert!((f.get(i, j) - 3.0).abs() < 1e-8, "node ({i},{j}) = {}", f.get(i, j));
            }
        }
    }

    #[test]
    fn trace_consistency_for_bump() {
        let u = RadialFunction::gaussian_bump(1.0, 1.0, 0.4);
        let (rho, y) = field_grids(4.0, 32);
        let f = poisson_extend(&u, 5, 1.5, rho, y).unwrap();
        for &r in f.rho().iter().filter(|&&r| (0.1..=3.0).contains(&r)) {
            let got = f.interp(r, f.y()[0]);
            let want = u.eval(r);
            assert!(
                (got - want).abs() < 1e-3 * want.abs().max(1.0),
                "trace at rho={r}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn singular_extension_is_homogeneous() {
        // u_e(λX) + 2s log λ depends only on the polar angle
        let (n, s) = (10u32, 1.5);
        let a = crate::constants::nonlinear_coefficient(
            crate::constants::ParamPoint::new(n as f64, s).unwrap(),
        );
        let u = RadialFunction::log_family(-2.0 * s, a.ln());
        for phi in [0.3f64, 0.8, 1.2] {
            let vals: Vec<f64> = [1.0, 2.0, 4.0]
                .iter()
                .map(|&t: &f64| {
                    poisson_node(&u, n, s, t * phi.cos(), t * phi.sin(), 12) + 2.0 * s * t.ln()
                })
                .collect();
            for v in &vals {
                assert!(
                    (v - vals[0]).abs() < 1e-2 * vals[0].abs().max(1.0),
                    "homogeneity violated at phi={phi}: {vals:?}"
                );
            }
        }
        let v = poisson_node(&u, n, s, 0.0, 1.0, 12);
        assert!(v.is_finite());
    }

    #[test]
    fn delta_b_on_polynomials() {
        let (n, s) = (5u32, 1.5);
        let b = b_weight(s);
        let (rho, y) = field_grids(2.0, 24);
        let f = HalfSpaceField::from_fn(rho.clone(), y.clone(), b, |_, yy| yy * yy).unwrap();
        let lap = delta_b_apply(&f, n);
        let want = 2.0 + 2.0 * b;
        let v = lap.get(6, 12);
        assert!((v - want).abs() < 1e-6 * want.abs().max(1.0), "y²: {v} vs {want}");

        let f = HalfSpaceField::from_fn(rho.clone(), y.clone(), b, |r, _| r * r).unwrap();
        let lap = delta_b_apply(&f, n);
        let v = lap.get(6, 12);
        assert!((v - 2.0 * n as f64).abs() < 1e-6, "ρ²: {v} vs {}", 2.0 * n as f64);

        // y^{1-b} lies in the kernel of the y-part of Δ_b; probe on a fine
        // band away from y -> 0 where the FD truncation drops below 1e-6
        let s2 = 1.25;
        let b2 = b_weight(s2);
        let mut fine_y = vec![1e-3];
        fine_y.extend((0..=800).map(|k| 0.5 + k as f64 / 800.0));
        let rho2: Vec<f64> = (0..8).map(|k| 0.5 + 0.25 * k as f64).collect();
        let f = HalfSpaceField::from_fn(rho2, fine_y, b2, |_, yy| yy.powf(1.0 - b2)).unwrap();
        let lap = delta_b_apply(&f, n);
        for j in 200..600 {
            // subtract the exact radial part (zero for a y-only function)
            let v = lap.get(3, j);
            assert!(v.abs() <= 1e-6, "y^(1-b) residual {v} at row {j}");
        }
    }

    #[test]
    fn yang_residuals_zero_function() {
        let u = RadialFunction::constant(0.0);
        let res = yang_residuals(&u, 5, 1.5, 2.0, 16).unwrap();
        assert!(res.interior <= 1e-8, "interior {}", res.interior);
        assert!(res.neumann <= 1e-8, "neumann {}", res.neumann);
        assert!(res.source.is_none(), "shape test should be skipped");
    }

    #[test]
    fn yang_residuals_refine_for_bump() {
        let u = RadialFunction::gaussian_bump(1.0, 1.0, 0.4);
        let coarse = yang_residuals(&u, 5, 1.5, 4.0, 48).unwrap();
        let fine = yang_residuals(&u, 5, 1.5, 4.0, 96).unwrap();
        assert!(
            coarse.interior / fine.interior >= 3.0,
            "refinement ratio {} (coarse {}, fine {})",
            coarse.interior / fine.interior,
            coarse.interior,
            fine.interior
        );
    }

    #[test]
    fn yang_source_shape_for_singular() {
        let (n, s) = (10u32, 1.5);
        let a = crate::constants::nonlinear_coefficient(
            crate::constants::ParamPoint::new(n as f64, s).unwrap(),
        );
        let u = RadialFunction::log_family(-2.0 * s, a.ln());
        let res = yang_residuals(&u, n, s, 4.0, 32).unwrap();
        let dev = res.source.expect("source trace should be nonzero");
        assert!(dev <= 5e-2, "shape deviation {dev}");
    }

    #[test]
    fn zero_field_energy_closed_form() {
        let (n, s) = (10u32, 1.5);
        let b = b_weight(s);
        let (rho, y) = field_grids(4.0, 40);
        let field = HalfSpaceField::from_fn(rho, y, b, |_, _| 0.0).unwrap();
        let cs = weighted_half_sphere_measure(n, b);
        let c_ns = 0.7;
        for lambda in [1.0, 2.0] {
            let e = energy_fractional(&field, n, s, lambda, c_ns).unwrap();
            let nf = n as f64;
            let want = -c_ns * unit_ball_volume(nf) * lambda.powf(2.0 * s)
                - 8.0 * s * s * cs
                - 4.0 * s * s * cs
                - 8.0 * s * s * (2.0 * s - 2.0 - nf) * cs * lambda.ln()
                - 4.0 * s * s * (2.0 * s - 2.0 - nf) * cs;
            assert!(
                ((e.total - want) / want.abs()).abs() < 2e-2,
                "lambda={lambda}: {} vs {want}",
                e.total
            );
            let sum = e.bulk_dirichlet + e.boundary_potential + e.boundary_sq + e.d_dr_sq_term
                + e.log_term + e.radial_deriv_term + e.tangential_d_dr + e.tangential;
            assert!(((sum - e.total) / e.total.abs().max(1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn singular_extension_energy_constant() {
        let (n, s) = (10u32, 1.5);
        let a = crate::constants::nonlinear_coefficient(
            crate::constants::ParamPoint::new(n as f64, s).unwrap(),
        );
        let u = RadialFunction::log_family(-2.0 * s, a.ln());
        let (rho, y) = field_grids(4.2, 48);
        let field = poisson_extend(&u, n, s, rho, y).unwrap();
        let e1 = energy_fractional(&field, n, s, 1.0, 1.0).unwrap().total;
        let e2 = energy_fractional(&field, n, s, 2.0, 1.0).unwrap().total;
        let dev = (e1 - e2).abs() / e1.abs().max(e2.abs());
        assert!(dev <= 5e-2, "E(1)={e1}, E(2)={e2}, dev={dev}");
    }

    #[test]
    fn rescaling_identity_on_smooth_field() {
        let (n, s) = (10u32, 1.5);
        let u = RadialFunction::gaussian_bump(1.0, 1.0, 0.5);
        let (rho, y) = field_grids(4.2, 48);
        let field = poisson_extend(&u, n, s, rho, y).unwrap();
        let lam = 2.0;
        let lhs = energy_fractional(&field, n, s, lam, 1.0).unwrap().total;
        let scaled = rescale_field(&field, s, lam).unwrap();
        let rhs = energy_fractional(&scaled, n, s, 1.0, 1.0).unwrap().total;
        let denom = lhs.abs().max(rhs.abs()).max(1.0);
        assert!(((lhs - rhs) / denom).abs() < 5e-2, "E(2)={lhs} vs E(1, rescaled)={rhs}");
    }
}

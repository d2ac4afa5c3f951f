//! Radial profiles on log-spaced grids with derivative access up to order 4.
//!
//! Reconstruction interpolates locally in `x = log r` (degree 6 through the
//! 7 nearest nodes) and converts `d/dx` derivatives to `d/dr`. Profiles
//! whose nodes carry stored derivative arrays (closed forms, ODE output)
//! interpolate those arrays directly instead.

use crate::{Error, Result};

/// Strictly increasing log-spaced grid on `[r_min, r_max]`.
pub fn log_grid(r_min: f64, r_max: f64, count: usize) -> Vec<f64> {
    assert!(r_min > 0.0 && r_max > r_min && count >= 2);
    let (a, b) = (r_min.ln(), r_max.ln());
    (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

/// Initial data of a profile regular at the origin: `u(0)` and `Δu(0)`
/// (odd-order derivatives vanish by radial symmetry).
#[derive(Debug, Clone, Copy)]
pub struct OriginData {
    pub u0: f64,
    pub v0: f64,
}

/// A radial function sampled on a log grid.
#[derive(Debug, Clone)]
pub struct RadialProfile {
    grid: Vec<f64>,
    values: Vec<f64>,
    /// Per-node `[u', u'', u''', u'''']` when known exactly.
    derivs: Option<Vec<[f64; 4]>>,
    pub origin: Option<OriginData>,
    /// Tagged `u ~ -4 log r + c` toward the origin (singular family).
    pub log_type: bool,
}

impl RadialProfile {
    pub fn from_values(grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if grid.len() != values.len() || grid.len() < 7 {
            return Err(Error::Domain(format!(
                "profile needs >= 7 matching nodes, got {}/{}",
                grid.len(),
                values.len()
            )));
        }
        if grid.windows(2).any(|w| w[1] <= w[0]) || grid[0] <= 0.0 {
            return Err(Error::Domain("grid must be positive and strictly increasing".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("profile values must be finite".into()));
        }
        Ok(RadialProfile { grid, values, derivs: None, origin: None, log_type: false })
    }

    pub fn with_derivs(mut self, derivs: Vec<[f64; 4]>) -> Result<Self> {
        if derivs.len() != self.grid.len() {
            return Err(Error::Domain("derivative array length mismatch".into()));
        }
        self.derivs = Some(derivs);
        Ok(self)
    }

    pub fn with_origin(mut self, origin: OriginData) -> Self {
        self.origin = Some(origin);
        self
    }

    pub fn tagged_log_type(mut self) -> Self {
        self.log_type = true;
        self
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn r_min(&self) -> f64 {
        self.grid[0]
    }

    pub fn r_max(&self) -> f64 {
        *self.grid.last().unwrap()
    }

    fn window(&self, r: f64, len: usize) -> std::ops::Range<usize> {
        let m = self.grid.len();
        let j = self.grid.partition_point(|&g| g < r);
        let lo = j.saturating_sub(len / 2).min(m - len);
        lo..lo + len
    }

    /// `u(r)`.
    pub fn eval(&self, r: f64) -> f64 {
        self.check_range(r);
        let w = self.window(r, 7);
        newton_derivs(&self.grid[w.clone()], &self.values[w], r, 0)[0]
    }

    /// `d^k u / dr^k` for `k` in `1..=4`.
    pub fn deriv(&self, r: f64, k: usize) -> f64 {
        assert!((1..=4).contains(&k));
        self.check_range(r);
        if let Some(d) = &self.derivs {
            let w = self.window(r, 6);
            let col: Vec<f64> = d[w.clone()].iter().map(|row| row[k - 1]).collect();
            return newton_derivs(&self.grid[w], &col, r, 0)[0];
        }
        // interpolate in x = log r, then convert d/dx -> d/dr
        let w = self.window(r, 7);
        let xs: Vec<f64> = self.grid[w.clone()].iter().map(|g| g.ln()).collect();
        let d = newton_derivs(&xs, &self.values[w], r.ln(), 4);
        let (u1, u2, u3, u4) = (d[1], d[2], d[3], d[4]);
        match k {
            1 => u1 / r,
            2 => (u2 - u1) / (r * r),
            3 => (u3 - 3.0 * u2 + 2.0 * u1) / (r * r * r),
            _ => (u4 - 6.0 * u3 + 11.0 * u2 - 6.0 * u1) / (r * r * r * r),
        }
    }

    /// Radial Laplacian `u'' + (n-1) u'/r`.
    pub fn laplacian(&self, r: f64, n: u32) -> f64 {
        self.deriv(r, 2) + (n as f64 - 1.0) * self.deriv(r, 1) / r
    }

    fn check_range(&self, r: f64) {
        assert!(
            r >= self.r_min() * (1.0 - 1e-12) && r <= self.r_max() * (1.0 + 1e-12),
            "r={r} outside profile range [{}, {}]",
            self.r_min(),
            self.r_max()
        );
    }
}

/// Value and first `max_deriv` derivatives at `x` of the Newton
/// interpolating polynomial through `(xs, ys)`.
fn newton_derivs(xs: &[f64], ys: &[f64], x: f64, max_deriv: usize) -> [f64; 5] {
    let m = xs.len();
    debug_assert!(m >= 2 && max_deriv <= 4);
    // divided differences in place
    let mut c = ys.to_vec();
    for j in 1..m {
        for i in (j..m).rev() {
            c[i] = (c[i] - c[i - 1]) / (xs[i] - xs[i - j]);
        }
    }
    // Horner in Newton form, propagating derivatives
    let mut d = [0.0f64; 5];
    d[0] = c[m - 1];
    for i in (0..m - 1).rev() {
        let dx = x - xs[i];
        for k in (1..=max_deriv).rev() {
            d[k] = d[k] * dx + k as f64 * d[k - 1];
        }
        d[0] = d[0] * dx + c[i];
    }
    d
}

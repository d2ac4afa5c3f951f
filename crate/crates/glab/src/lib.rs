//! Numerical laboratory for the stability theory of the Gelfand-Liouville
//! equation `(-Δ)^s u = e^u` with `1 < s ≤ 2`.
//!
//! The crate computes and cross-checks every desk-scale quantity of that
//! theory: sharp Hardy and Hardy-Rellich constants, the singular-solution
//! coefficient, critical stability dimensions, Moser-iteration exponent
//! ladders, principal-value quadrature for the radial fractional Laplacian,
//! the Fall double-integral representation of the Hardy constant, cutoff
//! log-coefficient extraction, radial biharmonic shooting, and the
//! dilation-monotone energy functionals in both the local (`s = 2`) and
//! extension (`1 < s < 2`) settings.
//!
//! Each capability has a runnable demo under `examples/`, a `glab`
//! subcommand, and an acceptance criterion in `tests/acceptance.rs`.

pub mod acceptance;
pub mod biharmonic;
pub mod cli;
pub mod constants;
pub mod critdim;
pub mod exponents;
pub mod extension;
pub mod fraclap;
pub mod quad;
pub mod radial;
pub mod solve;
pub mod specfun;
pub mod stability;

mod ode;

use thiserror::Error;

/// Crate-wide error type. The CLI maps variants onto exit codes:
/// domain errors exit 2, numerical failures exit 3, I/O exits 4.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no root of {what} found on ({lo}, {hi}]")]
    NoRoot { what: String, lo: f64, hi: f64 },
    #[error("quadrature failed to converge: {0}")]
    NonConvergence(String),
    #[error("target exceeds alpha_bar={alpha_bar}")]
    UnreachableTarget { target: f64, alpha_bar: f64 },
    #[error("outcome undecided: {0}")]
    Undecided(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// CLI exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) => 2,
            Error::NoRoot { .. }
            | Error::NonConvergence(_)
            | Error::UnreachableTarget { .. }
            | Error::Undecided(_) => 3,
            Error::Io(_) | Error::Parse(_) => 4,
        }
    }
}

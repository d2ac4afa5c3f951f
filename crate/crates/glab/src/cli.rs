//! Command-line front end: parameter sweeps, table emission, and the
//! acceptance-suite driver. Flags are long-form only and lists are
//! comma-separated; identical configurations produce byte-identical CSV
//! bodies (the metadata comment line aside).
//!
//! Exit codes: 0 success, 2 domain error, 3 numerical non-convergence or
//! unreachable target, 4 I/O error.

use crate::biharmonic::{
    bisect_initial_slope, energy_local, radial_bilaplacian_residual, shoot_radial,
    singular_profile,
};
use crate::constants::{
    b_weight, nonlinear_coefficient, ConstantBundle, ParamPoint,
};
use crate::critdim::{critical_curve, critical_dimension, fourth_order_threshold};
use crate::exponents::{bootstrap_ladder, moser_cubic_roots, Flavor};
use crate::extension::{
    energy_fractional, field_grids, poisson_extend, yang_residuals, HalfSpaceField,
};
use crate::fraclap::{fall_hardy_integral, radial_frac_lap, RadialFunction};
use crate::radial::{log_grid, RadialProfile};
use crate::stability::{
    cutoff_log_coefficient, homogeneous_comparison, rellich_family_sign, Cutoff, Tau,
};
use crate::{acceptance, Error, Result};
use clap::{Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "glab", version, about = "numerical laboratory for Gelfand-Liouville stability theory")]
pub struct RunConfig {
    #[command(subcommand)]
    command: Command,
    /// Output path; standard output when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Fractional,
    Local,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundaryKind {
    Singular,
    Zero,
    Bump,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form constants at a parameter point.
    Constants {
        #[arg(long)]
        n: f64,
        #[arg(long)]
        s: f64,
    },
    /// Critical stability dimension n0(s).
    Critdim {
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Tabulate n0 over an even grid of s values.
    CritdimCurve {
        #[arg(long, default_value_t = 1.0)]
        s_min: f64,
        #[arg(long, default_value_t = 2.0)]
        s_max: f64,
        #[arg(long, default_value_t = 21)]
        steps: usize,
    },
    /// Largest root of the fourth-order threshold polynomial.
    Quartic,
    /// Roots of the Moser iteration cubic.
    Exponents,
    /// Bootstrap exponent ladder trace.
    Ladder {
        #[arg(long)]
        n: f64,
        #[arg(long)]
        s: f64,
        #[arg(long)]
        target: f64,
        #[arg(long, value_enum, default_value_t = FlavorArg::Fractional)]
        flavor: FlavorArg,
    },
    /// Fractional-Laplacian quadrature checks.
    Fraclap {
        #[command(subcommand)]
        sub: FraclapCmd,
    },
    /// Fall double-integral value of the Hardy constant.
    HardyIntegral {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 1e-4)]
        rtol: f64,
    },
    /// Stability tests.
    Stability {
        #[command(subcommand)]
        sub: StabilityCmd,
    },
    /// Fourth-order radial machinery.
    Biharmonic {
        #[command(subcommand)]
        sub: BiharmonicCmd,
    },
    /// Half-space extension machinery.
    Extension {
        #[command(subcommand)]
        sub: ExtensionCmd,
    },
    /// Run the full acceptance suite and print one pass/fail row each.
    Acceptance,
}

#[derive(Subcommand)]
enum FraclapCmd {
    /// Verify the log-family identity against the closed form.
    VerifyLog {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 1e-4)]
        rtol: f64,
    },
}

#[derive(Subcommand)]
enum StabilityCmd {
    /// Homogeneous-solution comparison.
    Homogeneous {
        #[arg(long)]
        n: f64,
        #[arg(long)]
        s: f64,
        /// Constant angular part; defaults to log A so the verdict reads
        /// the sign of Lambda - A.
        #[arg(long, allow_hyphen_values = true)]
        tau_const: Option<f64>,
    },
    /// Hardy-Rellich sign sweep.
    Rellich {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "0.05,0.02,0.01")]
        eps: String,
    },
    /// Cutoff log-coefficient sweep.
    Cutoff {
        #[arg(long, default_value = "0.1,0.01,0.001")]
        eps: String,
    },
}

#[derive(Subcommand)]
enum BiharmonicCmd {
    /// Integrate the radial system from the origin; emits r,u rows.
    Shoot {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<f64>,
        /// Bisect the initial Laplacian between "lo,hi" instead of a fixed b.
        #[arg(long, allow_hyphen_values = true)]
        bisect_b: Option<String>,
        #[arg(long, default_value_t = 30.0)]
        rmax: f64,
    },
    /// Dilation energy of a stored profile at the given radii.
    Energy {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        profile: PathBuf,
        #[arg(long, default_value = "1,2,4")]
        r_list: String,
        /// Treat the profile as a member of the singular family near 0.
        #[arg(long, default_value_t = false)]
        log_type: bool,
    },
    /// Weighted bilaplacian residual of a profile (default: the singular
    /// solution on a standard grid).
    Residual {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        profile: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ExtensionCmd {
    /// Build an extension field; emits rho,y,value rows.
    Build {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: f64,
        #[arg(long, value_enum)]
        u: BoundaryKind,
        #[arg(long, default_value_t = 4.2)]
        extent: f64,
        #[arg(long, default_value_t = 48)]
        nodes: usize,
    },
    /// Dilation energy of a stored field at the given radii.
    Energy {
        #[arg(long)]
        field: PathBuf,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: f64,
        #[arg(long, default_value = "1,2")]
        lambda_list: String,
        #[arg(long, default_value_t = 1.0)]
        c_ns: f64,
    },
    /// Residual diagnostics of the extension system.
    Residuals {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: f64,
        #[arg(long, value_enum)]
        u: BoundaryKind,
        #[arg(long, default_value_t = 4.0)]
        extent: f64,
        #[arg(long, default_value_t = 32)]
        nodes: usize,
    },
}

#[derive(Clone)]
enum Field {
    F(f64),
    I(i64),
    S(String),
}

impl Field {
    fn to_csv(&self) -> String {
        match self {
            Field::F(x) => format_float(*x),
            Field::I(i) => i.to_string(),
            Field::S(s) => s.clone(),
        }
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            Field::F(x) => serde_json::json!(x),
            Field::I(i) => serde_json::json!(i),
            Field::S(s) => serde_json::json!(s),
        }
    }
}

fn format_float(x: f64) -> String {
    if x == x.trunc() && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else if x.abs() >= 1e-4 && x.abs() < 1e9 {
        format!("{x:.6}")
    } else {
        format!("{x:.6e}")
    }
}

struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Field>>,
    meta: String,
}

impl Table {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut out = String::new();
                out.push_str(&format!(
                    "# {}, version={}\n",
                    self.meta,
                    env!("CARGO_PKG_VERSION")
                ));
                out.push_str(&self.columns.join(","));
                out.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Field::to_csv).collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let arr: Vec<serde_json::Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: serde_json::Map<String, serde_json::Value> = self
                            .columns
                            .iter()
                            .zip(row)
                            .map(|(c, f)| (c.to_string(), f.to_json()))
                            .collect();
                        serde_json::Value::Object(obj)
                    })
                    .collect();
                let mut s = serde_json::to_string_pretty(&arr).expect("json render");
                s.push('\n');
                s
            }
        }
    }
}

fn parse_list(text: &str, what: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad {what} entry: {t:?}")))
        })
        .collect()
}

fn read_named_csv(path: &PathBuf, want_header: &str) -> Result<Vec<Vec<f64>>> {
    let text = std::fs::read_to_string(path)?;
    let mut rows = Vec::new();
    let mut saw_header = false;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !saw_header {
            if line != want_header {
                return Err(Error::Parse(format!(
                    "{} must start with header {want_header:?}, found {line:?}",
                    path.display()
                )));
            }
            saw_header = true;
            continue;
        }
        let cells: std::result::Result<Vec<f64>, _> =
            line.split(',').map(|c| c.trim().parse::<f64>()).collect();
        match cells {
            Ok(v) if v.len() == want_header.split(',').count() => rows.push(v),
            _ => return Err(Error::Parse(format!("bad row in {}: {line:?}", path.display()))),
        }
    }
    if !saw_header {
        return Err(Error::Parse(format!("{} is missing its header row", path.display())));
    }
    Ok(rows)
}

fn load_profile(path: &PathBuf, log_type: bool) -> Result<RadialProfile> {
    let rows = read_named_csv(path, "r,u")?;
    let grid: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    let values: Vec<f64> = rows.iter().map(|r| r[1]).collect();
    let p = RadialProfile::from_values(grid, values)?;
    Ok(if log_type { p.tagged_log_type() } else { p })
}

fn load_field(path: &PathBuf, s: f64) -> Result<HalfSpaceField> {
    let rows = read_named_csv(path, "rho,y,value")?;
    let mut rho: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    let mut y: Vec<f64> = rows.iter().map(|r| r[1]).collect();
    rho.sort_by(|a, b| a.partial_cmp(b).unwrap());
    rho.dedup();
    y.sort_by(|a, b| a.partial_cmp(b).unwrap());
    y.dedup();
    if rows.len() != rho.len() * y.len() {
        return Err(Error::Parse(format!(
            "{} is not a complete tensor grid ({} rows for {}x{})",
            path.display(),
            rows.len(),
            rho.len(),
            y.len()
        )));
    }
    let mut values = vec![f64::NAN; rho.len() * y.len()];
    for r in &rows {
        let i = rho.partition_point(|&v| v < r[0]);
        let j = y.partition_point(|&v| v < r[1]);
        values[i * y.len() + j] = r[2];
    }
    HalfSpaceField::new(rho, y, values, b_weight(s))
}

fn boundary_function(kind: BoundaryKind, n: u32, s: f64) -> Result<RadialFunction> {
    Ok(match kind {
        BoundaryKind::Singular => {
            let a = nonlinear_coefficient(ParamPoint::new(n as f64, s)?);
            RadialFunction::log_family(-2.0 * s, a.ln())
        }
        BoundaryKind::Zero => RadialFunction::constant(0.0),
        BoundaryKind::Bump => RadialFunction::gaussian_bump(1.0, 1.0, 0.4),
    })
}

fn energy_columns() -> Vec<&'static str> {
    vec![
        "r",
        "bulk_dirichlet",
        "bulk_potential",
        "boundary_sq",
        "d_dr_sq_term",
        "log_term",
        "radial_deriv_term",
        "total",
    ]
}

fn run_command(cmd: &Command) -> Result<Table> {
    match cmd {
        Command::Constants { n, s } => {
            let p = ParamPoint::new(*n, *s)?;
            let b = ConstantBundle::compute(p)?;
            let opt = |v: Option<f64>| v.map(Field::F).unwrap_or(Field::S(String::new()));
            Ok(Table {
                columns: vec![
                    "n",
                    "s",
                    "hardy",
                    "coeff",
                    "frac_lap_norm",
                    "poisson_norm",
                    "neumann_norm",
                    "b",
                ],
                rows: vec![vec![
                    Field::F(*n),
                    Field::F(*s),
                    Field::F(b.hardy),
                    Field::F(b.coeff),
                    opt(b.frac_lap_norm),
                    Field::F(b.poisson_norm),
                    opt(b.neumann_norm),
                    Field::F(b.b),
                ]],
                meta: format!("n={n}, s={s}"),
            })
        }
        Command::Critdim { s, tol } => {
            let r = critical_dimension(*s, *tol)?;
            Ok(Table {
                columns: vec!["s", "n0", "residual", "iterations"],
                rows: vec![vec![
                    Field::F(*s),
                    Field::F(r.root),
                    Field::F(r.residual),
                    Field::I(r.iterations as i64),
                ]],
                meta: format!("s={s}, tol={tol}"),
            })
        }
        Command::CritdimCurve { s_min, s_max, steps } => {
            let rows = critical_curve(*s_min, *s_max, *steps)?;
            Ok(Table {
                columns: vec!["s", "n0", "residual", "iterations"],
                rows: rows
                    .iter()
                    .map(|r| {
                        vec![
                            Field::F(r.s),
                            Field::F(r.n0),
                            Field::F(r.residual),
                            Field::I(r.iterations as i64),
                        ]
                    })
                    .collect(),
                meta: format!("s_min={s_min}, s_max={s_max}, steps={steps}"),
            })
        }
        Command::Quartic => {
            let r = fourth_order_threshold();
            Ok(Table {
                columns: vec!["root", "residual", "iterations"],
                rows: vec![vec![
                    Field::F(r.root),
                    Field::F(r.residual),
                    Field::I(r.iterations as i64),
                ]],
                meta: "largest root of n^3 - 4n^2 - 128n + 256".into(),
            })
        }
        Command::Exponents => {
            let r = moser_cubic_roots();
            Ok(Table {
                columns: vec!["alpha_sharp", "alpha_star", "alpha_neg"],
                rows: vec![vec![
                    Field::F(r.alpha_sharp),
                    Field::F(r.alpha_star),
                    Field::F(r.alpha_neg),
                ]],
                meta: "roots of X^3 - 8X + 4".into(),
            })
        }
        Command::Ladder { n, s, target, flavor } => {
            let flavor = match flavor {
                FlavorArg::Fractional => Flavor::Fractional,
                FlavorArg::Local => Flavor::Local,
            };
            let trace = bootstrap_ladder(*n, *s, *target, flavor)?;
            Ok(Table {
                columns: vec!["step", "alpha", "rule"],
                rows: trace
                    .steps
                    .iter()
                    .enumerate()
                    .map(|(i, st)| {
                        vec![
                            Field::I(i as i64),
                            Field::F(st.exponent),
                            Field::S(st.rule.label().to_string()),
                        ]
                    })
                    .collect(),
                meta: format!("n={n}, s={s}, target={target}, reached={}", trace.reached),
            })
        }
        Command::Fraclap { sub } => match sub {
            FraclapCmd::VerifyLog { n, t, r, rtol } => {
                let u = RadialFunction::log_family(-2.0 * t, 0.0);
                let value = radial_frac_lap(&u, *n, *t, *r, *rtol)?;
                let reference =
                    nonlinear_coefficient(ParamPoint::new(*n as f64, *t)?) / r.powf(2.0 * t);
                Ok(Table {
                    columns: vec!["n", "t", "r", "value", "reference", "rel_error"],
                    rows: vec![vec![
                        Field::I(*n as i64),
                        Field::F(*t),
                        Field::F(*r),
                        Field::F(value),
                        Field::F(reference),
                        Field::F((value - reference) / reference),
                    ]],
                    meta: format!("n={n}, t={t}, r={r}, rtol={rtol}"),
                })
            }
        },
        Command::HardyIntegral { n, s, rtol } => {
            let value = fall_hardy_integral(*n, *s, *rtol)?;
            let reference = crate::constants::hardy_constant(ParamPoint::new(*n as f64, *s)?);
            Ok(Table {
                columns: vec!["n", "s", "value", "reference", "rel_error"],
                rows: vec![vec![
                    Field::I(*n as i64),
                    Field::F(*s),
                    Field::F(value),
                    Field::F(reference),
                    Field::F((value - reference) / reference),
                ]],
                meta: format!("n={n}, s={s}, rtol={rtol}"),
            })
        }
        Command::Stability { sub } => match sub {
            StabilityCmd::Homogeneous { n, s, tau_const } => {
                let tau = match tau_const {
                    Some(t) => *t,
                    None => nonlinear_coefficient(ParamPoint::new(*n, *s)?).ln(),
                };
                let rep = homogeneous_comparison(*n, *s, &Tau::Constant(tau))?;
                Ok(Table {
                    columns: vec!["n", "s", "tau", "lhs_coeff", "rhs_coeff", "stable_possible"],
                    rows: vec![vec![
                        Field::F(*n),
                        Field::F(*s),
                        Field::F(tau),
                        Field::F(rep.lhs_coeff),
                        Field::F(rep.rhs_coeff),
                        Field::S(rep.stable_possible.to_string()),
                    ]],
                    meta: format!("n={n}, s={s}, tau={tau}"),
                })
            }
            StabilityCmd::Rellich { n, eps } => {
                let eps = parse_list(eps, "eps")?;
                let sweep = rellich_family_sign(*n, &eps, &Cutoff::default())?;
                Ok(Table {
                    columns: vec!["eps", "q_per_sphere", "log_coefficient"],
                    rows: sweep
                        .rows
                        .iter()
                        .map(|&(e, q)| {
                            vec![Field::F(e), Field::F(q), Field::F(sweep.log_coefficient)]
                        })
                        .collect(),
                    meta: format!("n={n}, sign={}", if sweep.log_coefficient < 0.0 { "-" } else { "+" }),
                })
            }
            StabilityCmd::Cutoff { eps } => {
                let eps = parse_list(eps, "eps")?;
                let sweep = cutoff_log_coefficient(&eps, &Cutoff::default())?;
                Ok(Table {
                    columns: vec!["eps", "integral", "slope"],
                    rows: sweep
                        .rows
                        .iter()
                        .map(|&(e, v)| vec![Field::F(e), Field::F(v), Field::F(sweep.slope)])
                        .collect(),
                    meta: format!("slope={}", sweep.slope),
                })
            }
        },
        Command::Biharmonic { sub } => match sub {
            BiharmonicCmd::Shoot { n, a, b, bisect_b, rmax } => {
                let (profile, outcome, b_used) = match (b, bisect_b) {
                    (Some(b), None) => {
                        let (p, o) = shoot_radial(*n, *a, *b, *rmax)?;
                        (p, o, *b)
                    }
                    (None, Some(range)) => {
                        let ends = parse_list(range, "bisect-b")?;
                        if ends.len() != 2 {
                            return Err(Error::Parse("--bisect-b needs exactly lo,hi".into()));
                        }
                        let res = bisect_initial_slope(*n, *a, ends[0], ends[1], *rmax)?;
                        (res.profile, res.outcome, res.b_star)
                    }
                    _ => {
                        return Err(Error::Parse(
                            "pass exactly one of --b or --bisect-b lo,hi".into(),
                        ))
                    }
                };
                Ok(Table {
                    columns: vec!["r", "u"],
                    rows: profile
                        .grid()
                        .iter()
                        .zip(profile.values())
                        .map(|(&r, &u)| vec![Field::F(r), Field::F(u)])
                        .collect(),
                    meta: format!("n={n}, a={a}, b={b_used}, rmax={rmax}, outcome={outcome:?}"),
                })
            }
            BiharmonicCmd::Energy { n, profile, r_list, log_type } => {
                let p = load_profile(profile, *log_type)?;
                let radii = parse_list(r_list, "r-list")?;
                let mut rows = Vec::new();
                for r in radii {
                    let e = energy_local(&p, *n, r)?;
                    rows.push(vec![
                        Field::F(r),
                        Field::F(e.bulk_dirichlet),
                        Field::F(e.bulk_potential),
                        Field::F(e.boundary_sq),
                        Field::F(e.d_dr_sq_term),
                        Field::F(e.log_term),
                        Field::F(e.radial_deriv_term),
                        Field::F(e.total),
                    ]);
                }
                Ok(Table {
                    columns: energy_columns(),
                    rows,
                    meta: format!("n={n}, profile={}", profile.display()),
                })
            }
            BiharmonicCmd::Residual { n, profile } => {
                let p = match profile {
                    Some(path) => load_profile(path, false)?,
                    None => singular_profile(*n, log_grid(1e-3, 10.0, 4096))?,
                };
                let res = radial_bilaplacian_residual(&p, *n)?;
                Ok(Table {
                    columns: vec!["n", "residual"],
                    rows: vec![vec![Field::I(*n as i64), Field::F(res)]],
                    meta: format!(
                        "n={n}, profile={}",
                        profile
                            .as_ref()
                            .map(|p| p.display().to_string())
                            .unwrap_or_else(|| "singular".into())
                    ),
                })
            }
        },
        Command::Extension { sub } => match sub {
            ExtensionCmd::Build { n, s, u, extent, nodes } => {
                let bf = boundary_function(*u, *n, *s)?;
                let (rho, y) = field_grids(*extent, *nodes);
                let field = poisson_extend(&bf, *n, *s, rho, y)?;
                let mut rows = Vec::with_capacity(field.rho().len() * field.y().len());
                for (i, &r) in field.rho().iter().enumerate() {
                    for (j, &yy) in field.y().iter().enumerate() {
                        rows.push(vec![Field::F(r), Field::F(yy), Field::F(field.get(i, j))]);
                    }
                }
                Ok(Table {
                    columns: vec!["rho", "y", "value"],
                    rows,
                    meta: format!("n={n}, s={s}, extent={extent}, nodes={nodes}"),
                })
            }
            ExtensionCmd::Energy { field, n, s, lambda_list, c_ns } => {
                let f = load_field(field, *s)?;
                let lambdas = parse_list(lambda_list, "lambda-list")?;
                let mut rows = Vec::new();
                for lam in lambdas {
                    let e = energy_fractional(&f, *n, *s, lam, *c_ns)?;
                    rows.push(vec![
                        Field::F(lam),
                        Field::F(e.bulk_dirichlet),
                        Field::F(e.boundary_potential),
                        Field::F(e.boundary_sq),
                        Field::F(e.d_dr_sq_term),
                        Field::F(e.log_term),
                        Field::F(e.radial_deriv_term),
                        Field::F(e.tangential_d_dr),
                        Field::F(e.tangential),
                        Field::F(e.total),
                    ]);
                }
                Ok(Table {
                    columns: vec![
                        "lambda",
                        "bulk_dirichlet",
                        "boundary_potential",
                        "boundary_sq",
                        "d_dr_sq_term",
                        "log_term",
                        "radial_deriv_term",
                        "tangential_d_dr",
                        "tangential",
                        "total",
                    ],
                    rows,
                    meta: format!("n={n}, s={s}, c_ns={c_ns}, field={}", field.display()),
                })
            }
            ExtensionCmd::Residuals { n, s, u, extent, nodes } => {
                let bf = boundary_function(*u, *n, *s)?;
                let res = yang_residuals(&bf, *n, *s, *extent, *nodes)?;
                let opt = |v: Option<f64>| v.map(Field::F).unwrap_or(Field::S(String::new()));
                Ok(Table {
                    columns: vec!["interior", "neumann", "source", "source_constant"],
                    rows: vec![vec![
                        Field::F(res.interior),
                        Field::F(res.neumann),
                        opt(res.source),
                        opt(res.source_constant),
                    ]],
                    meta: format!("n={n}, s={s}, extent={extent}, nodes={nodes}"),
                })
            }
        },
        Command::Acceptance => unreachable!("handled by main"),
    }
}

fn configure_threads() {
    if let Ok(v) = std::env::var("GLAB_THREADS") {
        if let Ok(k) = v.parse::<usize>() {
            if k >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
        }
    }
}

/// Parse arguments, dispatch, and return the process exit code.
pub fn main() -> i32 {
    let config = RunConfig::parse();
    configure_threads();

    if matches!(config.command, Command::Acceptance) {
        let reports = acceptance::run_all();
        let mut all_pass = true;
        for r in &reports {
            println!("{}", acceptance::format_report(r));
            all_pass &= r.passed;
        }
        return if all_pass { 0 } else { 3 };
    }

    match run_command(&config.command) {
        Ok(table) => {
            let rendered = table.render(config.format);
            match &config.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, rendered) {
                        eprintln!("glab: i/o error: {e}");
                        return 4;
                    }
                }
                None => {
                    let mut stdout = std::io::stdout().lock();
                    if stdout.write_all(rendered.as_bytes()).is_err() {
                        return 4;
                    }
                }
            }
            0
        }
        Err(e) => {
            eprintln!("glab: {e}");
            e.exit_code()
        }
    }
}

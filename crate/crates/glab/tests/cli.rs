//! End-to-end checks of the `glab` binary: exit codes, output formats,
//! determinism of CSV bodies, and the profile/field file round trips.

use std::path::PathBuf;
use std::process::{Command, Output};

fn glab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// CSV body with the metadata comment line stripped.
fn body(out: &Output) -> String {
    stdout(out)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn critdim_row_and_exit_codes() {
    let out = glab(&["critdim", "--s", "1", "--tol", "1e-8"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("s,n0,residual,iterations"), "{text}");
    assert!(text.contains("\n1,10.000000,"), "{text}");

    let out = glab(&["critdim", "--s", "0.5"]);
    assert_eq!(out.status.code(), Some(2), "domain errors exit 2");
    let msg = String::from_utf8(out.stderr).unwrap();
    assert!(msg.contains("s in [1, 2]"), "{msg}");

    let out = glab(&["ladder", "--n", "10", "--s", "1.5", "--target", "3.5"]);
    assert_eq!(out.status.code(), Some(3), "unreachable targets exit 3");
    let msg = String::from_utf8(out.stderr).unwrap();
    assert!(msg.contains("target exceeds alpha_bar=3.03407"), "{msg}");

    let out = glab(&[
        "biharmonic",
        "energy",
        "--n",
        "12",
        "--profile",
        "/nonexistent/profile.csv",
        "--r-list",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(4), "missing files exit 4");
}

#[test]
fn csv_bodies_are_deterministic() {
    for args in [
        vec!["critdim-curve", "--s-min", "1", "--s-max", "2", "--steps", "5"],
        vec!["exponents"],
        vec!["stability", "rellich", "--n", "12"],
        vec!["fraclap", "verify-log", "--n", "3", "--t", "0.5", "--r", "1"],
    ] {
        let a = glab(&args);
        let b = glab(&args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(body(&a), body(&b), "non-deterministic body for {args:?}");
    }
}

#[test]
fn json_output_mirrors_csv_columns() {
    let out = glab(&["quartic", "--format", "json"]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let arr = parsed.as_array().unwrap();
    assert_eq!(arr.len(), 1);
    let row = arr[0].as_object().unwrap();
    assert!(row.contains_key("root") && row.contains_key("residual"));
    let root = row["root"].as_f64().unwrap();
    assert!((root - 12.565344462621457).abs() < 1e-8);
}

#[test]
fn ladder_trace_matches_module_example() {
    let out = glab(&["ladder", "--n", "10", "--s", "1", "--target", "2.4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let steps = text.lines().filter(|l| l.contains("plus-half")).count();
    assert!(steps >= 1 && steps <= 5, "{text}");
    assert!(text.contains("reached="), "{text}");
}

#[test]
fn shoot_writes_profile_and_energy_reads_it() {
    let dir = tempfile::tempdir().unwrap();
    let profile: PathBuf = dir.path().join("profile.csv");
    let out = glab(&[
        "biharmonic",
        "shoot",
        "--n",
        "13",
        "--a",
        "0",
        "--b",
        "-2",
        "--rmax",
        "20",
        "--out",
        profile.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&profile).unwrap();
    assert!(text.lines().any(|l| l == "r,u"), "header required");

    let out = glab(&[
        "biharmonic",
        "energy",
        "--n",
        "13",
        "--profile",
        profile.to_str().unwrap(),
        "--r-list",
        "1,2",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("bulk_dirichlet"), "{text}");
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 3);
}

#[test]
fn extension_build_energy_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let field: PathBuf = dir.path().join("field.csv");
    let out = glab(&[
        "extension",
        "build",
        "--n",
        "10",
        "--s",
        "1.5",
        "--u",
        "zero",
        "--extent",
        "2.5",
        "--nodes",
        "16",
        "--out",
        field.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&field).unwrap();
    assert!(text.lines().any(|l| l == "rho,y,value"));

    let out = glab(&[
        "extension",
        "energy",
        "--field",
        field.to_str().unwrap(),
        "--n",
        "10",
        "--s",
        "1.5",
        "--lambda-list",
        "1,2",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("lambda,"), "{text}");
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 3);
}

#[test]
fn stability_commands_run() {
    let out = glab(&["stability", "homogeneous", "--n", "13", "--s", "1.5"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("true"));
    let out = glab(&["stability", "homogeneous", "--n", "10", "--s", "1.5"]);
    assert!(stdout(&out).contains("false"));
    let out = glab(&["stability", "cutoff", "--eps", "0.1,0.01,0.001"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("eps,integral,slope"), "{text}");
}

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const FIG3: &str = include_str!("../scenarios/fig3.json");

fn sgbc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sgbc")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

/// `(t, ‖u‖)` rows of a trace CSV.
fn trace(text: &str) -> Vec<(f64, f64)> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| {
            let mut cols = l.split(',').map(|c| c.parse::<f64>().unwrap());
            (cols.next().unwrap(), cols.next().unwrap())
        })
        .collect()
}

fn reproduce(dir: &Path, fig: &str) -> String {
    let path = dir.join(format!("{fig}.csv"));
    let out = sgbc(&["reproduce", fig, "-o", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    fs::read_to_string(path).unwrap()
}

fn scenario_file(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn peak_ratio(rows: &[(f64, f64)]) -> f64 {
    rows.iter().map(|r| r.1).fold(0.0, f64::max) / rows[0].1
}

#[test]
fn open_loop_figure_grows() {
    let dir = tempfile::tempdir().unwrap();
    let rows = trace(&reproduce(dir.path(), "fig1"));
    assert_eq!(rows.last().unwrap().0, 1.0);
    let late: Vec<f64> = rows.iter().filter(|r| r.0 >= 0.2).map(|r| r.1).collect();
    assert!(late.windows(2).all(|w| w[1] > w[0]));
    assert!(rows.last().unwrap().1 > rows[0].1);
}

#[test]
fn closed_loop_figures_decay_in_order() {
    let dir = tempfile::tempdir().unwrap();
    let r0 = trace(&reproduce(dir.path(), "fig3"));
    let r9 = trace(&reproduce(dir.path(), "fig4"));
    for rows in [&r0, &r9] {
        assert!(rows.last().unwrap().1 < 1e-3 * rows[0].1);
    }
    let at = |rows: &[(f64, f64)], t: f64| rows.iter().find(|r| (r.0 - t).abs() < 1e-9).unwrap().1;
    assert!(at(&r9, 1.0) < at(&r0, 1.0));
    assert!(peak_ratio(&r9) > peak_ratio(&r0));
}

#[test]
fn achievable_curve_figure() {
    let dir = tempfile::tempdir().unwrap();
    let text = reproduce(dir.path(), "fig2");
    let rows: Vec<Vec<f64>> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 301);
    assert!(text.lines().any(|l| l == "r,ub,omega_star,lambda_star"));
    let g1 = 1.0 - 6.0 / (std::f64::consts::PI.powi(2));
    assert!(rows.iter().all(|r| r[1] >= g1.sqrt()));
}

#[test]
fn simulate_is_byte_identical() {
    let a = sgbc(&["simulate", "builtin:fig3"]);
    let b = sgbc(&["simulate", "builtin:fig3"]);
    assert_eq!(code(&a), 0);
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn malformed_scenario_names_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let path = scenario_file(dir.path(), "bad.json", &FIG3.replace("\"dt\"", "\"dtt\""));
    let out = sgbc(&["simulate", &path]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("sim.dtt"), "{}", stderr(&out));

    let out = sgbc(&["simulate", "builtin:nope"]);
    assert_eq!(code(&out), 1);
    let out = sgbc(&["simulate", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn blow_up_keeps_the_trace() {
    let dir = tempfile::tempdir().unwrap();
    let text = include_str!("../scenarios/fig1.json").replace("500.0", "5000.0");
    let path = scenario_file(dir.path(), "blowup.json", &text);
    let csv = dir.path().join("blowup.csv");
    let out = sgbc(&["simulate", &path, "-o", csv.to_str().unwrap()]);
    assert_eq!(code(&out), 3, "{}", stderr(&out));
    let written = fs::read_to_string(csv).unwrap();
    assert!(written.lines().last().unwrap().starts_with("# blowup t="));
    assert!(trace(&written).len() > 1);
}

#[test]
fn gain_lower_table() {
    let out = sgbc(&["gain-lower", "--mu", "0", "--m-max", "2"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let g1 = v["table"][0]["g_m"].as_f64().unwrap();
    assert!((g1 - (1.0 - 6.0 / std::f64::consts::PI.powi(2))).abs() < 1e-12);
    let root = v["table"][1]["sqrt_g_m"].as_f64().unwrap();
    assert!((root - 0.639003).abs() < 1e-5);
    assert_eq!(code(&sgbc(&["gain-lower", "--m-max", "0"])), 1);
    assert_eq!(code(&sgbc(&["gain-lower", "--mu", "-1"])), 1);
}

#[test]
fn gain_achievable_point_and_sweep() {
    let out = sgbc(&["gain-achievable", "--r", "0.91", "--use-ub"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    assert!((v["ub"].as_f64().unwrap() - 0.750896).abs() < 1e-6);

    let out = sgbc(&["gain-achievable", "--r", "0.91", "--series", "500", "--grid", "50"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(json(&out)["b"].as_f64().unwrap() <= 0.750896);

    assert_eq!(code(&sgbc(&["gain-achievable", "--r", "-0.5"])), 1);

    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sweep.csv");
    let out = sgbc(&["gain-achievable", "--use-ub", "--sweep", "0:1:0.25", "-o", csv.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(csv).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 6);
    assert!(stderr(&out).contains("min ub"));
    assert_eq!(code(&sgbc(&["gain-achievable", "--use-ub", "--sweep", "1:0:0.1"])), 1);
}

#[test]
fn design_check_exit_codes() {
    let out = sgbc(&["design-check", "builtin:fig3"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["deciding"], "dynamic_small_gain");

    let dir = tempfile::tempdir().unwrap();
    let small = scenario_file(dir.path(), "a10.json", &FIG3.replace("500.0", "10.0"));
    assert_eq!(code(&sgbc(&["design-check", &small])), 0);
    let large = scenario_file(dir.path(), "a600.json", &FIG3.replace("500.0", "600.0"));
    let out = sgbc(&["design-check", &large]);
    assert_eq!(code(&out), 4);
    assert_eq!(json(&out)["pass"], false);
}

#[test]
fn steady_gain_of_the_zero_kernel() {
    let out = sgbc(&["steady-gain", "--kernel", "zero", "--q", "1"]);
    assert_eq!(code(&out), 0);
    let g = json(&out)["gain"].as_f64().unwrap();
    assert!((g - 1.0 / (std::f64::consts::PI.powi(2) + 1.0)).abs() < 1e-12);
}

#[test]
fn help_and_usage() {
    assert_eq!(code(&sgbc(&["--help"])), 0);
    assert_eq!(code(&sgbc(&["simulate", "--help"])), 0);
    assert_eq!(code(&sgbc(&["frobnicate"])), 1);
    let out = sgbc(&["reproduce", "fig9"]);
    assert_eq!(code(&out), 1);
}

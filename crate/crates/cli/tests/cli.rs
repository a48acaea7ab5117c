// SPDX-License-Identifier: Apache-2.0

use std::path::Path;
use std::process::{Command, Output};

fn ckosc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ckosc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut rdr = csv::Reader::from_path(path).unwrap();
    let header = rdr.headers().unwrap().iter().map(String::from).collect();
    let rows = rdr
        .records()
        .map(|r| r.unwrap().iter().map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap()
}

const SCENARIO: &str = r#"
[oscillator]
m = 1.0
omega0 = 1.0
gamma = 0.1
hbar = 1.0

[initial]
Q0 = 3.0
varphi = 0.0

[force]
type = "sawtooth"
f0 = 1.0
omega_d = 0.3
n_terms = 1000

[grid]
t_end = 20.0
dt = 0.01
"#;

#[test]
fn run_fig3a_scenario() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = dir.path().join("fig3a.toml");
    std::fs::write(&scenario, SCENARIO).unwrap();
    let csv = dir.path().join("out.csv");
    let out = ckosc(&[
        "run",
        scenario.to_str().unwrap(),
        "-o",
        csv.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let (header, rows) = read_csv(&csv);
    assert_eq!(
        header.join(","),
        "t,Q,Qdot,P,P_k,E_classical,E_quantum,zero_point,delta_q,delta_p,uncertainty_product,f_of_t"
    );
    assert_eq!(rows.len(), 2001);
    let e = rows[0][column(&header, "E_quantum")];
    assert!(
        (e - (0.500_626_174_321_758_9 + 4.5 + 0.01125)).abs() < 1e-14,
        "{e}"
    );
    assert!(rows.iter().flatten().all(|v| v.is_finite()));

    let again = dir.path().join("again.csv");
    assert!(ckosc(&[
        "run",
        scenario.to_str().unwrap(),
        "-o",
        again.to_str().unwrap()
    ])
    .status
    .success());
    assert_eq!(std::fs::read(&csv).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn run_resting_oscillator() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = dir.path().join("rest.toml");
    let text = SCENARIO.replace("Q0 = 3.0", "Q0 = 0.0").replace(
        "type = \"sawtooth\"\nf0 = 1.0\nomega_d = 0.3\nn_terms = 1000",
        "type = \"zero\"",
    );
    std::fs::write(&scenario, text).unwrap();
    let csv = dir.path().join("out.csv");
    let out = ckosc(&[
        "run",
        scenario.to_str().unwrap(),
        "-o",
        csv.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let (h, rows) = read_csv(&csv);
    for r in &rows {
        assert_eq!(r[column(&h, "Q")], 0.0);
        assert_eq!(r[column(&h, "E_classical")], 0.0);
        assert_eq!(r[column(&h, "E_quantum")], r[column(&h, "zero_point")]);
        assert!(r[column(&h, "zero_point")] > 0.0);
    }
}

#[test]
fn run_error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let bad_key = dir.path().join("bad.toml");
    std::fs::write(&bad_key, SCENARIO.replace("omega0 = 1.0", "omega_0 = 1.0")).unwrap();
    let out = ckosc(&[
        "run",
        bad_key.to_str().unwrap(),
        "-o",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("omega_0"));

    let overdamped = dir.path().join("over.toml");
    std::fs::write(&overdamped, SCENARIO.replace("gamma = 0.1", "gamma = 2.5")).unwrap();
    let out = ckosc(&[
        "run",
        overdamped.to_str().unwrap(),
        "-o",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));

    let missing = dir.path().join("missing.toml");
    let out = ckosc(&[
        "run",
        missing.to_str().unwrap(),
        "-o",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));

    assert_eq!(ckosc(&["run"]).status.code(), Some(2));
}

#[test]
fn reproduce_fig2_series() {
    let dir = tempfile::tempdir().unwrap();
    let out = ckosc(&["reproduce-fig", "2", "-d", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    for ext in ["csv", "svg", "toml"] {
        assert!(dir.path().join(format!("fig2.{ext}")).exists());
    }
    let svg = std::fs::read_to_string(dir.path().join("fig2.svg")).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 2);

    let (h, rows) = read_csv(&dir.path().join("fig2.csv"));
    let (n3, n1000, ramp) = (
        column(&h, "f_n3"),
        column(&h, "f_n1000"),
        column(&h, "f_ramp"),
    );
    let mut worst = 0.0f64;
    let mut coarse_jump = 0.0f64;
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(
            r[n1000],
            ckosc::forcing::sawtooth_series(1.0, 1.0, std::f64::consts::TAU, 1000, r[0])
        );
        // the truncation error envelope only drops below 1e-3 just inside 0.45 tau
        let phase = r[0].rem_euclid(1.0);
        if (phase - 0.5).abs() >= 0.06 {
            worst = worst.max((r[n1000] - r[ramp]).abs());
        }
        if i > 0 {
            coarse_jump = coarse_jump.max((r[n3] - rows[i - 1][n3]).abs());
        }
    }
    assert!(worst <= 1e-3, "{worst}");
    // three harmonics cannot change faster than f0 ω_d (1 + 1 + 1)/π per unit time
    assert!(coarse_jump <= 6.0 * 1e-3 * 1.01, "{coarse_jump}");
}

#[test]
fn reproduce_fig1_panels_differ_only_in_frequencies() {
    let dir = tempfile::tempdir().unwrap();
    for id in ["1a", "1b"] {
        assert!(
            ckosc(&["reproduce-fig", id, "-d", dir.path().to_str().unwrap()])
                .status
                .success()
        );
    }
    let a: toml::Table = std::fs::read_to_string(dir.path().join("fig1a.toml"))
        .unwrap()
        .parse()
        .unwrap();
    let mut b: toml::Table = std::fs::read_to_string(dir.path().join("fig1b.toml"))
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(b["oscillator"]["omega0"].as_float(), Some(1.5));
    assert_eq!(b["force"]["omega_d"].as_float(), Some(0.6));
    b["oscillator"].as_table_mut().unwrap()["omega0"] = toml::Value::Float(1.0);
    b["force"].as_table_mut().unwrap()["omega_d"] = toml::Value::Float(0.3);
    assert_eq!(a, b);
}

#[test]
fn reproduce_fig3a_correspondence_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert!(ckosc(&["reproduce-fig", "3a", "-d", d]).status.success());
    let first = std::fs::read(dir.path().join("fig3a.csv")).unwrap();
    assert!(ckosc(&["reproduce-fig", "3A", "-d", d]).status.success());
    assert_eq!(first, std::fs::read(dir.path().join("fig3a.csv")).unwrap());

    let (h, rows) = read_csv(&dir.path().join("fig3a.csv"));
    assert_eq!(h, ["t", "E_quantum", "E_quantum_hbar0", "E_classical"]);
    let (q0, cl) = (column(&h, "E_quantum_hbar0"), column(&h, "E_classical"));
    for r in &rows {
        assert!((r[q0] - r[cl]).abs() <= 1e-12 * r[cl]);
        assert!(r[column(&h, "E_quantum")] > r[cl]);
    }

    // exported scenario runs through the ordinary path
    let csv = dir.path().join("run.csv");
    let toml = dir.path().join("fig3a.toml");
    assert!(
        ckosc(&["run", toml.to_str().unwrap(), "-o", csv.to_str().unwrap()])
            .status
            .success()
    );
}

#[test]
fn unknown_figure_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = ckosc(&["reproduce-fig", "4", "-d", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown figure"));
}

fn validate(extra: &[&str]) -> (Option<i32>, Vec<serde_json::Value>) {
    let mut args = vec!["validate", "--json"];
    args.extend_from_slice(extra);
    let out = ckosc(&args);
    let report: Vec<serde_json::Value> = serde_json::from_slice(&out.stdout).unwrap();
    (out.status.code(), report)
}

fn failing(report: &[serde_json::Value]) -> Vec<String> {
    report
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn validate_reports_every_check() {
    let (code, report) = validate(&[]);
    let failed = failing(&report);
    assert_eq!(code, Some(if failed.is_empty() { 0 } else { 1 }));
    let rk4 = report
        .iter()
        .find(|c| c["name"] == "classical.trajectory_vs_rk4.fig3a")
        .unwrap();
    assert!(rk4["observed"].as_f64().unwrap() < 1e-5);
    assert!(report
        .iter()
        .any(|c| c["name"] == "quantum.correspondence_hbar0.fig1a"));
}

#[test]
fn validate_detects_corrupted_frequency() {
    let (code, report) = validate(&["--corrupt-omega", "1.000001"]);
    assert_eq!(code, Some(1));
    assert!(failing(&report)
        .iter()
        .any(|n| n.starts_with("quantum.correspondence_zero_point")));
}

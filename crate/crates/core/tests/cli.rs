use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use decay_spread::cli::output::REPORT_HEADER;
use decay_spread::cli::scenario::parse_scenario;
use decay_spread::evaluate;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_decay-spread"))
}

fn scenarios() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    let mut r = csv::ReaderBuilder::new().has_headers(false).from_reader(text.as_bytes());
    r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect()
}

fn column(rows: &[Vec<String>], name: &str) -> usize {
    rows[0].iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"))
}

#[test]
fn eval_gut_scenario_json() {
    let path = scenarios().join("step_cutoff_gut.json");
    let o = run(&["eval", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let t = v["t_m_min_s"].as_f64().unwrap();
    assert!((t / 4.6e-8 - 1.0).abs() < 0.02, "{t}");
    assert_eq!(v["observable"], serde_json::Value::Bool(true));
    for key in ["gamma_mev", "delta_e_mev", "t_m_min_s", "coefficient_s_per_sqrt_s", "observable"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn eval_csv_round_trips() {
    let path = scenarios().join("localization.json");
    let o = run(&["eval", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(!text.contains('\r'));
    let rows = csv_rows(&text);
    assert_eq!(rows[0], REPORT_HEADER.to_vec());
    let file = parse_scenario(&fs::read_to_string(&path).unwrap()).unwrap();
    let report = evaluate(&file.scenario).unwrap();
    let get = |name: &str| rows[1][column(&rows, name)].parse::<f64>().unwrap();
    assert_eq!(get("gamma_mev"), report.gamma_mev);
    assert_eq!(get("delta_e_mev"), report.delta_e_mev);
    assert_eq!(get("t_m_min_s"), report.t_m_min_s);
    assert_eq!(get("coefficient_s_per_sqrt_s"), report.coefficient_s_per_sqrt_s);
    assert_eq!(rows[1][column(&rows, "observable")], "false");
}

#[test]
fn validation_errors_name_key_path() {
    let dir = tempfile::tempdir().unwrap();
    let neg = write_temp(
        &dir,
        "neg.json",
        r#"{"lifetime": {"value": -1, "unit": "years"}, "model": {"kind": "symmetric_resonance"}}"#,
    );
    let o = run(&["eval", neg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("lifetime.value"), "{}", stderr(&o));

    let nokind = write_temp(&dir, "nokind.json", r#"{"lifetime": {"value": 1, "unit": "s"}, "model": {}}"#);
    let o = run(&["eval", nokind.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("model.kind"), "{}", stderr(&o));

    let o = run(&["eval", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_radius() {
    let path = scenarios().join("localization.json");
    let o = run(&["sweep", path.to_str().unwrap(), "--param", "R", "--grid", "1e-8,10,2,log"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 3);
    let c = column(&rows, "coefficient_s_per_sqrt_s");
    let near: f64 = rows[1][c].parse().unwrap();
    let far: f64 = rows[2][c].parse().unwrap();
    assert!((near / 8.2e-10 - 1.0).abs() < 0.01, "{near}");
    assert!((far / 3e-5 - 1.0).abs() < 0.20, "{far}");
    assert_eq!(rows[1][column(&rows, "swept_value")].parse::<f64>().unwrap(), 1e-8);
}

#[test]
fn sweep_edge_cases() {
    let path = scenarios().join("localization.json");
    let p = path.to_str().unwrap();
    let o = run(&["sweep", p, "--param", "R", "--grid", "1,1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(csv_rows(&stdout(&o)).len(), 2);

    let o = run(&["sweep", p, "--param", "R", "--grid", "10,1,3"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["sweep", p, "--param", "M", "--grid", "1e15,1e16,3,log"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("does not apply"));

    let o = run(&["sweep", p, "--param", "tau", "--grid", "1e30,1e33,4,log", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
    assert_eq!(v[0]["swept_param"], "tau");
}

#[test]
fn survival_desk_scale() {
    let o = run(&["survival", "--desk-scale", "--tmin", "0.5", "--tmax", "5", "--n", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows[0], vec!["t", "survival_probability"]);
    assert_eq!(rows.len(), 11);
    for r in &rows[1..] {
        let t: f64 = r[0].parse().unwrap();
        let p: f64 = r[1].parse().unwrap();
        assert!(((p - (-t).exp()) / (-t).exp()).abs() < 0.05, "t={t} p={p}");
    }

    let o = run(&["survival", "--desk-scale", "--tmin", "0", "--tmax", "1", "--n", "3"]);
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows[1][1].parse::<f64>().unwrap(), 1.0);
}

#[test]
fn survival_errors() {
    let o = run(&["survival", "--desk-scale", "--tmin", "5", "--tmax", "1", "--n", "3"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["survival", "--desk-scale", "--tmin", "1e6", "--tmax", "2e6", "--n", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("t = 1e6"), "{}", stderr(&o));

    let gut = scenarios().join("step_cutoff_gut.json");
    let o = run(&["survival", gut.to_str().unwrap(), "--tmin", "0", "--tmax", "1", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn survival_physical_scenario() {
    // v = c, R = 10 cm, tau = 1e-8 s gives a half-support of 15 widths, so the
    // physical curve must match the desk curve with the same ratio at t/tau.
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(
        &dir,
        "short.json",
        r#"{"lifetime": {"value": 1e-8, "unit": "s"},
            "model": {"kind": "localization", "params": {"v": {"value": 1, "unit": "c"}, "r": {"value": 10, "unit": "cm"}}}}"#,
    );
    let o = run(&["survival", path.to_str().unwrap(), "--tmin", "0", "--tmax", "3e-8", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows[0][0], "t_seconds");
    let half = 2.99792458e10 * 1e-8 / 20.0;
    let desk = decay_spread::TruncatedBreitWigner::desk_scale(1.0, half).unwrap();
    for r in &rows[1..] {
        let t: f64 = r[0].parse().unwrap();
        let p: f64 = r[1].parse().unwrap();
        let expected = desk.survival_probability(t / 1e-8).unwrap();
        assert!((p - expected).abs() < 1e-10, "t={t} p={p} expected={expected}");
    }
}

#[test]
fn survival_at_proton_scale_is_a_numerical_failure() {
    let loc = scenarios().join("localization.json");
    let o = run(&["survival", loc.to_str().unwrap(), "--tmin", "1", "--tmax", "3.15576e7", "--n", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("panel cap"), "{}", stderr(&o));
}

#[test]
fn exit_statuses() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(4));
    assert_eq!(run(&["eval"]).status.code(), Some(4));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["reference-report"]).status.code(), Some(0));
    assert_eq!(run(&["paper-report"]).status.code(), Some(0));
}

#[test]
fn reference_report_formats() {
    let o = run(&["reference-report"]);
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 12);
    let status = column(&rows, "status");
    let flagged: Vec<_> = rows[1..].iter().filter(|r| r[status] == "FLAGGED").collect();
    assert_eq!(flagged.len(), 1);
    assert!(rows[1..].iter().all(|r| r[status] != "FAIL"));

    let o = run(&["reference-report", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 11);
}

#[test]
fn output_flag_writes_file_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let loc = scenarios().join("localization.json");
    let out1 = dir.path().join("a.csv");
    let out2 = dir.path().join("b.csv");
    for out in [&out1, &out2] {
        let o = run(&[
            "sweep",
            loc.to_str().unwrap(),
            "--param",
            "R",
            "--grid",
            "1e-8,10,25,log",
            "--output",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
    }
    assert_eq!(fs::read(&out1).unwrap(), fs::read(&out2).unwrap());

    let a = run(&["survival", "--desk-scale", "--tmin", "0", "--tmax", "5", "--n", "40"]);
    let b = run(&["survival", "--desk-scale", "--tmin", "0", "--tmax", "5", "--n", "40"]);
    assert_eq!(a.stdout, b.stdout);
}

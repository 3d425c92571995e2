use std::path::{Path, PathBuf};
use std::process::Command as Process;

use revlog_cli::{
    run, run_pareto, run_solve, run_sweep, Cell, Command, OutputFormat, Report, RunConfig, SweepRange, Table,
};
use revlog_core::presets;

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn load(name: &str) -> RunConfig {
    RunConfig::load(&configs().join(name)).unwrap()
}

fn num(t: &Table, row: usize, col: &str) -> f64 {
    match &t.rows[row][t.column(col).unwrap()] {
        Cell::Num(v) => *v,
        Cell::Text(s) => panic!("{col} is text: {s}"),
    }
}

fn revlog(args: &[&str]) -> std::process::Output {
    Process::new(env!("CARGO_BIN_EXE_revlog")).args(args).output().unwrap()
}

#[test]
fn solve_reproduces_the_unconstrained_table() {
    let report = run_solve(&load("table1.json")).unwrap();
    let t = report.table("solve").unwrap();
    assert_eq!(t.header, ["rpDp", "lambda", "Dr", "Qp*", "Qr*", "f1", "n", "T", "cpuSeconds"]);
    let expected = [
        [45.0, 30.83, 115.10, 74.61, 72.56, 58.62],
        [60.0, 30.83, 54.53, 156.81, 34.15, 13.20],
        [75.0, 30.83, 44.92, 188.68, 28.17, 9.07],
        [90.0, 30.83, 40.83, 206.80, 25.75, 7.52],
        [105.0, 30.83, 38.51, 218.63, 24.10, 6.70],
    ];
    assert_eq!(t.rows.len(), 5);
    for (i, row) in expected.iter().enumerate() {
        assert_eq!(num(t, i, "lambda"), row[0]);
        assert_eq!(num(t, i, "rpDp"), 42.0);
        for (col, want) in ["Qp*", "Qr*", "f1", "n", "T"].iter().zip(&row[1..]) {
            // The printed n at lambda = 90 is 0.7% above the model value.
            let tol = if *col == "n" && row[0] == 90.0 { 1e-2 } else { 5e-3 };
            let got = num(t, i, col);
            assert!((got - want).abs() <= tol * want, "lambda={} {col}: {got} vs {want}", row[0]);
        }
        assert_eq!(num(t, i, "cpuSeconds"), 0.0);
    }
    assert_eq!(report.notes.len(), 5);
    assert!(report.notes[0].contains("72 whole repair batches"));
}

#[test]
fn solve_without_sweep_gives_one_row() {
    let mut config = load("table1.json");
    config.sweep_var = None;
    config.sweep_range = None;
    let report = run_solve(&config).unwrap();
    let t = report.table("solve").unwrap();
    assert_eq!(t.rows.len(), 1);
    assert_eq!(num(t, 0, "lambda"), 45.0);
}

#[test]
fn constrained_solve_reports_case_and_multipliers() {
    let report = run(&load("table2.json"), Command::SolveConstrained).unwrap();
    let t = report.table("solve").unwrap();
    assert_eq!(&t.header[9..], ["case", "lambda1", "lambda2"]);
    let qp = [29.77, 11.13, 7.28, 6.26, 5.82];
    for (i, want) in qp.iter().enumerate() {
        assert!((num(t, i, "Qp*") - want).abs() <= 1e-2 * want);
        assert_eq!(t.rows[i][9], Cell::Text("III".into()));
        assert!(num(t, i, "lambda2") > 0.0);
    }
}

#[test]
fn repair_rate_below_return_flow_is_rejected() {
    let text = std::fs::read_to_string(configs().join("table1.json"))
        .unwrap()
        .replace("\"lambda\": 45", "\"lambda\": 40");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, text).unwrap();
    let out = revlog(&["solve", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lambda"));
    assert!(out.stdout.is_empty());
}

#[test]
fn sweep_cost_rises_with_repair_rate() {
    let report = run_sweep(&load("sweep_lambda.json")).unwrap();
    let cost = report.table("cost").unwrap();
    let batches = report.table("batches").unwrap();
    assert_eq!(cost.header, ["lambda", "f1", "n", "T"]);
    assert_eq!(batches.header, ["lambda", "Qp*", "Qr*", "f1"]);
    assert_eq!(cost.rows.len(), 610);
    assert_eq!(batches.rows.len(), 610);
    for i in 1..cost.rows.len() {
        assert!(num(cost, i, "f1") > num(cost, i - 1, "f1"));
    }
}

#[test]
fn single_step_sweep_gives_one_row() {
    let mut config = load("sweep_lambda.json");
    config.sweep_range = Some(SweepRange {
        lo: 50.0,
        hi: 50.05,
        step: 0.1,
    });
    let report = run_sweep(&config).unwrap();
    assert_eq!(report.table("cost").unwrap().rows.len(), 1);
}

#[test]
fn sweep_endpoints_match_single_solves() {
    let config = load("sweep_lambda_dr60.json");
    let report = run_sweep(&config).unwrap();
    let batches = report.table("batches").unwrap();
    let last = batches.rows.len() - 1;
    for (row, lambda) in [(0, 61.0), (last, 105.0)] {
        let mut single = config.clone();
        single.sweep_var = None;
        single.sweep_range = None;
        single.params = single.params.with_repair_rate(lambda).unwrap();
        let s = run_solve(&single).unwrap();
        let t = s.table("solve").unwrap();
        assert!((num(batches, row, "lambda") - lambda).abs() < 1e-9);
        for col in ["Qp*", "Qr*", "f1"] {
            let a = num(batches, row, col);
            let b = num(t, 0, col);
            assert!((a - b).abs() <= 1e-9 * b, "{col}: {a} vs {b}");
        }
    }
}

fn assert_mutually_non_dominated(t: &Table) {
    let objs: Vec<[f64; 3]> = (0..t.rows.len())
        .map(|i| [num(t, i, "f1"), num(t, i, "f2"), num(t, i, "f3")])
        .collect();
    for (i, a) in objs.iter().enumerate() {
        for b in &objs[i + 1..] {
            let le = |x: &[f64; 3], y: &[f64; 3]| (0..3).all(|k| x[k] <= y[k]) && x != y;
            assert!(!le(a, b) && !le(b, a));
        }
    }
}

#[test]
fn pareto_front_of_the_sustainability_case() {
    let report = run_pareto(&load("pareto.json")).unwrap();
    let t = report.table("front").unwrap();
    assert!(t.rows.len() >= 500, "{} points", t.rows.len());
    assert_mutually_non_dominated(t);
    let d = report.diagnostics.as_ref().unwrap();
    assert_eq!(d["gridCount"], 1326);
    assert_eq!(d["points"], t.rows.len());
    assert!(d["shift"][1].as_f64().unwrap() > 1.0);
}

#[test]
fn flat_case_gives_one_point() {
    let report = run_pareto(&load("pareto_flat.json")).unwrap();
    assert_eq!(report.table("front").unwrap().rows.len(), 1);
}

#[test]
fn single_weight_gives_at_most_three_points() {
    let mut config = load("pareto.json");
    config.grid_subdivisions = 3;
    let report = run_pareto(&config).unwrap();
    let t = report.table("front").unwrap();
    assert!(!t.rows.is_empty() && t.rows.len() <= 3);
}

#[test]
fn too_few_subdivisions_is_a_config_error() {
    let out = revlog(&[
        "pareto",
        "--config",
        configs().join("pareto.json").to_str().unwrap(),
        "--subdivisions",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tight_supply_floor_is_infeasible() {
    let mut config = load("pareto.json");
    config.params.supply_floor.capacity = 50.0;
    let err = run_pareto(&config).unwrap_err();
    assert_eq!(err.exit_code(), 3);

    let text = config.to_json();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tight.json");
    std::fs::write(&path, text).unwrap();
    let out = revlog(&["pareto", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn oracle_finds_the_table_optimum() {
    let report = run(&load("oracle.json"), Command::Oracle).unwrap();
    let t = report.table("oracle").unwrap();
    assert!((num(t, 0, "Qp") - 30.83).abs() <= 0.01 + 1e-9);
    assert!((num(t, 0, "Qr") - 115.10).abs() <= 0.01 + 1e-9);
}

#[test]
fn config_echo_round_trips() {
    for name in ["table1.json", "table2.json", "sweep_lambda.json", "pareto.json", "oracle.json"] {
        let config = load(name);
        assert_eq!(RunConfig::from_json(&config.to_json()).unwrap(), config, "{name}");
    }
    let config = load("table2.json");
    let echo = run_solve(&config).unwrap().to_json();
    assert_eq!(RunConfig::from_json(&echo["config"].to_string()).unwrap(), config);
}

#[test]
fn csv_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let config = configs().join("table2.json");
    let mut texts = Vec::new();
    for i in 0..2 {
        let out = dir.path().join(format!("run{i}.csv"));
        let status = revlog(&["solve-constrained", "--config", config.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert!(status.status.success());
        texts.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
    let text = String::from_utf8(texts.remove(0)).unwrap();
    assert!(text.starts_with("rpDp,lambda,Dr,Qp*,Qr*,f1,n,T,cpuSeconds,case,lambda1,lambda2\n"));
    assert!(text.contains("42,105,43,5.81962,29.9563,230.664,5.84755,1.26567,0,III,0,"));
}

#[test]
fn json_output_carries_config_and_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.json");
    let status = revlog(&[
        "solve",
        "--config",
        configs().join("table1.json").to_str().unwrap(),
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(status.status.success());
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let config = RunConfig::from_json(&doc["config"].to_string()).unwrap();
    assert_eq!(config.output_format, OutputFormat::Json);
    assert_eq!(doc["tables"]["solve"].as_array().unwrap().len(), 5);
    assert_eq!(doc["tables"]["solve"][0]["lambda"], 45.0);
}

#[test]
fn sweep_writes_two_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let status = revlog(&[
        "sweep",
        "--config",
        configs().join("sweep_lambda.json").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(status.status.success());
    let cost = std::fs::read_to_string(dir.path().join("sweep.cost.csv")).unwrap();
    let batches = std::fs::read_to_string(dir.path().join("sweep.batches.csv")).unwrap();
    assert!(cost.starts_with("lambda,f1,n,T\n44.1,"));
    assert!(batches.starts_with("lambda,Qp*,Qr*,f1\n44.1,"));
}

#[test]
fn report_files_follow_the_output_path() {
    let mut r = Report::new(&RunConfig::new(presets::base_case(60.0, 43.0)));
    r.tables.push(Table::new("a", &["x"]));
    assert_eq!(r.csv_paths(Path::new("out/x.csv")), [PathBuf::from("out/x.csv")]);
    r.tables.push(Table::new("b", &["x"]));
    assert_eq!(
        r.csv_paths(Path::new("out/x.csv")),
        [PathBuf::from("out/x.a.csv"), PathBuf::from("out/x.b.csv")]
    );
}

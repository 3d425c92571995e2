//! Library side of the `revlog` command-line tool: run configuration,
//! the five commands and their tabular output.

pub mod config;
pub mod table;

use std::time::Instant;

use serde_json::json;
use thiserror::Error;

use revlog_core::analytic::{solve_constrained, solve_unconstrained};
use revlog_core::model::{cost_breakdown, BatchDecision};
use revlog_core::oracle::{grid_front, grid_min_with, Feasibility, GridSpec, SearchMode};
use revlog_core::pareto::pareto_front;
use revlog_core::{ModelError, ModelParams};

pub use config::{Command, OracleMode, OutputFormat, RunConfig, SweepRange, SweepVar};
pub use table::{format_sig, Cell, Report, Table};

/// Step of the default oracle grid.
pub const DEFAULT_ORACLE_STEP: f64 = 0.01;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 3 when the model has no admissible solution, 2 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Model(e) if e.is_infeasibility() => 3,
            _ => 2,
        }
    }
}

const SOLVE_COLUMNS: [&str; 9] = ["rpDp", "lambda", "Dr", "Qp*", "Qr*", "f1", "n", "T", "cpuSeconds"];

fn timed<T>(record: bool, f: impl FnOnce() -> T) -> (T, f64) {
    let clock = Instant::now();
    let out = f();
    let secs = if record { clock.elapsed().as_secs_f64() } else { 0.0 };
    (out, secs)
}

/// Parameter sets of a run: one per sweep value, or the base set alone.
fn parameter_sets(config: &RunConfig) -> Result<Vec<ModelParams>, CliError> {
    match (config.sweep_var, config.sweep_range) {
        (Some(var), Some(range)) => range
            .values()
            .into_iter()
            .map(|v| var.apply(&config.params, v).map_err(CliError::from))
            .collect(),
        (None, Some(_)) => Err(CliError::Config("sweepRange needs sweepVar".into())),
        _ => Ok(vec![config.params.clone()]),
    }
}

struct SolvedRow {
    params: ModelParams,
    d: BatchDecision,
    f1: f64,
    n: f64,
    t: f64,
    secs: f64,
    kkt: Option<(String, f64, f64)>,
}

fn solve_row(params: ModelParams, constrained: bool, record: bool) -> Result<SolvedRow, CliError> {
    let (solution, secs) = timed(record, || -> Result<_, ModelError> {
        if constrained {
            let s = solve_constrained(&params)?;
            Ok((s.d, s.holding_cost, Some((s.case.to_string(), s.lambda1, s.lambda2))))
        } else {
            let s = solve_unconstrained(&params)?;
            Ok((s.d, s.holding_cost, None))
        }
    });
    let (d, f1, kkt) = solution?;
    let b = cost_breakdown(&params, d)?;
    Ok(SolvedRow {
        params,
        d,
        f1,
        n: b.n,
        t: b.cycle_length,
        secs,
        kkt,
    })
}

fn solve_table(config: &RunConfig, constrained: bool) -> Result<Report, CliError> {
    let mut header = SOLVE_COLUMNS.to_vec();
    if constrained {
        header.extend(["case", "lambda1", "lambda2"]);
    }
    let mut table = Table::new("solve", &header);
    let mut report = Report::new(config);
    for params in parameter_sets(config)? {
        let r = solve_row(params, constrained, config.record_timing)?;
        let mut row: Vec<Cell> = vec![
            r.params.return_flow().into(),
            r.params.repair_rate.into(),
            r.params.demand_repaired.into(),
            r.d.qp.into(),
            r.d.qr.into(),
            r.f1.into(),
            r.n.into(),
            r.t.into(),
            r.secs.into(),
        ];
        if let Some((case, l1, l2)) = r.kkt {
            row.extend([Cell::Text(case), l1.into(), l2.into()]);
        }
        report.notes.push(format!(
            "lambda={} Dr={}: {} whole repair batches per cycle",
            format_sig(r.params.repair_rate, 6),
            format_sig(r.params.demand_repaired, 6),
            r.n.floor()
        ));
        table.push(row);
    }
    report.tables.push(table);
    Ok(report)
}

/// Closed-form optimum for the base parameters or for each sweep value.
pub fn run_solve(config: &RunConfig) -> Result<Report, CliError> {
    solve_table(config, false)
}

/// Floor-limited optimum with the active case and multipliers.
pub fn run_solve_constrained(config: &RunConfig) -> Result<Report, CliError> {
    solve_table(config, true)
}

/// Two series over the sweep range: `(x, f1, n, T)` and `(x, Qp*, Qr*, f1)`.
pub fn run_sweep(config: &RunConfig) -> Result<Report, CliError> {
    let var = config
        .sweep_var
        .ok_or_else(|| CliError::Config("sweep needs sweepVar".into()))?;
    if config.sweep_range.is_none() {
        return Err(CliError::Config("sweep needs sweepRange".into()));
    }
    let x = var.column();
    let mut cost = Table::new("cost", &[x, "f1", "n", "T"]);
    let mut batches = Table::new("batches", &[x, "Qp*", "Qr*", "f1"]);
    for params in parameter_sets(config)? {
        let value = match var {
            SweepVar::Lambda => params.repair_rate,
            SweepVar::Dr => params.demand_repaired,
        };
        let r = solve_row(params, config.constrained, false)?;
        cost.push(vec![value.into(), r.f1.into(), r.n.into(), r.t.into()]);
        batches.push(vec![value.into(), r.d.qp.into(), r.d.qr.into(), r.f1.into()]);
    }
    let mut report = Report::new(config);
    report.tables.push(cost);
    report.tables.push(batches);
    Ok(report)
}

/// Three-objective front of the configured parameters.
pub fn run_pareto(config: &RunConfig) -> Result<Report, CliError> {
    let m = config.grid_subdivisions;
    if m < 3 {
        return Err(CliError::Config(format!("gridSubdivisions must be at least 3, got {m}")));
    }
    let front = pareto_front(&config.params, m)?;
    let mut table = Table::new(
        "front",
        &["Qp", "Qr", "f1", "f2", "f3", "w1", "w2", "w3", "rank", "subproblem"],
    );
    for p in &front.points {
        let o = p.objectives;
        let w = p.weight.as_array();
        table.push(vec![
            p.d.qp.into(),
            p.d.qr.into(),
            o.holding_cost.into(),
            o.emissions.into(),
            o.energy.into(),
            w[0].into(),
            w[1].into(),
            w[2].into(),
            p.rank.label().into(),
            (p.subproblem.number() as f64).into(),
        ]);
    }
    let d = &front.diagnostics;
    let minima: Vec<_> = d
        .individual_minima
        .iter()
        .map(|m| {
            json!({
                "objective": m.objective.number(),
                "Qp": m.d.qp,
                "Qr": m.d.qr,
                "f1": m.objectives.holding_cost,
                "f2": m.objectives.emissions,
                "f3": m.objectives.energy,
            })
        })
        .collect();
    let mut report = Report::new(config);
    report.diagnostics = Some(json!({
        "gridCount": d.grid_count,
        "subproblemsSolved": d.subproblems_solved,
        "skippedInfeasible": d.skipped_infeasible,
        "recordedPoints": d.recorded_points,
        "points": front.points.len(),
        "shift": d.shift,
        "individualMinima": minima,
        "wallSeconds": d.elapsed_seconds,
    }));
    report.notes.push(format!(
        "{} weights, {} points, {} skipped, shift {:?}, {:.2}s",
        d.grid_count,
        front.points.len(),
        d.skipped_infeasible,
        d.shift,
        d.elapsed_seconds
    ));
    report.tables.push(table);
    Ok(report)
}

/// Brute-force grid minimum of the holding cost, or the grid-sampled front.
pub fn run_oracle(config: &RunConfig) -> Result<Report, CliError> {
    let grid = match config.grid {
        Some(g) => g,
        None => GridSpec::around_closed_form(&config.params, DEFAULT_ORACLE_STEP)?,
    };
    let mut report = Report::new(config);
    match config.oracle_mode {
        OracleMode::Min => {
            let rule = if config.constrained { Feasibility::Floors } else { Feasibility::Any };
            let (m, secs) = timed(config.record_timing, || {
                grid_min_with(&config.params, &grid, rule, SearchMode::TwoStage)
            });
            let m = m?;
            let mut table = Table::new("oracle", &["Qp", "Qr", "f1", "cells", "cpuSeconds"]);
            table.push(vec![
                m.d.qp.into(),
                m.d.qr.into(),
                m.value.into(),
                (m.cells_evaluated as f64).into(),
                secs.into(),
            ]);
            report.tables.push(table);
        }
        OracleMode::Front => {
            let samples = grid_front(&config.params, &grid)?;
            let mut table = Table::new("oracle", &["Qp", "Qr", "f1", "f2", "f3"]);
            for s in samples {
                let o = s.objectives;
                table.push(vec![
                    s.d.qp.into(),
                    s.d.qr.into(),
                    o.holding_cost.into(),
                    o.emissions.into(),
                    o.energy.into(),
                ]);
            }
            report.tables.push(table);
        }
    }
    Ok(report)
}

pub fn run(config: &RunConfig, command: Command) -> Result<Report, CliError> {
    let mut config = config.clone();
    config.command = Some(command);
    config.validate()?;
    match command {
        Command::Solve => run_solve(&config),
        Command::SolveConstrained => run_solve_constrained(&config),
        Command::Sweep => run_sweep(&config),
        Command::Pareto => run_pareto(&config),
        Command::Oracle => run_oracle(&config),
    }
}

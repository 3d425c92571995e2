use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use revlog_core::oracle::GridSpec;
use revlog_core::ModelParams;

use crate::CliError;

pub const DEFAULT_SUBDIVISIONS: usize = 53;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Solve,
    SolveConstrained,
    Sweep,
    Pareto,
    Oracle,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Solve => "solve",
            Command::SolveConstrained => "solve-constrained",
            Command::Sweep => "sweep",
            Command::Pareto => "pareto",
            Command::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepVar {
    #[serde(rename = "lambda")]
    Lambda,
    #[serde(rename = "Dr")]
    Dr,
}

impl SweepVar {
    pub fn column(&self) -> &'static str {
        match self {
            SweepVar::Lambda => "lambda",
            SweepVar::Dr => "Dr",
        }
    }

    pub fn apply(&self, params: &ModelParams, value: f64) -> revlog_core::Result<ModelParams> {
        match self {
            SweepVar::Lambda => params.clone().with_repair_rate(value),
            SweepVar::Dr => params.clone().with_demand_repaired(value),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRange {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl SweepRange {
    /// `lo, lo + step, ...` up to `hi` inclusive.
    pub fn values(&self) -> Vec<f64> {
        let count = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize;
        (0..=count).map(|i| self.lo + i as f64 * self.step).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleMode {
    #[default]
    Min,
    Front,
}

/// One run of the command-line tool, as read from a JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RunConfig {
    pub params: ModelParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<Command>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep_var: Option<SweepVar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep_range: Option<SweepRange>,
    #[serde(default = "default_subdivisions")]
    pub grid_subdivisions: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
    #[serde(default)]
    pub output_format: OutputFormat,
    /// Use the floor-limited solver in `sweep` and `oracle`.
    #[serde(default)]
    pub constrained: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    #[serde(default)]
    pub oracle_mode: OracleMode,
    /// Fill the cpuSeconds column; zero otherwise.
    #[serde(default)]
    pub record_timing: bool,
}

fn default_subdivisions() -> usize {
    DEFAULT_SUBDIVISIONS
}

impl RunConfig {
    pub fn new(params: ModelParams) -> Self {
        RunConfig {
            params,
            command: None,
            sweep_var: None,
            sweep_range: None,
            grid_subdivisions: DEFAULT_SUBDIVISIONS,
            output_path: None,
            output_format: OutputFormat::Csv,
            constrained: false,
            grid: None,
            oracle_mode: OracleMode::Min,
            record_timing: false,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let config: RunConfig = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if let Some(r) = &self.sweep_range {
            if !(r.lo.is_finite() && r.hi.is_finite() && r.lo < r.hi) {
                return Err(CliError::Config(format!(
                    "sweepRange needs lo < hi, got ({}, {})",
                    r.lo, r.hi
                )));
            }
            if !(r.step.is_finite() && r.step > 0.0) {
                return Err(CliError::Config(format!("sweepRange.step must be positive, got {}", r.step)));
            }
        }
        if self.command == Some(Command::Pareto) && self.grid_subdivisions < 3 {
            return Err(CliError::Config(format!(
                "gridSubdivisions must be at least 3, got {}",
                self.grid_subdivisions
            )));
        }
        if let Some(g) = &self.grid {
            g.validate()?;
        }
        Ok(())
    }
}

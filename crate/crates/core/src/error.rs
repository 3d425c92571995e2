use thiserror::Error;

use crate::nlp::NlpError;

pub type Result<T> = std::result::Result<T, ModelError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("stationarity check failed: relative residual {residual:.3e} exceeds {limit:.1e}")]
    NotStationary { residual: f64, limit: f64 },

    #[error("no KKT point satisfies the floor-space constraints")]
    NoKktPoint,

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("grid error: {0}")]
    Grid(String),

    #[error("no grid cell is feasible")]
    EmptyFeasibleGrid,

    #[error(transparent)]
    Solver(#[from] NlpError),
}

impl ModelError {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        ModelError::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// True for errors that mean the model has no admissible solution, as
    /// opposed to malformed input.
    pub fn is_infeasibility(&self) -> bool {
        matches!(
            self,
            ModelError::NoKktPoint
                | ModelError::Infeasible(_)
                | ModelError::EmptyFeasibleGrid
                | ModelError::Solver(NlpError::Infeasible { .. })
        )
    }
}

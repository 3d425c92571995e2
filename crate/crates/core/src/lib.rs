//! Lot sizing for a closed-loop supply chain with a procurement depot and a
//! repair depot: average holding cost, greenhouse-gas emissions and energy
//! use, closed-form and KKT solutions, a bound-constrained solver, a
//! three-objective front and a brute-force grid oracle.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod error;
pub mod model;
pub mod nlp;
pub mod oracle;
pub mod pareto;
pub mod presets;

pub use analytic::{
    kkt_residual, solve_constrained, solve_unconstrained, KktCase, KktSolution, UnconstrainedSolution,
};
pub use error::{ModelError, Result};
pub use model::{
    check_feasibility, cost_breakdown, derive_constants, energy_use, ghg_emissions, BatchDecision,
    CostBreakdown, DerivedConstants, EmissionCoefficients, EnergyCoefficients, FeasibilityReport,
    FloorLimit, InventoryModel, ModelParams, ObjectiveBreakdown,
};
pub use oracle::{grid_front, grid_min, GridSpec};
pub use pareto::{
    dominance_filter, pareto_front, scalar_subproblem, weight_grid, weights_from_point, ObjectiveKind,
    ObjectiveVector, ParetoFront, ParetoPoint, Rank, WeightVector,
};

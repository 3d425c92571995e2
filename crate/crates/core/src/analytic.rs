//! Closed-form optimum of the holding cost and the KKT case analysis for the
//! floor-space constrained problem.
//!
//! Both floor constraints are linear in `(Qp, Qr)`, so stationarity of the
//! Lagrangian can be written as the two square-root formulas of
//! [`procurement_batch`] and [`repair_batch`] with the multipliers folded
//! into their denominators. Each of the four active-set cases fixes some of
//! the unknowns and recovers the rest from those formulas.

use crate::error::{ModelError, Result};
use crate::model::{BatchDecision, InventoryModel, ModelParams};

/// Largest admissible relative stationarity residual at a returned optimum.
pub const STATIONARITY_LIMIT: f64 = 1e-4;

/// Multipliers at or below this value count as zero.
pub const MULTIPLIER_ZERO: f64 = 1e-12;

const LAMBDA2_CAP: f64 = 1e12;
const BISECTION_RTOL: f64 = 1e-10;
const MAX_CONDITION: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnconstrainedSolution {
    pub d: BatchDecision,
    pub holding_cost: f64,
    /// Relative stationarity residual, see [`kkt_residual`].
    pub grad_norm: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KktCase {
    /// No floor constraint active.
    I,
    /// Supply floor active.
    II,
    /// Repair floor active.
    III,
    /// Both floors active.
    IV,
}

impl KktCase {
    pub const ALL: [KktCase; 4] = [KktCase::I, KktCase::II, KktCase::III, KktCase::IV];

    pub fn label(&self) -> &'static str {
        match self {
            KktCase::I => "I",
            KktCase::II => "II",
            KktCase::III => "III",
            KktCase::IV => "IV",
        }
    }
}

impl std::fmt::Display for KktCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KktSolution {
    pub case: KktCase,
    pub d: BatchDecision,
    pub lambda1: f64,
    pub lambda2: f64,
    pub holding_cost: f64,
    pub feasible: bool,
    pub kkt_residual: f64,
}

/// What happened when one active-set case was tried.
#[derive(Debug, Clone, PartialEq)]
pub enum CaseOutcome {
    Accepted(KktSolution),
    Rejected { case: KktCase, reason: String },
}

impl CaseOutcome {
    pub fn case(&self) -> KktCase {
        match self {
            CaseOutcome::Accepted(s) => s.case,
            CaseOutcome::Rejected { case, .. } => *case,
        }
    }
}

/// Stationary procurement batch for given multipliers of the supply
/// (`lambda1`) and repair (`lambda2`) floor constraints.
pub fn procurement_batch(model: &InventoryModel, lambda1: f64, lambda2: f64) -> f64 {
    let p = model.params();
    let c3 = model.constants().c3;
    let pr = p.collection_fraction * p.recovery_fraction;
    let dp = p.demand_new;
    let denom = p.holding_cost_supply
        + 2.0 * lambda1 * dp * c3 * p.supply_floor.space_per_item
        + p.holding_cost_repair * pr
        + 2.0 * lambda2 * dp * c3 * pr * p.repair_floor.space_per_item;
    (2.0 * p.setup_cost_new * dp / denom).sqrt()
}

/// Denominator of [`repair_batch`] without the multiplier term, and the
/// coefficient multiplying `lambda2` in it.
fn repair_batch_denominator(model: &InventoryModel) -> (f64, f64) {
    let p = model.params();
    let k = model.constants();
    let (c1, c2, c3) = (k.c1, k.c2, k.c3);
    let pr = p.collection_fraction * p.recovery_fraction;
    let (dp, dr, lambda) = (p.demand_new, p.demand_repaired, p.repair_rate);
    let (h1, h2) = (p.holding_cost_supply, p.holding_cost_repair);
    let c4_base = c1 * c2 * h1 + 4.0 * h2 * pr + c1 * c2 * dp * h2 * pr / dr;
    let base = c1 * c2 * dr * (h1 + h2) + 2.0 * dr * h2 * pr + lambda * c1 * c4_base;
    let per_lambda2 = lambda * c1 * 2.0 * dp * c3 * pr * p.repair_floor.space_per_item;
    (base, per_lambda2)
}

/// Stationary repair batch for a given repair-floor multiplier.
pub fn repair_batch(model: &InventoryModel, lambda2: f64) -> f64 {
    let p = model.params();
    let k = model.constants();
    let (base, per_lambda2) = repair_batch_denominator(model);
    let numer = 2.0 * p.repair_rate * k.c2 * p.setup_cost_repair * p.demand_repaired;
    (numer / (base + lambda2 * per_lambda2)).sqrt()
}

/// Repair batch that fills the repair floor exactly for a given procurement
/// batch. Non-positive when the procurement batch alone exhausts the floor.
pub fn repair_batch_on_floor(model: &InventoryModel, qp: f64) -> f64 {
    let p = model.params();
    let rp = p.collection_fraction * p.recovery_fraction;
    let p2 = p.repair_floor.space_per_item;
    p.demand_repaired * (p.repair_floor.capacity - rp * qp * p2)
        / (p.return_flow() * model.constants().c1 * p2)
}

fn fd_step(x: f64) -> f64 {
    1e-5 * x.abs().max(1.0)
}

/// Central-difference first and second partials of the holding cost.
fn holding_cost_partials(model: &InventoryModel, d: BatchDecision) -> ([f64; 2], [f64; 2], f64) {
    let f0 = model.holding_cost(d);
    let hp = fd_step(d.qp);
    let hr = fd_step(d.qr);
    let fp_plus = model.holding_cost(BatchDecision { qp: d.qp + hp, ..d });
    let fp_minus = model.holding_cost(BatchDecision { qp: d.qp - hp, ..d });
    let fr_plus = model.holding_cost(BatchDecision { qr: d.qr + hr, ..d });
    let fr_minus = model.holding_cost(BatchDecision { qr: d.qr - hr, ..d });
    let first = [(fp_plus - fp_minus) / (2.0 * hp), (fr_plus - fr_minus) / (2.0 * hr)];
    let second = [
        (fp_plus - 2.0 * f0 + fp_minus) / (hp * hp),
        (fr_plus - 2.0 * f0 + fr_minus) / (hr * hr),
    ];
    (first, second, f0)
}

/// Central-difference partials of the holding cost scaled to elasticities,
/// `(∂f1/∂Q)·Q/|f1|`, one entry per coordinate.
pub fn relative_gradient(model: &InventoryModel, d: BatchDecision) -> [f64; 2] {
    let (g, _, f0) = holding_cost_partials(model, d);
    [g[0] * d.qp / f0.abs(), g[1] * d.qr / f0.abs()]
}

/// Central second differences of the holding cost along each coordinate.
pub fn coordinate_curvature(model: &InventoryModel, d: BatchDecision) -> [f64; 2] {
    holding_cost_partials(model, d).1
}

fn floor_gradients(model: &InventoryModel) -> ([f64; 2], [f64; 2]) {
    let p = model.params();
    let rp = p.collection_fraction * p.recovery_fraction;
    let p2 = p.repair_floor.space_per_item;
    let supply = [p.supply_floor.space_per_item, 0.0];
    let repair = [p2 * rp, p2 * model.constants().c1 * p.return_flow() / p.demand_repaired];
    (supply, repair)
}

/// Relative stationarity residual of the Lagrangian at `d`.
///
/// Each Lagrangian partial is divided by `|∂²f1/∂Q²|·Q`, so a component is
/// the Newton step along that coordinate relative to the coordinate itself.
/// Partials of the holding cost are central differences with step
/// `1e-5·max(1, |Q|)`; the floor constraints contribute exact gradients.
pub fn model_kkt_residual(model: &InventoryModel, d: BatchDecision, lambda1: f64, lambda2: f64) -> f64 {
    let (g, h, f0) = holding_cost_partials(model, d);
    let (supply, repair) = floor_gradients(model);
    let x = [d.qp, d.qr];
    let mut sum = 0.0;
    for i in 0..2 {
        let lagrangian = g[i] + lambda1 * supply[i] + lambda2 * repair[i];
        let scale = if h[i] > 0.0 {
            h[i] * x[i].abs()
        } else {
            f0.abs() / x[i].abs()
        };
        let r = lagrangian / scale;
        sum += r * r;
    }
    sum.sqrt()
}

pub fn kkt_residual(params: &ModelParams, d: BatchDecision, lambda1: f64, lambda2: f64) -> Result<f64> {
    let model = InventoryModel::new(params.clone())?;
    Ok(model_kkt_residual(&model, d, lambda1, lambda2))
}

pub fn solve_unconstrained(params: &ModelParams) -> Result<UnconstrainedSolution> {
    let model = InventoryModel::new(params.clone())?;
    unconstrained_optimum(&model)
}

pub fn unconstrained_optimum(model: &InventoryModel) -> Result<UnconstrainedSolution> {
    let d = BatchDecision::new(procurement_batch(model, 0.0, 0.0), repair_batch(model, 0.0))?;
    let holding_cost = model.holding_cost(d);
    let grad_norm = model_kkt_residual(model, d, 0.0, 0.0);
    if !(grad_norm < STATIONARITY_LIMIT) {
        return Err(ModelError::NotStationary {
            residual: grad_norm,
            limit: STATIONARITY_LIMIT,
        });
    }
    Ok(UnconstrainedSolution {
        d,
        holding_cost,
        grad_norm,
    })
}

/// Minimizes the holding cost under the two floor-space constraints by
/// trying every active set and keeping the cheapest accepted KKT point.
pub fn solve_constrained(params: &ModelParams) -> Result<KktSolution> {
    let model = InventoryModel::new(params.clone())?;
    best_kkt_point(&enumerate_cases(&model)?)
}

pub fn best_kkt_point(outcomes: &[CaseOutcome]) -> Result<KktSolution> {
    outcomes
        .iter()
        .filter_map(|o| match o {
            CaseOutcome::Accepted(s) => Some(*s),
            CaseOutcome::Rejected { .. } => None,
        })
        .min_by(|a, b| a.holding_cost.total_cmp(&b.holding_cost))
        .ok_or(ModelError::NoKktPoint)
}

/// Outcome of each of the four cases, in order I–IV.
pub fn enumerate_cases(model: &InventoryModel) -> Result<Vec<CaseOutcome>> {
    Ok(vec![
        case_none_active(model)?,
        case_supply_active(model),
        case_repair_active(model),
        case_both_active(model),
    ])
}

fn floor_tolerance(capacity: f64) -> f64 {
    1e-9 * capacity.abs().max(1.0)
}

fn floors_satisfied(model: &InventoryModel, d: BatchDecision) -> bool {
    let r = model.feasibility(d, false);
    let p = model.params();
    r.slack_supply >= -floor_tolerance(p.supply_floor.capacity)
        && r.slack_repair >= -floor_tolerance(p.repair_floor.capacity)
}

fn finish(model: &InventoryModel, case: KktCase, d: BatchDecision, lambda1: f64, lambda2: f64) -> CaseOutcome {
    if !floors_satisfied(model, d) {
        return CaseOutcome::Rejected {
            case,
            reason: format!("({:.4}, {:.4}) violates a floor constraint", d.qp, d.qr),
        };
    }
    CaseOutcome::Accepted(KktSolution {
        case,
        d,
        lambda1,
        lambda2,
        holding_cost: model.holding_cost(d),
        feasible: true,
        kkt_residual: model_kkt_residual(model, d, lambda1, lambda2),
    })
}

fn case_none_active(model: &InventoryModel) -> Result<CaseOutcome> {
    let s = unconstrained_optimum(model)?;
    Ok(finish(model, KktCase::I, s.d, 0.0, 0.0))
}

fn case_supply_active(model: &InventoryModel) -> CaseOutcome {
    let case = KktCase::II;
    let p = model.params();
    if !p.supply_floor.is_limited() {
        return CaseOutcome::Rejected {
            case,
            reason: "supply floor is unlimited".into(),
        };
    }
    let qp = p.supply_floor.capacity / p.supply_floor.space_per_item;
    let qr = repair_batch(model, 0.0);
    let pr = p.collection_fraction * p.recovery_fraction;
    let dp = p.demand_new;
    let lambda1 = (2.0 * p.setup_cost_new * dp - qp * qp * (p.holding_cost_supply + p.holding_cost_repair * pr))
        / (2.0 * qp * qp * dp * model.constants().c3 * p.supply_floor.space_per_item);
    if !(lambda1 > MULTIPLIER_ZERO) {
        return CaseOutcome::Rejected {
            case,
            reason: format!("supply multiplier {lambda1:.3e} is not positive"),
        };
    }
    finish(model, case, BatchDecision { qp, qr }, lambda1, 0.0)
}

fn case_repair_active(model: &InventoryModel) -> CaseOutcome {
    let case = KktCase::III;
    let p = model.params();
    if !p.repair_floor.is_limited() {
        return CaseOutcome::Rejected {
            case,
            reason: "repair floor is unlimited".into(),
        };
    }
    // Gap between the batch that fills the floor and the stationary batch;
    // increasing in lambda2.
    let gap = |lambda2: f64| {
        let qp = procurement_batch(model, 0.0, lambda2);
        repair_batch_on_floor(model, qp) - repair_batch(model, lambda2)
    };
    if gap(0.0) >= 0.0 {
        return CaseOutcome::Rejected {
            case,
            reason: "repair floor is not binding at zero multiplier".into(),
        };
    }
    let mut lo = 0.0;
    let mut hi = 1.0;
    while gap(hi) <= 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > LAMBDA2_CAP {
            return CaseOutcome::Rejected {
                case,
                reason: "no sign change of the repair multiplier equation below 1e12".into(),
            };
        }
    }
    while hi - lo > BISECTION_RTOL * hi {
        let mid = 0.5 * (lo + hi);
        if gap(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let lambda2 = 0.5 * (lo + hi);
    if !(lambda2 > MULTIPLIER_ZERO) {
        return CaseOutcome::Rejected {
            case,
            reason: format!("repair multiplier {lambda2:.3e} is not positive"),
        };
    }
    let qp = procurement_batch(model, 0.0, lambda2);
    let qr = repair_batch_on_floor(model, qp);
    if !(qr > 0.0) {
        return CaseOutcome::Rejected {
            case,
            reason: "repair batch on the floor boundary is not positive".into(),
        };
    }
    finish(model, case, BatchDecision { qp, qr }, 0.0, lambda2)
}

/// Solves a 2×2 system, refusing ill-conditioned matrices.
fn solve_2x2(a: [[f64; 2]; 2], b: [f64; 2]) -> Option<[f64; 2]> {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    let frob2: f64 = a.iter().flatten().map(|v| v * v).sum();
    let disc = (frob2 * frob2 - 4.0 * det * det).max(0.0).sqrt();
    let s_max = ((frob2 + disc) / 2.0).sqrt();
    let s_min2 = (frob2 - disc) / 2.0;
    // s_min from det is more accurate than the difference above.
    let s_min = if s_max > 0.0 { det.abs() / s_max } else { 0.0 };
    if !(s_min > 0.0) || s_min2 < 0.0 || s_max / s_min > MAX_CONDITION {
        return None;
    }
    Some([
        (b[0] * a[1][1] - a[0][1] * b[1]) / det,
        (a[0][0] * b[1] - b[0] * a[1][0]) / det,
    ])
}

fn case_both_active(model: &InventoryModel) -> CaseOutcome {
    let case = KktCase::IV;
    let p = model.params();
    if !(p.supply_floor.is_limited() && p.repair_floor.is_limited()) {
        return CaseOutcome::Rejected {
            case,
            reason: "needs both floors limited".into(),
        };
    }
    let qp = p.supply_floor.capacity / p.supply_floor.space_per_item;
    let qr = repair_batch_on_floor(model, qp);
    if !(qr > 0.0) {
        return CaseOutcome::Rejected {
            case,
            reason: "repair batch on the floor boundary is not positive".into(),
        };
    }
    let k = model.constants();
    let pr = p.collection_fraction * p.recovery_fraction;
    let dp = p.demand_new;
    let (base, per_lambda2) = repair_batch_denominator(model);
    let a = [
        [
            2.0 * dp * k.c3 * p.supply_floor.space_per_item,
            2.0 * dp * k.c3 * pr * p.repair_floor.space_per_item,
        ],
        [0.0, per_lambda2],
    ];
    let b = [
        2.0 * p.setup_cost_new * dp / (qp * qp) - p.holding_cost_supply - p.holding_cost_repair * pr,
        2.0 * p.repair_rate * k.c2 * p.setup_cost_repair * p.demand_repaired / (qr * qr) - base,
    ];
    let Some([lambda1, lambda2]) = solve_2x2(a, b) else {
        return CaseOutcome::Rejected {
            case,
            reason: "multiplier system is singular".into(),
        };
    };
    if !(lambda1 > MULTIPLIER_ZERO && lambda2 > MULTIPLIER_ZERO) {
        return CaseOutcome::Rejected {
            case,
            reason: format!("multipliers ({lambda1:.3e}, {lambda2:.3e}) are not both positive"),
        };
    }
    finish(model, case, BatchDecision { qp, qr }, lambda1, lambda2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::FloorLimit;
    use crate::presets;
    use approx::assert_relative_eq;

    #[test]
    fn closed_form_at_lambda_45() {
        let s = solve_unconstrained(&presets::base_case(45.0, 43.0)).unwrap();
        assert_relative_eq!(s.d.qp, 30.83, max_relative = 5e-4);
        assert_relative_eq!(s.d.qr, 115.10, max_relative = 5e-4);
        assert_relative_eq!(s.holding_cost, 74.61, max_relative = 5e-4);
        assert!(s.grad_norm < 1e-6);
    }

    #[test]
    fn procurement_batch_scales_with_square_root_of_setup_cost() {
        let p = presets::base_case(60.0, 43.0);
        let mut q = p.clone();
        q.setup_cost_new *= 4.0;
        let a = solve_unconstrained(&p).unwrap();
        let b = solve_unconstrained(&q).unwrap();
        assert_relative_eq!(b.d.qp, 2.0 * a.d.qp, max_relative = 1e-15);
        assert_eq!(a.d.qr, b.d.qr);
    }

    #[test]
    fn unlimited_floors_reduce_to_case_one() {
        let p = presets::base_case(75.0, 43.0);
        let u = solve_unconstrained(&p).unwrap();
        let c = solve_constrained(&p).unwrap();
        assert_eq!(c.case, KktCase::I);
        assert_eq!(c.d, u.d);
        assert_eq!(c.holding_cost, u.holding_cost);
    }

    #[test]
    fn repair_floor_active_at_lambda_45() {
        let s = solve_constrained(&presets::floor_limited(45.0)).unwrap();
        assert_eq!(s.case, KktCase::III);
        assert_relative_eq!(s.d.qp, 29.77, max_relative = 1e-3);
        assert_relative_eq!(s.d.qr, 115.09, max_relative = 1e-3);
        assert!(s.lambda2 > 0.0 && s.lambda1 == 0.0);
        assert!(s.kkt_residual < 1e-6, "{}", s.kkt_residual);
    }

    #[test]
    fn supply_floor_case() {
        // k1 = 10 with p1 = 0.5 caps Qp at 20:
        // lambda1 = (2000 − 400·2.104)/(2·400·100·C3·0.5), C3 = 271.9/143.
        let p = presets::base_case(45.0, 43.0)
            .with_floors(FloorLimit::new(0.5, 10.0), FloorLimit::unlimited())
            .unwrap();
        let s = solve_constrained(&p).unwrap();
        assert_eq!(s.case, KktCase::II);
        assert_eq!(s.d.qp, 20.0);
        let c3 = 271.9 / 143.0;
        let expected = (2000.0 - 400.0 * 2.104) / (2.0 * 400.0 * 100.0 * c3 * 0.5);
        assert_relative_eq!(s.lambda1, expected, max_relative = 1e-12);
        assert_relative_eq!(s.lambda1, 0.01523, max_relative = 1e-3);
        assert!(s.kkt_residual < 1e-6);
    }

    #[test]
    fn both_floors_active() {
        // Supply floor caps Qp at 10; the repair floor then caps Qr at ~53,
        // slightly below its stationary value of ~54.3.
        let p = presets::base_case(60.0, 43.0)
            .with_floors(FloorLimit::new(1.0, 10.0), FloorLimit::new(0.5, 9.87))
            .unwrap();
        let model = InventoryModel::new(p.clone()).unwrap();
        let outcomes = enumerate_cases(&model).unwrap();
        let s = solve_constrained(&p).unwrap();
        assert_eq!(s.case, KktCase::IV, "{outcomes:?}");
        assert!(s.lambda1 > 0.0 && s.lambda2 > 0.0);
        assert!(s.kkt_residual < 1e-6, "{}", s.kkt_residual);
        let r = model.feasibility(s.d, false);
        assert!(r.slack_supply.abs() < 1e-9 && r.slack_repair.abs() < 1e-9);
    }

    #[test]
    fn tiny_repair_floor_still_has_a_feasible_point() {
        let p = presets::base_case(60.0, 43.0)
            .with_floors(FloorLimit::new(0.5, 1.0), FloorLimit::new(10.0, 1e-3))
            .unwrap();
        let s = solve_constrained(&p).unwrap();
        assert!(s.feasible);
        assert!(s.lambda2 > 0.0);
        let model = InventoryModel::new(p).unwrap();
        let r = model.feasibility(s.d, false);
        assert!(r.slack_supply >= 0.0 && r.slack_repair >= -1e-12, "{r:?}");
    }

    #[test]
    fn perturbed_optimum_is_not_stationary() {
        let p = presets::base_case(45.0, 43.0);
        let s = solve_unconstrained(&p).unwrap();
        let d = BatchDecision { qp: s.d.qp * 1.1, ..s.d };
        // Newton step along Qp is (1.21 − 1)/2 of Qp.
        let r = kkt_residual(&p, d, 0.0, 0.0).unwrap();
        assert!(r > 1e-2, "{r}");
        assert_relative_eq!(r, 0.105, max_relative = 1e-3);
    }

    #[test]
    fn two_by_two_solver_rejects_singular() {
        assert!(solve_2x2([[1.0, 2.0], [2.0, 4.0]], [1.0, 1.0]).is_none());
        assert!(solve_2x2([[1.0, 0.0], [0.0, 1e-13]], [1.0, 1.0]).is_none());
        let x = solve_2x2([[2.0, 1.0], [0.0, 4.0]], [4.0, 8.0]).unwrap();
        assert_relative_eq!(x[0], 1.0);
        assert_relative_eq!(x[1], 2.0);
    }
}

//! Three-objective front of holding cost, emissions and energy by
//! objective-constraint scalarization over a weight grid.
//!
//! For a weight `w` and an anchor decision `x̂`, subproblem `k` minimizes
//! `w_k·f_k(x)` over the floor/margin-feasible set while every other weighted
//! objective stays below the anchor's level `max_j w_j·f_j(x̂)`. When `w` is
//! derived from `x̂` itself ([`weights_from_point`]) all weighted objectives
//! coincide at `x̂`, so the level equals `w_k·f_k(x̂)` for every `k`.
//!
//! Objectives are shifted by a constant per run whenever one of them is not
//! positive at the individual minima, because the weighting needs positive
//! values.

use std::time::Instant;

use rayon::prelude::*;

use crate::analytic;
use crate::error::{ModelError, Result};
use crate::model::{BatchDecision, InventoryModel, ModelParams};
use crate::nlp::{self, ScalarProgram, SolveResult, FEASIBILITY_TOLERANCE};

/// Relative tolerance for treating two decisions as the same point.
pub const COINCIDENCE_RTOL: f64 = 1e-6;

const WEIGHT_SUM_TOL: f64 = 1e-12;
const PASSES: usize = 2;
/// Relative nudge of the lower `Qp` bound away from the margin boundary.
const MARGIN_NUDGE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ObjectiveKind {
    HoldingCost,
    Emissions,
    Energy,
}

impl ObjectiveKind {
    pub const ALL: [ObjectiveKind; 3] = [
        ObjectiveKind::HoldingCost,
        ObjectiveKind::Emissions,
        ObjectiveKind::Energy,
    ];

    pub fn index(self) -> usize {
        match self {
            ObjectiveKind::HoldingCost => 0,
            ObjectiveKind::Emissions => 1,
            ObjectiveKind::Energy => 2,
        }
    }

    /// One-based subproblem number.
    pub fn number(self) -> usize {
        self.index() + 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightVector([f64; 3]);

impl WeightVector {
    pub fn new(w1: f64, w2: f64, w3: f64) -> Result<Self> {
        let w = [w1, w2, w3];
        if w.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(ModelError::Domain(format!("weights must be positive, got {w:?}")));
        }
        if ((w1 + w2 + w3) - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(ModelError::Domain(format!("weights must sum to 1, got {w:?}")));
        }
        Ok(WeightVector(w))
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.0
    }

    pub fn get(&self, kind: ObjectiveKind) -> f64 {
        self.0[kind.index()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectiveVector {
    pub holding_cost: f64,
    pub emissions: f64,
    pub energy: f64,
}

impl ObjectiveVector {
    pub fn new(holding_cost: f64, emissions: f64, energy: f64) -> Self {
        ObjectiveVector {
            holding_cost,
            emissions,
            energy,
        }
    }

    pub fn from_array(v: [f64; 3]) -> Self {
        ObjectiveVector::new(v[0], v[1], v[2])
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.holding_cost, self.emissions, self.energy]
    }

    pub fn get(&self, kind: ObjectiveKind) -> f64 {
        self.as_array()[kind.index()]
    }

    /// `self ≤ other` componentwise with at least one strict inequality.
    pub fn dominates(&self, other: &ObjectiveVector) -> bool {
        dominates(&self.as_array(), &other.as_array())
    }

    fn shifted(&self, shift: [f64; 3]) -> [f64; 3] {
        let v = self.as_array();
        [v[0] + shift[0], v[1] + shift[1], v[2] + shift[2]]
    }
}

pub fn dominates(a: &[f64; 3], b: &[f64; 3]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y) && a.iter().zip(b).any(|(x, y)| x < y)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rank {
    Efficient,
    WeakEfficient,
}

impl Rank {
    pub fn label(&self) -> &'static str {
        match self {
            Rank::Efficient => "efficient",
            Rank::WeakEfficient => "weak-efficient",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParetoPoint {
    pub d: BatchDecision,
    pub objectives: ObjectiveVector,
    pub weight: WeightVector,
    pub rank: Rank,
    /// Subproblem that produced the point.
    pub subproblem: ObjectiveKind,
    /// Position of `weight` in the grid.
    pub grid_index: usize,
}

/// Weights inversely proportional to the objective values, so that
/// `w_k·f_k = w_i·f_i` for all `i`, `k`.
pub fn weights_from_point(objs: &ObjectiveVector) -> Result<WeightVector> {
    let f = objs.as_array();
    if f.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(ModelError::Domain(format!(
            "weights need strictly positive objectives, got {f:?}"
        )));
    }
    let inv = f.map(|v| 1.0 / v);
    let total: f64 = inv.iter().sum();
    Ok(WeightVector(inv.map(|v| v / total)))
}

/// Interior points of the uniform simplex lattice with `m` subdivisions,
/// `(i/m, j/m, 1 − (i+j)/m)` for `i, j ≥ 1`, `i + j ≤ m − 1`.
pub fn weight_grid(m: usize) -> Vec<WeightVector> {
    let mut grid = Vec::new();
    if m < 3 {
        return grid;
    }
    let mf = m as f64;
    for i in 1..m {
        for j in 1..(m - i) {
            let w1 = i as f64 / mf;
            let w2 = j as f64 / mf;
            let w3 = (m - i - j) as f64 / mf;
            grid.push(WeightVector([w1, w2, w3]));
        }
    }
    grid
}

/// Indices of the points not dominated by any other point, in input order.
///
/// Candidates are visited in lexicographic order, so any dominator of a
/// point is visited before it; only the running front has to be checked.
pub fn dominance_filter(points: &[ObjectiveVector]) -> Vec<usize> {
    let values: Vec<[f64; 3]> = points.iter().map(ObjectiveVector::as_array).collect();
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| {
        let (x, y) = (&values[a], &values[b]);
        x[0].total_cmp(&y[0])
            .then(x[1].total_cmp(&y[1]))
            .then(x[2].total_cmp(&y[2]))
            .then(a.cmp(&b))
    });
    let mut front: Vec<usize> = Vec::new();
    for i in order {
        if !front.iter().any(|&j| dominates(&values[j], &values[i])) {
            front.push(i);
        }
    }
    front.sort_unstable();
    front
}

/// Floor, margin and box data shared by all scalar programs of a run.
#[derive(Debug, Clone)]
pub struct ParetoProblem {
    model: InventoryModel,
    lower: BatchDecision,
    upper: BatchDecision,
    shift: [f64; 3],
    budget: usize,
}

impl ParetoProblem {
    /// Builds the search box: `Qp` from the margin boundary up to the
    /// supply floor (or ten times the larger of the closed-form batch and
    /// the boundary), `Qr` from a thousandth of the closed-form batch up to
    /// the repair floor at the smallest `Qp` (or ten times closed form).
    pub fn new(params: &ModelParams) -> Result<Self> {
        if !params.has_sustainability() {
            return Err(ModelError::Domain(
                "emission and energy coefficients are required for the three-objective model".into(),
            ));
        }
        let model = InventoryModel::new(params.clone())?;
        let qp_closed = analytic::procurement_batch(&model, 0.0, 0.0);
        let qr_closed = analytic::repair_batch(&model, 0.0);
        let qp_lo = model.margin_boundary() * (1.0 + MARGIN_NUDGE);

        let mut qp_hi = 10.0 * qp_closed.max(qp_lo);
        if params.supply_floor.is_limited() {
            qp_hi = params.supply_floor.capacity / params.supply_floor.space_per_item;
        }
        if params.repair_floor.is_limited() {
            let rp = params.collection_fraction * params.recovery_fraction;
            qp_hi = qp_hi.min(params.repair_floor.capacity / (params.repair_floor.space_per_item * rp));
        }
        let qr_lo = 1e-3 * qr_closed;
        let qr_hi = if params.repair_floor.is_limited() {
            analytic::repair_batch_on_floor(&model, qp_lo)
        } else {
            10.0 * qr_closed
        };
        if !(qp_hi > qp_lo && qr_hi > qr_lo) {
            return Err(ModelError::Infeasible(format!(
                "floor limits leave no room above the margin boundary (Qp in [{qp_lo:.4}, {qp_hi:.4}], Qr in [{qr_lo:.4}, {qr_hi:.4}])"
            )));
        }
        Ok(ParetoProblem {
            model,
            lower: BatchDecision { qp: qp_lo, qr: qr_lo },
            upper: BatchDecision { qp: qp_hi, qr: qr_hi },
            shift: [0.0; 3],
            budget: nlp::DEFAULT_BUDGET,
        })
    }

    pub fn with_shift(mut self, shift: [f64; 3]) -> Self {
        self.shift = shift;
        self
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn model(&self) -> &InventoryModel {
        &self.model
    }

    pub fn bounds(&self) -> (BatchDecision, BatchDecision) {
        (self.lower, self.upper)
    }

    pub fn shift(&self) -> [f64; 3] {
        self.shift
    }

    pub fn center(&self) -> BatchDecision {
        BatchDecision {
            qp: 0.5 * (self.lower.qp + self.upper.qp),
            qr: 0.5 * (self.lower.qr + self.upper.qr),
        }
    }

    fn constraint_count(&self) -> usize {
        let p = self.model.params();
        1 + usize::from(p.supply_floor.is_limited()) + usize::from(p.repair_floor.is_limited())
    }

    /// Floor and margin constraints, `<= 0` when satisfied.
    fn model_constraints(&self, d: BatchDecision, out: &mut [f64]) {
        let p = self.model.params();
        let mut i = 0;
        if p.supply_floor.is_limited() {
            out[i] = self.model.supply_floor_usage(d) - p.supply_floor.capacity;
            i += 1;
        }
        if p.repair_floor.is_limited() {
            out[i] = self.model.repair_floor_usage(d) - p.repair_floor.capacity;
            i += 1;
        }
        out[i] = p.emissions_margin - self.model.production_margin(d.qp);
    }

    /// Largest violation of the floor and margin constraints.
    pub fn max_violation(&self, d: BatchDecision) -> f64 {
        let mut g = vec![0.0; self.constraint_count()];
        self.model_constraints(d, &mut g);
        g.into_iter().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn is_feasible(&self, d: BatchDecision) -> bool {
        d.qp > 0.0 && d.qr > 0.0 && self.max_violation(d) <= FEASIBILITY_TOLERANCE
    }

    /// Objectives at a feasible decision.
    pub fn evaluate(&self, d: BatchDecision) -> Option<ObjectiveVector> {
        if !self.is_feasible(d) {
            return None;
        }
        let v = self.model.objective_values_unchecked(d);
        v.iter().all(|x| x.is_finite()).then(|| ObjectiveVector::from_array(v))
    }

    /// Minimizes one objective alone over the feasible set.
    pub fn individual_minimum(&self, kind: ObjectiveKind, seeds: &[BatchDecision]) -> Result<SolveResult> {
        let center = self.center();
        let scale = self
            .model
            .objective_values_unchecked(center)
            .get(kind.index())
            .map_or(1.0, |v| v.abs().max(1.0));
        let program = SubproblemProgram {
            problem: self,
            objective: kind,
            weights: [1.0; 3],
            level: None,
            scale,
        };
        let mut r = nlp::minimize(&program, seeds, self.budget)?;
        r.value = self.model.objective_values_unchecked(r.d)[kind.index()];
        Ok(r)
    }

    /// Subproblem `k`: minimize `w_k·f̃_k` subject to `w_i·f̃_i <= level`
    /// for `i != k` plus the floor and margin constraints, where `f̃` are the
    /// shifted objectives and `level = max_j w_j·f̃_j(anchor)`. An anchor
    /// with infinite components drops the objective constraints. The
    /// returned value is `w_k·f̃_k` at the solution.
    pub fn scalar_subproblem(
        &self,
        w: &WeightVector,
        k: ObjectiveKind,
        anchor: &ObjectiveVector,
        seeds: &[BatchDecision],
    ) -> Result<SolveResult> {
        let weights = w.as_array();
        let shifted = anchor.shifted(self.shift);
        let level = (0..3).map(|j| weights[j] * shifted[j]).fold(f64::NEG_INFINITY, f64::max);
        if !(level > 0.0) {
            return Err(ModelError::Domain(format!(
                "anchor level must be positive after shifting, got {level}"
            )));
        }
        let level = level.is_finite().then_some(level);
        let program = SubproblemProgram {
            problem: self,
            objective: k,
            weights,
            level,
            scale: level.unwrap_or(1.0),
        };
        let mut r = nlp::minimize(&program, seeds, self.budget)?;
        let f = self.model.objective_values_unchecked(r.d);
        r.value = weights[k.index()] * (f[k.index()] + self.shift[k.index()]);
        Ok(r)
    }

    /// Level `max_j w_j·f̃_j` of an objective vector.
    fn level(&self, w: &WeightVector, objs: &ObjectiveVector) -> f64 {
        let s = objs.shifted(self.shift);
        let w = w.as_array();
        (0..3).map(|j| w[j] * s[j]).fold(f64::NEG_INFINITY, f64::max)
    }
}

struct SubproblemProgram<'a> {
    problem: &'a ParetoProblem,
    objective: ObjectiveKind,
    weights: [f64; 3],
    level: Option<f64>,
    scale: f64,
}

impl ScalarProgram for SubproblemProgram<'_> {
    fn lower(&self) -> BatchDecision {
        self.problem.lower
    }

    fn upper(&self) -> BatchDecision {
        self.problem.upper
    }

    fn constraint_count(&self) -> usize {
        self.problem.constraint_count() + if self.level.is_some() { 2 } else { 0 }
    }

    fn evaluate(&self, d: BatchDecision, constraints: &mut [f64]) -> f64 {
        let f = self.problem.model.objective_values_unchecked(d);
        let shift = self.problem.shift;
        let k = self.objective.index();
        let n = self.problem.constraint_count();
        self.problem.model_constraints(d, &mut constraints[..n]);
        if let Some(level) = self.level {
            for (slot, i) in (0..3).filter(|&i| i != k).enumerate() {
                constraints[n + slot] = (self.weights[i] * (f[i] + shift[i]) - level) / level;
            }
        }
        self.weights[k] * (f[k] + shift[k]) / self.scale
    }
}

/// Subproblem of the unshifted three-objective model for one weight.
pub fn scalar_subproblem(
    params: &ModelParams,
    w: &WeightVector,
    k: ObjectiveKind,
    anchor: &ObjectiveVector,
) -> Result<SolveResult> {
    ParetoProblem::new(params)?.scalar_subproblem(w, k, anchor, &[])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndividualMinimum {
    pub objective: ObjectiveKind,
    pub d: BatchDecision,
    pub objectives: ObjectiveVector,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrontDiagnostics {
    pub grid_count: usize,
    pub subproblems_solved: usize,
    pub skipped_infeasible: usize,
    /// Points recorded before the final dominance pass.
    pub recorded_points: usize,
    pub shift: [f64; 3],
    pub individual_minima: Vec<IndividualMinimum>,
    pub elapsed_seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParetoFront {
    pub points: Vec<ParetoPoint>,
    pub diagnostics: FrontDiagnostics,
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    d: BatchDecision,
    objectives: ObjectiveVector,
}

fn coincide(a: BatchDecision, b: BatchDecision) -> bool {
    let close = |x: f64, y: f64| (x - y).abs() <= COINCIDENCE_RTOL * x.abs().max(y.abs());
    close(a.qp, b.qp) && close(a.qr, b.qr)
}

struct GridOutcome {
    points: Vec<ParetoPoint>,
    solved: usize,
    skipped: usize,
}

fn solve_weight(
    problem: &ParetoProblem,
    grid_index: usize,
    w: &WeightVector,
    initial: &[Candidate],
    seeds: &[BatchDecision],
) -> Result<GridOutcome> {
    let mut outcome = GridOutcome {
        points: Vec::new(),
        solved: 0,
        skipped: 0,
    };
    let start = initial
        .iter()
        .min_by(|a, b| problem.level(w, &a.objectives).total_cmp(&problem.level(w, &b.objectives)))
        .copied()
        .ok_or_else(|| ModelError::Infeasible("no feasible anchor".into()))?;
    let mut anchors = [Some(start); 3];

    for _ in 0..PASSES {
        let mut next = [None; 3];
        for k in ObjectiveKind::ALL {
            let Some(anchor) = anchors[k.index()] else { continue };
            // The anchor is feasible for its own subproblem by construction.
            debug_assert!(problem.is_feasible(anchor.d));
            let mut local_seeds = Vec::with_capacity(seeds.len() + 1);
            local_seeds.push(anchor.d);
            local_seeds.extend_from_slice(seeds);
            match problem.scalar_subproblem(w, k, &anchor.objectives, &local_seeds) {
                Ok(r) => {
                    outcome.solved += 1;
                    next[k.index()] = problem
                        .evaluate(r.d)
                        .map(|objectives| Candidate { d: r.d, objectives });
                }
                Err(e) if e.is_infeasibility() => outcome.skipped += 1,
                Err(e) => return Err(e),
            }
        }
        anchors = next;
    }

    let solved: Vec<(ObjectiveKind, Candidate)> = ObjectiveKind::ALL
        .iter()
        .filter_map(|&k| anchors[k.index()].map(|c| (k, c)))
        .collect();
    if solved.is_empty() {
        return Ok(outcome);
    }
    let all_same = solved.len() == 3 && solved.windows(2).all(|p| coincide(p[0].1.d, p[1].1.d));
    if all_same {
        let (k, c) = solved[0];
        outcome.points.push(ParetoPoint {
            d: c.d,
            objectives: c.objectives,
            weight: *w,
            rank: Rank::Efficient,
            subproblem: k,
            grid_index,
        });
    } else {
        let objs: Vec<ObjectiveVector> = solved.iter().map(|(_, c)| c.objectives).collect();
        for i in dominance_filter(&objs) {
            let (k, c) = solved[i];
            outcome.points.push(ParetoPoint {
                d: c.d,
                objectives: c.objectives,
                weight: *w,
                rank: Rank::WeakEfficient,
                subproblem: k,
                grid_index,
            });
        }
    }
    Ok(outcome)
}

/// Shift applied to every objective when any objective is non-positive at
/// the individual minima: `max(0, −min f_i) + 1`. Zero otherwise.
pub fn objective_shift(minima: &[ObjectiveVector]) -> [f64; 3] {
    let mut lowest = [f64::INFINITY; 3];
    for m in minima {
        for (l, v) in lowest.iter_mut().zip(m.as_array()) {
            *l = l.min(v);
        }
    }
    if lowest.iter().all(|&v| v > 0.0) {
        return [0.0; 3];
    }
    lowest.map(|v| (-v).max(0.0) + 1.0)
}

/// Approximates the front with `m` weight subdivisions.
pub fn pareto_front(params: &ModelParams, m: usize) -> Result<ParetoFront> {
    let clock = Instant::now();
    let base = ParetoProblem::new(params)?;
    let model = base.model();
    let closed = BatchDecision {
        qp: analytic::procurement_batch(model, 0.0, 0.0),
        qr: analytic::repair_batch(model, 0.0),
    };
    let center = base.center();

    let mut minima = Vec::with_capacity(3);
    for kind in ObjectiveKind::ALL {
        let r = base.individual_minimum(kind, &[closed, center])?;
        let objectives = base.evaluate(r.d).ok_or_else(|| {
            ModelError::Infeasible(format!("individual minimum of objective {} is infeasible", kind.number()))
        })?;
        minima.push(IndividualMinimum {
            objective: kind,
            d: r.d,
            objectives,
        });
    }
    let shift = objective_shift(&minima.iter().map(|m| m.objectives).collect::<Vec<_>>());
    let problem = base.with_shift(shift);

    let mut initial: Vec<Candidate> = minima
        .iter()
        .map(|m| Candidate {
            d: m.d,
            objectives: m.objectives,
        })
        .collect();
    if let Some(objectives) = problem.evaluate(center) {
        initial.push(Candidate { d: center, objectives });
    }
    let seeds: Vec<BatchDecision> = minima.iter().map(|m| m.d).collect();

    let grid = weight_grid(m);
    let outcomes: Vec<Result<GridOutcome>> = grid
        .par_iter()
        .enumerate()
        .map(|(g, w)| solve_weight(&problem, g, w, &initial, &seeds))
        .collect();

    let mut recorded = Vec::new();
    let mut solved = 0;
    let mut skipped = 0;
    for o in outcomes {
        let o = o?;
        solved += o.solved;
        skipped += o.skipped;
        recorded.extend(o.points);
    }
    let recorded_points = recorded.len();

    let objs: Vec<ObjectiveVector> = recorded.iter().map(|p| p.objectives).collect();
    let mut points: Vec<ParetoPoint> = Vec::new();
    for i in dominance_filter(&objs) {
        let p = recorded[i];
        if !points.iter().any(|q| q.objectives == p.objectives) {
            points.push(p);
        }
    }

    Ok(ParetoFront {
        points,
        diagnostics: FrontDiagnostics {
            grid_count: grid.len(),
            subproblems_solved: solved,
            skipped_infeasible: skipped,
            recorded_points,
            shift,
            individual_minima: minima,
            elapsed_seconds: clock.elapsed().as_secs_f64(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn equal_objectives_give_equal_weights() {
        let w = weights_from_point(&ObjectiveVector::new(1.0, 1.0, 1.0)).unwrap();
        for v in w.as_array() {
            assert_relative_eq!(v, 1.0 / 3.0, max_relative = 1e-15);
        }
    }

    #[test]
    fn inverse_proportional_weights() {
        let w = weights_from_point(&ObjectiveVector::new(1.0, 2.0, 4.0)).unwrap().as_array();
        assert_relative_eq!(w[0], 4.0 / 7.0, max_relative = 1e-15);
        assert_relative_eq!(w[1], 2.0 / 7.0, max_relative = 1e-15);
        assert_relative_eq!(w[2], 1.0 / 7.0, max_relative = 1e-15);
    }

    #[test]
    fn nonpositive_objective_has_no_weights() {
        assert!(weights_from_point(&ObjectiveVector::new(0.0, 1.0, 1.0)).is_err());
        assert!(weights_from_point(&ObjectiveVector::new(1.0, -2.0, 1.0)).is_err());
    }

    #[test]
    fn grid_sizes() {
        assert_eq!(weight_grid(2).len(), 0);
        let g3 = weight_grid(3);
        assert_eq!(g3.len(), 1);
        for v in g3[0].as_array() {
            assert_relative_eq!(v, 1.0 / 3.0, max_relative = 1e-15);
        }
        assert_eq!(weight_grid(4).len(), 3);
        assert_eq!(weight_grid(52).len(), 1275);
        assert_eq!(weight_grid(53).len(), 1326);
        for w in weight_grid(17) {
            let a = w.as_array();
            assert!(a.iter().all(|&v| v > 0.0));
            assert!((a.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn filter_small_cases() {
        let pts = [ObjectiveVector::new(1.0, 1.0, 1.0), ObjectiveVector::new(2.0, 2.0, 2.0)];
        assert_eq!(dominance_filter(&pts), vec![0]);
        let pts = [ObjectiveVector::new(1.0, 2.0, 3.0), ObjectiveVector::new(3.0, 2.0, 1.0)];
        assert_eq!(dominance_filter(&pts), vec![0, 1]);
        let pts = [
            ObjectiveVector::new(2.0, 2.0, 2.0),
            ObjectiveVector::new(1.0, 1.0, 1.0),
            ObjectiveVector::new(1.0, 1.0, 1.0),
        ];
        assert_eq!(dominance_filter(&pts), vec![1, 2]);
        assert!(dominance_filter(&[]).is_empty());
    }

    #[test]
    fn shift_only_when_needed() {
        let pos = [ObjectiveVector::new(1.0, 2.0, 3.0)];
        assert_eq!(objective_shift(&pos), [0.0; 3]);
        let neg = [ObjectiveVector::new(5.0, -14.5, 0.0), ObjectiveVector::new(6.0, 3.0, 2.0)];
        assert_eq!(objective_shift(&neg), [1.0, 15.5, 1.0]);
    }

    #[test]
    fn weights_reject_bad_input() {
        assert!(WeightVector::new(0.5, 0.5, 0.0).is_err());
        assert!(WeightVector::new(0.5, 0.4, 0.2).is_err());
        assert!(WeightVector::new(0.2, 0.3, 0.5).is_ok());
    }

    #[test]
    fn requires_sustainability_data() {
        let p = crate::presets::floor_limited(60.0);
        assert!(ParetoProblem::new(&p).is_err());
        assert!(pareto_front(&p, 3).is_err());
    }
}

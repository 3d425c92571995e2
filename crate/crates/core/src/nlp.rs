//! Derivative-free local minimizer for smooth two-variable programs with
//! inequality constraints and box bounds.
//!
//! Each start runs a compass search on an exterior quadratic penalty whose
//! weight grows tenfold per round. The last penalized iterate is pulled back
//! onto the feasible set by bisection towards the best feasible point seen,
//! then polished with a feasibility-preserving compass search. The best
//! feasible point over all starts wins; ties go to the lexicographically
//! smaller decision.

use thiserror::Error;

use crate::model::BatchDecision;

/// A constraint value at or below this counts as satisfied.
pub const FEASIBILITY_TOLERANCE: f64 = 1e-10;

/// Default number of function evaluations allowed per start.
pub const DEFAULT_BUDGET: usize = 20_000;

const LATTICE_SIZE: usize = 7;
const PENALTY_ROUNDS: usize = 6;
const PENALTY_GROWTH: f64 = 10.0;
const INITIAL_PENALTY: f64 = 10.0;
const FIRST_STEP: f64 = 0.1;
const LATER_STEP: f64 = 0.01;
const POLISH_STEP: f64 = 1e-3;
const MIN_STEP: f64 = 1e-8;
const RESTORE_ITERATIONS: usize = 60;

const DIRECTIONS: [(f64, f64); 8] = [
    (1.0, 0.0),
    (-1.0, 0.0),
    (0.0, 1.0),
    (0.0, -1.0),
    (1.0, 1.0),
    (-1.0, -1.0),
    (1.0, -1.0),
    (-1.0, 1.0),
];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NlpError {
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),
    #[error("no start reached a feasible point (smallest violation {best_violation:.3e})")]
    Infeasible { best_violation: f64 },
}

/// A minimization problem over a box in `(Qp, Qr)`.
pub trait ScalarProgram: Sync {
    fn lower(&self) -> BatchDecision;
    fn upper(&self) -> BatchDecision;
    fn constraint_count(&self) -> usize;
    /// Returns the objective and writes each constraint value into
    /// `constraints` (feasible iff every value is `<= 0`). Non-finite values
    /// are treated as `+inf`.
    fn evaluate(&self, d: BatchDecision, constraints: &mut [f64]) -> f64;
}

type Callable<'a> = Box<dyn Fn(BatchDecision) -> f64 + Send + Sync + 'a>;

/// [`ScalarProgram`] assembled from closures.
pub struct FnProgram<'a> {
    objective: Callable<'a>,
    constraints: Vec<Callable<'a>>,
    lower: BatchDecision,
    upper: BatchDecision,
}

impl<'a> FnProgram<'a> {
    pub fn new(
        objective: impl Fn(BatchDecision) -> f64 + Send + Sync + 'a,
        lower: BatchDecision,
        upper: BatchDecision,
    ) -> Result<Self, NlpError> {
        check_bounds(lower, upper)?;
        Ok(FnProgram {
            objective: Box::new(objective),
            constraints: Vec::new(),
            lower,
            upper,
        })
    }

    /// Adds a constraint `g(d) <= 0`.
    pub fn constraint(mut self, g: impl Fn(BatchDecision) -> f64 + Send + Sync + 'a) -> Self {
        self.constraints.push(Box::new(g));
        self
    }
}

impl ScalarProgram for FnProgram<'_> {
    fn lower(&self) -> BatchDecision {
        self.lower
    }

    fn upper(&self) -> BatchDecision {
        self.upper
    }

    fn constraint_count(&self) -> usize {
        self.constraints.len()
    }

    fn evaluate(&self, d: BatchDecision, constraints: &mut [f64]) -> f64 {
        for (slot, g) in constraints.iter_mut().zip(&self.constraints) {
            *slot = g(d);
        }
        (self.objective)(d)
    }
}

pub(crate) fn check_bounds(lower: BatchDecision, upper: BatchDecision) -> Result<(), NlpError> {
    let ok = |lo: f64, hi: f64| lo.is_finite() && hi.is_finite() && lo < hi;
    if ok(lower.qp, upper.qp) && ok(lower.qr, upper.qr) {
        Ok(())
    } else {
        Err(NlpError::InvalidBounds(format!(
            "need finite lower < upper, got [{}, {}] x [{}, {}]",
            lower.qp, upper.qp, lower.qr, upper.qr
        )))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveResult {
    pub d: BatchDecision,
    pub value: f64,
    pub feasible: bool,
    /// Largest constraint value at `d`.
    pub max_violation: f64,
    /// Function evaluations over all starts.
    pub iterations: usize,
    pub starts: usize,
}

#[derive(Debug, Clone, Copy)]
struct Sample {
    x: [f64; 2],
    objective: f64,
    violation: f64,
}

impl Sample {
    fn feasible(&self) -> bool {
        self.violation <= FEASIBILITY_TOLERANCE && self.objective.is_finite()
    }

    /// Strict ordering used to pick winners: value, then `Qp`, then `Qr`.
    fn better_than(&self, other: &Sample) -> bool {
        (self.objective, self.x[0], self.x[1]) < (other.objective, other.x[0], other.x[1])
    }
}

struct Evaluator<'p, P: ScalarProgram + ?Sized> {
    program: &'p P,
    scratch: Vec<f64>,
    evaluations: usize,
    budget: usize,
    best_feasible: Option<Sample>,
}

impl<'p, P: ScalarProgram + ?Sized> Evaluator<'p, P> {
    fn new(program: &'p P, budget: usize) -> Self {
        Evaluator {
            program,
            scratch: vec![0.0; program.constraint_count()],
            evaluations: 0,
            budget,
            best_feasible: None,
        }
    }

    fn exhausted(&self) -> bool {
        self.evaluations >= self.budget
    }

    fn sample(&mut self, x: [f64; 2]) -> (Sample, f64) {
        self.evaluations += 1;
        let objective = self.program.evaluate(BatchDecision { qp: x[0], qr: x[1] }, &mut self.scratch);
        let objective = if objective.is_nan() { f64::INFINITY } else { objective };
        let mut violation = f64::NEG_INFINITY;
        let mut squared = 0.0;
        for &g in &self.scratch {
            let g = if g.is_nan() { f64::INFINITY } else { g };
            violation = violation.max(g);
            if g > 0.0 {
                squared += g * g;
            }
        }
        if self.scratch.is_empty() {
            violation = 0.0;
        }
        let s = Sample {
            x,
            objective,
            violation,
        };
        if s.feasible() && self.best_feasible.is_none_or(|b| s.better_than(&b)) {
            self.best_feasible = Some(s);
        }
        (s, squared)
    }
}

/// Compass search with expansion on success and halving on failure.
/// `merit` maps a sample and its squared violation to the value compared.
fn compass<P: ScalarProgram + ?Sized>(
    eval: &mut Evaluator<'_, P>,
    start: [f64; 2],
    first_step: f64,
    merit: &dyn Fn(&Sample, f64) -> f64,
) -> [f64; 2] {
    let lower = eval.program.lower();
    let upper = eval.program.upper();
    let width = [upper.qp - lower.qp, upper.qr - lower.qr];
    let clamp = |x: [f64; 2]| [x[0].clamp(lower.qp, upper.qp), x[1].clamp(lower.qr, upper.qr)];

    let mut x = start;
    let (s, sq) = eval.sample(x);
    let mut fx = merit(&s, sq);
    let mut step = first_step;
    let mut first_dir = 0;
    while step >= MIN_STEP && !eval.exhausted() {
        let mut moved = false;
        for k in 0..DIRECTIONS.len() {
            let dir_index = (first_dir + k) % DIRECTIONS.len();
            let (dx, dy) = DIRECTIONS[dir_index];
            let y = clamp([x[0] + step * width[0] * dx, x[1] + step * width[1] * dy]);
            if y == x {
                continue;
            }
            let (s, sq) = eval.sample(y);
            let fy = merit(&s, sq);
            if fy < fx {
                x = y;
                fx = fy;
                first_dir = dir_index;
                moved = true;
                break;
            }
            if eval.exhausted() {
                break;
            }
        }
        if moved {
            step = (step * 2.0).min(first_step);
        } else {
            step *= 0.5;
        }
    }
    x
}

fn penalized(mu: f64) -> impl Fn(&Sample, f64) -> f64 {
    move |s: &Sample, squared: f64| s.objective + mu * squared
}

fn barrier(s: &Sample, _squared: f64) -> f64 {
    if s.feasible() {
        s.objective
    } else {
        f64::INFINITY
    }
}

/// Runs the penalty schedule, restoration and polish from one start.
/// Returns the best feasible sample touched, if any, and the smallest
/// violation seen.
fn run_start<P: ScalarProgram + ?Sized>(program: &P, start: [f64; 2], budget: usize) -> (Option<Sample>, f64, usize) {
    let mut eval = Evaluator::new(program, budget);
    let mut x = start;
    let mut mu = INITIAL_PENALTY;
    for round in 0..PENALTY_ROUNDS {
        let step = if round == 0 { FIRST_STEP } else { LATER_STEP };
        x = compass(&mut eval, x, step, &penalized(mu));
        mu *= PENALTY_GROWTH;
    }
    let (last, _) = eval.sample(x);
    let smallest_violation = last.violation;

    let restored = if last.feasible() {
        Some(x)
    } else {
        eval.best_feasible.map(|anchor| {
            // Invariant: `inside` feasible, `outside` not.
            let (mut inside, mut outside) = (anchor.x, x);
            for _ in 0..RESTORE_ITERATIONS {
                let mid = [0.5 * (inside[0] + outside[0]), 0.5 * (inside[1] + outside[1])];
                if eval.sample(mid).0.feasible() {
                    inside = mid;
                } else {
                    outside = mid;
                }
            }
            inside
        })
    };
    if let Some(r) = restored {
        // Polishing needs its own allowance so a spent budget still yields
        // a feasible point.
        eval.budget = eval.evaluations + budget / 4 + 1;
        compass(&mut eval, r, POLISH_STEP, &barrier);
    }
    (eval.best_feasible, smallest_violation, eval.evaluations)
}

/// `n` points per axis, log-spaced when the lower bound is positive.
fn axis_points(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            let t = i as f64 / (n - 1) as f64;
            if lo > 0.0 {
                (lo.ln() + t * (hi.ln() - lo.ln())).exp().clamp(lo, hi)
            } else {
                lo + t * (hi - lo)
            }
        })
        .collect()
}

/// Lattice starts over the box followed by the caller's seeds (clamped
/// into the box).
pub fn default_starts(lower: BatchDecision, upper: BatchDecision, seeds: &[BatchDecision]) -> Vec<[f64; 2]> {
    let mut starts = Vec::with_capacity(LATTICE_SIZE * LATTICE_SIZE + seeds.len());
    for &qp in &axis_points(lower.qp, upper.qp, LATTICE_SIZE) {
        for &qr in &axis_points(lower.qr, upper.qr, LATTICE_SIZE) {
            starts.push([qp, qr]);
        }
    }
    for s in seeds {
        if s.qp.is_finite() && s.qr.is_finite() {
            let x = [s.qp.clamp(lower.qp, upper.qp), s.qr.clamp(lower.qr, upper.qr)];
            if !starts.contains(&x) {
                starts.push(x);
            }
        }
    }
    starts
}

/// Minimizes `program` from the default lattice plus `seeds`, spending at
/// most `budget` evaluations per start (plus a polish allowance).
pub fn minimize<P: ScalarProgram + ?Sized>(
    program: &P,
    seeds: &[BatchDecision],
    budget: usize,
) -> Result<SolveResult, NlpError> {
    check_bounds(program.lower(), program.upper())?;
    let starts = default_starts(program.lower(), program.upper(), seeds);
    minimize_from(program, &starts, budget)
}

pub(crate) fn minimize_from<P: ScalarProgram + ?Sized>(
    program: &P,
    starts: &[[f64; 2]],
    budget: usize,
) -> Result<SolveResult, NlpError> {
    let mut best: Option<Sample> = None;
    let mut smallest_violation = f64::INFINITY;
    let mut evaluations = 0;
    for &start in starts {
        let (found, violation, used) = run_start(program, start, budget.max(1));
        evaluations += used;
        smallest_violation = smallest_violation.min(violation);
        if let Some(s) = found {
            if best.is_none_or(|b| s.better_than(&b)) {
                best = Some(s);
            }
        }
    }
    let best = best.ok_or(NlpError::Infeasible {
        best_violation: smallest_violation,
    })?;
    Ok(SolveResult {
        d: BatchDecision {
            qp: best.x[0],
            qr: best.x[1],
        },
        value: best.objective,
        feasible: true,
        max_violation: best.violation,
        iterations: evaluations,
        starts: starts.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn bounds(lo: f64, hi: f64) -> (BatchDecision, BatchDecision) {
        (BatchDecision { qp: lo, qr: lo }, BatchDecision { qp: hi, qr: hi })
    }

    #[test]
    fn projection_onto_half_plane() {
        let (lo, hi) = bounds(0.0, 10.0);
        let prog = FnProgram::new(|d| (d.qp - 3.0).powi(2) + (d.qr - 4.0).powi(2), lo, hi)
            .unwrap()
            .constraint(|d| d.qp + d.qr - 5.0);
        let r = minimize(&prog, &[], DEFAULT_BUDGET).unwrap();
        assert!(r.feasible);
        assert!(r.max_violation <= 1e-8);
        assert!((r.d.qp - 2.0).abs() < 1e-4, "{:?}", r.d);
        assert!((r.d.qr - 3.0).abs() < 1e-4, "{:?}", r.d);
        assert_relative_eq!(r.value, 2.0, max_relative = 1e-5);
    }

    #[test]
    fn unconstrained_quadratic() {
        let (lo, hi) = bounds(-5.0, 5.0);
        let prog = FnProgram::new(|d| (d.qp - 1.0).powi(2) + 3.0 * (d.qr + 2.0).powi(2), lo, hi).unwrap();
        let r = minimize(&prog, &[], DEFAULT_BUDGET).unwrap();
        assert!((r.d.qp - 1.0).abs() < 1e-6 && (r.d.qr + 2.0).abs() < 1e-6);
    }

    #[test]
    fn empty_feasible_set_is_reported() {
        let (lo, hi) = bounds(0.0, 1.0);
        let prog = FnProgram::new(|d| d.qp + d.qr, lo, hi)
            .unwrap()
            .constraint(|d| 3.0 - d.qp - d.qr);
        match minimize(&prog, &[], 2_000) {
            Err(NlpError::Infeasible { best_violation }) => assert!(best_violation > 0.9),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn rejects_inverted_bounds() {
        let lo = BatchDecision { qp: 1.0, qr: 0.0 };
        let hi = BatchDecision { qp: 0.5, qr: 1.0 };
        assert!(FnProgram::new(|_| 0.0, lo, hi).is_err());
    }

    #[test]
    fn reported_value_is_raw_objective() {
        let (lo, hi) = bounds(0.0, 10.0);
        let objective = |d: BatchDecision| (d.qp - 8.0).powi(2) + d.qr;
        let prog = FnProgram::new(objective, lo, hi)
            .unwrap()
            .constraint(|d| d.qp - 6.0);
        let r = minimize(&prog, &[], DEFAULT_BUDGET).unwrap();
        assert_eq!(r.value, objective(r.d));
        assert!(r.d.qp <= 6.0 + 1e-10);
    }

    #[test]
    fn never_worse_than_a_feasible_seed() {
        let (lo, hi) = bounds(0.0, 10.0);
        // Many local minima; a seed near the global one must not be lost.
        let objective = |d: BatchDecision| (3.0 * d.qp).sin() * (2.0 * d.qr).cos() + 0.01 * d.qp;
        let prog = FnProgram::new(objective, lo, hi).unwrap();
        let seed = BatchDecision { qp: 0.5, qr: 1.5 };
        let r = minimize(&prog, &[seed], 500).unwrap();
        assert!(r.value <= objective(seed));
    }

    #[test]
    fn deterministic() {
        let (lo, hi) = bounds(0.1, 10.0);
        let prog = FnProgram::new(|d| (d.qp.ln() - 1.0).powi(2) + (d.qr - d.qp).powi(2), lo, hi)
            .unwrap()
            .constraint(|d| 2.0 - d.qr);
        let a = minimize(&prog, &[], 3_000).unwrap();
        let b = minimize(&prog, &[], 3_000).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn log_spaced_axis() {
        let pts = axis_points(1.0, 100.0, 3);
        assert_relative_eq!(pts[1], 10.0, max_relative = 1e-12);
        assert_eq!(pts[0], 1.0);
        assert_eq!(pts[2], 100.0);
        assert_eq!(axis_points(0.0, 1.0, 3), vec![0.0, 0.5, 1.0]);
    }
}

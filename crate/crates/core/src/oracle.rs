//! Brute-force grid search over `(Qp, Qr)`, used to cross-check the
//! analytic solutions and the Pareto engine.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic;
use crate::error::{ModelError, Result};
use crate::model::{BatchDecision, InventoryModel, ModelParams};
use crate::pareto::{dominance_filter, ObjectiveVector};

/// Upper bound on the number of cells evaluated in one pass.
pub const MAX_CELLS: f64 = 1e8;
/// Ratio between the coarse and the final step of a two-stage search.
pub const COARSE_FACTOR: usize = 100;
/// Grids up to this size are always scanned exhaustively.
const EXHAUSTIVE_LIMIT: f64 = 1e6;
/// Half-width of the refinement window, in coarse steps.
const WINDOW: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GridSpec {
    pub qp_range: (f64, f64),
    pub qr_range: (f64, f64),
    pub step: f64,
}

impl GridSpec {
    pub fn new(qp_range: (f64, f64), qr_range: (f64, f64), step: f64) -> Result<Self> {
        let g = GridSpec {
            qp_range,
            qr_range,
            step,
        };
        g.validate()?;
        Ok(g)
    }

    /// `[0.1, 3·Qp*] × [0.1, 3·Qr*]` around the closed-form optimum.
    pub fn around_closed_form(params: &ModelParams, step: f64) -> Result<Self> {
        let model = InventoryModel::new(params.clone())?;
        let qp = analytic::procurement_batch(&model, 0.0, 0.0);
        let qr = analytic::repair_batch(&model, 0.0);
        GridSpec::new((0.1, 3.0 * qp), (0.1, 3.0 * qr), step)
    }

    /// Checks ranges and step; the cell guard is applied per search stage.
    pub fn validate(&self) -> Result<()> {
        for (name, (lo, hi)) in [("qpRange", self.qp_range), ("qrRange", self.qr_range)] {
            if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && hi > lo) {
                return Err(ModelError::Grid(format!("{name} must satisfy 0 < lo < hi, got ({lo}, {hi})")));
            }
        }
        if !(self.step.is_finite() && self.step > 0.0) {
            return Err(ModelError::Grid(format!("step must be positive, got {}", self.step)));
        }
        Ok(())
    }

    pub fn qp_points(&self) -> usize {
        axis_len(self.qp_range, self.step)
    }

    pub fn qr_points(&self) -> usize {
        axis_len(self.qr_range, self.step)
    }

    pub fn cell_count(&self) -> f64 {
        axis_len_f64(self.qp_range, self.step) * axis_len_f64(self.qr_range, self.step)
    }

    pub fn point(&self, i: usize, j: usize) -> BatchDecision {
        BatchDecision {
            qp: self.qp_range.0 + i as f64 * self.step,
            qr: self.qr_range.0 + j as f64 * self.step,
        }
    }
}

fn axis_len_f64((lo, hi): (f64, f64), step: f64) -> f64 {
    ((hi - lo) / step + 1e-9).floor() + 1.0
}

fn axis_len(range: (f64, f64), step: f64) -> usize {
    axis_len_f64(range, step) as usize
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// Coarse scan at `COARSE_FACTOR × step`, then the full-resolution
    /// lattice in a window around the coarse incumbent.
    #[default]
    TwoStage,
    Exhaustive,
}

/// Which cells count as feasible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Feasibility {
    Any,
    Floors,
    FloorsAndMargin,
}

impl Feasibility {
    fn admits(&self, model: &InventoryModel, d: BatchDecision) -> bool {
        match self {
            Feasibility::Any => true,
            Feasibility::Floors => model.feasibility(d, false).is_feasible(),
            Feasibility::FloorsAndMargin => model.feasibility(d, true).is_feasible(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridMinimum {
    pub d: BatchDecision,
    pub value: f64,
    pub cells_evaluated: usize,
}

/// Lexicographic `(value, i, j)` minimum over the index block
/// `[i0, i1) × [j0, j1)` of `grid`.
fn scan(
    model: &InventoryModel,
    grid: &GridSpec,
    rule: Feasibility,
    rows: (usize, usize),
    cols: (usize, usize),
    stride: usize,
) -> Option<(f64, usize, usize)> {
    let row_ids: Vec<usize> = (rows.0..rows.1).step_by(stride).collect();
    let best: Vec<Option<(f64, usize, usize)>> = row_ids
        .par_iter()
        .map(|&i| {
            let mut best: Option<(f64, usize, usize)> = None;
            for j in (cols.0..cols.1).step_by(stride) {
                let d = grid.point(i, j);
                if !rule.admits(model, d) {
                    continue;
                }
                let v = model.holding_cost(d);
                if v.is_finite() && best.is_none_or(|(b, _, _)| v < b) {
                    best = Some((v, i, j));
                }
            }
            best
        })
        .collect();
    best.into_iter().flatten().fold(None, |acc, c| match acc {
        Some(a) if a.0 <= c.0 => Some(a),
        _ => Some(c),
    })
}

/// Minimum of `f1` over the grid; `constrained` restricts the search to
/// cells within both floor limits. Ties go to the smallest `(Qp, Qr)`.
pub fn grid_min(params: &ModelParams, grid: &GridSpec, constrained: bool) -> Result<(BatchDecision, f64)> {
    let rule = if constrained { Feasibility::Floors } else { Feasibility::Any };
    let m = grid_min_with(params, grid, rule, SearchMode::TwoStage)?;
    Ok((m.d, m.value))
}

pub fn grid_min_with(
    params: &ModelParams,
    grid: &GridSpec,
    rule: Feasibility,
    mode: SearchMode,
) -> Result<GridMinimum> {
    grid.validate()?;
    let model = InventoryModel::new(params.clone())?;
    let (np, nr) = (grid.qp_points(), grid.qr_points());
    let total = grid.cell_count();

    let exhaustive = |model: &InventoryModel| -> Result<GridMinimum> {
        if total > MAX_CELLS {
            return Err(ModelError::Grid(format!(
                "grid has {total:.3e} cells, above the {MAX_CELLS:.0e} guard"
            )));
        }
        let (value, i, j) = scan(model, grid, rule, (0, np), (0, nr), 1).ok_or(ModelError::EmptyFeasibleGrid)?;
        Ok(GridMinimum {
            d: grid.point(i, j),
            value,
            cells_evaluated: np * nr,
        })
    };

    if mode == SearchMode::Exhaustive || total <= EXHAUSTIVE_LIMIT {
        return exhaustive(&model);
    }

    let coarse_cells = np.div_ceil(COARSE_FACTOR) as f64 * nr.div_ceil(COARSE_FACTOR) as f64;
    if coarse_cells > MAX_CELLS {
        return Err(ModelError::Grid(format!(
            "coarse stage has {coarse_cells:.3e} cells, above the {MAX_CELLS:.0e} guard"
        )));
    }
    let Some((_, ic, jc)) = scan(&model, grid, rule, (0, np), (0, nr), COARSE_FACTOR) else {
        return exhaustive(&model);
    };
    let half = WINDOW * COARSE_FACTOR;
    let rows = (ic.saturating_sub(half), (ic + half + 1).min(np));
    let cols = (jc.saturating_sub(half), (jc + half + 1).min(nr));
    let (value, i, j) = scan(&model, grid, rule, rows, cols, 1).ok_or(ModelError::EmptyFeasibleGrid)?;
    Ok(GridMinimum {
        d: grid.point(i, j),
        value,
        cells_evaluated: (coarse_cells as usize) + (rows.1 - rows.0) * (cols.1 - cols.0),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrontSample {
    pub d: BatchDecision,
    pub objectives: ObjectiveVector,
    /// Largest change of each objective to a feasible lattice neighbour.
    pub tolerance: [f64; 3],
}

impl FrontSample {
    /// True when this sample beats `other` in every objective by more than
    /// its own tolerance, and strictly in at least one.
    pub fn dominates_beyond_tolerance(&self, other: &ObjectiveVector) -> bool {
        let a = self.objectives.as_array();
        let b = other.as_array();
        let shifted: Vec<f64> = (0..3).map(|i| a[i] + self.tolerance[i]).collect();
        (0..3).all(|i| shifted[i] <= b[i]) && (0..3).any(|i| shifted[i] < b[i])
    }
}

/// Non-dominated objective vectors over every cell satisfying the floor
/// limits and the production margin.
pub fn grid_front(params: &ModelParams, grid: &GridSpec) -> Result<Vec<FrontSample>> {
    grid.validate()?;
    if !params.has_sustainability() {
        return Err(ModelError::Domain(
            "emission and energy coefficients are required for the front".into(),
        ));
    }
    let total = grid.cell_count();
    if total > MAX_CELLS {
        return Err(ModelError::Grid(format!(
            "grid has {total:.3e} cells, above the {MAX_CELLS:.0e} guard"
        )));
    }
    let model = InventoryModel::new(params.clone())?;
    let (np, nr) = (grid.qp_points(), grid.qr_points());
    let values: Vec<Option<ObjectiveVector>> = (0..np)
        .into_par_iter()
        .flat_map_iter(|i| {
            let model = &model;
            (0..nr).map(move |j| {
                let d = grid.point(i, j);
                if !Feasibility::FloorsAndMargin.admits(model, d) {
                    return None;
                }
                let o = model.objectives(d).ok()?;
                let v = ObjectiveVector::new(o.holding_cost, o.emissions, o.energy);
                v.as_array().iter().all(|x| x.is_finite()).then_some(v)
            })
        })
        .collect();

    let cells: Vec<(usize, ObjectiveVector)> = values
        .iter()
        .enumerate()
        .filter_map(|(c, v)| v.map(|v| (c, v)))
        .collect();
    if cells.is_empty() {
        return Err(ModelError::EmptyFeasibleGrid);
    }
    let objs: Vec<ObjectiveVector> = cells.iter().map(|(_, v)| *v).collect();
    let samples = dominance_filter(&objs)
        .into_iter()
        .map(|k| {
            let (c, v) = cells[k];
            let (i, j) = (c / nr, c % nr);
            let mut tolerance = [0.0_f64; 3];
            let neighbours = [
                (i.checked_sub(1), Some(j)),
                (Some(i + 1).filter(|&x| x < np), Some(j)),
                (Some(i), j.checked_sub(1)),
                (Some(i), Some(j + 1).filter(|&x| x < nr)),
            ];
            for (ni, nj) in neighbours {
                let (Some(ni), Some(nj)) = (ni, nj) else { continue };
                let Some(u) = values[ni * nr + nj] else { continue };
                for (t, (a, b)) in tolerance.iter_mut().zip(u.as_array().iter().zip(v.as_array())) {
                    *t = t.max((*a - b).abs());
                }
            }
            FrontSample {
                d: grid.point(i, j),
                objectives: v,
                tolerance,
            }
        })
        .collect();
    Ok(samples)
}

/// Indices of `points` dominated by some oracle sample beyond its
/// tolerance.
pub fn containment_violations(points: &[ObjectiveVector], oracle: &[FrontSample]) -> Vec<usize> {
    points
        .iter()
        .enumerate()
        .filter(|(_, p)| oracle.iter().any(|s| s.dominates_beyond_tolerance(p)))
        .map(|(i, _)| i)
        .collect()
}

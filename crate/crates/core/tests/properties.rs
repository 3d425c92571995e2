use proptest::prelude::*;

use revlog_core::analytic::{self, coordinate_curvature, solve_constrained, solve_unconstrained};
use revlog_core::model::{cost_breakdown, derive_constants, ghg_emissions, BatchDecision, FloorLimit, InventoryModel, ModelParams};
use revlog_core::nlp::{minimize, FnProgram};
use revlog_core::oracle::{grid_min, GridSpec};
use revlog_core::pareto::{dominance_filter, weights_from_point, ObjectiveVector};
use revlog_core::presets;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

/// Valid parameter sets: `r·p·Dp < Dr < λ`.
fn params() -> impl Strategy<Value = ModelParams> {
    (
        10.0..1000.0f64,
        0.05..0.95f64,
        0.05..0.95f64,
        1.05..4.0f64,
        1.05..5.0f64,
        (1.0..500.0f64, 1.0..500.0f64),
        (0.1..50.0f64, 0.1..50.0f64),
    )
        .prop_map(|(dp, p, r, dr_ratio, lambda_ratio, (ap, ar), (h1, h2))| {
            let dr = r * p * dp * dr_ratio;
            ModelParams::new(dp, dr, p, r, dr * lambda_ratio, ap, ar, h1, h2).unwrap()
        })
}

fn decision() -> impl Strategy<Value = BatchDecision> {
    (0.5..1000.0f64, 0.5..1000.0f64).prop_map(|(qp, qr)| BatchDecision { qp, qr })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn flow_is_conserved_over_a_cycle(p in params(), d in decision()) {
        let b = cost_breakdown(&p, d).unwrap();
        let total = (p.demand_new + p.demand_repaired) * b.cycle_length;
        prop_assert!(rel(d.qp + b.n * d.qr, total) <= 1e-9);
        let c = derive_constants(&p).unwrap();
        prop_assert!(rel(b.n * d.qr, c.c2 * d.qp) <= 1e-12);
    }

    #[test]
    fn repair_area_is_the_sum_of_its_parts(p in params(), d in decision()) {
        let b = cost_breakdown(&p, d).unwrap();
        prop_assert_eq!(b.repair_area, b.area_b + b.area_c + b.area_d + b.area_e1 + b.area_e2);
        prop_assert!(b.area_b >= 0.0 && b.area_c >= 0.0 && b.area_e2 >= 0.0);
        // Fewer than one repair batch per cycle leaves E1 and D' negative.
        if b.n >= 1.0 {
            prop_assert!(b.area_d >= 0.0 && b.area_e1 >= 0.0);
        }
    }

    #[test]
    fn doubling_setup_costs_adds_one_set_of_setups(p in params(), d in decision()) {
        let base = cost_breakdown(&p, d).unwrap();
        let mut q = p.clone();
        q.setup_cost_new *= 2.0;
        q.setup_cost_repair *= 2.0;
        let doubled = cost_breakdown(&q, d).unwrap();
        let added = p.setup_cost_new + base.n * p.setup_cost_repair;
        prop_assert!(rel(doubled.total_cycle_cost - base.total_cycle_cost, added) <= 1e-9);
    }

    #[test]
    fn emissions_ignore_the_repair_batch(qp in 80.0..5000.0f64, qr1 in 0.5..5000.0f64, qr2 in 0.5..5000.0f64) {
        let p = presets::sustainability_case();
        let model = InventoryModel::new(p.clone()).unwrap();
        let a = model.objectives(BatchDecision { qp, qr: qr1 }).unwrap();
        let b = model.objectives(BatchDecision { qp, qr: qr2 }).unwrap();
        prop_assert_eq!(a.emissions.to_bits(), b.emissions.to_bits());
        prop_assert_eq!(a.emissions.to_bits(), ghg_emissions(&p, qp).unwrap().emissions.to_bits());
    }

    #[test]
    fn closed_form_is_stationary_and_locally_convex(p in params()) {
        let s = solve_unconstrained(&p).unwrap();
        let model = InventoryModel::new(p).unwrap();
        let g = analytic::relative_gradient(&model, s.d);
        prop_assert!(g[0].abs() < 1e-4 && g[1].abs() < 1e-4, "{:?}", g);
        let h = coordinate_curvature(&model, s.d);
        prop_assert!(h[0] > 0.0 && h[1] > 0.0, "{:?}", h);
    }

    #[test]
    fn kkt_points_have_sound_multipliers(
        lambda in 46.0..150.0f64,
        k1 in 1.0..40.0f64,
        k2 in 1.0..40.0f64,
    ) {
        let p = presets::base_case(lambda, 43.0)
            .with_floors(FloorLimit::new(0.5, k1), FloorLimit::new(0.5, k2))
            .unwrap();
        let s = solve_constrained(&p).unwrap();
        prop_assert!(s.lambda1 >= 0.0 && s.lambda2 >= 0.0);
        prop_assert!(s.kkt_residual < 1e-4, "{:?}", s);
        let model = InventoryModel::new(p).unwrap();
        let r = model.feasibility(s.d, false);
        prop_assert!(r.slack_supply >= -1e-8 && r.slack_repair >= -1e-8, "{:?}", r);
        prop_assert!((s.lambda1 * r.slack_supply).abs() <= 1e-6 * k1.max(1.0));
        prop_assert!((s.lambda2 * r.slack_repair).abs() <= 1e-6 * k2.max(1.0));
    }

    #[test]
    fn shrinking_the_repair_floor_never_helps(
        lambda in 46.0..150.0f64,
        k2_small in 1.0..30.0f64,
        extra in 0.0..30.0f64,
    ) {
        let solve = |k2: f64| {
            let p = presets::floor_limited(lambda)
                .with_floors(FloorLimit::new(0.5, 20.0), FloorLimit::new(0.5, k2))
                .unwrap();
            solve_constrained(&p).unwrap().holding_cost
        };
        let tight = solve(k2_small);
        let loose = solve(k2_small + extra);
        prop_assert!(tight >= loose * (1.0 - 1e-9), "{} < {}", tight, loose);
    }

    #[test]
    fn weights_equalize_weighted_objectives(f in proptest::array::uniform3(1e-3..1e6f64)) {
        let v = ObjectiveVector::from_array(f);
        let w = weights_from_point(&v).unwrap().as_array();
        prop_assert!((w.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        for i in 0..3 {
            for k in 0..3 {
                prop_assert!(rel(w[i] * f[i], w[k] * f[k]) <= 1e-10);
            }
        }
    }

    #[test]
    fn filter_agrees_with_pairwise_check(raw in proptest::collection::vec(proptest::array::uniform3(0u8..6), 0..60)) {
        let pts: Vec<ObjectiveVector> = raw
            .iter()
            .map(|v| ObjectiveVector::from_array(v.map(f64::from)))
            .collect();
        let expected: Vec<usize> = (0..pts.len())
            .filter(|&i| !(0..pts.len()).any(|j| pts[j].dominates(&pts[i])))
            .collect();
        prop_assert_eq!(dominance_filter(&pts), expected);
    }

    #[test]
    fn solver_never_loses_a_feasible_seed(sx in 0.0..10.0f64, sy in 0.0..10.0f64) {
        let lower = BatchDecision { qp: 0.0, qr: 0.0 };
        let upper = BatchDecision { qp: 10.0, qr: 10.0 };
        let f = |d: BatchDecision| (d.qp - 3.0).powi(2) + (d.qr - 7.0).powi(2) + (d.qp * d.qr).sin();
        let program = FnProgram::new(f, lower, upper).unwrap().constraint(|d| d.qp + d.qr - 9.0);
        let seed = BatchDecision { qp: sx, qr: sy };
        let r = minimize(&program, &[seed], 20_000).unwrap();
        if sx + sy <= 9.0 {
            prop_assert!(r.value <= f(seed));
        }
        prop_assert!(r.d.qp + r.d.qr - 9.0 <= 1e-10);
        let again = minimize(&program, &[seed], 20_000).unwrap();
        prop_assert_eq!(r.d, again.d);
        prop_assert_eq!(r.value.to_bits(), again.value.to_bits());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn grid_minimum_is_never_beaten_by_a_sampled_cell(
        lambda in 46.0..120.0f64,
        cells in proptest::collection::vec((0usize..400, 0usize..1000), 50),
    ) {
        let p = presets::floor_limited(lambda);
        let grid = GridSpec::new((1.0, 40.0), (1.0, 100.0), 0.1).unwrap();
        let (_, best) = grid_min(&p, &grid, true).unwrap();
        let model = InventoryModel::new(p).unwrap();
        for (i, j) in cells {
            let d = grid.point(i.min(grid.qp_points() - 1), j.min(grid.qr_points() - 1));
            if model.feasibility(d, false).is_feasible() {
                prop_assert!(best <= model.holding_cost(d));
            }
        }
    }
}

#[test]
fn convexity_audit_over_random_parameter_sets() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let dp = rng.gen_range(10.0..1000.0);
        let (p, r) = (rng.gen_range(0.05..0.95), rng.gen_range(0.05..0.95));
        let dr = r * p * dp * rng.gen_range(1.05..4.0);
        let lambda = dr * rng.gen_range(1.05..5.0);
        let params = ModelParams::new(
            dp,
            dr,
            p,
            r,
            lambda,
            rng.gen_range(1.0..500.0),
            rng.gen_range(1.0..500.0),
            rng.gen_range(0.1..50.0),
            rng.gen_range(0.1..50.0),
        )
        .unwrap();
        let s = solve_unconstrained(&params).unwrap();
        let h = coordinate_curvature(&InventoryModel::new(params).unwrap(), s.d);
        assert!(h[0] > 0.0 && h[1] > 0.0, "{h:?}");
    }
}

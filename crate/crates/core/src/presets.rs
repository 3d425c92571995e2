//! Tyre-industry parameter sets used throughout the tests and sample configs.

use crate::model::{EmissionCoefficients, EnergyCoefficients, FloorLimit, ModelParams};

/// Unconstrained base case: `Dp = 100`, `p = 0.6`, `r = 0.7` (return flow 42),
/// `Ap = 10`, `Ar = 30`, `h1 = 1.6`, `h2 = 1.2`.
///
/// Panics if `repair_rate`/`demand_repaired` violate the model invariants.
pub fn base_case(repair_rate: f64, demand_repaired: f64) -> ModelParams {
    ModelParams::new(100.0, demand_repaired, 0.6, 0.7, repair_rate, 10.0, 30.0, 1.6, 1.2)
        .expect("valid base-case parameters")
}

/// Base case with `Dr = 43` and floors `p1 = p2 = 0.5`, `k1 = 20`, `k2 = 10`.
pub fn floor_limited(repair_rate: f64) -> ModelParams {
    base_case(repair_rate, 43.0)
        .with_floors(FloorLimit::new(0.5, 20.0), FloorLimit::new(0.5, 10.0))
        .expect("valid floor-limited parameters")
}

/// Three-objective case with emission and energy coefficients.
pub fn sustainability_case() -> ModelParams {
    ModelParams::new(1000.0, 422.0, 0.6, 0.7, 450.0, 50.0, 100.0, 20.0, 10.0)
        .and_then(|p| p.with_floors(FloorLimit::new(1.0, 2000.0), FloorLimit::new(1.0, 2000.0)))
        .and_then(|p| {
            p.with_sustainability(
                EmissionCoefficients {
                    quadratic: 3e-8,
                    linear: 0.0014,
                    constant: 1.4,
                },
                EnergyCoefficients {
                    idle_power_production: 120.0,
                    idle_power_repair: 80.0,
                    energy_per_unit_production: 5.5,
                    energy_per_unit_repair: 2.5,
                },
            )
        })
        .expect("valid sustainability parameters")
}

/// Sustainability case with a flat emission curve and zero energy use, so
/// only the holding cost varies.
pub fn flat_sustainability_case() -> ModelParams {
    let mut p = sustainability_case();
    p.emissions = Some(EmissionCoefficients {
        quadratic: 0.0,
        linear: 0.0,
        constant: 1.4,
    });
    p.energy = Some(EnergyCoefficients {
        idle_power_production: 0.0,
        idle_power_repair: 0.0,
        energy_per_unit_production: 0.0,
        energy_per_unit_repair: 0.0,
    });
    p
}

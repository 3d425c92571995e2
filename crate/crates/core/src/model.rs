//! Parameters, decisions and the cost/sustainability formulas of the
//! two-depot system.
//!
//! New items are procured in batches of `Qp` into the supply depot. A
//! fraction `r·p` of the new-item demand flows back into the repair depot,
//! where it is repaired in `n` batches of `Qr` per procurement cycle `T` and
//! shipped to the supply depot. Every quantity here is a closed-form function
//! of the parameters and the decision pair; nothing is cached between calls.

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};

/// Default lower bound enforced on the production margin `M`.
pub const DEFAULT_EMISSIONS_MARGIN: f64 = 1e-6;

/// Floor-space data of one depot. An infinite capacity means the depot is
/// unconstrained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloorLimit {
    pub space_per_item: f64,
    pub capacity: f64,
}

impl FloorLimit {
    pub const fn unlimited() -> Self {
        FloorLimit {
            space_per_item: 1.0,
            capacity: f64::INFINITY,
        }
    }

    pub fn new(space_per_item: f64, capacity: f64) -> Self {
        FloorLimit {
            space_per_item,
            capacity,
        }
    }

    pub fn is_limited(&self) -> bool {
        self.capacity.is_finite()
    }
}

impl Default for FloorLimit {
    fn default() -> Self {
        Self::unlimited()
    }
}

/// Coefficients of the quadratic emissions curve `ap·P² − bp·P + cp`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmissionCoefficients {
    pub quadratic: f64,
    pub linear: f64,
    pub constant: f64,
}

/// Idle power and per-unit energy for production and remanufacturing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyCoefficients {
    pub idle_power_production: f64,
    pub idle_power_repair: f64,
    pub energy_per_unit_production: f64,
    pub energy_per_unit_repair: f64,
}

/// Exogenous data of the inventory system.
///
/// Serializes to a flat JSON object whose keys are the conventional symbols
/// (`Dp`, `Dr`, `p`, `r`, `lambda`, ...). Deserialization validates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ParamsDocument", into = "ParamsDocument")]
pub struct ModelParams {
    pub demand_new: f64,
    pub demand_repaired: f64,
    pub collection_fraction: f64,
    pub recovery_fraction: f64,
    pub repair_rate: f64,
    pub setup_cost_new: f64,
    pub setup_cost_repair: f64,
    pub holding_cost_supply: f64,
    pub holding_cost_repair: f64,
    pub supply_floor: FloorLimit,
    pub repair_floor: FloorLimit,
    pub emissions: Option<EmissionCoefficients>,
    pub energy: Option<EnergyCoefficients>,
    /// Smallest admissible production margin `M`; stands in for `M > 0`.
    pub emissions_margin: f64,
}

impl ModelParams {
    /// Core parameters with unlimited floors and no sustainability data.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        demand_new: f64,
        demand_repaired: f64,
        collection_fraction: f64,
        recovery_fraction: f64,
        repair_rate: f64,
        setup_cost_new: f64,
        setup_cost_repair: f64,
        holding_cost_supply: f64,
        holding_cost_repair: f64,
    ) -> Result<Self> {
        let params = ModelParams {
            demand_new,
            demand_repaired,
            collection_fraction,
            recovery_fraction,
            repair_rate,
            setup_cost_new,
            setup_cost_repair,
            holding_cost_supply,
            holding_cost_repair,
            supply_floor: FloorLimit::unlimited(),
            repair_floor: FloorLimit::unlimited(),
            emissions: None,
            energy: None,
            emissions_margin: DEFAULT_EMISSIONS_MARGIN,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_floors(mut self, supply: FloorLimit, repair: FloorLimit) -> Result<Self> {
        self.supply_floor = supply;
        self.repair_floor = repair;
        self.validate()?;
        Ok(self)
    }

    pub fn with_sustainability(
        mut self,
        emissions: EmissionCoefficients,
        energy: EnergyCoefficients,
    ) -> Result<Self> {
        self.emissions = Some(emissions);
        self.energy = Some(energy);
        self.validate()?;
        Ok(self)
    }

    pub fn with_repair_rate(mut self, repair_rate: f64) -> Result<Self> {
        self.repair_rate = repair_rate;
        self.validate()?;
        Ok(self)
    }

    pub fn with_demand_repaired(mut self, demand_repaired: f64) -> Result<Self> {
        self.demand_repaired = demand_repaired;
        self.validate()?;
        Ok(self)
    }

    /// Usable return flow `r·p·Dp`.
    pub fn return_flow(&self) -> f64 {
        self.recovery_fraction * self.collection_fraction * self.demand_new
    }

    pub fn has_sustainability(&self) -> bool {
        self.emissions.is_some() && self.energy.is_some()
    }

    pub fn validate(&self) -> Result<()> {
        fn positive(name: &'static str, v: f64) -> Result<()> {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(ModelError::invalid(name, format!("must be finite and > 0, got {v}")))
            }
        }
        fn nonnegative(name: &'static str, v: f64) -> Result<()> {
            if v.is_finite() && v >= 0.0 {
                Ok(())
            } else {
                Err(ModelError::invalid(name, format!("must be finite and >= 0, got {v}")))
            }
        }
        fn fraction(name: &'static str, v: f64) -> Result<()> {
            if v > 0.0 && v < 1.0 {
                Ok(())
            } else {
                Err(ModelError::invalid(name, format!("must lie in (0, 1), got {v}")))
            }
        }

        positive("Dp", self.demand_new)?;
        positive("Dr", self.demand_repaired)?;
        fraction("p", self.collection_fraction)?;
        fraction("r", self.recovery_fraction)?;
        positive("lambda", self.repair_rate)?;
        positive("Ap", self.setup_cost_new)?;
        positive("Ar", self.setup_cost_repair)?;
        positive("h1", self.holding_cost_supply)?;
        positive("h2", self.holding_cost_repair)?;

        let flow = self.return_flow();
        if self.repair_rate <= self.demand_repaired {
            return Err(ModelError::invalid(
                "lambda",
                format!(
                    "repair rate {} must exceed the repaired-item demand {}",
                    self.repair_rate, self.demand_repaired
                ),
            ));
        }
        if self.repair_rate <= flow {
            return Err(ModelError::invalid(
                "lambda",
                format!("repair rate {} must exceed the return flow r·p·Dp = {flow}", self.repair_rate),
            ));
        }
        if self.demand_repaired <= flow {
            return Err(ModelError::invalid(
                "Dr",
                format!(
                    "repaired-item demand {} must exceed the return flow r·p·Dp = {flow}",
                    self.demand_repaired
                ),
            ));
        }

        for (space, cap, floor) in [("p1", "k1", &self.supply_floor), ("p2", "k2", &self.repair_floor)] {
            positive(space, floor.space_per_item)?;
            if !(floor.capacity > 0.0) {
                return Err(ModelError::invalid(cap, format!("must be > 0, got {}", floor.capacity)));
            }
        }

        if let Some(e) = &self.emissions {
            nonnegative("ap", e.quadratic)?;
            nonnegative("bp", e.linear)?;
            if !e.constant.is_finite() {
                return Err(ModelError::invalid("cp", "must be finite"));
            }
        }
        if let Some(e) = &self.energy {
            nonnegative("Wp", e.idle_power_production)?;
            nonnegative("Wr", e.idle_power_repair)?;
            nonnegative("Kp", e.energy_per_unit_production)?;
            nonnegative("Kr", e.energy_per_unit_repair)?;
        }
        if !(self.emissions_margin > 0.0 && self.emissions_margin < 1.0) {
            return Err(ModelError::invalid(
                "epsilonM",
                format!("must lie in (0, 1), got {}", self.emissions_margin),
            ));
        }
        Ok(())
    }
}

/// Flat key/value form of [`ModelParams`] used for JSON documents.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsDocument {
    #[serde(rename = "Dp")]
    pub dp: f64,
    #[serde(rename = "Dr")]
    pub dr: f64,
    pub p: f64,
    pub r: f64,
    pub lambda: f64,
    #[serde(rename = "Ap")]
    pub ap_setup: f64,
    #[serde(rename = "Ar")]
    pub ar_setup: f64,
    pub h1: f64,
    pub h2: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ap: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bp: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cp: Option<f64>,
    #[serde(rename = "Wp", default, skip_serializing_if = "Option::is_none")]
    pub wp: Option<f64>,
    #[serde(rename = "Wr", default, skip_serializing_if = "Option::is_none")]
    pub wr: Option<f64>,
    #[serde(rename = "Kp", default, skip_serializing_if = "Option::is_none")]
    pub kp: Option<f64>,
    #[serde(rename = "Kr", default, skip_serializing_if = "Option::is_none")]
    pub kr: Option<f64>,
    #[serde(rename = "epsilonM", default, skip_serializing_if = "Option::is_none")]
    pub epsilon_m: Option<f64>,
}

fn floor_from_document(
    space: Option<f64>,
    capacity: Option<f64>,
    space_key: &'static str,
) -> Result<FloorLimit> {
    match (space, capacity) {
        (s, None) => Ok(FloorLimit::new(s.unwrap_or(1.0), f64::INFINITY)),
        (Some(s), Some(k)) => Ok(FloorLimit::new(s, k)),
        (None, Some(_)) => Err(ModelError::invalid(
            space_key,
            "floor capacity given without the space required per item",
        )),
    }
}

impl TryFrom<ParamsDocument> for ModelParams {
    type Error = ModelError;

    fn try_from(doc: ParamsDocument) -> Result<Self> {
        let emissions = match (doc.ap, doc.bp, doc.cp) {
            (None, None, None) => None,
            (Some(quadratic), Some(linear), Some(constant)) => Some(EmissionCoefficients {
                quadratic,
                linear,
                constant,
            }),
            _ => {
                return Err(ModelError::invalid(
                    "ap",
                    "emission coefficients ap, bp, cp must be given together",
                ))
            }
        };
        let energy = match (doc.wp, doc.wr, doc.kp, doc.kr) {
            (None, None, None, None) => None,
            (Some(wp), Some(wr), Some(kp), Some(kr)) => Some(EnergyCoefficients {
                idle_power_production: wp,
                idle_power_repair: wr,
                energy_per_unit_production: kp,
                energy_per_unit_repair: kr,
            }),
            _ => {
                return Err(ModelError::invalid(
                    "Wp",
                    "energy coefficients Wp, Wr, Kp, Kr must be given together",
                ))
            }
        };
        let params = ModelParams {
            demand_new: doc.dp,
            demand_repaired: doc.dr,
            collection_fraction: doc.p,
            recovery_fraction: doc.r,
            repair_rate: doc.lambda,
            setup_cost_new: doc.ap_setup,
            setup_cost_repair: doc.ar_setup,
            holding_cost_supply: doc.h1,
            holding_cost_repair: doc.h2,
            supply_floor: floor_from_document(doc.p1, doc.k1, "p1")?,
            repair_floor: floor_from_document(doc.p2, doc.k2, "p2")?,
            emissions,
            energy,
            emissions_margin: doc.epsilon_m.unwrap_or(DEFAULT_EMISSIONS_MARGIN),
        };
        params.validate()?;
        Ok(params)
    }
}

impl From<ModelParams> for ParamsDocument {
    fn from(p: ModelParams) -> Self {
        let capacity = |f: &FloorLimit| f.capacity.is_finite().then_some(f.capacity);
        ParamsDocument {
            dp: p.demand_new,
            dr: p.demand_repaired,
            p: p.collection_fraction,
            r: p.recovery_fraction,
            lambda: p.repair_rate,
            ap_setup: p.setup_cost_new,
            ar_setup: p.setup_cost_repair,
            h1: p.holding_cost_supply,
            h2: p.holding_cost_repair,
            p1: Some(p.supply_floor.space_per_item),
            p2: Some(p.repair_floor.space_per_item),
            k1: capacity(&p.supply_floor),
            k2: capacity(&p.repair_floor),
            ap: p.emissions.map(|e| e.quadratic),
            bp: p.emissions.map(|e| e.linear),
            cp: p.emissions.map(|e| e.constant),
            wp: p.energy.map(|e| e.idle_power_production),
            wr: p.energy.map(|e| e.idle_power_repair),
            kp: p.energy.map(|e| e.energy_per_unit_production),
            kr: p.energy.map(|e| e.energy_per_unit_repair),
            epsilon_m: Some(p.emissions_margin),
        }
    }
}

/// `C1`, `C2`, `C3` of the cycle geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedConstants {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

/// Procurement and repair batch sizes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatchDecision {
    pub qp: f64,
    pub qr: f64,
}

impl BatchDecision {
    pub fn new(qp: f64, qr: f64) -> Result<Self> {
        let d = BatchDecision { qp, qr };
        d.check()?;
        Ok(d)
    }

    fn check(&self) -> Result<()> {
        if !(self.qp.is_finite() && self.qp > 0.0) {
            return Err(ModelError::Domain(format!("procurement batch must be > 0, got {}", self.qp)));
        }
        if !(self.qr.is_finite() && self.qr > 0.0) {
            return Err(ModelError::Domain(format!("repair batch must be > 0, got {}", self.qr)));
        }
        Ok(())
    }
}

/// Intermediate quantities of one replenishment cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostBreakdown {
    /// Net repaired stock gained during one repair run, `C1·Qr`.
    pub l1: f64,
    pub t1: f64,
    pub t2: f64,
    /// Repair batches per cycle; real-valued.
    pub n: f64,
    pub cycle_length: f64,
    pub supply_area: f64,
    pub area_b: f64,
    pub area_c: f64,
    pub area_d: f64,
    pub area_e1: f64,
    pub area_e2: f64,
    pub repair_area: f64,
    pub total_cycle_cost: f64,
    pub holding_cost: f64,
}

/// Production margin, production rate and the two sustainability objectives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectiveBreakdown {
    pub margin: f64,
    pub production_rate: f64,
    pub holding_cost: f64,
    pub emissions: f64,
    pub energy: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmissionsBreakdown {
    pub margin: f64,
    pub production_rate: f64,
    pub emissions: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityReport {
    pub supply_floor_ok: bool,
    pub repair_floor_ok: bool,
    /// `None` when the production-margin constraint was not requested.
    pub emissions_domain_ok: Option<bool>,
    pub slack_supply: f64,
    pub slack_repair: f64,
    pub slack_margin: Option<f64>,
}

impl FeasibilityReport {
    pub fn is_feasible(&self) -> bool {
        self.supply_floor_ok && self.repair_floor_ok && self.emissions_domain_ok.unwrap_or(true)
    }
}

/// Validated parameters together with their derived constants.
#[derive(Debug, Clone, PartialEq)]
pub struct InventoryModel {
    params: ModelParams,
    constants: DerivedConstants,
}

impl InventoryModel {
    pub fn new(params: ModelParams) -> Result<Self> {
        let constants = derive_constants(&params)?;
        Ok(InventoryModel { params, constants })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn constants(&self) -> DerivedConstants {
        self.constants
    }

    pub fn cost_breakdown(&self, d: BatchDecision) -> Result<CostBreakdown> {
        d.check()?;
        Ok(self.cost_breakdown_unchecked(d))
    }

    /// Cycle quantities without checking the decision. Non-positive batches
    /// give non-finite or meaningless values.
    pub fn cost_breakdown_unchecked(&self, d: BatchDecision) -> CostBreakdown {
        let p = &self.params;
        let DerivedConstants { c1, c2, c3 } = self.constants;
        let (qp, qr) = (d.qp, d.qr);
        let dp = p.demand_new;
        let dr = p.demand_repaired;
        let lambda = p.repair_rate;
        let rp = p.recovery_fraction * p.collection_fraction;
        let flow = rp * dp;

        let l1 = c1 * qr;
        let t1 = c1 * qr / dr;
        let t2 = t1 + qp / dp;
        let n = c2 * qp / qr;
        let cycle_length = c3 * qp;

        let supply_area = qp * qp / (2.0 * dp) + c1 * c2 * qp * qr / 2.0 * (c1 / dr + 1.0 / lambda);
        let area_b = 0.5 * flow * t2 * t2;
        let area_c = c1 * c2 * qp * qr / (2.0 * lambda);
        let area_d = 0.5 * flow * (n - 1.0) * t1 * t1;
        let run = 1.0 / lambda + c1 / dr;
        let area_e1 = qr * run * (flow * c1 * qr / dr + rp * qp - c1 * qr);
        let area_e2 = qr * qr * run * (c1 - flow * c1 / dr);
        let repair_area = area_b + area_c + area_d + area_e1 + area_e2;

        let total_cycle_cost = p.setup_cost_new
            + n * p.setup_cost_repair
            + p.holding_cost_supply * supply_area
            + p.holding_cost_repair * repair_area;
        let holding_cost = total_cycle_cost / (c3 * qp);

        CostBreakdown {
            l1,
            t1,
            t2,
            n,
            cycle_length,
            supply_area,
            area_b,
            area_c,
            area_d,
            area_e1,
            area_e2,
            repair_area,
            total_cycle_cost,
            holding_cost,
        }
    }

    /// Average holding cost `f1`; non-finite for non-positive batches.
    pub fn holding_cost(&self, d: BatchDecision) -> f64 {
        if d.qp > 0.0 && d.qr > 0.0 {
            self.cost_breakdown_unchecked(d).holding_cost
        } else {
            f64::NAN
        }
    }

    /// Production margin `M = 1 − 2·Ap·Dp/(h1·Qp²)`.
    pub fn production_margin(&self, qp: f64) -> f64 {
        let p = &self.params;
        1.0 - 2.0 * p.setup_cost_new * p.demand_new / (p.holding_cost_supply * qp * qp)
    }

    /// Smallest procurement batch with `M` at the configured margin.
    pub fn margin_boundary(&self) -> f64 {
        let p = &self.params;
        (2.0 * p.setup_cost_new * p.demand_new
            / (p.holding_cost_supply * (1.0 - p.emissions_margin)))
            .sqrt()
    }

    pub fn emissions(&self, qp: f64) -> Result<EmissionsBreakdown> {
        let coeffs = self.params.emissions.ok_or_else(|| {
            ModelError::Domain("emission coefficients (ap, bp, cp) are not provided".into())
        })?;
        let margin = self.production_margin(qp);
        if !(margin > self.params.emissions_margin) {
            return Err(ModelError::Domain(format!(
                "production margin M = {margin:.6e} at Qp = {qp} is not above {:.1e}",
                self.params.emissions_margin
            )));
        }
        Ok(self.emissions_unchecked(&coeffs, qp))
    }

    fn emissions_unchecked(&self, coeffs: &EmissionCoefficients, qp: f64) -> EmissionsBreakdown {
        let margin = self.production_margin(qp);
        let rate = self.params.demand_new / margin;
        EmissionsBreakdown {
            margin,
            production_rate: rate,
            emissions: coeffs.quadratic * rate * rate - coeffs.linear * rate + coeffs.constant,
        }
    }

    pub fn energy(&self, d: BatchDecision) -> Result<f64> {
        d.check()?;
        let coeffs = self
            .params
            .energy
            .ok_or_else(|| ModelError::Domain("energy coefficients (Wp, Wr, Kp, Kr) are not provided".into()))?;
        let margin = self.production_margin(d.qp);
        if !(margin > self.params.emissions_margin) {
            return Err(ModelError::Domain(format!(
                "production margin M = {margin:.6e} at Qp = {} is not above {:.1e}",
                d.qp, self.params.emissions_margin
            )));
        }
        let cost = self.cost_breakdown_unchecked(d);
        Ok(self.energy_unchecked(&coeffs, d, margin, &cost))
    }

    fn energy_unchecked(
        &self,
        coeffs: &EnergyCoefficients,
        d: BatchDecision,
        margin: f64,
        cost: &CostBreakdown,
    ) -> f64 {
        let p = &self.params;
        let production = (margin * coeffs.idle_power_production / p.demand_new
            + coeffs.energy_per_unit_production)
            * d.qp;
        let repair = (coeffs.idle_power_repair / p.repair_rate + coeffs.energy_per_unit_repair)
            * cost.n
            * d.qr;
        (production + repair) / cost.cycle_length
    }

    /// All three objectives at `d`.
    pub fn objectives(&self, d: BatchDecision) -> Result<ObjectiveBreakdown> {
        d.check()?;
        let em = self.emissions(d.qp)?;
        let energy = self.energy(d)?;
        Ok(ObjectiveBreakdown {
            margin: em.margin,
            production_rate: em.production_rate,
            holding_cost: self.holding_cost(d),
            emissions: em.emissions,
            energy,
        })
    }

    /// `(f1, f2, f3)` without domain checks; components are non-finite or
    /// meaningless where `M <= 0`. Panics if sustainability data is absent.
    pub(crate) fn objective_values_unchecked(&self, d: BatchDecision) -> [f64; 3] {
        let em = self.params.emissions.expect("emission coefficients");
        let en = self.params.energy.expect("energy coefficients");
        let cost = self.cost_breakdown_unchecked(d);
        let f2 = self.emissions_unchecked(&em, d.qp);
        let f3 = self.energy_unchecked(&en, d, f2.margin, &cost);
        [cost.holding_cost, f2.emissions, f3]
    }

    /// Peak floor space used in the repair depot,
    /// `p2·(C1·Qr/Dr + Qp/Dp)·r·p·Dp`.
    pub fn repair_floor_usage(&self, d: BatchDecision) -> f64 {
        let p = &self.params;
        p.repair_floor.space_per_item
            * (self.constants.c1 * d.qr / p.demand_repaired + d.qp / p.demand_new)
            * p.return_flow()
    }

    pub fn supply_floor_usage(&self, d: BatchDecision) -> f64 {
        self.params.supply_floor.space_per_item * d.qp
    }

    pub fn feasibility(&self, d: BatchDecision, include_emissions_domain: bool) -> FeasibilityReport {
        let p = &self.params;
        let slack_supply = p.supply_floor.capacity - self.supply_floor_usage(d);
        let slack_repair = p.repair_floor.capacity - self.repair_floor_usage(d);
        let slack_margin =
            include_emissions_domain.then(|| self.production_margin(d.qp) - p.emissions_margin);
        FeasibilityReport {
            supply_floor_ok: slack_supply >= 0.0,
            repair_floor_ok: slack_repair >= 0.0,
            emissions_domain_ok: slack_margin.map(|s| s >= 0.0),
            slack_supply,
            slack_repair,
            slack_margin,
        }
    }
}

/// `C1 = 1 − r·p·Dp/λ`, `C2 = r·p/(C1·(1 − r·p·Dp/Dr))`, `C3 = (1 + C2)/(Dp + Dr)`.
pub fn derive_constants(params: &ModelParams) -> Result<DerivedConstants> {
    params.validate()?;
    let flow = params.return_flow();
    let c1 = 1.0 - flow / params.repair_rate;
    let repaired_share = 1.0 - flow / params.demand_repaired;
    if !(c1 > 0.0 && repaired_share > 0.0) {
        return Err(ModelError::Domain(format!(
            "return flow {flow} must be below both lambda and Dr"
        )));
    }
    let c2 = params.recovery_fraction * params.collection_fraction / (c1 * repaired_share);
    let c3 = (1.0 + c2) / (params.demand_new + params.demand_repaired);
    Ok(DerivedConstants { c1, c2, c3 })
}

pub fn cost_breakdown(params: &ModelParams, d: BatchDecision) -> Result<CostBreakdown> {
    InventoryModel::new(params.clone())?.cost_breakdown(d)
}

pub fn ghg_emissions(params: &ModelParams, qp: f64) -> Result<EmissionsBreakdown> {
    InventoryModel::new(params.clone())?.emissions(qp)
}

pub fn energy_use(params: &ModelParams, d: BatchDecision) -> Result<f64> {
    InventoryModel::new(params.clone())?.energy(d)
}

pub fn check_feasibility(
    params: &ModelParams,
    d: BatchDecision,
    include_emissions_domain: bool,
) -> Result<FeasibilityReport> {
    Ok(InventoryModel::new(params.clone())?.feasibility(d, include_emissions_domain))
}

//! Feasibility checking: does a plan satisfy every constraint of an
//! instance?
//!
//! A plan is feasible when (C1) every pair carries at most one technology,
//! (C2) every station pair is connected by at least `K` link-disjoint
//! paths, (C3) every station's reliability — one minus the probability
//! that all its incident links fail at once, where fiber never fails and a
//! hybrid link is up with its distance-dependent reliability — meets the
//! threshold `alpha`, and (C4) every station's aggregate incident rate
//! meets the target `D_t`, counting fiber links at full target rate and
//! hybrid links at their distance-dependent rate.

use serde::Serialize;

use crate::error::Result;
use crate::model::connectivity::min_path_diversity;
use crate::model::instance::ProblemInstance;
use crate::model::plan::Plan;

/// Absolute slack applied to the floating-point constraint comparisons
/// (reliability and rate), so that constructions designed to meet a bound
/// exactly are not rejected for rounding noise. Planners filter candidate
/// configurations with the same tolerance, keeping the two sides consistent.
pub const FEASIBILITY_TOL: f64 = 1e-9;

/// Reliability of station `i`: one minus the probability that every
/// incident link is down at once. Fiber links never fail; a hybrid link is
/// up with its distance-dependent reliability. No incident links means
/// reliability zero.
pub fn node_reliability(plan: &Plan, instance: &ProblemInstance, i: usize) -> f64 {
    let topology = instance.topology();
    let models = instance.models();
    let mut all_down = 1.0;
    for j in 0..plan.len() {
        if j == i {
            continue;
        }
        if plan.has_of(i, j) {
            all_down = 0.0;
        } else if plan.has_hybrid(i, j) {
            all_down *=
                1.0 - models.hybrid_reliability(topology.distance_m(i, j), instance.alpha());
        }
    }
    1.0 - all_down
}

/// Aggregate rate available to station `i`: fiber links count at the full
/// target rate, hybrid links at their distance-dependent rate.
pub fn node_rate(plan: &Plan, instance: &ProblemInstance, i: usize) -> f64 {
    let topology = instance.topology();
    let models = instance.models();
    let mut rate = 0.0;
    for j in 0..plan.len() {
        if j == i {
            continue;
        }
        if plan.has_of(i, j) {
            rate += instance.d_t();
        } else if plan.has_hybrid(i, j) {
            rate += models.hybrid_rate(topology.distance_m(i, j), instance.d_t());
        }
    }
    rate
}

/// Per-constraint outcome of checking one plan against one instance.
#[derive(Debug, Clone, Serialize)]
pub struct FeasibilityReport {
    /// C1: no pair carries both technologies.
    pub exclusivity_ok: bool,
    /// C2: minimum pairwise path diversity meets the redundancy degree.
    pub connectivity_ok: bool,
    /// Observed minimum pairwise path diversity.
    pub min_path_diversity: usize,
    /// Required path diversity (the instance's `K`).
    pub required_diversity: usize,
    /// C3: every station meets the reliability threshold.
    pub reliability_ok: bool,
    /// Per-station reliability, indexed by station id.
    pub node_reliability: Vec<f64>,
    /// C4: every station meets the aggregate rate target.
    pub rate_ok: bool,
    /// Per-station aggregate rate, indexed by station id.
    pub node_rate: Vec<f64>,
    /// All four constraints hold.
    pub feasible: bool,
}

/// Checks a plan against every constraint of an instance.
///
/// Errors only when the plan and instance disagree on the station count;
/// constraint violations are reported, not raised.
pub fn check_feasibility(plan: &Plan, instance: &ProblemInstance) -> Result<FeasibilityReport> {
    let m = instance.m();
    if plan.len() != m {
        return Err(crate::error::Error::InvalidPlan(format!(
            "plan spans {} stations but the instance has {m}",
            plan.len()
        )));
    }
    let exclusivity_ok = plan.exclusivity_ok();
    let min_diversity = min_path_diversity(plan);
    let connectivity_ok = min_diversity >= instance.k();
    let node_reliability: Vec<f64> = (0..m)
        .map(|i| node_reliability(plan, instance, i))
        .collect();
    let reliability_ok = node_reliability
        .iter()
        .all(|&a| a >= instance.alpha() - FEASIBILITY_TOL);
    let node_rate: Vec<f64> = (0..m).map(|i| node_rate(plan, instance, i)).collect();
    let rate_ok = node_rate
        .iter()
        .all(|&r| r >= instance.d_t() - FEASIBILITY_TOL);
    Ok(FeasibilityReport {
        exclusivity_ok,
        connectivity_ok,
        min_path_diversity: min_diversity,
        required_diversity: instance.k(),
        reliability_ok,
        node_reliability,
        rate_ok,
        node_rate,
        feasible: exclusivity_ok && connectivity_ok && reliability_ok && rate_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::links::LinkModels;
    use crate::model::plan::LinkKind;
    use crate::model::topology::{BaseStation, Topology};

    fn instance(coords: &[(f64, f64)], k: usize) -> ProblemInstance {
        let stations = coords
            .iter()
            .enumerate()
            .map(|(id, &(x_m, y_m))| BaseStation { id, x_m, y_m })
            .collect();
        ProblemInstance::new(
            Topology::new(stations).unwrap(),
            k,
            0.95,
            1.0,
            LinkModels::default(),
        )
        .unwrap()
    }

    #[test]
    fn fiber_gives_full_reliability_and_rate() {
        let inst = instance(&[(0.0, 0.0), (1_000.0, 0.0), (2_000.0, 0.0)], 1);
        let mut plan = Plan::empty(3);
        plan.add_link(0, 1, LinkKind::Of).unwrap();
        plan.add_link(1, 2, LinkKind::Of).unwrap();
        assert_eq!(node_reliability(&plan, &inst, 0), 1.0);
        assert_eq!(node_rate(&plan, &inst, 1), 2.0);
        let report = check_feasibility(&plan, &inst).unwrap();
        assert!(report.feasible, "{report:?}");
    }

    #[test]
    fn short_hybrid_meets_threshold_reliability_exactly() {
        let inst = instance(&[(0.0, 0.0), (1_500.0, 0.0)], 1);
        let mut plan = Plan::empty(2);
        plan.add_link(0, 1, LinkKind::Hybrid).unwrap();
        // Plateau reliability equals alpha, so the constraint binds exactly
        // and passes only thanks to the shared tolerance.
        assert_eq!(node_reliability(&plan, &inst, 0), 0.95);
        let report = check_feasibility(&plan, &inst).unwrap();
        assert!(report.reliability_ok);
        assert!(report.rate_ok);
        assert!(report.feasible);
    }

    #[test]
    fn long_hybrid_fails_reliability() {
        // 4 km is four decay lengths past the reliability break distance.
        let inst = instance(&[(0.0, 0.0), (4_000.0, 0.0)], 1);
        let mut plan = Plan::empty(2);
        plan.add_link(0, 1, LinkKind::Hybrid).unwrap();
        let report = check_feasibility(&plan, &inst).unwrap();
        assert!(!report.reliability_ok);
        assert!(!report.rate_ok);
        assert!(report.connectivity_ok);
        assert!(!report.feasible);
    }

    #[test]
    fn isolated_station_fails_everything() {
        let inst = instance(&[(0.0, 0.0), (1_000.0, 0.0), (2_000.0, 0.0)], 1);
        let mut plan = Plan::empty(3);
        plan.add_link(0, 1, LinkKind::Of).unwrap();
        let report = check_feasibility(&plan, &inst).unwrap();
        assert_eq!(report.min_path_diversity, 0);
        assert!(!report.connectivity_ok);
        assert_eq!(report.node_reliability[2], 0.0);
        assert!(!report.feasible);
    }

    #[test]
    fn insufficient_diversity_is_reported() {
        let inst = instance(&[(0.0, 0.0), (1_000.0, 0.0), (0.0, 1_000.0)], 2);
        let mut plan = Plan::empty(3);
        plan.add_link(0, 1, LinkKind::Of).unwrap();
        plan.add_link(0, 2, LinkKind::Of).unwrap();
        let report = check_feasibility(&plan, &inst).unwrap();
        assert!(!report.connectivity_ok);
        assert_eq!(report.min_path_diversity, 1);
        assert_eq!(report.required_diversity, 2);
        assert!(report.reliability_ok && report.rate_ok);
        assert!(!report.feasible);
    }

    #[test]
    fn exclusivity_violation_from_json_is_flagged() {
        let inst = instance(&[(0.0, 0.0), (1_000.0, 0.0)], 1);
        let plan =
            Plan::from_json(2, r#"{ "of_links": [[0, 1]], "hybrid_links": [[0, 1]] }"#).unwrap();
        let report = check_feasibility(&plan, &inst).unwrap();
        assert!(!report.exclusivity_ok);
        assert!(!report.feasible);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let inst = instance(&[(0.0, 0.0), (1_000.0, 0.0)], 1);
        assert!(check_feasibility(&Plan::empty(3), &inst).is_err());
    }

    #[test]
    fn two_long_hybrids_can_stack_reliability() {
        // Each 2.2 km hybrid link alone has reliability
        // 0.95 * exp(-0.4) ~ 0.6367 < 0.95, and two of them push node 0 to
        // 1 - (1 - 0.6367)^2 ~ 0.868 — still short of 0.95, so infeasible —
        // while rate stacks to 2 * 1.0 at full plateau (2.2 km < 3 km).
        let inst = instance(&[(0.0, 0.0), (2_200.0, 0.0), (0.0, 2_200.0)], 1);
        let mut plan = Plan::empty(3);
        plan.add_link(0, 1, LinkKind::Hybrid).unwrap();
        plan.add_link(0, 2, LinkKind::Hybrid).unwrap();
        plan.add_link(1, 2, LinkKind::Of).unwrap();
        let single = 0.95 * (-0.4f64).exp();
        let expected = 1.0 - (1.0 - single) * (1.0 - single);
        let got = node_reliability(&plan, &inst, 0);
        assert!(
            (got - expected).abs() < 1e-12,
            "got {got}, expected {expected}"
        );
        let report = check_feasibility(&plan, &inst).unwrap();
        assert!(!report.reliability_ok);
        assert!(report.rate_ok);
        assert_eq!(node_rate(&plan, &inst, 0), 2.0);
    }
}

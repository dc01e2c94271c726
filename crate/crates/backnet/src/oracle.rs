//! Exhaustive ground-truth solvers for small instances.
//!
//! Two brute-force searches back the planners: one over every symmetric
//! exclusive assignment of {no link, fiber, hybrid} to all station pairs
//! (the full problem), and one over fiber-only link subsets (the
//! fiber-only problem). Both enumerate a canonical lexicographic pair
//! encoding with cost-based pruning and strict-improvement incumbents, so
//! results are exact and deterministic. Instance-size caps keep the
//! exponential searches within desk scale.

use crate::error::{Error, Result};
use crate::model::connectivity::min_path_diversity;
use crate::model::feasibility::{check_feasibility, node_rate, node_reliability, FEASIBILITY_TOL};
use crate::model::instance::ProblemInstance;
use crate::model::links::link_costs;
use crate::model::plan::{LinkKind, Plan};
use crate::money::Money;

/// Largest `M` the full-problem oracle accepts by default
/// (`3^(M(M-1)/2)` assignments).
pub const DEFAULT_ORIGINAL_CAP: usize = 5;

/// Largest `M` the fiber-only oracle accepts by default
/// (`2^(M(M-1)/2)` subsets).
pub const DEFAULT_OF_CAP: usize = 6;

/// Outcome of a brute-force search.
#[derive(Debug, Clone)]
pub struct OracleResult {
    /// The cheapest feasible plan found.
    pub plan: Plan,
    /// Its exact price.
    pub cost: Money,
    /// Number of complete assignments evaluated against the constraints
    /// (assignments skipped by cost pruning are not counted).
    pub explored: u64,
    /// Always true on success; searches finding nothing feasible error
    /// out instead. Kept for serialization completeness.
    pub feasible_found: bool,
}

/// Exact minimum-cost solution of the full two-technology problem, by
/// exhaustive enumeration. Default cap [`DEFAULT_ORIGINAL_CAP`].
pub fn brute_force_original(instance: &ProblemInstance) -> Result<OracleResult> {
    brute_force_original_with_cap(instance, DEFAULT_ORIGINAL_CAP)
}

/// [`brute_force_original`] with an explicit station cap.
pub fn brute_force_original_with_cap(
    instance: &ProblemInstance,
    cap: usize,
) -> Result<OracleResult> {
    let m = instance.m();
    if m > cap {
        return Err(Error::CapExceeded { m, cap });
    }
    let costs = link_costs(instance.topology(), instance.models());
    let pairs: Vec<(usize, usize)> = instance.topology().pairs().collect();
    // Price of each pair under each state, indexed by the ternary digit.
    let price: Vec<[Money; 3]> = pairs
        .iter()
        .map(|&(i, j)| [Money::ZERO, costs.of(i, j), costs.hybrid(i, j)])
        .collect();

    let mut best: Option<(Money, Vec<u8>)> = None;
    let mut states = vec![0u8; pairs.len()];
    let mut explored = 0u64;
    search_assignments(
        instance,
        &pairs,
        &price,
        0,
        Money::ZERO,
        &mut states,
        &mut best,
        &mut explored,
    );
    match best {
        Some((cost, states)) => Ok(OracleResult {
            plan: plan_from_states(m, &pairs, &states),
            cost,
            explored,
            feasible_found: true,
        }),
        None => Err(Error::Infeasible(
            "no link assignment satisfies the constraints".into(),
        )),
    }
}

/// Depth-first enumeration over the canonical pair order. States per pair
/// are tried as none (0), fiber (1), hybrid (2); the first minimal-cost
/// feasible assignment in this lexicographic encoding wins ties.
#[allow(clippy::too_many_arguments)]
fn search_assignments(
    instance: &ProblemInstance,
    pairs: &[(usize, usize)],
    price: &[[Money; 3]],
    depth: usize,
    cost_so_far: Money,
    states: &mut Vec<u8>,
    best: &mut Option<(Money, Vec<u8>)>,
    explored: &mut u64,
) {
    if let Some((incumbent, _)) = best {
        // Costs only grow with depth; an already-not-cheaper prefix
        // cannot strictly improve.
        if cost_so_far >= *incumbent {
            return;
        }
    }
    if depth == pairs.len() {
        *explored += 1;
        if is_feasible_assignment(instance, pairs, states) {
            *best = Some((cost_so_far, states.clone()));
        }
        return;
    }
    for state in 0u8..3 {
        states[depth] = state;
        search_assignments(
            instance,
            pairs,
            price,
            depth + 1,
            cost_so_far + price[depth][state as usize],
            states,
            best,
            explored,
        );
    }
    states[depth] = 0;
}

fn plan_from_states(m: usize, pairs: &[(usize, usize)], states: &[u8]) -> Plan {
    let mut plan = Plan::empty(m);
    for (&(i, j), &state) in pairs.iter().zip(states) {
        match state {
            1 => plan
                .add_link(i, j, LinkKind::Of)
                .expect("pairs are distinct"),
            2 => plan
                .add_link(i, j, LinkKind::Hybrid)
                .expect("pairs are distinct"),
            _ => {}
        }
    }
    plan
}

fn is_feasible_assignment(
    instance: &ProblemInstance,
    pairs: &[(usize, usize)],
    states: &[u8],
) -> bool {
    let m = instance.m();
    // Cheap degree gate: K link-disjoint paths need degree K everywhere.
    let mut degree = vec![0usize; m];
    for (&(i, j), &state) in pairs.iter().zip(states) {
        if state != 0 {
            degree[i] += 1;
            degree[j] += 1;
        }
    }
    if degree.iter().any(|&d| d < instance.k()) {
        return false;
    }
    let plan = plan_from_states(m, pairs, states);
    check_feasibility(&plan, instance)
        .map(|report| report.feasible)
        .unwrap_or(false)
}

/// Exact minimum-cost fiber-only plan meeting the diversity requirement,
/// by enumerating every fiber link subset. Default cap [`DEFAULT_OF_CAP`].
pub fn brute_force_of(instance: &ProblemInstance) -> Result<OracleResult> {
    brute_force_of_with_cap(instance, DEFAULT_OF_CAP)
}

/// [`brute_force_of`] with an explicit station cap.
pub fn brute_force_of_with_cap(instance: &ProblemInstance, cap: usize) -> Result<OracleResult> {
    let m = instance.m();
    if m > cap {
        return Err(Error::CapExceeded { m, cap });
    }
    let costs = link_costs(instance.topology(), instance.models());
    let pairs: Vec<(usize, usize)> = instance.topology().pairs().collect();
    let pair_cost: Vec<Money> = pairs.iter().map(|&(i, j)| costs.of(i, j)).collect();
    let k = instance.k();

    let mut best: Option<(Money, u64)> = None;
    let mut explored = 0u64;
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut cost = Money::ZERO;
        let mut degree = vec![0usize; m];
        for (p, &(i, j)) in pairs.iter().enumerate() {
            if mask & (1 << p) != 0 {
                cost += pair_cost[p];
                degree[i] += 1;
                degree[j] += 1;
            }
        }
        if let Some((incumbent, _)) = best {
            if cost >= incumbent {
                continue;
            }
        }
        if degree.iter().any(|&d| d < k) {
            continue;
        }
        explored += 1;
        let plan = plan_from_mask(m, &pairs, mask);
        if min_path_diversity(&plan) >= k {
            best = Some((cost, mask));
        }
    }
    match best {
        Some((cost, mask)) => Ok(OracleResult {
            plan: plan_from_mask(m, &pairs, mask),
            cost,
            explored,
            feasible_found: true,
        }),
        None => Err(Error::Infeasible(
            "no fiber link subset meets the diversity requirement".into(),
        )),
    }
}

fn plan_from_mask(m: usize, pairs: &[(usize, usize)], mask: u64) -> Plan {
    let mut plan = Plan::empty(m);
    for (p, &(i, j)) in pairs.iter().enumerate() {
        if mask & (1 << p) != 0 {
            plan.add_link(i, j, LinkKind::Of)
                .expect("pairs are distinct");
        }
    }
    plan
}

/// Empirically verifies that, for fiber-only plans, the diversity
/// constraint subsumes the per-station reliability and rate constraints:
/// enumerates every fiber subset meeting the diversity requirement and
/// checks each station's reliability and rate. Returns false if any
/// counterexample exists. Default cap [`DEFAULT_OF_CAP`].
pub fn redundancy_check(instance: &ProblemInstance) -> Result<bool> {
    redundancy_check_with_cap(instance, DEFAULT_OF_CAP)
}

/// [`redundancy_check`] with an explicit station cap.
pub fn redundancy_check_with_cap(instance: &ProblemInstance, cap: usize) -> Result<bool> {
    let m = instance.m();
    if m > cap {
        return Err(Error::CapExceeded { m, cap });
    }
    let pairs: Vec<(usize, usize)> = instance.topology().pairs().collect();
    for mask in 0u64..(1u64 << pairs.len()) {
        let plan = plan_from_mask(m, &pairs, mask);
        if min_path_diversity(&plan) < instance.k() {
            continue;
        }
        for i in 0..m {
            if node_reliability(&plan, instance, i) < instance.alpha() - FEASIBILITY_TOL
                || node_rate(&plan, instance, i) < instance.d_t() - FEASIBILITY_TOL
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

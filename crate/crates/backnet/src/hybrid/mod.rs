//! Two-technology planning: substitute hybrid RF/FSO links into the fiber
//! planning wherever that lowers cost without breaking any constraint.
//!
//! The pipeline: run the fiber planner, derive per-station neighbor sets
//! from its link prices, enumerate each station's feasible link
//! combinations, assemble the M-partite planning graph, and solve an exact
//! one-per-station maximum-weight clique to pick a consistent, cheapest
//! combination per station. Keeping a link of some kind on every
//! fiber-planning pair preserves the fiber planning's path diversity, so
//! the merged plan is feasible for the original problem; and since the
//! fiber planning itself is one of the cliques, the result never costs
//! more than fiber alone.

pub mod clique;
pub mod combos;
pub mod graph;
pub mod neighbors;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::instance::ProblemInstance;
use crate::model::links::link_costs;
use crate::model::plan::{LinkChoice, LinkKind, Plan};
use crate::model::topology::index_pairs;
use crate::money::Money;
use crate::of::of_planning;

pub use clique::max_weight_clique;
pub use combos::{enumerate_combinations, Combination, NEIGHBOR_CAP};
pub use graph::{build_planning_graph, PlanningGraph, VertexId};
pub use neighbors::{cost_assumption_holds, neighbor_sets, CostAssumption, NeighborSets};

/// Size of the planning graph, reported alongside plans.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PlanningGraphStats {
    pub vertices: usize,
    pub edges: usize,
}

/// Reporting metadata accompanying a hybrid plan.
#[derive(Debug, Clone, Serialize)]
pub struct HybridMetadata {
    /// Price of the fiber-only planning, in dollars.
    pub of_plan_cost: f64,
    /// Price of the returned two-technology plan, in dollars.
    pub hybrid_plan_cost: f64,
    /// True when the pricing assumption behind the neighbor-set
    /// restriction fails somewhere; the plan is still valid, but the
    /// heuristic's optimality rationale is weakened.
    pub assumption_violated: bool,
    pub planning_graph_stats: PlanningGraphStats,
}

/// A hybrid plan together with the fiber planning it started from and
/// reporting metadata.
#[derive(Debug, Clone)]
pub struct HybridOutcome {
    pub plan: Plan,
    pub of_plan: Plan,
    pub metadata: HybridMetadata,
}

/// Runs the full hybrid planning pipeline, returning the plan plus the
/// intermediate fiber planning and metadata.
pub fn hybrid_planning_detailed(instance: &ProblemInstance) -> Result<HybridOutcome> {
    let m = instance.m();
    let costs = link_costs(instance.topology(), instance.models());
    let of_plan = of_planning(instance)?;
    let of_cost = of_plan.cost(&costs);

    let sets = neighbor_sets(&of_plan, &costs);
    let assumption = cost_assumption_holds(&sets, &costs);
    let combos = (0..m)
        .map(|i| enumerate_combinations(instance, i, &sets, &of_plan, &costs))
        .collect::<Result<Vec<_>>>()?;
    let graph = build_planning_graph(combos, sets, costs.clone())?;
    let stats = PlanningGraphStats {
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
    };
    let selection = max_weight_clique(&graph)?;

    let plan = merge_selection(&graph, &selection)?;
    let plan_cost = plan.cost(&costs);

    // Cross-check the clique accounting: summing each chosen combination's
    // per-endpoint link price counts every link twice, exactly.
    let double_counted: Money = selection
        .iter()
        .enumerate()
        .map(|(s, &c)| {
            graph.vertex_cost(VertexId {
                station: s,
                combo: c,
            })
        })
        .sum();
    if double_counted.half() != plan_cost {
        return Err(Error::InternalConsistency(format!(
            "clique cost {} does not equal twice the merged plan cost {}",
            double_counted.to_decimal_string(),
            plan_cost.to_decimal_string()
        )));
    }
    if plan_cost > of_cost {
        return Err(Error::InternalConsistency(format!(
            "hybrid plan costs {} but the fiber planning costs {}",
            plan_cost.to_decimal_string(),
            of_cost.to_decimal_string()
        )));
    }

    Ok(HybridOutcome {
        plan,
        of_plan,
        metadata: HybridMetadata {
            of_plan_cost: of_cost.dollars(),
            hybrid_plan_cost: plan_cost.dollars(),
            assumption_violated: !assumption.holds,
            planning_graph_stats: stats,
        },
    })
}

/// Computes the minimum-cost two-technology plan for the instance via the
/// planning-graph pipeline.
pub fn hybrid_planning(instance: &ProblemInstance) -> Result<Plan> {
    hybrid_planning_detailed(instance).map(|outcome| outcome.plan)
}

/// Merges a one-per-station clique selection into a plan. The clique's
/// adjacency guarantees both endpoints of every mutual pair agree; a
/// disagreement means the selection was not a clique.
fn merge_selection(graph: &PlanningGraph, selection: &[usize]) -> Result<Plan> {
    let m = graph.station_count();
    let mut plan = Plan::empty(m);
    for (i, j) in index_pairs(m) {
        if !graph.neighbors().are_mutual(i, j) {
            continue;
        }
        let state_i = graph.combinations(i)[selection[i]].decision_for(j);
        let state_j = graph.combinations(j)[selection[j]].decision_for(i);
        if state_i != state_j {
            return Err(Error::InternalConsistency(format!(
                "selection disagrees on pair ({i}, {j}): {state_i:?} vs {state_j:?}"
            )));
        }
        match state_i {
            LinkChoice::None => {}
            LinkChoice::Of => plan.add_link(i, j, LinkKind::Of)?,
            LinkChoice::Hybrid => plan.add_link(i, j, LinkKind::Hybrid)?,
        }
    }
    Ok(plan)
}

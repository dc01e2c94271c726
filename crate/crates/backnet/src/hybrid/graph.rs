//! The planning graph: one vertex per feasible station combination,
//! adjacency between combinations that agree on their shared pair.
//!
//! The graph is M-partite: vertices of the same station are never
//! adjacent. Vertices of different stations are adjacent when either the
//! stations are not mutual neighbors (no shared pair to disagree on) or
//! both combinations assign the same state to the pair joining them. A
//! one-vertex-per-station clique therefore encodes a consistent plan, and
//! vertex weights of minus half the combination's link price make the
//! maximum-weight clique the cheapest plan (each link's price is split
//! between its two endpoint vertices).

use crate::error::{Error, Result};
use crate::model::links::CostMatrices;
use crate::model::plan::LinkChoice;
use crate::model::topology::index_pairs;
use crate::money::Money;

use super::combos::Combination;
use super::neighbors::NeighborSets;

/// A vertex id: station index plus the index of one of its combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexId {
    pub station: usize,
    pub combo: usize,
}

/// The M-partite planning graph over per-station combinations.
#[derive(Debug, Clone)]
pub struct PlanningGraph {
    combos: Vec<Vec<Combination>>,
    neighbors: NeighborSets,
    costs: CostMatrices,
    /// Full (per-endpoint) link price of each combination.
    link_costs: Vec<Vec<Money>>,
    /// Price of each combination's links toward higher station ids only.
    forward_costs: Vec<Vec<Money>>,
}

impl PlanningGraph {
    /// Number of stations (parts).
    pub fn station_count(&self) -> usize {
        self.combos.len()
    }

    /// The combinations of one station, in enumeration order.
    pub fn combinations(&self, station: usize) -> &[Combination] {
        &self.combos[station]
    }

    /// The neighbor sets the graph was built over.
    pub fn neighbors(&self) -> &NeighborSets {
        &self.neighbors
    }

    /// The cost matrices the graph was built over.
    pub fn costs(&self) -> &CostMatrices {
        &self.costs
    }

    /// Total vertex count.
    pub fn vertex_count(&self) -> usize {
        self.combos.iter().map(Vec::len).sum()
    }

    /// Full link price of a vertex's combination (counted at this station).
    pub fn vertex_cost(&self, v: VertexId) -> Money {
        self.link_costs[v.station][v.combo]
    }

    /// Vertex weight per the clique formulation: minus half the link
    /// price, in dollars. Reporting only; solver arithmetic stays in cents.
    pub fn vertex_weight_dollars(&self, v: VertexId) -> f64 {
        -self.vertex_cost(v).dollars() / 2.0
    }

    /// Price of a vertex's links toward higher station ids.
    pub fn vertex_forward_cost(&self, v: VertexId) -> Money {
        self.forward_costs[v.station][v.combo]
    }

    /// True when two vertices are compatible: different stations, and if
    /// the stations are mutual neighbors, matching states on their pair.
    pub fn are_adjacent(&self, u: VertexId, v: VertexId) -> bool {
        if u.station == v.station {
            return false;
        }
        if !self.neighbors.are_mutual(u.station, v.station) {
            return true;
        }
        let state_u: LinkChoice = self.combos[u.station][u.combo].decision_for(v.station);
        let state_v: LinkChoice = self.combos[v.station][v.combo].decision_for(u.station);
        state_u == state_v
    }

    /// Total edge count. Mutual-neighbor pairs are counted by bucketing
    /// each side's combinations on the shared pair's state, so the count
    /// is linear in the vertex count per station pair.
    pub fn edge_count(&self) -> usize {
        let m = self.station_count();
        let mut edges = 0usize;
        for (i, k) in index_pairs(m) {
            if !self.neighbors.are_mutual(i, k) {
                edges += self.combos[i].len() * self.combos[k].len();
                continue;
            }
            let bucket = |combos: &[Combination], other: usize| -> [usize; 3] {
                let mut counts = [0usize; 3];
                for c in combos {
                    let slot = match c.decision_for(other) {
                        LinkChoice::None => 0,
                        LinkChoice::Of => 1,
                        LinkChoice::Hybrid => 2,
                    };
                    counts[slot] += 1;
                }
                counts
            };
            let ci = bucket(&self.combos[i], k);
            let ck = bucket(&self.combos[k], i);
            edges += ci.iter().zip(&ck).map(|(a, b)| a * b).sum::<usize>();
        }
        edges
    }
}

/// Assembles the planning graph from per-station combination lists.
///
/// Requires one non-empty combination list per station, in station order.
pub fn build_planning_graph(
    combos: Vec<Vec<Combination>>,
    neighbors: NeighborSets,
    costs: CostMatrices,
) -> Result<PlanningGraph> {
    if combos.len() != neighbors.len() || combos.len() != costs.len() {
        return Err(Error::InternalConsistency(format!(
            "planning graph inputs disagree on station count: {} combination lists, \
             {} neighbor sets, {} cost rows",
            combos.len(),
            neighbors.len(),
            costs.len()
        )));
    }
    if let Some(station) = combos.iter().position(Vec::is_empty) {
        return Err(Error::NoClique(format!(
            "station {station} admits no feasible link combination"
        )));
    }
    let link_costs: Vec<Vec<Money>> = combos
        .iter()
        .map(|list| list.iter().map(|c| c.link_cost(&costs)).collect())
        .collect();
    let forward_costs: Vec<Vec<Money>> = combos
        .iter()
        .map(|list| list.iter().map(|c| c.forward_cost(&costs)).collect())
        .collect();
    Ok(PlanningGraph {
        combos,
        neighbors,
        costs,
        link_costs,
        forward_costs,
    })
}

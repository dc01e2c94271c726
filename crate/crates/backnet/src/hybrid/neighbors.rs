//! Neighbor sets: the per-station candidate partners considered by the
//! hybrid planner.
//!
//! A station's raw neighbor set contains every station reachable by a
//! fiber link no costlier than the most expensive fiber link the fiber
//! planner gave that station. Sets are then symmetrized by union so that
//! neighborship is mutual; only mutual pairs can ever carry a link in the
//! hybrid plan, and every fiber-planning link joins mutual neighbors.

use crate::model::links::CostMatrices;
use crate::model::plan::Plan;
use crate::model::topology::index_pairs;
use crate::money::Money;

/// Symmetric per-station neighbor sets.
#[derive(Debug, Clone)]
pub struct NeighborSets {
    /// Per-station sorted neighbor ids; `j ∈ sets[i] ⇔ i ∈ sets[j]`.
    sets: Vec<Vec<usize>>,
}

impl NeighborSets {
    /// Builds symmetric sets from raw per-station candidate lists:
    /// self-entries are dropped, sets are unioned with their mirrors,
    /// sorted, and deduplicated.
    pub fn from_raw(mut sets: Vec<Vec<usize>>) -> Self {
        let m = sets.len();
        for (i, set) in sets.iter_mut().enumerate() {
            set.retain(|&j| j != i && j < m);
        }
        for (i, j) in index_pairs(m) {
            let i_has_j = sets[i].contains(&j);
            let j_has_i = sets[j].contains(&i);
            if i_has_j && !j_has_i {
                sets[j].push(i);
            } else if j_has_i && !i_has_j {
                sets[i].push(j);
            }
        }
        for set in &mut sets {
            set.sort_unstable();
            set.dedup();
        }
        NeighborSets { sets }
    }

    /// Number of stations.
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    /// True when built for zero stations.
    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Sorted neighbors of station `i`.
    pub fn of(&self, i: usize) -> &[usize] {
        &self.sets[i]
    }

    /// True when `i` and `j` are (mutual) neighbors.
    pub fn are_mutual(&self, i: usize, j: usize) -> bool {
        self.sets[i].binary_search(&j).is_ok()
    }
}

/// Builds the neighbor sets induced by a fiber planning `of_plan`: station
/// `j` is a raw neighbor of `i` when the fiber price of `(i, j)` does not
/// exceed the price of `i`'s most expensive fiber-planning link, and sets
/// are symmetrized by union.
pub fn neighbor_sets(of_plan: &Plan, costs: &CostMatrices) -> NeighborSets {
    let m = of_plan.len();
    let raw = (0..m)
        .map(|i| {
            let threshold = (0..m)
                .filter(|&j| j != i && of_plan.has_of(i, j))
                .map(|j| costs.of(i, j))
                .max();
            match threshold {
                Some(max_of_cost) => (0..m)
                    .filter(|&j| j != i && costs.of(i, j) <= max_of_cost)
                    .collect(),
                None => Vec::new(),
            }
        })
        .collect();
    NeighborSets::from_raw(raw)
}

/// Outcome of checking the pricing assumption under which the hybrid
/// planner's restriction to neighbor sets is lossless: for every pair of
/// non-neighbors, fiber-connecting each endpoint to its overall nearest
/// station must be no costlier than one hybrid link between them. The
/// planner still runs when this fails; the result is merely flagged.
#[derive(Debug, Clone)]
pub struct CostAssumption {
    /// True when no pair violates the inequality.
    pub holds: bool,
    /// Violating non-neighbor pairs, `(i, j)` with `i < j`, lexicographic.
    pub violations: Vec<(usize, usize)>,
}

/// Checks the pricing assumption over every non-mutually-neighboring pair.
pub fn cost_assumption_holds(neighbors: &NeighborSets, costs: &CostMatrices) -> CostAssumption {
    let m = neighbors.len();
    // Nearest other station by fiber price, ties to the smallest id.
    let nearest_cost: Vec<Money> = (0..m)
        .map(|i| {
            (0..m)
                .filter(|&k| k != i)
                .map(|k| costs.of(i, k))
                .min()
                .unwrap_or(Money::ZERO)
        })
        .collect();
    let violations: Vec<(usize, usize)> = index_pairs(m)
        .filter(|&(i, j)| !neighbors.are_mutual(i, j))
        .filter(|&(i, j)| nearest_cost[i] + nearest_cost[j] > costs.hybrid(i, j))
        .collect();
    CostAssumption {
        holds: violations.is_empty(),
        violations,
    }
}

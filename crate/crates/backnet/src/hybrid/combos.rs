//! Per-station link-combination enumeration.
//!
//! For each station the hybrid planner considers every assignment of
//! {no link, fiber, hybrid} to that station's neighbors that (a) keeps a
//! link of some kind on every pair the fiber planner used, so the fiber
//! planning's path diversity survives technology substitution, and
//! (b) meets the station's own reliability and rate constraints counting
//! its neighbor links only. The surviving assignments become the vertices
//! of the planning graph.

use crate::error::{Error, Result};
use crate::model::feasibility::FEASIBILITY_TOL;
use crate::model::instance::ProblemInstance;
use crate::model::links::CostMatrices;
use crate::model::plan::{LinkChoice, Plan};
use crate::money::Money;

use super::neighbors::NeighborSets;

/// Largest neighbor set the enumerator accepts; `3^12` assignments is the
/// most a single station is allowed to generate.
pub const NEIGHBOR_CAP: usize = 12;

/// One feasible assignment of link states to a station's neighbors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Combination {
    station: usize,
    /// The station's neighbors, sorted ascending.
    neighbors: Vec<usize>,
    /// Link state per neighbor, parallel to `neighbors`.
    decisions: Vec<LinkChoice>,
    /// Which neighbor pairs the fiber planning used, parallel to
    /// `neighbors`; those pairs always carry a link of some kind.
    forced: Vec<bool>,
}

impl Combination {
    /// The station this combination belongs to.
    pub fn station(&self) -> usize {
        self.station
    }

    /// The station's neighbors, sorted ascending.
    pub fn neighbors(&self) -> &[usize] {
        &self.neighbors
    }

    /// Link states parallel to [`Combination::neighbors`].
    pub fn decisions(&self) -> &[LinkChoice] {
        &self.decisions
    }

    /// True when this combination realizes exactly the fiber planning at
    /// its station: fiber on every forced pair, nothing elsewhere.
    pub fn is_fiber_planning(&self) -> bool {
        self.decisions
            .iter()
            .zip(&self.forced)
            .all(|(&d, &forced)| {
                d == if forced {
                    LinkChoice::Of
                } else {
                    LinkChoice::None
                }
            })
    }

    /// The link state this combination assigns to neighbor `j`;
    /// `LinkChoice::None` for non-neighbors.
    pub fn decision_for(&self, j: usize) -> LinkChoice {
        match self.neighbors.binary_search(&j) {
            Ok(idx) => self.decisions[idx],
            Err(_) => LinkChoice::None,
        }
    }

    /// Total price of the links this combination deploys at its station.
    /// Every link is counted once per endpoint across a full selection, so
    /// summing this over all stations double-counts the plan price.
    pub fn link_cost(&self, costs: &CostMatrices) -> Money {
        self.neighbors
            .iter()
            .zip(&self.decisions)
            .map(|(&j, &choice)| match choice {
                LinkChoice::None => Money::ZERO,
                LinkChoice::Of => costs.of(self.station, j),
                LinkChoice::Hybrid => costs.hybrid(self.station, j),
            })
            .sum()
    }

    /// Price of this combination's links to neighbors with ids strictly
    /// greater than its own station. Summed over a full selection this
    /// counts every link exactly once, which is what the clique solver's
    /// bound arithmetic uses.
    pub fn forward_cost(&self, costs: &CostMatrices) -> Money {
        self.neighbors
            .iter()
            .zip(&self.decisions)
            .filter(|&(&j, _)| j > self.station)
            .map(|(&j, &choice)| match choice {
                LinkChoice::None => Money::ZERO,
                LinkChoice::Of => costs.of(self.station, j),
                LinkChoice::Hybrid => costs.hybrid(self.station, j),
            })
            .sum()
    }
}

/// Enumerates every feasible link combination for `station`, in a fixed
/// deterministic order (ternary counting over the sorted neighbor list
/// with `None < Of < Hybrid` per position).
///
/// A combination survives when it keeps a link on every fiber-planning
/// pair and meets the station's reliability and rate constraints over its
/// neighbor links. The all-fiber assignment always survives, so the result
/// is never empty. Errors with [`Error::CombinatorialLimit`] when the
/// neighbor set exceeds [`NEIGHBOR_CAP`].
pub fn enumerate_combinations(
    instance: &ProblemInstance,
    station: usize,
    neighbors: &NeighborSets,
    of_plan: &Plan,
    _costs: &CostMatrices,
) -> Result<Vec<Combination>> {
    let nbrs = neighbors.of(station);
    let n = nbrs.len();
    if n > NEIGHBOR_CAP {
        return Err(Error::CombinatorialLimit {
            station,
            neighbors: n,
            cap: NEIGHBOR_CAP,
        });
    }
    let topology = instance.topology();
    let models = instance.models();
    // Per-neighbor curves, evaluated once.
    let forced: Vec<bool> = nbrs.iter().map(|&j| of_plan.has_of(station, j)).collect();
    let reliability: Vec<f64> = nbrs
        .iter()
        .map(|&j| models.hybrid_reliability(topology.distance_m(station, j), instance.alpha()))
        .collect();
    let rate: Vec<f64> = nbrs
        .iter()
        .map(|&j| models.hybrid_rate(topology.distance_m(station, j), instance.d_t()))
        .collect();

    let total = 3usize.pow(n as u32);
    let mut combos = Vec::new();
    let mut decisions = vec![LinkChoice::None; n];
    'outer: for code in 0..total {
        let mut rest = code;
        // Most-significant ternary digit drives the first neighbor.
        for t in (0..n).rev() {
            decisions[t] = match rest % 3 {
                0 => LinkChoice::None,
                1 => LinkChoice::Of,
                _ => LinkChoice::Hybrid,
            };
            rest /= 3;
        }
        let mut all_down = 1.0;
        let mut total_rate = 0.0;
        for t in 0..n {
            match decisions[t] {
                LinkChoice::None => {
                    if forced[t] {
                        continue 'outer;
                    }
                }
                LinkChoice::Of => {
                    all_down = 0.0;
                    total_rate += instance.d_t();
                }
                LinkChoice::Hybrid => {
                    all_down *= 1.0 - reliability[t];
                    total_rate += rate[t];
                }
            }
        }
        if 1.0 - all_down < instance.alpha() - FEASIBILITY_TOL {
            continue;
        }
        if total_rate < instance.d_t() - FEASIBILITY_TOL {
            continue;
        }
        combos.push(Combination {
            station,
            neighbors: nbrs.to_vec(),
            decisions: decisions.clone(),
            forced: forced.clone(),
        });
    }
    debug_assert!(
        !combos.is_empty(),
        "the all-fiber assignment always survives"
    );
    Ok(combos)
}

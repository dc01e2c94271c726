//! Exact maximum-weight clique search over the planning graph.
//!
//! The planning graph is M-partite with all-negative weights, so the
//! sought clique is constrained to exactly one vertex per station and
//! maximizing total weight equals minimizing total link price. The solver
//! is a depth-first branch-and-bound over stations in id order:
//!
//! - costs are accounted in "forward" form (each combination's links
//!   toward higher station ids), so a partial selection's cost is exact
//!   and every link is counted once;
//! - the bound adds each unassigned station's cheapest forward cost; when
//!   even that cannot beat the incumbent, the branch is pruned;
//! - candidates are tried cheapest-first with index ties, and incumbents
//!   are replaced only on strict improvement, so the result is
//!   deterministic.
//!
//! The all-fiber-planning selection (every station keeping exactly its
//! fiber links) is always a clique and seeds the incumbent, which both
//! guarantees a solution exists and tightens pruning from the start.

use crate::error::{Error, Result};
use crate::money::Money;

use super::combos::Combination;
use super::graph::{PlanningGraph, VertexId};

/// Finds the one-vertex-per-station clique of minimum total link price
/// (equivalently, maximum total weight). Returns the chosen combination
/// index per station. Exact: equal to exhaustive enumeration.
pub fn max_weight_clique(graph: &PlanningGraph) -> Result<Vec<usize>> {
    let m = graph.station_count();
    if m == 0 {
        return Err(Error::NoClique("the planning graph has no stations".into()));
    }

    // Candidate order per station: cheapest forward cost first, then
    // enumeration index. The index tie-break keeps the search order (and
    // with it the incumbent on cost ties) deterministic.
    let mut order: Vec<Vec<usize>> = Vec::with_capacity(m);
    for s in 0..m {
        let mut idx: Vec<usize> = (0..graph.combinations(s).len()).collect();
        idx.sort_by_key(|&c| {
            (
                graph.vertex_forward_cost(VertexId {
                    station: s,
                    combo: c,
                }),
                c,
            )
        });
        order.push(idx);
    }

    // Lower bound on the cost still to come from stations s..m.
    let mut suffix_min = vec![Money::ZERO; m + 1];
    for s in (0..m).rev() {
        let cheapest = order[s]
            .first()
            .map(|&c| {
                graph.vertex_forward_cost(VertexId {
                    station: s,
                    combo: c,
                })
            })
            .unwrap_or(Money::ZERO);
        suffix_min[s] = suffix_min[s + 1] + cheapest;
    }

    // Seed with the fiber-planning selection: pick, per station, the
    // combination assigning fiber to exactly its forced pairs. It always
    // exists and is pairwise consistent.
    let mut incumbent: Option<(Money, Vec<usize>)> = fiber_selection(graph).map(|sel| {
        let cost = sel
            .iter()
            .enumerate()
            .map(|(s, &c)| {
                graph.vertex_forward_cost(VertexId {
                    station: s,
                    combo: c,
                })
            })
            .sum();
        (cost, sel)
    });

    let mut chosen = vec![0usize; m];
    search(
        graph,
        &order,
        &suffix_min,
        0,
        Money::ZERO,
        &mut chosen,
        &mut incumbent,
    );

    match incumbent {
        Some((_, selection)) => Ok(selection),
        None => Err(Error::NoClique(
            "no pairwise-consistent combination selection exists".into(),
        )),
    }
}

fn search(
    graph: &PlanningGraph,
    order: &[Vec<usize>],
    suffix_min: &[Money],
    station: usize,
    partial: Money,
    chosen: &mut Vec<usize>,
    incumbent: &mut Option<(Money, Vec<usize>)>,
) {
    let m = graph.station_count();
    if station == m {
        if incumbent.as_ref().is_none_or(|(best, _)| partial < *best) {
            *incumbent = Some((partial, chosen.clone()));
        }
        return;
    }
    for &combo in &order[station] {
        let v = VertexId { station, combo };
        let cost = partial + graph.vertex_forward_cost(v);
        // Candidates are sorted by forward cost, so once one candidate
        // cannot beat the incumbent no later one can either.
        if let Some((best, _)) = incumbent {
            if cost + suffix_min[station + 1] >= *best {
                break;
            }
        }
        let consistent = (0..station).all(|t| {
            graph.are_adjacent(
                VertexId {
                    station: t,
                    combo: chosen[t],
                },
                v,
            )
        });
        if !consistent {
            continue;
        }
        chosen[station] = combo;
        search(
            graph,
            order,
            suffix_min,
            station + 1,
            cost,
            chosen,
            incumbent,
        );
    }
}

/// Locates, per station, the combination realizing exactly the fiber
/// planning (fiber on forced pairs, nothing elsewhere). The fiber plan is
/// symmetric, so the resulting selection is pairwise consistent. Returns
/// `None` only for graphs whose combinations didn't come from the
/// enumerator; the solver then relies on the search alone.
fn fiber_selection(graph: &PlanningGraph) -> Option<Vec<usize>> {
    (0..graph.station_count())
        .map(|s| {
            graph
                .combinations(s)
                .iter()
                .position(Combination::is_fiber_planning)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hybrid::combos::enumerate_combinations;
    use crate::hybrid::graph::build_planning_graph;
    use crate::hybrid::neighbors::neighbor_sets;
    use crate::model::instance::ProblemInstance;
    use crate::model::links::{link_costs, LinkModels};
    use crate::model::topology::{BaseStation, Topology};
    use crate::of::of_planning;

    fn graph_for(coords: &[(f64, f64)], k: usize) -> PlanningGraph {
        let stations = coords
            .iter()
            .enumerate()
            .map(|(id, &(x_m, y_m))| BaseStation { id, x_m, y_m })
            .collect();
        let inst = ProblemInstance::new(
            Topology::new(stations).unwrap(),
            k,
            0.95,
            1.0,
            LinkModels::default(),
        )
        .unwrap();
        let costs = link_costs(inst.topology(), inst.models());
        let of_plan = of_planning(&inst).unwrap();
        let sets = neighbor_sets(&of_plan, &costs);
        let combos = (0..inst.m())
            .map(|i| enumerate_combinations(&inst, i, &sets, &of_plan, &costs).unwrap())
            .collect();
        build_planning_graph(combos, sets, costs).unwrap()
    }

    fn selection_cost(graph: &PlanningGraph, selection: &[usize]) -> Money {
        selection
            .iter()
            .enumerate()
            .map(|(s, &c)| {
                graph.vertex_forward_cost(VertexId {
                    station: s,
                    combo: c,
                })
            })
            .sum()
    }

    /// Exhaustive reference: try every one-per-station selection.
    fn brute_force(graph: &PlanningGraph) -> (Money, Vec<usize>) {
        let m = graph.station_count();
        let sizes: Vec<usize> = (0..m).map(|s| graph.combinations(s).len()).collect();
        let mut best: Option<(Money, Vec<usize>)> = None;
        let mut current = vec![0usize; m];
        loop {
            let consistent = (0..m).all(|s| {
                (0..s).all(|t| {
                    graph.are_adjacent(
                        VertexId {
                            station: t,
                            combo: current[t],
                        },
                        VertexId {
                            station: s,
                            combo: current[s],
                        },
                    )
                })
            });
            if consistent {
                let cost = selection_cost(graph, &current);
                if best.as_ref().is_none_or(|(b, _)| cost < *b) {
                    best = Some((cost, current.clone()));
                }
            }
            // Odometer increment.
            let mut pos = m;
            while pos > 0 {
                pos -= 1;
                current[pos] += 1;
                if current[pos] < sizes[pos] {
                    break;
                }
                current[pos] = 0;
                if pos == 0 {
                    return best.expect("fiber selection always exists");
                }
            }
        }
    }

    #[test]
    fn short_pair_prefers_fiber() {
        // 1 km: fiber at 13,500 beats hybrid at 20,000.
        let graph = graph_for(&[(0.0, 0.0), (1_000.0, 0.0)], 1);
        let selection = max_weight_clique(&graph).unwrap();
        let states: Vec<_> = selection
            .iter()
            .enumerate()
            .map(|(s, &c)| graph.combinations(s)[c].decision_for(1 - s))
            .collect();
        assert_eq!(states, vec![crate::model::plan::LinkChoice::Of; 2]);
        assert_eq!(
            selection_cost(&graph, &selection),
            Money::from_dollars(13_500.0)
        );
    }

    #[test]
    fn long_pair_prefers_hybrid() {
        // 2 km: fiber at 27,000 loses to hybrid at 20,000, and a 2 km
        // hybrid still meets reliability and rate.
        let graph = graph_for(&[(0.0, 0.0), (2_000.0, 0.0)], 1);
        let selection = max_weight_clique(&graph).unwrap();
        let states: Vec<_> = selection
            .iter()
            .enumerate()
            .map(|(s, &c)| graph.combinations(s)[c].decision_for(1 - s))
            .collect();
        assert_eq!(states, vec![crate::model::plan::LinkChoice::Hybrid; 2]);
        assert_eq!(
            selection_cost(&graph, &selection),
            Money::from_dollars(20_000.0)
        );
    }

    #[test]
    fn matches_exhaustive_enumeration_on_small_graphs() {
        let layouts: Vec<Vec<(f64, f64)>> = vec![
            vec![(0.0, 0.0), (1_700.0, 0.0), (800.0, 1_400.0)],
            vec![
                (0.0, 0.0),
                (2_400.0, 300.0),
                (500.0, 1_900.0),
                (2_900.0, 2_600.0),
            ],
            vec![
                (250.0, 4_100.0),
                (1_300.0, 800.0),
                (3_900.0, 2_200.0),
                (4_700.0, 4_600.0),
            ],
        ];
        for coords in layouts {
            for k in 1..coords.len().min(3) {
                let graph = graph_for(&coords, k);
                let selection = max_weight_clique(&graph).unwrap();
                let (best_cost, _) = brute_force(&graph);
                assert_eq!(
                    selection_cost(&graph, &selection),
                    best_cost,
                    "solver must match exhaustive optimum for {coords:?}, K={k}"
                );
            }
        }
    }

    #[test]
    fn ties_keep_the_fiber_seed() {
        // Fiber price exactly equal to hybrid price: 20,000 / 13.5 m.
        let d = 20_000.0 / 13.5;
        let stations = vec![
            BaseStation {
                id: 0,
                x_m: 0.0,
                y_m: 0.0,
            },
            BaseStation {
                id: 1,
                x_m: d,
                y_m: 0.0,
            },
        ];
        let inst = ProblemInstance::new(
            Topology::new(stations).unwrap(),
            1,
            0.95,
            1.0,
            LinkModels::default(),
        )
        .unwrap();
        let costs = link_costs(inst.topology(), inst.models());
        let of_plan = of_planning(&inst).unwrap();
        let sets = neighbor_sets(&of_plan, &costs);
        let combos = (0..2)
            .map(|i| enumerate_combinations(&inst, i, &sets, &of_plan, &costs).unwrap())
            .collect();
        let graph = build_planning_graph(combos, sets, costs).unwrap();
        let selection = max_weight_clique(&graph).unwrap();
        // Hybrid ties fiber at this distance; the incumbent seeded from
        // the fiber planning must survive the tie.
        let state = graph.combinations(0)[selection[0]].decision_for(1);
        assert_eq!(state, crate::model::plan::LinkChoice::Of);
    }
}

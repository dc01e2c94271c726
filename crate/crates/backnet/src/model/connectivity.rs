//! Link-disjoint path counting via unit-capacity maximum flow.
//!
//! The number of pairwise link-disjoint paths between two stations equals
//! the maximum flow between them when every deployed link carries unit
//! capacity (Menger's theorem). An undirected link is modeled as a pair of
//! opposing unit-capacity arcs; sending flow one way cancels against the
//! reverse arc, so each undirected link still contributes at most one
//! disjoint path.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::model::plan::Plan;
use crate::model::topology::index_pairs;

/// Residual arc capacities for one plan, row-major `M x M`.
struct UnitFlowNetwork {
    m: usize,
    residual: Vec<u32>,
}

impl UnitFlowNetwork {
    fn from_plan(plan: &Plan) -> Self {
        let m = plan.len();
        let mut residual = vec![0u32; m * m];
        for (i, j) in index_pairs(m) {
            if plan.has_edge(i, j) {
                residual[i * m + j] = 1;
                residual[j * m + i] = 1;
            }
        }
        UnitFlowNetwork { m, residual }
    }

    /// Edmonds-Karp: repeatedly augment along a shortest residual path.
    /// With unit capacities each augmentation adds exactly one unit, so the
    /// returned flow value is the number of link-disjoint paths.
    fn max_flow(&mut self, source: usize, sink: usize) -> usize {
        let mut flow = 0;
        let mut parent = vec![usize::MAX; self.m];
        loop {
            parent.fill(usize::MAX);
            parent[source] = source;
            let mut queue = VecDeque::from([source]);
            'bfs: while let Some(u) = queue.pop_front() {
                let arcs = &self.residual[u * self.m..(u + 1) * self.m];
                for (v, label) in parent.iter_mut().enumerate() {
                    if *label == usize::MAX && arcs[v] > 0 {
                        *label = u;
                        if v == sink {
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
            }
            if parent[sink] == usize::MAX {
                return flow;
            }
            let mut v = sink;
            while v != source {
                let u = parent[v];
                self.residual[u * self.m + v] -= 1;
                self.residual[v * self.m + u] += 1;
                v = u;
            }
            flow += 1;
        }
    }
}

/// Maximum number of pairwise link-disjoint paths between stations `i` and
/// `j` under the given plan.
pub fn path_diversity(plan: &Plan, i: usize, j: usize) -> Result<usize> {
    let m = plan.len();
    if i >= m || j >= m {
        return Err(Error::InvalidQuery(format!(
            "station pair ({i}, {j}) out of range for {m} stations"
        )));
    }
    if i == j {
        return Err(Error::InvalidQuery(format!(
            "path diversity of station {i} with itself is undefined"
        )));
    }
    Ok(UnitFlowNetwork::from_plan(plan).max_flow(i, j))
}

/// Smallest path diversity over all station pairs: the plan keeps the
/// network connected under any `min_path_diversity(plan) - 1` link failures.
///
/// Returns 0 for plans spanning fewer than two stations, which have no pair
/// to separate.
pub fn min_path_diversity(plan: &Plan) -> usize {
    let m = plan.len();
    if m < 2 {
        return 0;
    }
    // Any global bottleneck separates station 0 from some other station, so
    // the minimum over pairs anchored at station 0 already equals the
    // minimum over all pairs; the remaining pairs cannot be smaller.
    let base = UnitFlowNetwork::from_plan(plan);
    let mut best = usize::MAX;
    for v in 1..m {
        let mut network = UnitFlowNetwork {
            m,
            residual: base.residual.clone(),
        };
        best = best.min(network.max_flow(0, v));
        if best == 0 {
            return 0;
        }
    }
    best
}

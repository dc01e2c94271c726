//! Helpers shared by the integration test targets: an independent
//! reference implementation of link-disjoint path counting, seeded random
//! graph and instance generation, and small constructors.
#![allow(dead_code)]

use backnet::{BaseStation, LinkKind, LinkModels, Plan, ProblemInstance, Topology};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// Maximum number of pairwise link-disjoint `s`–`t` paths, computed by
/// exhaustive path packing: enumerate every simple path, then search over
/// which paths to keep, memoized on the set of still-available links. This
/// shares no machinery with the flow-based implementation under test.
pub fn max_disjoint_paths(n: usize, edges: &[(usize, usize)], s: usize, t: usize) -> usize {
    assert!(edges.len() <= 16, "reference oracle is capped at 16 links");
    assert!(s != t && s < n && t < n);
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (index, &(a, b)) in edges.iter().enumerate() {
        adjacency[a].push((b, index));
        adjacency[b].push((a, index));
    }

    fn collect_paths(
        at: usize,
        target: usize,
        adjacency: &[Vec<(usize, usize)>],
        visited: &mut Vec<bool>,
        used_links: u16,
        paths: &mut Vec<u16>,
    ) {
        if at == target {
            paths.push(used_links);
            return;
        }
        visited[at] = true;
        for &(next, link) in &adjacency[at] {
            if !visited[next] {
                collect_paths(
                    next,
                    target,
                    adjacency,
                    visited,
                    used_links | 1 << link,
                    paths,
                );
            }
        }
        visited[at] = false;
    }

    let mut paths = Vec::new();
    collect_paths(s, t, &adjacency, &mut vec![false; n], 0, &mut paths);

    fn best_packing(available: u16, paths: &[u16], memo: &mut HashMap<u16, usize>) -> usize {
        if let Some(&known) = memo.get(&available) {
            return known;
        }
        let mut best = 0;
        for &path in paths {
            if path & available == path {
                best = best.max(1 + best_packing(available & !path, paths, memo));
            }
        }
        memo.insert(available, best);
        best
    }

    let full = if edges.is_empty() {
        0
    } else {
        (1u32 << edges.len()) as u16 - 1
    };
    best_packing(full, &paths, &mut HashMap::new())
}

/// Builds a fiber-only plan over the given undirected links.
pub fn plan_from_edges(n: usize, edges: &[(usize, usize)]) -> Plan {
    let mut plan = Plan::empty(n);
    for &(i, j) in edges {
        plan.add_link(i, j, LinkKind::Of).unwrap();
    }
    plan
}

/// Draws a random graph with `2..=6` nodes and at most 9 links.
pub fn random_small_graph(rng: &mut ChaCha8Rng) -> (usize, Vec<(usize, usize)>) {
    let n = rng.random_range(2..=6usize);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let count = rng.random_range(0..=pairs.len().min(9));
    let mut edges: Vec<(usize, usize)> = sample(rng, pairs.len(), count)
        .into_iter()
        .map(|index| pairs[index])
        .collect();
    edges.sort_unstable();
    (n, edges)
}

/// Builds an instance from explicit positions with the default link models
/// and constraint parameters.
pub fn instance_from_positions(
    positions: &[(f64, f64)],
    k: usize,
    alpha: f64,
    d_t: f64,
) -> ProblemInstance {
    let stations = positions
        .iter()
        .enumerate()
        .map(|(id, &(x_m, y_m))| BaseStation { id, x_m, y_m })
        .collect();
    ProblemInstance::new(
        Topology::new(stations).unwrap(),
        k,
        alpha,
        d_t,
        LinkModels::default(),
    )
    .unwrap()
}

/// Draws one uniform instance in a `side`-sized square with stations at
/// least one meter apart, default prices and constraint parameters.
pub fn random_instance(rng: &mut ChaCha8Rng, m: usize, k: usize, side: f64) -> ProblemInstance {
    loop {
        let positions: Vec<(f64, f64)> = (0..m)
            .map(|_| (rng.random::<f64>() * side, rng.random::<f64>() * side))
            .collect();
        let separated = positions.iter().enumerate().all(|(i, a)| {
            positions[..i]
                .iter()
                .all(|b| (a.0 - b.0).hypot(a.1 - b.1) >= 1.0)
        });
        if separated {
            return instance_from_positions(&positions, k, 0.95, 1.0);
        }
    }
}

/// Seeded generator for a named test, so every test draws an independent,
/// reproducible stream.
pub fn test_rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xBAC4_0000 ^ salt)
}

#![allow(dead_code)]

use clmat::topology::{random_topology, GraphMode, NetworkGraph, RandomTopology};
use clmat::tree_builder::oracle_distances;
use clmat::TieRule;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Four nodes A:5 B:4 C:3 D:6, edges A-B 2, B-C 1, A-C 4, C-D 2, B-D 5.
pub fn f4() -> NetworkGraph {
    let mut g = NetworkGraph::new(GraphMode::Undirected);
    for (id, e) in [("A", 5.0), ("B", 4.0), ("C", 3.0), ("D", 6.0)] {
        g.add_vertex(id, e).unwrap();
    }
    for (u, v, d) in [("A", "B", 2.0), ("B", "C", 1.0), ("A", "C", 4.0), ("C", "D", 2.0), ("B", "D", 5.0)] {
        g.add_edge(u, v, d).unwrap();
    }
    g
}

/// Connected undirected graph on 1..=max_n nodes: a random spanning tree plus
/// extra random edges. Integer weights in 1..=20, integer energies in 1..=9.
pub fn random_connected(rng: &mut ChaCha8Rng, max_n: usize) -> NetworkGraph {
    let n = rng.gen_range(1..=max_n);
    let mut g = NetworkGraph::new(GraphMode::Undirected);
    for i in 0..n {
        g.add_vertex(&format!("v{i}"), rng.gen_range(1..=9) as f64).unwrap();
    }
    for i in 1..n {
        let p = rng.gen_range(0..i);
        g.add_edge_by_index(p, i, rng.gen_range(1..=20) as f64).unwrap();
    }
    let extra = if n > 1 { rng.gen_range(0..=n * (n - 1) / 2) } else { 0 };
    for _ in 0..extra {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            g.add_edge_by_index(a, b, rng.gen_range(1..=20) as f64).unwrap();
        }
    }
    g
}

/// Connected random geometric topology of `n` nodes; seeds are tried in
/// sequence from `seed` until one is connected.
pub fn connected_geometric(n: usize, seed: u64) -> NetworkGraph {
    let mut s = seed;
    loop {
        let p = RandomTopology { nodes: n, side: 100.0, range: 40.0, energy_lo: 0.5, energy_hi: 1.0, seed: s };
        let g = random_topology(&p).unwrap();
        if oracle_distances(&g, 0).iter().all(|d| d.is_finite()) {
            return g;
        }
        s = s.wrapping_add(1_000_003);
    }
}

/// Hop depth of the shortest-path tree that a lowest-index-first Dijkstra
/// with strict relaxation produces, reconstructed from relaxation distances:
/// nodes finalize in (distance, index) order and each keeps the first
/// finalized predecessor that realizes its distance.
pub fn oracle_depth(g: &NetworkGraph, root: usize) -> usize {
    let dist = oracle_distances(g, root);
    let mut order: Vec<usize> = (0..g.node_count()).filter(|&v| dist[v].is_finite()).collect();
    order.sort_by(|&a, &b| dist[a].total_cmp(&dist[b]).then(a.cmp(&b)));
    let mut hops = vec![usize::MAX; g.node_count()];
    hops[root] = 0;
    for (k, &w) in order.iter().enumerate() {
        if w == root {
            continue;
        }
        let p = order[..k]
            .iter()
            .copied()
            .find(|&v| dist[v] + g.distance(v, w) == dist[w])
            .expect("some finalized predecessor realizes the distance");
        hops[w] = hops[p] + 1;
    }
    order.iter().map(|&v| hops[v]).max().unwrap_or(0)
}

/// Exhaustive aggregator choice: relaxation distances per root, then a direct
/// scan for the best key.
pub fn oracle_select(g: &NetworkGraph, tie: TieRule) -> Option<usize> {
    let n = g.node_count();
    let mut best: Option<(f64, usize, usize)> = None;
    for r in 0..n {
        let d = oracle_distances(g, r);
        if d.iter().any(|x| x.is_infinite()) {
            continue;
        }
        let total: f64 = d.iter().sum();
        let depth = oracle_depth(g, r);
        let better = match best {
            None => true,
            Some((bt, bd, _)) => match tie {
                TieRule::PaperOrder => total < bt,
                TieRule::MinDepth => total < bt || (total == bt && depth <= bd),
            },
        };
        if better {
            best = Some((total, depth, r));
        }
    }
    best.map(|b| b.2)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

//! Per-root shortest-path aggregation trees.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::metrics::{score_tree, ScoringConfig, TreeMetrics};
use crate::topology::NetworkGraph;

/// A rooted shortest-path tree over the nodes of one graph.
///
/// Vectors are indexed by graph node index. Nodes the root cannot reach have
/// no parent, an infinite distance and no hop count.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregationTree {
    root: usize,
    parent: Vec<Option<usize>>,
    dist: Vec<f64>,
    hops: Vec<Option<usize>>,
}

impl AggregationTree {
    /// Builds a tree from explicit parent pointers and root distances.
    ///
    /// `dist` entries of unspanned nodes must be infinite. Fails when a
    /// parent chain does not end at `root`.
    pub fn from_parts(root: usize, parent: Vec<Option<usize>>, dist: Vec<f64>) -> Result<Self> {
        let n = parent.len();
        if dist.len() != n || root >= n {
            return Err(Error::MalformedTree("length mismatch".into()));
        }
        if parent[root].is_some() || dist[root] != 0.0 {
            return Err(Error::MalformedTree("root must have no parent and distance 0".into()));
        }
        let mut hops = vec![None; n];
        hops[root] = Some(0);
        for start in 0..n {
            if hops[start].is_some() {
                continue;
            }
            if parent[start].is_none() {
                if dist[start].is_finite() {
                    return Err(Error::MalformedTree(format!("node {start} has a distance but no parent")));
                }
                continue;
            }
            // walk up until a node with known hops, then unwind
            let mut chain = vec![start];
            let mut cur = start;
            let base = loop {
                match parent[cur] {
                    Some(p) if p >= n => return Err(Error::MalformedTree(format!("parent {p} out of range"))),
                    Some(p) => {
                        if let Some(h) = hops[p] {
                            break h;
                        }
                        if chain.len() > n {
                            return Err(Error::MalformedTree("parent cycle".into()));
                        }
                        chain.push(p);
                        cur = p;
                    }
                    None => return Err(Error::MalformedTree(format!("node {cur} does not reach the root"))),
                }
            };
            for (k, &v) in chain.iter().rev().enumerate() {
                hops[v] = Some(base + 1 + k);
            }
        }
        Ok(AggregationTree { root, parent, dist, hops })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Number of node slots (the node count of the graph the tree was built on).
    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn is_spanned(&self, v: usize) -> bool {
        self.hops[v].is_some()
    }

    pub fn spanned(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.node_count()).filter(|&v| self.is_spanned(v))
    }

    pub fn spanned_count(&self) -> usize {
        self.hops.iter().filter(|h| h.is_some()).count()
    }

    pub fn spans_all(&self) -> bool {
        self.hops.iter().all(Option::is_some)
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// Shortest distance from the root, infinite when unspanned.
    pub fn dist(&self, v: usize) -> f64 {
        self.dist[v]
    }

    pub fn distances(&self) -> &[f64] {
        &self.dist
    }

    pub fn hops(&self, v: usize) -> Option<usize> {
        self.hops[v]
    }

    /// Maximum hop count from any spanned node to the root.
    pub fn depth(&self) -> usize {
        self.hops.iter().flatten().copied().max().unwrap_or(0)
    }

    /// `(parent, child)` pairs ordered by child index.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parent.iter().enumerate().filter_map(|(v, p)| p.map(|p| (p, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.parent.iter().filter(|p| p.is_some()).count()
    }

    pub fn children_counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.node_count()];
        for (p, _) in self.edges() {
            c[p] += 1;
        }
        c
    }

    /// Nodes from `v` up to and including the root.
    pub fn path_to_root(&self, v: usize) -> Option<Vec<usize>> {
        if !self.is_spanned(v) {
            return None;
        }
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        Some(path)
    }

    /// Re-expresses a tree built on a subgraph in the index space of the
    /// parent graph. `to_orig[i]` is the parent-graph index of subgraph node `i`.
    pub fn remap(&self, to_orig: &[usize], node_count: usize) -> AggregationTree {
        let mut parent = vec![None; node_count];
        let mut dist = vec![f64::INFINITY; node_count];
        let mut hops = vec![None; node_count];
        for (i, &o) in to_orig.iter().enumerate() {
            parent[o] = self.parent[i].map(|p| to_orig[p]);
            dist[o] = self.dist[i];
            hops[o] = self.hops[i];
        }
        AggregationTree { root: to_orig[self.root], parent, dist, hops }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Frontier {
    dist: f64,
    node: usize,
}

impl Eq for Frontier {}

impl Ord for Frontier {
    // reversed: BinaryHeap is a max-heap, we want the smallest (dist, index)
    fn cmp(&self, other: &Self) -> Ordering {
        other.dist.total_cmp(&self.dist).then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Frontier {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dijkstra from `root`.
///
/// Among equally distant unfinalized nodes the lowest index is finalized
/// first, and a node's parent is only replaced on a strict improvement.
pub fn shortest_path_tree(graph: &NetworkGraph, root: &str) -> Result<AggregationTree> {
    let r = graph.require_index(root)?;
    Ok(shortest_path_tree_from(graph, r))
}

pub fn shortest_path_tree_from(graph: &NetworkGraph, root: usize) -> AggregationTree {
    let n = graph.node_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut parent = vec![None; n];
    let mut hops = vec![None; n];
    let mut done = vec![false; n];
    dist[root] = 0.0;
    hops[root] = Some(0);
    let mut heap = BinaryHeap::new();
    heap.push(Frontier { dist: 0.0, node: root });
    while let Some(Frontier { dist: d, node: v }) = heap.pop() {
        if done[v] || d > dist[v] {
            continue;
        }
        done[v] = true;
        for (w, len) in graph.neighbors(v) {
            if done[w] {
                continue;
            }
            let cand = d + len;
            if cand < dist[w] {
                dist[w] = cand;
                parent[w] = Some(v);
                hops[w] = Some(hops[v].unwrap() + 1);
                heap.push(Frontier { dist: cand, node: w });
            }
        }
    }
    AggregationTree { root, parent, dist, hops }
}

pub fn tree_depth(tree: &AggregationTree) -> usize {
    tree.depth()
}

/// Shortest distances by repeated edge relaxation until nothing changes.
///
/// Structurally independent of [`shortest_path_tree`]; kept as a test oracle.
/// Unreachable nodes get an infinite distance.
pub fn oracle_shortest_paths(graph: &NetworkGraph, root: &str) -> Result<Vec<f64>> {
    let r = graph.require_index(root)?;
    Ok(oracle_distances(graph, r))
}

pub fn oracle_distances(graph: &NetworkGraph, root: usize) -> Vec<f64> {
    let n = graph.node_count();
    let directed = graph.mode() == crate::topology::GraphMode::Directed;
    let mut dist = vec![f64::INFINITY; n];
    dist[root] = 0.0;
    for _ in 0..n {
        let mut changed = false;
        for l in graph.links() {
            let mut relax = |a: usize, b: usize| {
                if dist[a] + l.distance < dist[b] {
                    dist[b] = dist[a] + l.distance;
                    changed = true;
                }
            };
            relax(l.u, l.v);
            if !directed {
                relax(l.v, l.u);
            }
        }
        if !changed {
            break;
        }
    }
    dist
}

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub root: usize,
    pub root_id: String,
    pub tree: AggregationTree,
    pub metrics: TreeMetrics,
    /// Whether the tree reaches every node of the graph.
    pub spanning: bool,
    pub root_energy: f64,
}

/// One scored candidate tree per graph node, in node insertion order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CandidateSet {
    pub entries: Vec<Candidate>,
}

impl CandidateSet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Candidate> {
        self.entries.iter()
    }
}

/// Grows and scores the shortest-path tree of every node. Roots are
/// processed in parallel; output order is node insertion order.
pub fn build_all_candidates(graph: &NetworkGraph, scoring: &ScoringConfig) -> Result<CandidateSet> {
    if graph.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let entries = (0..graph.node_count())
        .into_par_iter()
        .map(|r| {
            let tree = shortest_path_tree_from(graph, r);
            let metrics = score_tree(&tree, graph, scoring)?;
            Ok(Candidate {
                root: r,
                root_id: graph.id(r).to_string(),
                spanning: tree.spans_all(),
                root_energy: graph.energy(r),
                tree,
                metrics,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CandidateSet { entries })
}

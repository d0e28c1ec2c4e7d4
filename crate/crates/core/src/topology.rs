//! Sensor network graph: nodes carry battery energy, links carry distance.
//!
//! The graph has distance-matrix semantics: the distance from a node to
//! itself is zero and an absent link is an infinite distance. Link energy is
//! the smaller endpoint energy. It is cached when the link is inserted, but
//! consumers should call [`NetworkGraph::link_energy`], which always
//! recomputes it from the current node energies.

use std::collections::{BTreeMap, HashMap};
use std::io::Read;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphMode {
    /// Every link is usable in both directions with the same distance.
    #[default]
    Undirected,
    /// Links are one-way, from `u` to `v`.
    Directed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeRecord {
    pub id: String,
    /// Battery energy in Joules.
    pub energy: f64,
    pub position: Option<(f64, f64)>,
}

/// A stored link between two node indices.
///
/// In undirected mode `u < v` always holds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkRecord {
    pub u: usize,
    pub v: usize,
    pub distance: f64,
    /// Endpoint-minimum energy at insertion time.
    pub link_energy: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct NetworkGraph {
    mode: GraphMode,
    nodes: Vec<NodeRecord>,
    index: HashMap<String, usize>,
    /// Outgoing neighbours per node, sorted by index.
    adjacency: Vec<BTreeMap<usize, f64>>,
    links: BTreeMap<(usize, usize), LinkRecord>,
}

fn check_energy(id: &str, energy: f64) -> Result<()> {
    if energy.is_finite() && energy > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidEnergy { id: id.to_string(), energy })
    }
}

impl NetworkGraph {
    pub fn new(mode: GraphMode) -> Self {
        NetworkGraph { mode, ..Default::default() }
    }

    pub fn mode(&self) -> GraphMode {
        self.mode
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[NodeRecord] {
        &self.nodes
    }

    pub fn node(&self, index: usize) -> &NodeRecord {
        &self.nodes[index]
    }

    pub fn id(&self, index: usize) -> &str {
        &self.nodes[index].id
    }

    pub fn energy(&self, index: usize) -> f64 {
        self.nodes[index].energy
    }

    /// Position of `name` in insertion order.
    pub fn get_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub(crate) fn require_index(&self, name: &str) -> Result<usize> {
        self.get_index(name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn add_vertex(&mut self, name: &str, energy: f64) -> Result<usize> {
        self.insert_vertex(name, energy, None)
    }

    pub fn add_vertex_at(&mut self, name: &str, energy: f64, position: (f64, f64)) -> Result<usize> {
        self.insert_vertex(name, energy, Some(position))
    }

    fn insert_vertex(&mut self, name: &str, energy: f64, position: Option<(f64, f64)>) -> Result<usize> {
        if name.is_empty() {
            return Err(Error::EmptyName);
        }
        if self.index.contains_key(name) {
            return Err(Error::DuplicateVertex(name.to_string()));
        }
        check_energy(name, energy)?;
        let idx = self.nodes.len();
        self.nodes.push(NodeRecord { id: name.to_string(), energy, position });
        self.index.insert(name.to_string(), idx);
        self.adjacency.push(BTreeMap::new());
        Ok(idx)
    }

    /// Adds (or overwrites) the link `u -> v`. In undirected mode the reverse
    /// direction is written as well.
    pub fn add_edge(&mut self, u: &str, v: &str, distance: f64) -> Result<()> {
        let ui = self.require_index(u)?;
        let vi = self.require_index(v)?;
        self.add_edge_by_index(ui, vi, distance)
    }

    pub fn add_edge_by_index(&mut self, u: usize, v: usize, distance: f64) -> Result<()> {
        if u == v {
            return Err(Error::SelfLoop(self.id(u).to_string()));
        }
        if !(distance.is_finite() && distance > 0.0) {
            return Err(Error::NonPositiveDistance {
                u: self.id(u).to_string(),
                v: self.id(v).to_string(),
                distance,
            });
        }
        let link_energy = self.energy(u).min(self.energy(v));
        let key = match self.mode {
            GraphMode::Undirected => (u.min(v), u.max(v)),
            GraphMode::Directed => (u, v),
        };
        self.links.insert(key, LinkRecord { u: key.0, v: key.1, distance, link_energy });
        self.adjacency[u].insert(v, distance);
        if self.mode == GraphMode::Undirected {
            self.adjacency[v].insert(u, distance);
        }
        Ok(())
    }

    /// True iff at least one finite, nonzero off-diagonal distance exists.
    pub fn edge_exists(&self) -> bool {
        !self.links.is_empty()
    }

    pub fn link_count(&self) -> usize {
        self.links.len()
    }

    /// Stored links ordered by index pair.
    pub fn links(&self) -> impl Iterator<Item = &LinkRecord> {
        self.links.values()
    }

    /// Matrix-semantics distance: 0 on the diagonal, infinity when absent.
    pub fn distance(&self, u: usize, v: usize) -> f64 {
        if u == v {
            0.0
        } else {
            self.adjacency[u].get(&v).copied().unwrap_or(f64::INFINITY)
        }
    }

    /// Outgoing `(neighbour, distance)` pairs in index order.
    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.adjacency[u].iter().map(|(&v, &d)| (v, d))
    }

    /// Endpoint-minimum energy computed from current node energies, or `None`
    /// when the link does not exist.
    pub fn link_energy(&self, u: usize, v: usize) -> Option<f64> {
        if u == v || !self.adjacency[u].contains_key(&v) {
            return None;
        }
        Some(self.energy(u).min(self.energy(v)))
    }

    /// Copy of the graph with every node energy replaced.
    pub fn with_energies(&self, energies: &[f64]) -> Result<NetworkGraph> {
        if energies.len() != self.nodes.len() {
            return Err(Error::Config(format!(
                "expected {} energies, got {}",
                self.nodes.len(),
                energies.len()
            )));
        }
        let mut g = self.clone();
        for (node, &e) in g.nodes.iter_mut().zip(energies) {
            check_energy(&node.id, e)?;
            node.energy = e;
        }
        for link in g.links.values_mut() {
            link.link_energy = energies[link.u].min(energies[link.v]);
        }
        Ok(g)
    }

    /// Copy of the graph with every link distance multiplied by `factor`.
    pub fn scaled_distances(&self, factor: f64) -> Result<NetworkGraph> {
        let mut g = NetworkGraph::new(self.mode);
        for n in &self.nodes {
            g.insert_vertex(&n.id, n.energy, n.position)?;
        }
        for l in self.links.values() {
            g.add_edge_by_index(l.u, l.v, l.distance * factor)?;
        }
        Ok(g)
    }

    /// Subgraph induced by the nodes with `keep[i]`, using `energies[i]` as
    /// their energy. Returns the subgraph and, for each subgraph index, the
    /// index it had in `self`.
    pub fn induced(&self, keep: &[bool], energies: &[f64]) -> Result<(NetworkGraph, Vec<usize>)> {
        let mut g = NetworkGraph::new(self.mode);
        let mut to_sub = vec![usize::MAX; self.nodes.len()];
        let mut to_orig = Vec::new();
        for (i, n) in self.nodes.iter().enumerate() {
            if keep[i] {
                to_sub[i] = g.insert_vertex(&n.id, energies[i], n.position)?;
                to_orig.push(i);
            }
        }
        for l in self.links.values() {
            if keep[l.u] && keep[l.v] {
                g.add_edge_by_index(to_sub[l.u], to_sub[l.v], l.distance)?;
            }
        }
        Ok((g, to_orig))
    }

    pub fn total_energy(&self) -> f64 {
        self.nodes.iter().map(|n| n.energy).sum()
    }

    pub fn to_document(&self) -> TopologyDocument {
        let nodes = self
            .nodes
            .iter()
            .map(|n| NodeEntry {
                id: n.id.clone(),
                energy: n.energy,
                x: n.position.map(|p| p.0),
                y: n.position.map(|p| p.1),
            })
            .collect();
        let mut edges: Vec<EdgeEntry> = self
            .links
            .values()
            .map(|l| EdgeEntry { u: self.id(l.u).to_string(), v: self.id(l.v).to_string(), distance: l.distance })
            .collect();
        edges.sort_by(|a, b| (&a.u, &a.v).cmp(&(&b.u, &b.v)));
        TopologyDocument { mode: self.mode, nodes, edges }
    }

    /// Canonical JSON export: nodes in insertion order, edges sorted by `(u, v)`.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_document()).expect("topology serializes");
        s.push('\n');
        s
    }

    pub fn from_document(doc: &TopologyDocument) -> Result<NetworkGraph> {
        let mut g = NetworkGraph::new(doc.mode);
        for n in &doc.nodes {
            let pos = match (n.x, n.y) {
                (Some(x), Some(y)) => Some((x, y)),
                (None, None) => None,
                _ => return Err(Error::Semantic(format!("node `{}` has only one coordinate", n.id))),
            };
            g.insert_vertex(&n.id, n.energy, pos).map_err(semantic)?;
        }
        for e in &doc.edges {
            g.add_edge(&e.u, &e.v, e.distance).map_err(semantic)?;
        }
        Ok(g)
    }

    pub fn from_json(text: &str) -> Result<NetworkGraph> {
        let doc: TopologyDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_document(&doc)
    }

    pub fn from_json_bytes(bytes: &[u8]) -> Result<NetworkGraph> {
        let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(text)
    }

    /// Imports an `u,v,distance` edge list plus an `id,energy[,x,y]` node table.
    pub fn from_csv<E: Read, N: Read>(edges: E, nodes: N, mode: GraphMode) -> Result<NetworkGraph> {
        let mut g = NetworkGraph::new(mode);
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).flexible(true).from_reader(nodes);
        expect_header(&mut rdr, &["id", "energy"])?;
        for rec in rdr.records() {
            let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
            let id = rec.get(0).unwrap_or("");
            let energy = parse_num(rec.get(1), "energy")?;
            let pos = match (rec.get(2), rec.get(3)) {
                (Some(x), Some(y)) if !x.is_empty() && !y.is_empty() => {
                    Some((parse_num(Some(x), "x")?, parse_num(Some(y), "y")?))
                }
                _ => None,
            };
            g.insert_vertex(id, energy, pos).map_err(semantic)?;
        }
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(edges);
        expect_header(&mut rdr, &["u", "v", "distance"])?;
        for rec in rdr.records() {
            let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
            let d = parse_num(rec.get(2), "distance")?;
            g.add_edge(rec.get(0).unwrap_or(""), rec.get(1).unwrap_or(""), d).map_err(semantic)?;
        }
        Ok(g)
    }
}

fn semantic(e: Error) -> Error {
    Error::Semantic(e.to_string())
}

fn expect_header<R: Read>(rdr: &mut csv::Reader<R>, want: &[&str]) -> Result<()> {
    let header = rdr.headers().map_err(|e| Error::Parse(e.to_string()))?;
    let ok = want.iter().enumerate().all(|(i, w)| header.get(i) == Some(*w));
    if ok {
        Ok(())
    } else {
        Err(Error::Parse(format!("expected CSV header starting with `{}`", want.join(","))))
    }
}

fn parse_num(field: Option<&str>, what: &str) -> Result<f64> {
    let s = field.ok_or_else(|| Error::Parse(format!("missing {what} column")))?;
    s.parse().map_err(|_| Error::Parse(format!("bad {what} value `{s}`")))
}

/// Serialized form of a topology.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyDocument {
    #[serde(default)]
    pub mode: GraphMode,
    pub nodes: Vec<NodeEntry>,
    #[serde(default)]
    pub edges: Vec<EdgeEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeEntry {
    pub id: String,
    pub energy: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub u: String,
    pub v: String,
    pub distance: f64,
}

/// Parameters of a random geometric topology.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomTopology {
    pub nodes: usize,
    pub side: f64,
    pub range: f64,
    pub energy_lo: f64,
    pub energy_hi: f64,
    pub seed: u64,
}

impl RandomTopology {
    fn validate(&self) -> Result<()> {
        if self.nodes == 0 {
            return Err(Error::Config("node count must be at least 1".into()));
        }
        if !(self.side > 0.0 && self.side.is_finite()) {
            return Err(Error::Config("side must be positive".into()));
        }
        if !(self.range > 0.0) {
            return Err(Error::Config("range must be positive".into()));
        }
        if !(self.energy_lo > 0.0 && self.energy_lo <= self.energy_hi && self.energy_hi.is_finite()) {
            return Err(Error::Config("energy range must satisfy 0 < lo <= hi".into()));
        }
        Ok(())
    }
}

/// Uniformly places nodes in a `side` x `side` square and links every pair
/// within Euclidean distance `range`. The result may be disconnected.
pub fn random_topology(params: &RandomTopology) -> Result<NetworkGraph> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut g = NetworkGraph::new(GraphMode::Undirected);
    for i in 0..params.nodes {
        let x = rng.gen_range(0.0..params.side);
        let y = rng.gen_range(0.0..params.side);
        let energy = if params.energy_lo < params.energy_hi {
            rng.gen_range(params.energy_lo..=params.energy_hi)
        } else {
            params.energy_lo
        };
        g.add_vertex_at(&format!("n{i}"), energy, (x, y))?;
    }
    for i in 0..params.nodes {
        for j in i + 1..params.nodes {
            let (xi, yi) = g.nodes[i].position.unwrap();
            let (xj, yj) = g.nodes[j].position.unwrap();
            let d = (xi - xj).hypot(yi - yj);
            // coincident points cannot form a positive-length link
            if d <= params.range && d > 0.0 {
                g.add_edge_by_index(i, j, d)?;
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(eu: f64, ev: f64, d: f64) -> NetworkGraph {
        let mut g = NetworkGraph::new(GraphMode::Undirected);
        g.add_vertex("u", eu).unwrap();
        g.add_vertex("v", ev).unwrap();
        g.add_edge("u", "v", d).unwrap();
        g
    }

    #[test]
    fn add_vertex_cases() {
        let mut g = NetworkGraph::new(GraphMode::Undirected);
        assert_eq!(g.add_vertex("A", 5.0), Ok(0));
        assert_eq!(g.node_count(), 1);
        assert_eq!(g.energy(0), 5.0);
        assert_eq!(g.add_vertex("A", 3.0), Err(Error::DuplicateVertex("A".into())));
        assert_eq!(g.add_vertex("B", 4.0), Ok(1));
        assert_eq!(g.node_count(), 2);
        assert!(!g.edge_exists());
        assert!(matches!(g.add_vertex("C", 0.0), Err(Error::InvalidEnergy { .. })));
        assert!(matches!(g.add_vertex("C", -1.0), Err(Error::InvalidEnergy { .. })));
        assert_eq!(g.add_vertex("", 1.0), Err(Error::EmptyName));
    }

    #[test]
    fn add_edge_uses_min_endpoint_energy() {
        let g = pair(5.0, 3.0, 2.0);
        assert_eq!(g.links().next().unwrap().link_energy, 3.0);
        assert_eq!(g.link_energy(0, 1), Some(3.0));
        let g = pair(4.0, 4.0, 1.0);
        assert_eq!(g.links().next().unwrap().link_energy, 4.0);
    }

    #[test]
    fn add_edge_errors() {
        let mut g = pair(1.0, 1.0, 1.0);
        assert_eq!(g.add_edge("u", "Z", 1.0), Err(Error::UnknownVertex("Z".into())));
        assert_eq!(g.add_edge("Z", "u", 1.0), Err(Error::UnknownVertex("Z".into())));
        assert_eq!(g.add_edge("u", "u", 1.0), Err(Error::SelfLoop("u".into())));
        assert!(matches!(g.add_edge("u", "v", 0.0), Err(Error::NonPositiveDistance { .. })));
        assert!(matches!(g.add_edge("u", "v", -2.0), Err(Error::NonPositiveDistance { .. })));
        assert!(matches!(g.add_edge("u", "v", f64::INFINITY), Err(Error::NonPositiveDistance { .. })));
    }

    #[test]
    fn matrix_semantics() {
        let mut g = pair(1.0, 1.0, 2.5);
        g.add_vertex("w", 1.0).unwrap();
        assert_eq!(g.distance(0, 0), 0.0);
        assert_eq!(g.distance(0, 1), 2.5);
        assert_eq!(g.distance(1, 0), 2.5);
        assert_eq!(g.distance(0, 2), f64::INFINITY);
    }

    #[test]
    fn directed_mode_writes_one_side() {
        let mut g = NetworkGraph::new(GraphMode::Directed);
        g.add_vertex("a", 1.0).unwrap();
        g.add_vertex("b", 1.0).unwrap();
        g.add_edge("a", "b", 3.0).unwrap();
        assert_eq!(g.distance(0, 1), 3.0);
        assert_eq!(g.distance(1, 0), f64::INFINITY);
        assert_eq!(g.link_energy(1, 0), None);
    }

    #[test]
    fn undirected_readd_overwrites() {
        let mut g = pair(1.0, 2.0, 3.0);
        g.add_edge("v", "u", 7.0).unwrap();
        assert_eq!(g.link_count(), 1);
        assert_eq!(g.distance(0, 1), 7.0);
        assert_eq!(g.distance(1, 0), 7.0);
    }

    #[test]
    fn edge_exists_cases() {
        let mut g = NetworkGraph::new(GraphMode::Undirected);
        assert!(!g.edge_exists());
        for n in ["a", "b", "c"] {
            g.add_vertex(n, 1.0).unwrap();
        }
        assert!(!g.edge_exists());
        g.add_edge("a", "c", 1.0).unwrap();
        assert!(g.edge_exists());
    }

    #[test]
    fn get_index_cases() {
        let mut g = NetworkGraph::new(GraphMode::Undirected);
        g.add_vertex("A", 1.0).unwrap();
        g.add_vertex("B", 1.0).unwrap();
        assert_eq!(g.get_index("A"), Some(0));
        assert_eq!(g.get_index("B"), Some(1));
        assert_eq!(g.get_index("Q"), None);
    }

    #[test]
    fn link_energy_follows_current_energies() {
        let g = pair(5.0, 3.0, 1.0);
        let g2 = g.with_energies(&[1.0, 3.0]).unwrap();
        assert_eq!(g2.link_energy(0, 1), Some(1.0));
        assert!(g.with_energies(&[1.0, 0.0]).is_err());
    }

    #[test]
    fn random_single_node() {
        let p = RandomTopology { nodes: 1, side: 10.0, range: 100.0, energy_lo: 1.0, energy_hi: 2.0, seed: 3 };
        let g = random_topology(&p).unwrap();
        assert_eq!(g.node_count(), 1);
        assert_eq!(g.link_count(), 0);
    }

    #[test]
    fn random_is_deterministic() {
        let p = RandomTopology { nodes: 30, side: 100.0, range: 30.0, energy_lo: 1.0, energy_hi: 2.0, seed: 42 };
        let a = random_topology(&p).unwrap();
        let b = random_topology(&p).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_json(), b.to_json());
        let c = random_topology(&RandomTopology { seed: 43, ..p }).unwrap();
        assert_ne!(a.to_json(), c.to_json());
    }

    #[test]
    fn random_complete_when_range_covers_diagonal() {
        let side = 10.0;
        let p = RandomTopology { nodes: 3, side, range: side * 2f64.sqrt(), energy_lo: 1.0, energy_hi: 1.0, seed: 9 };
        let g = random_topology(&p).unwrap();
        assert_eq!(g.link_count(), 3);
        for l in g.links() {
            let (a, b) = (g.node(l.u).position.unwrap(), g.node(l.v).position.unwrap());
            assert_eq!(l.distance, (a.0 - b.0).hypot(a.1 - b.1));
        }
        assert!(g.nodes().iter().all(|n| n.energy == 1.0));
    }

    #[test]
    fn random_links_exactly_within_range() {
        let p = RandomTopology { nodes: 40, side: 50.0, range: 12.0, energy_lo: 0.5, energy_hi: 1.5, seed: 7 };
        let g = random_topology(&p).unwrap();
        for i in 0..g.node_count() {
            assert!(g.energy(i) >= 0.5 && g.energy(i) <= 1.5);
            for j in 0..g.node_count() {
                if i == j {
                    continue;
                }
                let (a, b) = (g.node(i).position.unwrap(), g.node(j).position.unwrap());
                let d = (a.0 - b.0).hypot(a.1 - b.1);
                assert_eq!(g.distance(i, j).is_finite(), d <= 12.0);
            }
        }
    }

    #[test]
    fn random_rejects_bad_params() {
        let p = RandomTopology { nodes: 0, side: 1.0, range: 1.0, energy_lo: 1.0, energy_hi: 1.0, seed: 0 };
        assert!(random_topology(&p).is_err());
        assert!(random_topology(&RandomTopology { nodes: 2, ..p }).is_ok());
        assert!(random_topology(&RandomTopology { nodes: 2, energy_lo: 3.0, energy_hi: 2.0, ..p }).is_err());
    }

    #[test]
    fn load_minimal_document() {
        let g = NetworkGraph::from_json(
            r#"{"mode":"undirected","nodes":[{"id":"a","energy":2},{"id":"b","energy":3}],
                "edges":[{"u":"a","v":"b","distance":4}]}"#,
        )
        .unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.distance(1, 0), 4.0);
        assert_eq!(g.link_energy(0, 1), Some(2.0));
    }

    #[test]
    fn load_errors() {
        let bad_ref = r#"{"nodes":[{"id":"a","energy":2}],"edges":[{"u":"a","v":"X","distance":1}]}"#;
        assert!(matches!(NetworkGraph::from_json(bad_ref), Err(Error::Semantic(_))));
        let dup = r#"{"nodes":[{"id":"a","energy":2},{"id":"a","energy":2}]}"#;
        assert!(matches!(NetworkGraph::from_json(dup), Err(Error::Semantic(_))));
        let neg = r#"{"nodes":[{"id":"a","energy":-2}]}"#;
        assert!(matches!(NetworkGraph::from_json(neg), Err(Error::Semantic(_))));
        assert!(matches!(NetworkGraph::from_json("{nodes"), Err(Error::Parse(_))));
        let extra = r#"{"nodes":[{"id":"a","energy":2,"link_energy":3}]}"#;
        assert!(matches!(NetworkGraph::from_json(extra), Err(Error::Parse(_))));
    }

    #[test]
    fn export_sorts_edges() {
        let mut g = NetworkGraph::new(GraphMode::Undirected);
        for n in ["c", "a", "b"] {
            g.add_vertex(n, 1.0).unwrap();
        }
        g.add_edge("c", "b", 1.0).unwrap();
        g.add_edge("b", "a", 2.0).unwrap();
        let doc = g.to_document();
        let ids: Vec<_> = doc.nodes.iter().map(|n| n.id.as_str()).collect();
        assert_eq!(ids, ["c", "a", "b"]);
        let edges: Vec<_> = doc.edges.iter().map(|e| (e.u.as_str(), e.v.as_str())).collect();
        assert_eq!(edges, [("a", "b"), ("c", "b")]);
        assert_eq!(NetworkGraph::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn csv_import() {
        let nodes = "id,energy,x,y\nA,5,0,0\nB,4,1,0\nC,3\n";
        let edges = "u,v,distance\nA,B,2\nB,C,1\n";
        let g = NetworkGraph::from_csv(edges.as_bytes(), nodes.as_bytes(), GraphMode::Undirected).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.node(0).position, Some((0.0, 0.0)));
        assert_eq!(g.node(2).position, None);
        assert_eq!(g.distance(2, 1), 1.0);
        let bad = "u,v,distance\nA,Q,2\n";
        assert!(matches!(
            NetworkGraph::from_csv(bad.as_bytes(), nodes.as_bytes(), GraphMode::Undirected),
            Err(Error::Semantic(_))
        ));
        let bad_header = "from,to,d\nA,B,2\n";
        assert!(matches!(
            NetworkGraph::from_csv(bad_header.as_bytes(), nodes.as_bytes(), GraphMode::Undirected),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn induced_subgraph_drops_incident_links() {
        let mut g = NetworkGraph::new(GraphMode::Undirected);
        for n in ["a", "b", "c"] {
            g.add_vertex(n, 1.0).unwrap();
        }
        g.add_edge("a", "b", 1.0).unwrap();
        g.add_edge("b", "c", 1.0).unwrap();
        let (sub, map) = g.induced(&[true, false, true], &[2.0, 1.0, 3.0]).unwrap();
        assert_eq!(map, vec![0, 2]);
        assert_eq!(sub.node_count(), 2);
        assert!(!sub.edge_exists());
        assert_eq!(sub.energy(1), 3.0);
    }
}

//! Energy, cost and distance scores of an aggregation tree.
//!
//! All functions are pure over a graph and a tree built on that graph. Node
//! energies are always read from the graph, so scoring a tree against a graph
//! carrying residual energies gives residual-aware metrics.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simulator::RadioModel;
use crate::topology::NetworkGraph;
use crate::tree_builder::AggregationTree;

/// Which bottleneck-energy definition a tree is scored with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum EnergyVariant {
    /// Minimum energy over the tree's non-root nodes.
    #[default]
    NodeMin,
    /// Minimum link energy over the tree's edges.
    EdgeMin,
}

/// Edge cost formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum CostVariant {
    /// `e_u / (e_u - T) + e_v / (e_v - T)` with `T` the tree energy;
    /// saturates to infinity on a non-positive denominator.
    #[default]
    Clmat,
    /// `e_uv / R_u + e_vu / R_v`: per-packet transmission energy over
    /// residual energy, in both directions.
    Eq3,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TreeMetrics {
    /// Joules; `None` when the tree has no non-root node.
    pub tree_energy: Option<f64>,
    /// Dimensionless, possibly infinite.
    pub tree_cost: f64,
    pub total_distance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ScoringConfig {
    pub cost: CostVariant,
    pub energy: EnergyVariant,
    /// Supplies per-packet transmission energies for [`CostVariant::Eq3`].
    pub radio: RadioModel,
}

fn require_spanned(tree: &AggregationTree, graph: &NetworkGraph, v: usize) -> Result<()> {
    if v < tree.node_count() && tree.is_spanned(v) {
        Ok(())
    } else {
        Err(Error::NotInTree(graph.id(v).to_string()))
    }
}

/// Minimum node energy on the path from `leaf` to the root, leaf excluded.
pub fn branch_energy(tree: &AggregationTree, graph: &NetworkGraph, leaf: &str) -> Result<f64> {
    let x = graph.require_index(leaf)?;
    require_spanned(tree, graph, x)?;
    if x == tree.root() {
        return Err(Error::LeafIsRoot(leaf.to_string()));
    }
    let path = tree.path_to_root(x).expect("spanned node has a path");
    Ok(path[1..].iter().map(|&i| graph.energy(i)).fold(f64::INFINITY, f64::min))
}

pub fn tree_energy(tree: &AggregationTree, graph: &NetworkGraph, variant: EnergyVariant) -> Result<f64> {
    if tree.edge_count() == 0 {
        return Err(Error::SingletonTree(graph.id(tree.root()).to_string()));
    }
    let e = match variant {
        EnergyVariant::NodeMin => tree
            .spanned()
            .filter(|&v| v != tree.root())
            .map(|v| graph.energy(v))
            .fold(f64::INFINITY, f64::min),
        EnergyVariant::EdgeMin => tree
            .edges()
            .map(|(p, c)| graph.energy(p).min(graph.energy(c)))
            .fold(f64::INFINITY, f64::min),
    };
    Ok(e)
}

/// Per-packet energy-normalized cost of one link, in both directions.
pub fn eq3_edge_cost(tx_uv: f64, tx_vu: f64, residual_u: f64, residual_v: f64) -> Result<f64> {
    for r in [residual_u, residual_v] {
        if !(r > 0.0) {
            return Err(Error::NonPositiveResidual(r));
        }
    }
    Ok(tx_uv / residual_u + tx_vu / residual_v)
}

pub fn clmat_edge_cost(energy_u: f64, energy_v: f64, tree_energy: f64) -> f64 {
    let du = energy_u - tree_energy;
    let dv = energy_v - tree_energy;
    if du <= 0.0 || dv <= 0.0 {
        return f64::INFINITY;
    }
    energy_u / du + energy_v / dv
}

/// Inputs an edge cost needs beyond the endpoint ids.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CostContext {
    Eq3 { radio: RadioModel },
    Clmat { tree_energy: f64 },
}

impl CostContext {
    pub fn variant(&self) -> CostVariant {
        match self {
            CostContext::Eq3 { .. } => CostVariant::Eq3,
            CostContext::Clmat { .. } => CostVariant::Clmat,
        }
    }
}

/// Cost of the link between `u` and `v` using the graph's node energies.
pub fn edge_cost(graph: &NetworkGraph, u: usize, v: usize, ctx: &CostContext) -> Result<f64> {
    match *ctx {
        CostContext::Eq3 { radio } => {
            let tx_uv = radio.tx_energy(graph.distance(u, v));
            let tx_vu = radio.tx_energy(graph.distance(v, u));
            eq3_edge_cost(tx_uv, tx_vu, graph.energy(u), graph.energy(v))
        }
        CostContext::Clmat { tree_energy } => Ok(clmat_edge_cost(graph.energy(u), graph.energy(v), tree_energy)),
    }
}

/// Sum of edge costs over the tree, in child index order.
pub fn tree_cost(tree: &AggregationTree, graph: &NetworkGraph, ctx: &CostContext) -> Result<f64> {
    let mut total = 0.0;
    for (p, c) in tree.edges() {
        // a directed tree edge p -> c may lack its reverse, so the
        // transmission distance is taken along the tree edge both ways
        let cost = match *ctx {
            CostContext::Eq3 { radio } => {
                let tx = radio.tx_energy(graph.distance(p, c));
                eq3_edge_cost(tx, tx, graph.energy(p), graph.energy(c))?
            }
            CostContext::Clmat { .. } => edge_cost(graph, p, c, ctx)?,
        };
        total += cost;
    }
    Ok(total)
}

/// Sum of root distances over every non-root node.
pub fn total_distance(tree: &AggregationTree, graph: &NetworkGraph) -> Result<f64> {
    if let Some(v) = (0..tree.node_count()).find(|&v| !tree.is_spanned(v)) {
        return Err(Error::UnreachableNode(graph.id(v).to_string()));
    }
    Ok(tree.distances().iter().sum())
}

/// Scores a tree. Singleton trees have no tree energy and zero cost.
/// Trees that miss some node get an infinite total distance; their energy and
/// cost are computed over the spanned part.
pub fn score_tree(tree: &AggregationTree, graph: &NetworkGraph, scoring: &ScoringConfig) -> Result<TreeMetrics> {
    let tree_energy = match tree_energy(tree, graph, scoring.energy) {
        Ok(e) => Some(e),
        Err(Error::SingletonTree(_)) => None,
        Err(e) => return Err(e),
    };
    let tree_cost = match (scoring.cost, tree_energy) {
        (_, None) => 0.0,
        (CostVariant::Clmat, Some(t)) => tree_cost(tree, graph, &CostContext::Clmat { tree_energy: t })?,
        (CostVariant::Eq3, Some(_)) => tree_cost(tree, graph, &CostContext::Eq3 { radio: scoring.radio })?,
    };
    let total_distance = total_distance(tree, graph).unwrap_or(f64::INFINITY);
    Ok(TreeMetrics { tree_energy, tree_cost, total_distance })
}

//! Aggregator selection: minimum total distance, with a configurable tie rule.
//!
//! Tree energy and cost are reported alongside but never used as keys.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{ScoringConfig, TreeMetrics};
use crate::topology::NetworkGraph;
use crate::tree_builder::{build_all_candidates, AggregationTree, Candidate, CandidateSet};

/// How candidates with equal total distance are ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum TieRule {
    /// Shallower tree first, then the later-inserted root.
    #[default]
    MinDepth,
    /// Earliest-inserted root first (a strict `<` scan).
    PaperOrder,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SelectConfig {
    pub scoring: ScoringConfig,
    pub tie: TieRule,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankEntry {
    pub root: String,
    #[serde(skip)]
    pub index: usize,
    pub metrics: TreeMetrics,
    pub depth: usize,
    pub spanning: bool,
    /// Energy of the root node itself, so a max-energy policy can be compared.
    pub root_energy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionResult {
    pub chosen: usize,
    pub chosen_id: String,
    pub tree: AggregationTree,
    pub metrics: TreeMetrics,
    /// Every candidate, best first.
    pub ranking: Vec<RankEntry>,
}

/// Total order of the selection key: spanning candidates first, then total
/// distance ascending, then the tie rule.
pub fn rank_order(a: &RankEntry, b: &RankEntry, tie: TieRule) -> Ordering {
    b.spanning
        .cmp(&a.spanning)
        .then_with(|| a.metrics.total_distance.total_cmp(&b.metrics.total_distance))
        .then_with(|| match tie {
            TieRule::MinDepth => a.depth.cmp(&b.depth).then_with(|| b.index.cmp(&a.index)),
            TieRule::PaperOrder => a.index.cmp(&b.index),
        })
}

fn rank_entry(c: &Candidate) -> RankEntry {
    RankEntry {
        root: c.root_id.clone(),
        index: c.root,
        metrics: c.metrics,
        depth: c.tree.depth(),
        spanning: c.spanning,
        root_energy: c.root_energy,
    }
}

/// Picks the spanning candidate with the smallest total distance.
pub fn compare_trees(candidates: &CandidateSet, tie: TieRule) -> Result<SelectionResult> {
    let mut ranking: Vec<RankEntry> = candidates.iter().map(rank_entry).collect();
    ranking.sort_by(|a, b| rank_order(a, b, tie));
    let best = ranking.first().filter(|r| r.spanning).ok_or(Error::NoSpanningCandidate)?;
    let chosen = candidates
        .iter()
        .find(|c| c.root == best.index)
        .expect("ranking entries come from the candidate set");
    Ok(SelectionResult {
        chosen: chosen.root,
        chosen_id: chosen.root_id.clone(),
        tree: chosen.tree.clone(),
        metrics: chosen.metrics,
        ranking,
    })
}

/// Builds every candidate tree and selects the aggregator.
pub fn select_aggregator(graph: &NetworkGraph, config: &SelectConfig) -> Result<SelectionResult> {
    let candidates = build_all_candidates(graph, &config.scoring)?;
    compare_trees(&candidates, config.tie)
}

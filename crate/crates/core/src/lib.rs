//! Lifetime-maximizing aggregation tree construction for wireless sensor
//! networks.
//!
//! A network is modelled as an energy-annotated weighted graph
//! ([`topology::NetworkGraph`]). For every candidate aggregator a
//! shortest-path tree is grown ([`tree_builder`]), scored by bottleneck
//! energy, energy-normalized cost and total root distance ([`metrics`]), and
//! the aggregator whose tree minimizes total distance is chosen
//! ([`selection`]). The [`simulator`] drains batteries round by round to
//! measure how long a selection policy keeps every node alive.

pub mod error;
pub mod io_cli;
pub mod metrics;
pub mod selection;
pub mod simulator;
pub mod topology;
pub mod tree_builder;

pub use error::{Error, Result};
pub use metrics::{CostVariant, EnergyVariant, ScoringConfig, TreeMetrics};
pub use selection::{compare_trees, select_aggregator, SelectConfig, SelectionResult, TieRule};
pub use simulator::{RadioModel, SimConfig};
pub use topology::{GraphMode, NetworkGraph, NodeRecord};
pub use tree_builder::{build_all_candidates, shortest_path_tree, AggregationTree, CandidateSet};

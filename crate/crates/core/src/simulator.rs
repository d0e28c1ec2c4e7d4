//! Round-based network lifetime simulation.
//!
//! Every round each alive node produces one reading. Readings flow up the
//! current aggregation tree with perfect aggregation: a node forwards exactly
//! one packet to its parent no matter how many children it heard from.
//! Transmitters pay `tx_fixed + tx_dist_coeff * d^exponent`, receivers pay
//! `rx_cost` per child. Nodes whose residual reaches zero finish the round and
//! are then dead. Lifetime is the round of the first death.
//!
//! Energies are kept in an integer ledger of femtojoules, so the drained
//! totals add up to the energy lost by the network exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::metrics::{CostVariant, EnergyVariant, ScoringConfig};
use crate::selection::{select_aggregator, SelectConfig, TieRule};
use crate::topology::NetworkGraph;
use crate::tree_builder::{shortest_path_tree_from, AggregationTree};

/// Femtojoules per Joule.
pub const QUANTA_PER_JOULE: f64 = 1e15;

pub fn to_quanta(joules: f64) -> i128 {
    (joules * QUANTA_PER_JOULE).round() as i128
}

pub fn to_joules(quanta: i128) -> f64 {
    quanta as f64 / QUANTA_PER_JOULE
}

/// First-order radio energy model, per packet.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadioModel {
    /// J per transmitted packet, independent of distance.
    pub tx_fixed: f64,
    /// J per packet per length-unit^exponent.
    pub tx_dist_coeff: f64,
    /// Path-loss exponent, 2 or 4.
    pub exponent: u32,
    /// J per received packet.
    pub rx_cost: f64,
}

impl Default for RadioModel {
    fn default() -> Self {
        RadioModel { tx_fixed: 50e-9, tx_dist_coeff: 100e-12, exponent: 2, rx_cost: 50e-9 }
    }
}

impl RadioModel {
    pub fn tx_energy(&self, distance: f64) -> f64 {
        self.tx_fixed + self.tx_dist_coeff * distance.powi(self.exponent as i32)
    }

    pub fn validate(&self) -> Result<()> {
        let coeffs = [self.tx_fixed, self.tx_dist_coeff, self.rx_cost];
        if coeffs.iter().any(|c| !(c.is_finite() && *c >= 0.0)) {
            return Err(Error::Config("radio coefficients must be finite and >= 0".into()));
        }
        if self.exponent != 2 && self.exponent != 4 {
            return Err(Error::Config(format!("path-loss exponent must be 2 or 4, got {}", self.exponent)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub radio: RadioModel,
    pub max_rounds: usize,
    /// Re-select the tree every this many rounds; deaths always trigger a re-selection.
    pub reselect_every: usize,
    pub tie_rule: TieRule,
    pub cost_variant: CostVariant,
    pub energy_variant: EnergyVariant,
    pub seed: u64,
    /// Keep simulating on the surviving nodes after the first death.
    pub continue_after_death: bool,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            radio: RadioModel::default(),
            max_rounds: 10_000,
            reselect_every: 1,
            tie_rule: TieRule::default(),
            cost_variant: CostVariant::default(),
            energy_variant: EnergyVariant::default(),
            seed: 0,
            continue_after_death: false,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        self.radio.validate()?;
        if self.max_rounds == 0 {
            return Err(Error::Config("max_rounds must be at least 1".into()));
        }
        if self.reselect_every == 0 {
            return Err(Error::Config("reselect_every must be at least 1".into()));
        }
        Ok(())
    }

    pub fn select_config(&self) -> SelectConfig {
        SelectConfig {
            scoring: ScoringConfig { cost: self.cost_variant, energy: self.energy_variant, radio: self.radio },
            tie: self.tie_rule,
        }
    }
}

/// How the aggregator is chosen whenever the tree is (re)built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Policy {
    /// Minimum total distance selection over the alive subgraph.
    Clmat,
    /// Always the named root.
    FixedRoot(String),
    /// The spanning root with the most residual energy, lowest index on ties.
    MaxEnergyRoot,
    /// A uniformly random spanning root.
    RandomRoot(u64),
}

impl Policy {
    pub fn label(&self) -> String {
        match self {
            Policy::Clmat => "clmat".into(),
            Policy::FixedRoot(r) => format!("fixed:{r}"),
            Policy::MaxEnergyRoot => "max-energy".into(),
            Policy::RandomRoot(s) => format!("random:{s}"),
        }
    }

    pub fn parse(s: &str) -> Result<Policy> {
        match s.split_once(':') {
            None if s == "clmat" => Ok(Policy::Clmat),
            None if s == "max-energy" => Ok(Policy::MaxEnergyRoot),
            Some(("fixed", r)) if !r.is_empty() => Ok(Policy::FixedRoot(r.to_string())),
            Some(("random", seed)) => seed
                .parse()
                .map(Policy::RandomRoot)
                .map_err(|_| Error::Config(format!("bad random seed `{seed}`"))),
            _ => Err(Error::Config(format!("unknown policy `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimState {
    /// Femtojoules, indexed by node.
    pub residual: Vec<i128>,
    pub alive: Vec<bool>,
    /// Rounds completed so far.
    pub round: usize,
    pub current_tree: Option<AggregationTree>,
}

impl SimState {
    pub fn new(graph: &NetworkGraph) -> Self {
        SimState {
            residual: graph.nodes().iter().map(|n| to_quanta(n.energy)).collect(),
            alive: vec![true; graph.node_count()],
            round: 0,
            current_tree: None,
        }
    }

    pub fn alive_count(&self) -> usize {
        self.alive.iter().filter(|a| **a).count()
    }

    /// Residual energies in Joules.
    pub fn residual_joules(&self) -> Vec<f64> {
        self.residual.iter().map(|&q| to_joules(q)).collect()
    }

    /// Alive subgraph with residuals as node energies, plus its index map.
    fn alive_view(&self, graph: &NetworkGraph) -> Result<(NetworkGraph, Vec<usize>)> {
        graph.induced(&self.alive, &self.residual_joules())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundReport {
    pub round: usize,
    pub aggregator: String,
    /// Femtojoules drained per node; `None` for nodes dead before the round.
    pub drained: Vec<Option<i128>>,
    /// Sum of `drained` in node index order.
    pub total_drained: i128,
    /// Alive nodes after the round.
    pub alive_count: usize,
    pub deaths: Vec<String>,
    /// Packets sent this round.
    pub transmissions: usize,
    /// Residuals after the round, femtojoules.
    pub residual: Vec<i128>,
}

/// Plays one round on `tree`, which must span every alive node.
pub fn drain_round(state: &mut SimState, tree: &AggregationTree, graph: &NetworkGraph, radio: &RadioModel) -> RoundReport {
    let n = graph.node_count();
    let children = tree.children_counts();
    let rx = to_quanta(radio.rx_cost);
    let mut drained = vec![None; n];
    let mut transmissions = 0;
    for v in 0..n {
        if !state.alive[v] {
            continue;
        }
        debug_assert!(tree.is_spanned(v), "tree must span alive nodes");
        let mut cost = rx * children[v] as i128;
        if let Some(p) = tree.parent(v) {
            cost += to_quanta(radio.tx_energy(graph.distance(p, v)));
            transmissions += 1;
        }
        drained[v] = Some(cost);
    }
    let mut total = 0i128;
    let mut deaths = Vec::new();
    for v in 0..n {
        if let Some(d) = drained[v] {
            total += d;
            state.residual[v] -= d;
            if state.residual[v] <= 0 {
                state.alive[v] = false;
                deaths.push(graph.id(v).to_string());
            }
        }
    }
    state.round += 1;
    state.current_tree = Some(tree.clone());
    RoundReport {
        round: state.round,
        aggregator: graph.id(tree.root()).to_string(),
        drained,
        total_drained: total,
        alive_count: state.alive_count(),
        deaths,
        transmissions,
        residual: state.residual.clone(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EndReason {
    FirstDeath,
    MaxRounds,
    /// The chosen aggregator no longer reaches every alive node.
    Partitioned,
    AllDead,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimOutcome {
    pub policy: String,
    /// Round of the first death, or the number of rounds played if none died.
    pub lifetime: usize,
    pub first_death: Option<usize>,
    pub end: EndReason,
    pub reports: Vec<RoundReport>,
    /// Readings that reached an aggregator, summed over rounds.
    pub delivered_packets: u64,
    pub initial: Vec<i128>,
    pub final_residual: Vec<i128>,
}

impl SimOutcome {
    pub fn initial_total(&self) -> i128 {
        self.initial.iter().sum()
    }

    pub fn final_total(&self) -> i128 {
        self.final_residual.iter().sum()
    }

    pub fn drained_total(&self) -> i128 {
        self.reports.iter().map(|r| r.total_drained).sum()
    }
}

fn choose_tree(
    graph: &NetworkGraph,
    state: &SimState,
    config: &SimConfig,
    policy: &Policy,
    rng: &mut ChaCha8Rng,
) -> Result<AggregationTree> {
    let (sub, to_orig) = state.alive_view(graph)?;
    if sub.is_empty() {
        return Err(Error::NoSpanningCandidate);
    }
    let tree = match policy {
        Policy::Clmat => select_aggregator(&sub, &config.select_config())?.tree,
        Policy::FixedRoot(id) => {
            let r = match sub.get_index(id) {
                Some(r) => r,
                None if graph.get_index(id).is_some() => return Err(Error::NoSpanningCandidate),
                None => return Err(Error::UnknownVertex(id.clone())),
            };
            let t = shortest_path_tree_from(&sub, r);
            if !t.spans_all() {
                return Err(Error::NoSpanningCandidate);
            }
            t
        }
        Policy::MaxEnergyRoot => {
            let mut order: Vec<usize> = (0..sub.node_count()).collect();
            order.sort_by(|&a, &b| sub.energy(b).total_cmp(&sub.energy(a)).then(a.cmp(&b)));
            order
                .into_iter()
                .map(|r| shortest_path_tree_from(&sub, r))
                .find(AggregationTree::spans_all)
                .ok_or(Error::NoSpanningCandidate)?
        }
        Policy::RandomRoot(_) => {
            let mut spanning: Vec<AggregationTree> = (0..sub.node_count())
                .map(|r| shortest_path_tree_from(&sub, r))
                .filter(AggregationTree::spans_all)
                .collect();
            if spanning.is_empty() {
                return Err(Error::NoSpanningCandidate);
            }
            let k = rng.gen_range(0..spanning.len());
            spanning.swap_remove(k)
        }
    };
    Ok(tree.remap(&to_orig, graph.node_count()))
}

/// Lifetime of the network under the distance-minimizing aggregator policy.
pub fn run_lifetime(graph: &NetworkGraph, config: &SimConfig) -> Result<SimOutcome> {
    run_policy(graph, config, &Policy::Clmat)
}

pub fn run_policy(graph: &NetworkGraph, config: &SimConfig, policy: &Policy) -> Result<SimOutcome> {
    config.validate()?;
    if graph.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let seed = match policy {
        Policy::RandomRoot(s) => *s,
        _ => config.seed,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = SimState::new(graph);
    let initial = state.residual.clone();
    if let Some(v) = initial.iter().position(|&q| q <= 0) {
        return Err(Error::InvalidEnergy { id: graph.id(v).to_string(), energy: graph.energy(v) });
    }
    let mut reports = Vec::new();
    let mut first_death = None;
    let mut delivered = 0u64;
    let mut end = EndReason::MaxRounds;
    let mut tree: Option<AggregationTree> = None;
    let mut died_last_round = false;

    for round in 1..=config.max_rounds {
        if tree.is_none() || died_last_round || (round - 1) % config.reselect_every == 0 {
            match choose_tree(graph, &state, config, policy, &mut rng) {
                Ok(t) => tree = Some(t),
                Err(Error::NoSpanningCandidate) if round > 1 => {
                    end = EndReason::Partitioned;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        let t = tree.as_ref().expect("tree chosen above");
        delivered += t.spanned_count() as u64;
        let report = drain_round(&mut state, t, graph, &config.radio);
        died_last_round = !report.deaths.is_empty();
        reports.push(report);
        if died_last_round {
            first_death.get_or_insert(round);
            if !config.continue_after_death {
                end = EndReason::FirstDeath;
                break;
            }
            if state.alive_count() == 0 {
                end = EndReason::AllDead;
                break;
            }
        }
    }
    Ok(SimOutcome {
        policy: policy.label(),
        lifetime: first_death.unwrap_or(state.round),
        first_death,
        end,
        reports,
        delivered_packets: delivered,
        initial,
        final_residual: state.residual,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolicyLifetime {
    pub policy: String,
    /// Mean first-death round over the trials.
    pub lifetime: f64,
    pub lifetimes: Vec<usize>,
}

/// Runs every policy from the same initial conditions. Random-root policies
/// are averaged over `trials` runs seeded `seed, seed + 1, ...`.
pub fn compare_policies(
    graph: &NetworkGraph,
    config: &SimConfig,
    policies: &[Policy],
    trials: usize,
) -> Result<Vec<PolicyLifetime>> {
    let trials = trials.max(1);
    policies
        .par_iter()
        .map(|policy| {
            let runs: Vec<Policy> = match policy {
                Policy::RandomRoot(s) => (0..trials as u64).map(|t| Policy::RandomRoot(s.wrapping_add(t))).collect(),
                p => vec![p.clone()],
            };
            let lifetimes = runs
                .iter()
                .map(|p| run_policy(graph, config, p).map(|o| o.lifetime))
                .collect::<Result<Vec<_>>>()?;
            let mean = lifetimes.iter().sum::<usize>() as f64 / lifetimes.len() as f64;
            Ok(PolicyLifetime { policy: policy.label(), lifetime: mean, lifetimes })
        })
        .collect()
}

fn csv_error(e: impl std::fmt::Display) -> Error {
    Error::Io(e.to_string())
}

/// `round,aggregator,total_drained,alive,deaths` with energies in Joules and
/// deaths separated by `;`.
pub fn reports_csv(outcome: &SimOutcome) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["round", "aggregator", "total_drained", "alive", "deaths"]).map_err(csv_error)?;
    for r in &outcome.reports {
        w.write_record([
            r.round.to_string(),
            r.aggregator.clone(),
            to_joules(r.total_drained).to_string(),
            r.alive_count.to_string(),
            r.deaths.join(";"),
        ])
        .map_err(csv_error)?;
    }
    String::from_utf8(w.into_inner().map_err(csv_error)?).map_err(csv_error)
}

/// `round,node,residual` for every node that took part in each round.
pub fn residual_trace_csv(outcome: &SimOutcome, graph: &NetworkGraph) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["round", "node", "residual"]).map_err(csv_error)?;
    for r in &outcome.reports {
        for (v, d) in r.drained.iter().enumerate() {
            if d.is_some() {
                w.write_record([r.round.to_string(), graph.id(v).to_string(), to_joules(r.residual[v]).to_string()])
                    .map_err(csv_error)?;
            }
        }
    }
    String::from_utf8(w.into_inner().map_err(csv_error)?).map_err(csv_error)
}

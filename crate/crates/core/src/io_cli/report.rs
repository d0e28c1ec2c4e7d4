//! Text renderings: ranking tables, candidate listings, adjacency display,
//! Graphviz DOT.

use std::fmt::Write;

use serde_json::{json, Value};

use crate::selection::SelectionResult;
use crate::topology::{GraphMode, NetworkGraph};
use crate::tree_builder::{AggregationTree, CandidateSet};

pub fn fmt_energy(e: Option<f64>) -> String {
    e.map_or_else(|| "-".to_string(), |e| format!("{e:.3}"))
}

/// Three decimals, or `inf`.
pub fn fmt_num(x: f64) -> String {
    if x.is_infinite() {
        "inf".to_string()
    } else {
        format!("{x:.3}")
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// JSON number, with infinities written as the string `"inf"`.
pub fn json_num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        json!("inf")
    }
}

struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    fn render(&self) -> String {
        let mut widths: Vec<usize> = self.header.iter().map(String::len).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        for row in std::iter::once(&self.header).chain(&self.rows) {
            let line: Vec<String> = row.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
            writeln!(out, "{}", line.join("  ").trim_end()).unwrap();
        }
        out
    }
}

/// One row per candidate, best first, the chosen root marked with `*`.
pub fn render_ranking(result: &SelectionResult) -> String {
    let mut t = Table::new(&["rank", "root", "energy_J", "cost", "distance", "depth", "spanning", "chosen"]);
    for (i, e) in result.ranking.iter().enumerate() {
        t.rows.push(vec![
            (i + 1).to_string(),
            e.root.clone(),
            fmt_energy(e.metrics.tree_energy),
            fmt_num(e.metrics.tree_cost),
            fmt_num(e.metrics.total_distance),
            e.depth.to_string(),
            yes_no(e.spanning).to_string(),
            if e.index == result.chosen { "*" } else { "" }.to_string(),
        ]);
    }
    let m = &result.metrics;
    format!(
        "{}aggregator: {}  energy: {} J  cost: {}  distance: {}\n",
        t.render(),
        result.chosen_id,
        fmt_energy(m.tree_energy),
        fmt_num(m.tree_cost),
        fmt_num(m.total_distance)
    )
}

pub fn selection_json(result: &SelectionResult, graph: &NetworkGraph) -> String {
    let ranking: Vec<Value> = result
        .ranking
        .iter()
        .map(|e| {
            json!({
                "root": e.root,
                "tree_energy": e.metrics.tree_energy,
                "tree_cost": json_num(e.metrics.tree_cost),
                "total_distance": json_num(e.metrics.total_distance),
                "depth": e.depth,
                "spanning": e.spanning,
                "root_energy": e.root_energy,
            })
        })
        .collect();
    let v = json!({
        "chosen": result.chosen_id,
        "tree_energy": result.metrics.tree_energy,
        "tree_cost": json_num(result.metrics.tree_cost),
        "total_distance": json_num(result.metrics.total_distance),
        "depth": result.tree.depth(),
        "tree": tree_json(&result.tree, graph),
        "ranking": ranking,
    });
    let mut s = serde_json::to_string_pretty(&v).unwrap();
    s.push('\n');
    s
}

fn tree_json(tree: &AggregationTree, graph: &NetworkGraph) -> Value {
    let edges: Vec<Value> = tree
        .edges()
        .map(|(p, c)| json!({"parent": graph.id(p), "child": graph.id(c), "dist": json_num(tree.dist(c))}))
        .collect();
    json!({"root": graph.id(tree.root()), "edges": edges})
}

/// Candidate listing in node insertion order.
pub fn candidates_table(set: &CandidateSet) -> String {
    let mut t = Table::new(&["root", "energy_J", "cost", "distance", "depth", "spanning"]);
    for c in set.iter() {
        t.rows.push(vec![
            c.root_id.clone(),
            fmt_energy(c.metrics.tree_energy),
            fmt_num(c.metrics.tree_cost),
            fmt_num(c.metrics.total_distance),
            c.tree.depth().to_string(),
            yes_no(c.spanning).to_string(),
        ]);
    }
    t.render()
}

pub fn candidates_csv(set: &CandidateSet) -> String {
    let mut out = String::from("root,tree_energy,tree_cost,total_distance,depth,spanning\n");
    for c in set.iter() {
        let m = &c.metrics;
        let energy = m.tree_energy.map_or_else(String::new, |e| e.to_string());
        writeln!(
            out,
            "{},{},{},{},{},{}",
            csv_field(&c.root_id),
            energy,
            m.tree_cost,
            m.total_distance,
            c.tree.depth(),
            c.spanning
        )
        .unwrap();
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn candidates_json(set: &CandidateSet, graph: &NetworkGraph) -> String {
    let rows: Vec<Value> = set
        .iter()
        .map(|c| {
            json!({
                "root": c.root_id,
                "tree_energy": c.metrics.tree_energy,
                "tree_cost": json_num(c.metrics.tree_cost),
                "total_distance": json_num(c.metrics.total_distance),
                "depth": c.tree.depth(),
                "spanning": c.spanning,
                "tree": tree_json(&c.tree, graph),
            })
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&rows).unwrap();
    s.push('\n');
    s
}

/// Vertex list followed by every finite off-diagonal distance entry as
/// `u -> v  distance  edge_energy`, row-major.
pub fn display_graph(graph: &NetworkGraph) -> String {
    if graph.is_empty() {
        return "Graph does not exist.\n".to_string();
    }
    let mut out = String::from("Vertices:");
    for n in graph.nodes() {
        write!(out, " {}({} J)", n.id, fmt_num(n.energy)).unwrap();
    }
    out.push('\n');
    if graph.edge_exists() {
        for u in 0..graph.node_count() {
            for (v, d) in graph.neighbors(u) {
                let e = graph.link_energy(u, v).unwrap_or(f64::NAN);
                writeln!(out, "{} -> {}  {}  {}", graph.id(u), graph.id(v), fmt_num(d), fmt_num(e)).unwrap();
            }
        }
    }
    out
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering. With a tree, tree edges are bold red and the root is
/// drawn as a double circle.
pub fn export_dot(graph: &NetworkGraph, tree: Option<&AggregationTree>) -> String {
    let (kind, op) = match graph.mode() {
        GraphMode::Undirected => ("graph", "--"),
        GraphMode::Directed => ("digraph", "->"),
    };
    let mut out = format!("{kind} network {{\n");
    for (i, n) in graph.nodes().iter().enumerate() {
        let root = tree.is_some_and(|t| t.root() == i);
        let shape = if root { ", shape=doublecircle" } else { "" };
        writeln!(out, "  {} [label=\"{}\\n{} J\"{}];", dot_id(&n.id), n.id.replace('"', "\\\""), fmt_num(n.energy), shape)
            .unwrap();
    }
    for l in graph.links() {
        let in_tree = tree.is_some_and(|t| {
            t.parent(l.v) == Some(l.u) || (graph.mode() == GraphMode::Undirected && t.parent(l.u) == Some(l.v))
        });
        let style = if in_tree { ", color=red, penwidth=2" } else { "" };
        writeln!(
            out,
            "  {} {op} {} [label=\"{}\"{}];",
            dot_id(graph.id(l.u)),
            dot_id(graph.id(l.v)),
            fmt_num(l.distance),
            style
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

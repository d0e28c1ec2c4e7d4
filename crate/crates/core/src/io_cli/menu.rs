//! Interactive numbered menu for building a graph by hand and selecting its
//! aggregator.

use std::io::{BufRead, Write};

use crate::error::Result;
use crate::io_cli::report::{candidates_table, display_graph, render_ranking};
use crate::selection::{select_aggregator, SelectConfig, SelectionResult};
use crate::topology::{GraphMode, NetworkGraph};
use crate::tree_builder::build_all_candidates;

pub const MENU: &str = "\
1. Add vertex
2. Add edge
3. Display graph
4. Compute shortest-path trees, cost and energy
5. Compare trees
6. Exit
";

/// State left behind by a menu session.
#[derive(Debug, Clone, PartialEq)]
pub struct MenuSession {
    pub graph: NetworkGraph,
    pub last_selection: Option<SelectionResult>,
}

struct Prompter<'a, R, W> {
    input: R,
    out: &'a mut W,
}

impl<R: BufRead, W: Write> Prompter<'_, R, W> {
    /// Prints `prompt` and reads one trimmed line; `None` on end of input.
    fn ask(&mut self, prompt: &str) -> Result<Option<String>> {
        write!(self.out, "{prompt}")?;
        self.out.flush()?;
        let mut line = String::new();
        if self.input.read_line(&mut line)? == 0 {
            return Ok(None);
        }
        Ok(Some(line.trim().to_string()))
    }

    /// Re-prompts until `name` is a vertex of `graph`.
    fn ask_vertex(&mut self, graph: &NetworkGraph, prompt: &str, missing: &str) -> Result<Option<String>> {
        loop {
            let Some(name) = self.ask(prompt)? else { return Ok(None) };
            if graph.get_index(&name).is_some() {
                return Ok(Some(name));
            }
            writeln!(self.out, "{missing}")?;
        }
    }
}

/// Runs the menu loop until choice 6 or end of input. Per-operation errors
/// are printed and the loop continues.
pub fn run_menu<R: BufRead, W: Write>(input: R, out: &mut W, mode: GraphMode, config: &SelectConfig) -> Result<MenuSession> {
    let mut graph = NetworkGraph::new(mode);
    let mut last_selection = None;
    let mut p = Prompter { input, out };
    loop {
        write!(p.out, "{MENU}")?;
        let Some(choice) = p.ask("Enter choice: ")? else { break };
        match choice.as_str() {
            "1" => {
                let Some(name) = p.ask("Vertex name: ")? else { break };
                let Some(energy) = p.ask("Energy (J): ")? else { break };
                let res = match energy.parse::<f64>() {
                    Ok(e) => graph.add_vertex(&name, e).map(|_| ()),
                    Err(_) => Err(crate::Error::Parse(format!("bad energy `{energy}`"))),
                };
                match res {
                    Ok(()) => writeln!(p.out, "Vertex {name} added.")?,
                    Err(crate::Error::DuplicateVertex(_)) => writeln!(p.out, "Vertex already exists.")?,
                    Err(e) => writeln!(p.out, "Error: {e}")?,
                }
            }
            "2" => {
                if graph.is_empty() {
                    writeln!(p.out, "No vertex exists.")?;
                    continue;
                }
                let Some(u) = p.ask_vertex(&graph, "Source vertex: ", "Source vertex does not exist.")? else {
                    break;
                };
                let Some(v) = p.ask_vertex(&graph, "Destination vertex: ", "Destination vertex does not exist.")?
                else {
                    break;
                };
                let Some(d) = p.ask("Distance: ")? else { break };
                let res = match d.parse::<f64>() {
                    Ok(d) => graph.add_edge(&u, &v, d),
                    Err(_) => Err(crate::Error::Parse(format!("bad distance `{d}`"))),
                };
                match res {
                    Ok(()) => writeln!(p.out, "Edge {u} -> {v} added.")?,
                    Err(e) => writeln!(p.out, "Error: {e}")?,
                }
            }
            "3" => write!(p.out, "{}", display_graph(&graph))?,
            "4" => {
                if graph.is_empty() {
                    writeln!(p.out, "Graph does not exist.")?;
                    continue;
                }
                match build_all_candidates(&graph, &config.scoring) {
                    Ok(set) => write!(p.out, "{}", candidates_table(&set))?,
                    Err(e) => writeln!(p.out, "Error: {e}")?,
                }
            }
            "5" => {
                if graph.is_empty() {
                    writeln!(p.out, "Graph does not exist.")?;
                    continue;
                }
                match select_aggregator(&graph, config) {
                    Ok(sel) => {
                        write!(p.out, "{}", render_ranking(&sel))?;
                        last_selection = Some(sel);
                    }
                    Err(e) => writeln!(p.out, "Error: {e}")?,
                }
            }
            "6" => break,
            _ => writeln!(p.out, "Invalid choice.")?,
        }
    }
    Ok(MenuSession { graph, last_selection })
}

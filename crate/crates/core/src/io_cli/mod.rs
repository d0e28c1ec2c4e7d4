//! Command-line surface: batch subcommands, the interactive menu and output
//! renderers.

pub mod cli;
pub mod menu;
pub mod report;

pub use menu::{run_menu, MenuSession};
pub use report::{export_dot, render_ranking};

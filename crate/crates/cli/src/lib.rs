//! Library side of the `sodcalc` binary: the sweep harness and the text
//! produced by each subcommand.

pub mod explain;
pub mod sweep;

pub use explain::explain_text;
pub use sweep::{admissible_cells, run_cell, sweep, CellReport, Check, SweepReport};

//! The `.sod` script language. [`generate`] supplies seeded scripts for
//! round-trip testing.

pub mod ast;
pub mod elab;
pub mod generate;
pub mod parser;
pub mod print;

pub use ast::{Item, OpKind, ParamsDecl, RangeKind, Rhs, Script, Stmt};
pub use elab::{elaborate, script_from_trace, ElabError, Elaborated};
pub use generate::random_script;
pub use parser::{parse, ParseError};
pub use print::{compress, print_script, print_sod, print_trace};

//! Text formats for systems, HML and ν-formulas and MPA terms, plus the JSON
//! result envelope of the command line.

mod formula_text;
mod json;
mod lexer;
mod system_text;
mod term_text;

pub use formula_text::{parse_formula, parse_nu_formula, print_formula, print_nu_formula};
pub use json::{CliResult, Payload, SCHEMA_VERSION};
pub use system_text::{parse_system, print_system};
pub use term_text::{parse_term, print_term};

//! The process algebra of finite partial processes: `0`, `bot`, must and may
//! prefixes, and sums. Terms are given meaning by their operational systems,
//! which is also how they stand in for compact specifications elsewhere.

mod charform;
mod enumerate;
mod sos;
mod term;
mod unfold;

pub use charform::{char_formula, phi_probe};
pub use enumerate::enumerate;
pub use sos::operational_semantics;
pub use term::{term_modal_depth, Term, TermNode};
pub use unfold::{unfold, unfold_system};

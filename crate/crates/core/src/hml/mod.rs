//! Hennessy-Milner logic under the two judgments `⊨^a` (asserted) and
//! `⊨^c` (consistent), the derived three-valued verdict, and the
//! greatest-fixpoint fragment used for characteristic formulas of systems.

mod check;
mod formula;
mod nu;

pub use check::{check, check3, Checker, Verdict3};
pub use formula::{modal_depth, simplify, Formula, Node};
pub use nu::{characteristic_nu, check_nu, NuFormula};

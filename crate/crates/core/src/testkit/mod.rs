//! Seeded generators, brute-force oracles that share no algorithmic code with
//! the engine, a shrinker and the cross-validation harness.

mod gen;
mod harness;
mod oracle;
mod shrink;

pub use gen::{
    alphabet_of_size, event_names, mixed_variant, random_formula, random_modal_system, random_term, rng, GenParams,
};
pub use harness::{run_suite, Failure, Report, Suite};
pub use oracle::{brute_force_refines, oracle_distance};
pub use shrink::{candidates, shrink_pair, shrink_system};

//! Modal and mixed transition systems: refinement and its bounded
//! approximants, Hennessy-Milner logic under asserted and consistent
//! judgments, characteristic formulas of partial processes, and dyadic
//! distances between specifications and their implementation sets.
//!
//! ```
//! use mtskit::{fixtures, refinement::refines};
//!
//! // the Bob-and-Tom pub refines the plain pub specification
//! assert!(refines(&fixtures::fig1(), &fixtures::fig3()).unwrap());
//! ```

pub mod cli;
pub mod error;
pub mod fixtures;
pub mod hml;
pub mod io;
pub mod metrics;
pub mod mpa;
pub mod refinement;
pub mod system;
pub mod testkit;

pub use error::{Error, Result};
pub use system::{EventAlphabet, Kind, Mode, Pointed, System, SystemBuilder};

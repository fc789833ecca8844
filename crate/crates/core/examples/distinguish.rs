//! When refinement fails, a Hennessy-Milner formula explains why.

use mtskit::fixtures;
use mtskit::hml::check;
use mtskit::refinement::{distinguishing_formula, refines};
use mtskit::system::must_projection;
use mtskit::Mode;

fn main() -> mtskit::Result<()> {
    let waits = fixtures::fig1();
    let drinks = must_projection(&fixtures::fig1().at("Drinks")?);
    assert!(!refines(&waits, &drinks)?);
    let f = distinguishing_formula(&waits, &drinks)?;
    println!("{f}");
    println!("abstract: {}  concrete: {}", check(&waits, &f, Mode::A)?, check(&drinks, &f, Mode::A)?);
    Ok(())
}

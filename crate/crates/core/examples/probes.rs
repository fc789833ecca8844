//! Maximality probes: tautologies on implementations that a specification
//! with unresolved choices fails under the asserted judgment.

use mtskit::fixtures;
use mtskit::hml::check;
use mtskit::io::parse_term;
use mtskit::mpa::phi_probe;
use mtskit::refinement::is_implementation_equivalent;
use mtskit::system::must_projection;
use mtskit::Mode;

fn main() -> mtskit::Result<()> {
    let pub_ = fixtures::fig1();
    let imp = must_projection(&pub_);
    let probe = phi_probe(&["newPint", "talks"], "drinks", &parse_term("bot")?, pub_.alphabet())?;
    println!("{probe}");
    println!("specification: {}", check(&pub_, &probe, Mode::A)?);
    println!("implementation: {}", check(&imp, &probe, Mode::A)?);
    println!(
        "implementation-equivalent: {} / {}",
        is_implementation_equivalent(&pub_)?,
        is_implementation_equivalent(&imp)?
    );
    Ok(())
}

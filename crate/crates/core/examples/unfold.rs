//! Depth-m unfoldings: finite terms with may-stubs at the cut, converging to
//! the system in the dyadic metric.

use mtskit::fixtures;
use mtskit::metrics::distance;
use mtskit::mpa::{unfold, unfold_system};
use mtskit::refinement::refinement_equivalent;

fn main() -> mtskit::Result<()> {
    let tom = fixtures::fig3().at("TomDrinks")?;
    for m in 0..=3 {
        let u = unfold_system(&tom, m)?;
        println!("m = {m}  distance {:<6} {}", distance(&tom, &u)?.to_string(), unfold(&tom, m)?);
    }
    let u1 = unfold_system(&tom, 1)?;
    println!("depth-1 unfolding equivalent to fig8: {}", refinement_equivalent(&u1, &fixtures::fig8())?);
    Ok(())
}

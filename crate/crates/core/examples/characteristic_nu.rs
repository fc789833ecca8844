//! Greatest-fixpoint characteristic formulas: an implementation satisfies the
//! formula of a specification exactly when it refines it.

use mtskit::fixtures;
use mtskit::hml::{characteristic_nu, check_nu};
use mtskit::metrics::enumerate_bounded_implementations;
use mtskit::mpa::operational_semantics;
use mtskit::refinement::refines;
use mtskit::system::must_projection;

fn main() -> mtskit::Result<()> {
    let drinks = fixtures::fig1().at("Drinks")?;
    let nu = characteristic_nu(&drinks)?;
    println!("{nu}");

    let mut candidates = vec![must_projection(&drinks), must_projection(&fixtures::fig1())];
    for t in enumerate_bounded_implementations(&drinks, 2)?.iter().take(6) {
        candidates.push(operational_semantics(t, drinks.alphabet())?);
    }
    for l in &candidates {
        println!("satisfies: {:<5} refines: {}", check_nu(l, &nu)?, refines(&drinks, l)?);
    }
    Ok(())
}

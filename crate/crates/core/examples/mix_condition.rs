//! Mixed systems: the mix condition and the modal normal form.

use mtskit::fixtures;
use mtskit::io::print_system;
use mtskit::refinement::{normalize_mixed, refinement_equivalent, satisfies_mix_condition};

fn main() -> mtskit::Result<()> {
    let mixed = fixtures::fig4_left();
    println!("mix condition holds: {}", satisfies_mix_condition(mixed.system()));
    let modal = normalize_mixed(&mixed)?;
    print!("{}", print_system(&modal));
    println!(
        "equivalent to the published normal form: {}",
        refinement_equivalent(&modal, &fixtures::fig4_right())?
    );
    Ok(())
}

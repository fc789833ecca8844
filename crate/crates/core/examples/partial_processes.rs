//! Terms of the partial process algebra: parsing, operational semantics and
//! characteristic formulas, which decide refinement by model checking.

use mtskit::hml::check;
use mtskit::io::parse_term;
use mtskit::mpa::{char_formula, operational_semantics};
use mtskit::refinement::refines;
use mtskit::{EventAlphabet, Mode};

fn main() -> mtskit::Result<()> {
    let alphabet = EventAlphabet::new(["a", "b"])?;
    let spec = parse_term("a!.bot + b?.0")?;
    let phi = char_formula(&spec, &alphabet)?;
    println!("phi = {phi}");

    let p = operational_semantics(&spec, &alphabet)?;
    for candidate in ["a!.0", "a!.a!.b!.0 + b!.0", "b!.0", "a!.0 + a?.0"] {
        let q = operational_semantics(&parse_term(candidate)?, &alphabet)?;
        println!(
            "{candidate:<20} refines: {:<5} satisfies phi: {}",
            refines(&p, &q)?,
            check(&q, &phi, Mode::A)?
        );
    }
    // `0` and `bot` are not allowed as summands
    println!("{}", parse_term("a!.0 + 0").unwrap_err());
    Ok(())
}

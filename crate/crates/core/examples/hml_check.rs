//! Asserted and consistent judgments on the pub specification, and the
//! three-valued verdict derived from them.

use mtskit::fixtures;
use mtskit::hml::{check, check3};
use mtskit::io::parse_formula;
use mtskit::Mode;

fn main() -> mtskit::Result<()> {
    let pub_ = fixtures::fig1();
    let talks = pub_.at("Talks")?;
    for text in ["<drinks>tt", "<drinks>tt | !<drinks>tt", "[orders]<newPint>tt"] {
        let f = parse_formula(text)?;
        println!(
            "Talks  {text:<28} a: {:<5} c: {:<5} => {}",
            check(&talks, &f, Mode::A)?,
            check(&talks, &f, Mode::C)?,
            check3(&talks, &f)?
        );
    }
    // excluded middle can fail under the asserted judgment
    let f = parse_formula("[newPint][talks](<drinks>tt | !<drinks>tt)")?;
    println!("Waits  {f}  a: {}", check(&pub_, &f, Mode::A)?);
    Ok(())
}

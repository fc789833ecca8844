//! Dyadic distances between specifications and between their sets of
//! implementations.

use mtskit::io::parse_term;
use mtskit::metrics::{c1, c2_bounded, distance, hausdorff_bounded};
use mtskit::mpa::operational_semantics;
use mtskit::EventAlphabet;

fn main() -> mtskit::Result<()> {
    let alphabet = EventAlphabet::new(["a", "b"])?;
    let sys = |t: &str| operational_semantics(&parse_term(t)?, &alphabet);
    let pairs = [
        ("a!.0", "a!.a!.0"),
        ("a!.b?.0", "a!.b!.0"),
        ("a?.0 + b!.0", "b!.0"),
        ("a!.0", "b!.0"),
    ];
    println!("{:<12} {:<10} {:<6} {:<6} {:<14} c2", "p", "q", "d", "c1", "hausdorff");
    for (l, r) in pairs {
        let (p, q) = (sys(l)?, sys(r)?);
        println!(
            "{l:<12} {r:<10} {:<6} {:<6} {:<14} {}",
            distance(&p, &q)?.to_string(),
            c1(&p, &q)?.to_string(),
            hausdorff_bounded(&p, &q, 3)?.to_string(),
            c2_bounded(&p, &q, 3)?
        );
    }
    Ok(())
}

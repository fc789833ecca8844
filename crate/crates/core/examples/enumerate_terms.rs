//! Terms up to associativity, commutativity and idempotence of `+`, graded by
//! modal depth.

use mtskit::mpa::enumerate;
use mtskit::EventAlphabet;

fn main() -> mtskit::Result<()> {
    let alphabet = EventAlphabet::new(["a"])?;
    for depth in 0..=2 {
        println!("depth <= {depth}: {} terms", enumerate(&alphabet, depth, 2).len());
    }
    for t in enumerate(&alphabet, 1, 2) {
        println!("  {t}");
    }
    Ok(())
}

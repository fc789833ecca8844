//! Seeded generation and the brute-force oracles.

use mtskit::io::print_system;
use mtskit::metrics::distance;
use mtskit::refinement::refines;
use mtskit::testkit::{brute_force_refines, oracle_distance, random_modal_system, GenParams};

fn main() -> mtskit::Result<()> {
    let params = GenParams {
        states: 2..=3,
        events: 2..=2,
        must_density: 0.25,
        may_density: 0.25,
        seed: 0,
    };
    let p = random_modal_system(&params.with_seed(1));
    let q = random_modal_system(&params.with_seed(2));
    print!("{}---\n{}", print_system(&p), print_system(&q));
    let cap = p.system().num_states() * q.system().num_states();
    println!("refines {}  brute force {}", refines(&p, &q)?, brute_force_refines(&p, &q, cap)?);
    println!("distance {}  oracle {}", distance(&p, &q)?, oracle_distance(&p, &q, cap)?);
    Ok(())
}

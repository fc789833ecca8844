//! Common refinements of two modal specifications.

use mtskit::io::{parse_system, print_system};
use mtskit::metrics::c1;
use mtskit::refinement::{common_refinement, consistency_depth, refines};

const LEFT: &str = "mts modal
alphabet: a b
init: s
must s a t
may s b s
may t a t
";

const RIGHT: &str = "mts modal
alphabet: a b
init: u
may u a v
must u b u
";

fn main() -> mtskit::Result<()> {
    let (p, q) = (parse_system(LEFT)?, parse_system(RIGHT)?);
    println!("consistency depth: {}  c1: {}", consistency_depth(&p, &q)?, c1(&p, &q)?);
    match common_refinement(&p, &q)? {
        Some(w) => {
            print!("{}", print_system(&w));
            println!("refines both: {}", refines(&p, &w)? && refines(&q, &w)?);
        }
        None => println!("no common refinement"),
    }
    Ok(())
}

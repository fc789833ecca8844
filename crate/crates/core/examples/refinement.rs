//! Refinement between the two pub specifications, its approximant chain and
//! the equivalence depth.

use mtskit::fixtures;
use mtskit::refinement::{equivalence_depth, refinement_chain, refines};

fn main() -> mtskit::Result<()> {
    let spec = fixtures::fig1();
    let bob_and_tom = fixtures::fig3();

    println!("fig3 refines fig1: {}", refines(&spec, &bob_and_tom)?);
    println!("fig1 refines fig3: {}", refines(&bob_and_tom, &spec)?);

    let chain = refinement_chain(spec.system(), bob_and_tom.system())?;
    for k in 0..=chain.stabilization_index() {
        let pairs = chain.get(k).named_pairs(spec.system(), bob_and_tom.system());
        println!("Q_{k}: {} pairs", pairs.len());
    }
    println!("equivalence depth: {}", equivalence_depth(&spec, &bob_and_tom)?);
    Ok(())
}

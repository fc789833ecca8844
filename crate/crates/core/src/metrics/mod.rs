//! Dyadic distances between specifications and between their sets of
//! implementations.
//!
//! `distance` is `2^-n` where `n` is the equivalence depth, and `0` for
//! refinement-equivalent systems. `c1` is the optimistic measure (closest
//! pair of implementations) and is computed exactly from the consistency
//! chain. `c2` and the Hausdorff distance need suprema over infinite sets;
//! they are computed over implementations cut at a depth `K` and reported as
//! an exact value when the cut decides it, and as an interval otherwise.

mod dyadic;
mod implementations;

pub use dyadic::{DyadicDistance, IntervalEstimate};
pub use implementations::{
    enumerate_bounded_implementations, enumerate_bounded_implementations_with_budget, implementation_classes,
    ClassId, Classes, DEFAULT_BUDGET, NIL,
};

use std::collections::HashSet;

use crate::error::Result;
use crate::refinement::{
    consistency_depth, equivalence_depth, is_implementation_equivalent, refinement_equivalent,
};
use crate::system::{must_projection, Pointed};

/// `0` for refinement-equivalent systems, otherwise `2^-n` for equivalence
/// depth `n`.
pub fn distance(p: &Pointed, q: &Pointed) -> Result<DyadicDistance> {
    Ok(DyadicDistance::from_depth(equivalence_depth(p, q)?))
}

/// `0` iff a common refinement exists, otherwise `2^-n` for the largest `n`
/// with `n`-bounded consistency.
pub fn c1(p: &Pointed, q: &Pointed) -> Result<DyadicDistance> {
    Ok(DyadicDistance::from_depth(consistency_depth(p, q)?))
}

struct Cuts {
    classes: Classes,
    left: Vec<ClassId>,
    right: Vec<ClassId>,
}

fn cuts(p: &Pointed, q: &Pointed, k: usize, budget: usize) -> Result<Cuts> {
    p.alphabet().ensure_same(q.alphabet())?;
    let mut classes = Classes::new();
    let left = implementation_classes(p, k, budget, &mut classes)?;
    let right = implementation_classes(q, k, budget, &mut classes)?;
    Ok(Cuts { classes, left, right })
}

/// Shared tail of the bounded estimators: a depth below `k` is exact; at `k`
/// the cut cannot tell, unless both sides have a single implementation.
fn settle(p: &Pointed, q: &Pointed, n: u32, k: u32) -> Result<IntervalEstimate> {
    if n < k {
        return Ok(IntervalEstimate::exact(DyadicDistance::Pow(n)));
    }
    if is_implementation_equivalent(p)? && is_implementation_equivalent(q)? {
        return Ok(IntervalEstimate::exact(distance(
            &must_projection(p),
            &must_projection(q),
        )?));
    }
    Ok(IntervalEstimate::between(DyadicDistance::Zero, DyadicDistance::Pow(k)))
}

pub fn c2_bounded(p: &Pointed, q: &Pointed, k: u32) -> Result<IntervalEstimate> {
    c2_bounded_with_budget(p, q, k, DEFAULT_BUDGET)
}

/// Pessimistic measure: the farthest pair of implementations.
pub fn c2_bounded_with_budget(p: &Pointed, q: &Pointed, k: u32, budget: usize) -> Result<IntervalEstimate> {
    let mut c = cuts(p, q, k as usize, budget)?;
    // every pair agrees to depth j iff all cuts share one depth-j truncation
    let mut n = 0;
    while n < k {
        let mut seen = HashSet::new();
        for &x in c.left.iter().chain(&c.right) {
            seen.insert(c.classes.truncate(x, n as usize + 1));
        }
        if seen.len() > 1 {
            break;
        }
        n += 1;
    }
    settle(p, q, n, k)
}

pub fn hausdorff_bounded(p: &Pointed, q: &Pointed, k: u32) -> Result<IntervalEstimate> {
    hausdorff_bounded_with_budget(p, q, k, DEFAULT_BUDGET)
}

/// Hausdorff distance between the implementation sets.
pub fn hausdorff_bounded_with_budget(p: &Pointed, q: &Pointed, k: u32, budget: usize) -> Result<IntervalEstimate> {
    p.alphabet().ensure_same(q.alphabet())?;
    // equivalent specifications have the same implementations
    if refinement_equivalent(p, q)? {
        return Ok(IntervalEstimate::exact(DyadicDistance::Zero));
    }
    let mut c = cuts(p, q, k as usize, budget)?;
    // the closest partner of x agrees to depth j iff x's depth-j truncation
    // occurs on the other side
    let mut n = 0;
    'levels: while n < k {
        let j = n as usize + 1;
        for (from, to) in [(&c.left, &c.right), (&c.right, &c.left)] {
            let targets: HashSet<ClassId> = to.iter().map(|&y| c.classes.truncate(y, j)).collect();
            if from.iter().any(|&x| !targets.contains(&c.classes.truncate(x, j))) {
                break 'levels;
            }
        }
        n += 1;
    }
    settle(p, q, n, k)
}

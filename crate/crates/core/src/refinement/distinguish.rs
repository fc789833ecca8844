use crate::error::{Error, Result};
use crate::hml::{check, simplify, Formula};
use crate::mpa::{char_formula, operational_semantics, unfold};
use crate::system::{Mode, Pointed};

use super::refines;

/// For a pair where `concrete` does not refine `abstract_`, the
/// characteristic formula of the shallowest unfolding of `abstract_` that
/// `concrete` already fails to refine. It holds on `abstract_` and fails on
/// `concrete`, both under `⊨^a`; this is checked before returning.
pub fn distinguishing_formula(abstract_: &Pointed, concrete: &Pointed) -> Result<Formula> {
    abstract_.ensure_modal()?;
    if refines(abstract_, concrete)? {
        return Err(Error::Precondition(
            "the concrete system refines the abstract one".into(),
        ));
    }
    // the refinement chain stabilizes within the product size, and the
    // unfolding at that depth already separates the pair
    let bound = abstract_.system().num_states() * concrete.system().num_states() + 1;
    for n in 0..=bound {
        let t = unfold(abstract_, n)?;
        let sys = operational_semantics(&t, abstract_.alphabet())?;
        if refines(&sys, concrete)? {
            continue;
        }
        let f = simplify(&char_formula(&t, abstract_.alphabet())?);
        if !check(abstract_, &f, Mode::A)? || check(concrete, &f, Mode::A)? {
            return Err(Error::Internal(format!(
                "distinguishing formula at depth {n} does not separate the pair"
            )));
        }
        return Ok(f);
    }
    Err(Error::Internal(format!(
        "no separating unfolding up to depth {bound}"
    )))
}

use std::collections::HashMap;

use super::sos::operational_semantics;
use super::term::Term;
use crate::error::Result;
use crate::system::{Mode, Pointed, StateId, System, Transition};

/// Depth-`m` tree unwinding of `p` as a term. Transitions below the cut keep
/// their modality; a leaf at the cut is `bot` if the state can still move and
/// `0` otherwise. Equal subtrees are shared.
pub fn unfold(p: &Pointed, m: usize) -> Result<Term> {
    p.ensure_modal()?;
    let mut memo = HashMap::new();
    Ok(go(p.system(), p.init(), m, &mut memo))
}

fn go(sys: &System, s: StateId, left: usize, memo: &mut HashMap<(StateId, usize), Term>) -> Term {
    if let Some(t) = memo.get(&(s, left)) {
        return t.clone();
    }
    let out: Vec<_> = sys.out(Mode::C, s).collect();
    let t = if out.is_empty() {
        Term::nil()
    } else if left == 0 {
        Term::bot()
    } else {
        let parts: Vec<Term> = out
            .into_iter()
            .map(|(e, dst)| {
                let cont = go(sys, dst, left - 1, memo);
                let name = sys.alphabet().name(e);
                if sys.has_transition(Mode::A, &Transition::new(s, e, dst)) {
                    Term::must(name, cont)
                } else {
                    Term::may(name, cont)
                }
            })
            .collect();
        Term::sum_all(parts).expect("prefixes are valid summands")
    };
    memo.insert((s, left), t.clone());
    t
}

/// The system of [`unfold`], over the alphabet of `p`.
pub fn unfold_system(p: &Pointed, m: usize) -> Result<Pointed> {
    operational_semantics(&unfold(p, m)?, p.alphabet())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::refinement::{refinement_equivalent, refines};

    #[test]
    fn tom_drinks_depth_one() {
        let p = fixtures::fig3().at("TomDrinks").unwrap();
        let t = unfold(&p, 1).unwrap();
        assert_eq!(t.to_string(), "orders?.bot + talks!.0 + drinks?.bot");
        let sys = unfold_system(&p, 1).unwrap();
        assert!(refinement_equivalent(&sys, &fixtures::fig8()).unwrap());
    }

    #[test]
    fn depth_zero() {
        let p = fixtures::fig1();
        assert!(unfold(&p, 0).unwrap().is_bot());
        let dead = fixtures::fig3().at("TomTalks").unwrap();
        assert!(unfold(&dead, 0).unwrap().is_nil());
    }

    #[test]
    fn chain_below_source() {
        for p in [fixtures::fig1(), fixtures::fig3()] {
            let mut prev = unfold_system(&p, 0).unwrap();
            for m in 1..5 {
                let cur = unfold_system(&p, m).unwrap();
                assert!(refines(&prev, &cur).unwrap());
                assert!(refines(&cur, &p).unwrap());
                prev = cur;
            }
        }
    }
}

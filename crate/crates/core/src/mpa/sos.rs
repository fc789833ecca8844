use std::collections::HashMap;

use super::term::{Term, TermNode};
use crate::error::{Error, Result};
use crate::system::{EventAlphabet, Kind, Mode, Pointed, StateId, SystemBuilder, Transition};

pub(crate) fn check_events(t: &Term, alphabet: &EventAlphabet) -> Result<()> {
    match t.events().into_iter().find(|e| !alphabet.contains(e)) {
        Some(e) => Err(Error::UnknownEvent(e.to_string())),
        None => Ok(()),
    }
}

/// The modal system of a term. Each distinct subterm node reached by the
/// rules is a state (`t0` is the root); every `bot` maps to one shared stub
/// state `bot` carrying a may self-loop per event.
pub fn operational_semantics(t: &Term, alphabet: &EventAlphabet) -> Result<Pointed> {
    check_events(t, alphabet)?;
    let mut b = SystemBuilder::new(Kind::Modal, alphabet.clone());
    let mut ids: HashMap<usize, StateId> = HashMap::new();
    let mut bot: Option<StateId> = None;
    let mut counter = 0usize;

    let mut state_of = |t: &Term, b: &mut SystemBuilder| -> StateId {
        if t.is_bot() {
            return *bot.get_or_insert_with(|| b.state("bot"));
        }
        *ids.entry(t.id()).or_insert_with(|| {
            let id = b.state(&format!("t{counter}"));
            counter += 1;
            id
        })
    };

    // Discovery order: depth-first, left to right.
    let root = state_of(t, &mut b);
    let mut seen = std::collections::HashSet::new();
    let mut work = vec![t];
    while let Some(t) = work.pop() {
        if !seen.insert(t.id()) {
            continue;
        }
        let here = state_of(t, &mut b);
        match t.node() {
            TermNode::Nil => {}
            TermNode::Bot => {
                for e in alphabet.ids() {
                    b.add(Mode::C, Transition::new(here, e, here));
                }
            }
            _ => {
                let mut next = Vec::new();
                for s in t.summands() {
                    let (e, must, cont) = s.as_prefix().expect("summands are prefixes");
                    let there = state_of(cont, &mut b);
                    let tr = Transition::new(here, alphabet.id(e).expect("checked"), there);
                    b.add(Mode::C, tr);
                    if must {
                        b.add(Mode::A, tr);
                    }
                    next.push(cont);
                }
                work.extend(next.into_iter().rev());
            }
        }
    }
    Ok(Pointed::new(b.build()?, root))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::refinement::is_implementation;

    fn ab() -> EventAlphabet {
        EventAlphabet::new(["a", "b"]).unwrap()
    }

    #[test]
    fn nil_has_no_transitions() {
        let p = operational_semantics(&Term::nil(), &ab()).unwrap();
        assert_eq!(p.system().num_states(), 1);
        assert!(p.system().relation(Mode::C).is_empty());
        assert!(is_implementation(&p));
    }

    #[test]
    fn bot_is_a_may_stub() {
        let p = operational_semantics(&Term::bot(), &ab()).unwrap();
        assert_eq!(p.system().num_states(), 1);
        assert_eq!(p.system().relation(Mode::C).len(), 2);
        assert!(p.system().relation(Mode::A).is_empty());
    }

    #[test]
    fn prefixes_and_sums() {
        let t = Term::sum(
            Term::must("a", Term::bot()),
            Term::may("b", Term::must("a", Term::nil())),
        )
        .unwrap();
        let p = operational_semantics(&t, &ab()).unwrap();
        let sys = p.system();
        assert_eq!(p.init_name(), "t0");
        assert_eq!(sys.relation(Mode::A).len(), 2);
        // a-must, b-may, a-must, two stub loops
        assert_eq!(sys.relation(Mode::C).len(), 5);
        assert!(sys.validate(true).is_empty());
    }

    #[test]
    fn unknown_event() {
        let t = Term::must("c", Term::nil());
        assert_eq!(
            operational_semantics(&t, &ab()).unwrap_err(),
            Error::UnknownEvent("c".into())
        );
    }
}

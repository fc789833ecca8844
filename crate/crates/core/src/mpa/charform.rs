use std::collections::HashMap;

use super::sos::check_events;
use super::term::{Term, TermNode};
use crate::error::{Error, Result};
use crate::hml::Formula;
use crate::system::EventAlphabet;

struct Builder<'a> {
    alphabet: &'a EventAlphabet,
    // ¬⟨β⟩tt, one node per event
    no_step: Vec<Formula>,
    memo: HashMap<usize, Formula>,
    pinned: Vec<Term>,
}

impl Builder<'_> {
    /// `f` conjoined with `¬⟨β⟩tt` for every other event `β`.
    fn only(&self, e: &str, f: Formula) -> Formula {
        let others = self
            .alphabet
            .ids()
            .filter(|&b| self.alphabet.name(b) != e)
            .map(|b| self.no_step[b.0].clone());
        others.fold(f, Formula::and)
    }

    fn phi(&mut self, t: &Term) -> Formula {
        if let Some(f) = self.memo.get(&t.id()) {
            return f.clone();
        }
        let f = match t.node() {
            TermNode::Bot => Formula::tt(),
            TermNode::Nil => Formula::and_all(self.no_step.clone()),
            TermNode::Must(e, p) => {
                let fp = self.phi(p);
                self.only(e, Formula::and(Formula::dia(e.clone(), fp.clone()), Formula::boxed(e.clone(), fp)))
            }
            TermNode::May(e, p) => {
                let fp = self.phi(p);
                self.only(e, Formula::boxed(e.clone(), fp))
            }
            TermNode::Sum(..) => {
                let steps: Vec<(std::sync::Arc<str>, bool, Formula)> = t
                    .summands()
                    .into_iter()
                    .map(|s| {
                        let (e, must, cont) = s.as_prefix().expect("summands are prefixes");
                        (e.clone(), must, self.phi(cont))
                    })
                    .collect();
                let mut parts: Vec<Formula> = steps
                    .iter()
                    .filter(|(_, must, _)| *must)
                    .map(|(e, _, f)| Formula::dia(e.clone(), f.clone()))
                    .collect();
                for e in self.alphabet.names() {
                    let succ = steps
                        .iter()
                        .filter(|(x, _, _)| &**x == e)
                        .map(|(_, _, f)| f.clone());
                    parts.push(Formula::boxed(e, Formula::or_any(succ)));
                }
                Formula::and_all(parts)
            }
        };
        self.pinned.push(t.clone());
        self.memo.insert(t.id(), f.clone());
        f
    }
}

/// `φ_p`: a system satisfies it under `⊨^a` exactly when it refines the
/// system of `p`.
pub fn char_formula(t: &Term, alphabet: &EventAlphabet) -> Result<Formula> {
    check_events(t, alphabet)?;
    let no_step = alphabet
        .names()
        .map(|e| Formula::not(Formula::dia(e, Formula::tt())))
        .collect();
    let mut b = Builder {
        alphabet,
        no_step,
        memo: HashMap::new(),
        pinned: Vec::new(),
    };
    Ok(b.phi(t))
}

/// `[w1]...[wn](⟨α⟩φ_p ∨ ¬⟨α⟩φ_p)`: a tautology on implementations that
/// specifications with unresolved may-choices can fail under `⊨^a`.
pub fn phi_probe(trace: &[&str], event: &str, t: &Term, alphabet: &EventAlphabet) -> Result<Formula> {
    if let Some(e) = trace.iter().chain([&event]).find(|e| !alphabet.contains(e)) {
        return Err(Error::UnknownEvent(e.to_string()));
    }
    let fp = char_formula(t, alphabet)?;
    let step = Formula::dia(event, fp);
    let mut f = Formula::or(step.clone(), Formula::not(step));
    for e in trace.iter().rev() {
        f = Formula::boxed(*e, f);
    }
    Ok(f)
}

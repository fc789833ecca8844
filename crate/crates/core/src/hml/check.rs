use std::collections::{HashMap, HashSet};
use std::fmt;

use super::formula::{Formula, Node};
use crate::error::{Error, Result};
use crate::system::{EventId, Mode, Pointed, StateId, System};

/// Three-valued verdict derived from the two judgments.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict3 {
    True,
    False,
    Unknown,
}

impl fmt::Display for Verdict3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict3::True => "true",
            Verdict3::False => "false",
            Verdict3::Unknown => "unknown",
        })
    }
}

/// Memoizing evaluator for one system. Reusable across formulas and states;
/// entries are keyed by node identity, so the formulas must outlive it.
pub struct Checker<'a> {
    sys: &'a System,
    events: HashMap<usize, EventId>,
    memo: HashMap<(usize, StateId, Mode), bool>,
    // keeps memoized nodes alive so their addresses are not reused
    pinned: Vec<Formula>,
}

impl<'a> Checker<'a> {
    pub fn new(sys: &'a System) -> Self {
        Checker {
            sys,
            events: HashMap::new(),
            memo: HashMap::new(),
            pinned: Vec::new(),
        }
    }

    fn resolve(&mut self, f: &Formula) -> Result<()> {
        let mut seen = HashSet::new();
        let mut stack = vec![f.clone()];
        while let Some(g) = stack.pop() {
            if !seen.insert(g.id()) || self.events.contains_key(&g.id()) {
                continue;
            }
            match g.node() {
                Node::True => {}
                Node::Not(a) => stack.push(a.clone()),
                Node::Dia(e, a) => {
                    let id = self
                        .sys
                        .alphabet()
                        .id(e)
                        .ok_or_else(|| Error::UnknownEvent(e.to_string()))?;
                    self.events.insert(g.id(), id);
                    stack.push(a.clone());
                }
                Node::And(a, b) => {
                    stack.push(a.clone());
                    stack.push(b.clone());
                }
            }
        }
        self.pinned.push(f.clone());
        Ok(())
    }

    fn eval(&mut self, f: &Formula, s: StateId, m: Mode) -> bool {
        let key = (f.id(), s, m);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let v = match f.node() {
            Node::True => true,
            Node::Not(a) => !self.eval(a, s, m.dual()),
            Node::Dia(_, a) => {
                let e = self.events[&f.id()];
                let succ = self.sys.succ(m, s, e);
                succ.iter().any(|&t| self.eval(a, t, m))
            }
            Node::And(a, b) => self.eval(a, s, m) && self.eval(b, s, m),
        };
        self.memo.insert(key, v);
        v
    }

    /// `s ⊨^m f`.
    pub fn holds(&mut self, s: StateId, f: &Formula, m: Mode) -> Result<bool> {
        self.resolve(f)?;
        Ok(self.eval(f, s, m))
    }
}

/// `p ⊨^m φ`. Negation flips the judgment; `⟨α⟩` in mode `m` reads `R^m`.
pub fn check(p: &Pointed, f: &Formula, mode: Mode) -> Result<bool> {
    Checker::new(p.system()).holds(p.init(), f, mode)
}

pub fn check3(p: &Pointed, f: &Formula) -> Result<Verdict3> {
    let mut c = Checker::new(p.system());
    Ok(if c.holds(p.init(), f, Mode::A)? {
        Verdict3::True
    } else if !c.holds(p.init(), f, Mode::C)? {
        Verdict3::False
    } else {
        Verdict3::Unknown
    })
}

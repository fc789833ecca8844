//! Refinement between pointed systems, its depth-bounded approximants, the
//! mix condition, implementation checks and the consistency relation that
//! decides whether two modal specifications have a common refinement.
//!
//! Direction convention: `refines(abstract, concrete)` holds when `concrete`
//! refines `abstract`. Every must-transition of the abstract side is matched by
//! a must-transition of the concrete side; every may-transition of the
//! concrete side is permitted by a may-transition of the abstract side.

mod distinguish;
mod relation;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use distinguish::distinguishing_formula;
pub use relation::Relation;
use relation::{PairGame, CONSISTENCY, REFINEMENT};

use crate::error::{Error, Result};
use crate::system::{reachable, Kind, Mode, Pointed, StateId, System, SystemBuilder, Transition};

/// A non-negative depth or infinity. Infinity is its own variant, never a
/// sentinel integer.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "DepthRepr", from = "DepthRepr")]
pub enum Depth {
    Finite(u32),
    Infinite,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum DepthRepr {
    Finite { n: u32 },
    Infinite,
}

impl From<Depth> for DepthRepr {
    fn from(d: Depth) -> Self {
        match d {
            Depth::Finite(n) => DepthRepr::Finite { n },
            Depth::Infinite => DepthRepr::Infinite,
        }
    }
}

impl From<DepthRepr> for Depth {
    fn from(r: DepthRepr) -> Self {
        match r {
            DepthRepr::Finite { n } => Depth::Finite(n),
            DepthRepr::Infinite => Depth::Infinite,
        }
    }
}

impl Depth {
    pub fn is_infinite(self) -> bool {
        matches!(self, Depth::Infinite)
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Finite(n) => write!(f, "{n}"),
            Depth::Infinite => f.write_str("inf"),
        }
    }
}

/// The antitone approximant chain `Q_0 ⊇ Q_1 ⊇ ...`, stored up to the first
/// index at which it stabilizes.
#[derive(Clone, Debug)]
pub struct BoundedChain {
    relations: Vec<Relation>,
}

impl BoundedChain {
    /// `Q_k`; indices past stabilization return the stable relation.
    pub fn get(&self, k: usize) -> &Relation {
        &self.relations[k.min(self.relations.len() - 1)]
    }

    /// Least `k` with `Q_k = Q_{k+1}`.
    pub fn stabilization_index(&self) -> usize {
        self.relations.len() - 1
    }

    pub fn stable(&self) -> &Relation {
        self.relations.last().expect("chain is nonempty")
    }

    /// Largest `k` with `(s, t) ∈ Q_k`, or infinity if the pair survives.
    pub fn survival(&self, s: StateId, t: StateId) -> Depth {
        match self.relations.iter().position(|q| !q.contains(s, t)) {
            Some(k) => Depth::Finite(k as u32 - 1),
            None => Depth::Infinite,
        }
    }
}

fn same_alphabet(m: &System, n: &System) -> Result<()> {
    m.alphabet().ensure_same(n.alphabet())
}

/// Greatest refinement between the states of `m` (abstract) and `n`
/// (concrete), computed by removal from the full product until stable.
pub fn greatest_refinement(m: &System, n: &System) -> Result<Relation> {
    same_alphabet(m, n)?;
    Ok(PairGame {
        left: m,
        right: n,
        obligations: &REFINEMENT,
    }
    .greatest())
}

pub fn refinement_chain(m: &System, n: &System) -> Result<BoundedChain> {
    same_alphabet(m, n)?;
    let relations = PairGame {
        left: m,
        right: n,
        obligations: &REFINEMENT,
    }
    .chain();
    Ok(BoundedChain { relations })
}

/// `Q_k` of the refinement chain; `Q_0` is the full product.
pub fn bounded_refinement(m: &System, n: &System, k: usize) -> Result<Relation> {
    Ok(refinement_chain(m, n)?.get(k).clone())
}

/// True iff `concrete` refines `abstract_`.
pub fn refines(abstract_: &Pointed, concrete: &Pointed) -> Result<bool> {
    let rel = greatest_refinement(abstract_.system(), concrete.system())?;
    Ok(rel.contains(abstract_.init(), concrete.init()))
}

pub fn refinement_equivalent(p: &Pointed, q: &Pointed) -> Result<bool> {
    Ok(refines(p, q)? && refines(q, p)?)
}

/// Largest `k` such that the initial pair survives `k` rounds in both
/// directed chains; infinite exactly for refinement-equivalent systems.
pub fn equivalence_depth(p: &Pointed, q: &Pointed) -> Result<Depth> {
    let fwd = refinement_chain(p.system(), q.system())?.survival(p.init(), q.init());
    let bwd = refinement_chain(q.system(), p.system())?.survival(q.init(), p.init());
    Ok(fwd.min(bwd))
}

/// A must-transition with no matching transition in `r_a ∩ r_c` whose target
/// refines its own target, if there is one.
pub fn mix_condition_violation(sys: &System) -> Option<Transition> {
    let within = PairGame {
        left: sys,
        right: sys,
        obligations: &REFINEMENT,
    }
    .greatest();
    sys.relation(Mode::A).iter().copied().find(|t| {
        !sys.succ(Mode::A, t.src, t.event).iter().any(|&other| {
            sys.has_transition(Mode::C, &Transition::new(t.src, t.event, other))
                && within.contains(t.dst, other)
        })
    })
}

pub fn satisfies_mix_condition(sys: &System) -> bool {
    mix_condition_violation(sys).is_none()
}

/// `(Σ, r_a ∩ r_c, r_c)` for a mixed system satisfying the mix condition.
pub fn normalize_mixed(p: &Pointed) -> Result<Pointed> {
    let sys = p.system();
    if let Some(t) = mix_condition_violation(sys) {
        return Err(Error::MixConditionViolated(sys.show_transition(&t)));
    }
    let mut b = SystemBuilder::new(Kind::Modal, sys.alphabet().clone());
    for s in sys.states() {
        b.state(sys.state_name(s));
    }
    for t in sys.relation(Mode::C) {
        b.add(Mode::C, *t);
        if sys.has_transition(Mode::A, t) {
            b.add(Mode::A, *t);
        }
    }
    Ok(Pointed::new(b.build()?, p.init()))
}

/// No may-transition (and no asserted-only transition) is reachable.
pub fn is_implementation(p: &Pointed) -> bool {
    let sys = p.system();
    reachable(p).into_iter().all(|s| {
        sys.alphabet()
            .ids()
            .all(|e| sys.succ(Mode::A, s, e) == sys.succ(Mode::C, s, e))
    })
}

/// True iff `p` is refinement-equivalent to its must-projection, i.e. denotes
/// exactly one labelled transition system up to bisimulation.
pub fn is_implementation_equivalent(p: &Pointed) -> Result<bool> {
    p.ensure_modal()?;
    refines(&crate::system::must_projection(p), p)
}

fn modal_pair(m: &Pointed, n: &Pointed) -> Result<()> {
    same_alphabet(m.system(), n.system())?;
    m.ensure_modal()?;
    n.ensure_modal()
}

/// Greatest relation in which each side's musts are answered by the other
/// side's mays.
pub fn consistency_relation(m: &Pointed, n: &Pointed) -> Result<Relation> {
    modal_pair(m, n)?;
    Ok(PairGame {
        left: m.system(),
        right: n.system(),
        obligations: &CONSISTENCY,
    }
    .greatest())
}

pub fn consistency_chain(m: &Pointed, n: &Pointed) -> Result<BoundedChain> {
    modal_pair(m, n)?;
    let relations = PairGame {
        left: m.system(),
        right: n.system(),
        obligations: &CONSISTENCY,
    }
    .chain();
    Ok(BoundedChain { relations })
}

/// Whether the initial pair survives `k` rounds of the consistency game.
pub fn bounded_consistency(m: &Pointed, n: &Pointed, k: usize) -> Result<bool> {
    Ok(consistency_chain(m, n)?.get(k).contains(m.init(), n.init()))
}

/// Largest `k` with `bounded_consistency(m, n, k)`; infinite iff a common
/// refinement exists.
pub fn consistency_depth(m: &Pointed, n: &Pointed) -> Result<Depth> {
    Ok(consistency_chain(m, n)?.survival(m.init(), n.init()))
}

/// A modal system refining both inputs, built on the consistent pairs
/// reachable from the initial pair; `None` when the initial pair is
/// inconsistent. The witness is checked against both inputs before it is
/// returned.
pub fn common_refinement(m: &Pointed, n: &Pointed) -> Result<Option<Pointed>> {
    let cons = consistency_relation(m, n)?;
    if !cons.contains(m.init(), n.init()) {
        return Ok(None);
    }
    let (ms, ns) = (m.system(), n.system());
    let name = |s: StateId, t: StateId| format!("{}|{}", ms.state_name(s), ns.state_name(t));
    let mut b = SystemBuilder::new(Kind::Modal, ms.alphabet().clone());
    let root = b.state(&name(m.init(), n.init()));
    let mut stack = vec![(m.init(), n.init())];
    let mut seen = std::collections::BTreeSet::from([(m.init(), n.init())]);
    while let Some((s, t)) = stack.pop() {
        let here = b.state(&name(s, t));
        for e in ms.alphabet().ids() {
            for &s2 in ms.succ(Mode::C, s, e) {
                for &t2 in ns.succ(Mode::C, t, e) {
                    if !cons.contains(s2, t2) {
                        continue;
                    }
                    let there = b.state(&name(s2, t2));
                    let tr = Transition::new(here, e, there);
                    b.add(Mode::C, tr);
                    let left_must = ms.has_transition(Mode::A, &Transition::new(s, e, s2));
                    let right_must = ns.has_transition(Mode::A, &Transition::new(t, e, t2));
                    if left_must || right_must {
                        b.add(Mode::A, tr);
                    }
                    if seen.insert((s2, t2)) {
                        stack.push((s2, t2));
                    }
                }
            }
        }
    }
    let witness = Pointed::new(b.build()?, root);
    if !(refines(m, &witness)? && refines(n, &witness)?) {
        return Err(Error::Internal(
            "common-refinement witness does not refine both inputs".into(),
        ));
    }
    Ok(Some(witness))
}

use std::collections::BTreeSet;

use crate::system::{EventId, Mode, StateId, System};

/// A binary relation between the states of a left and a right system,
/// stored as a dense bit matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    left: usize,
    right: usize,
    bits: Vec<bool>,
}

impl Relation {
    pub fn full(left: usize, right: usize) -> Self {
        Relation {
            left,
            right,
            bits: vec![true; left * right],
        }
    }

    pub fn empty(left: usize, right: usize) -> Self {
        Relation {
            left,
            right,
            bits: vec![false; left * right],
        }
    }

    pub fn contains(&self, s: StateId, t: StateId) -> bool {
        self.bits[s.0 * self.right + t.0]
    }

    pub fn set(&mut self, s: StateId, t: StateId, value: bool) {
        self.bits[s.0 * self.right + t.0] = value;
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.left, self.right)
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (StateId, StateId)> + '_ {
        (0..self.left).flat_map(move |s| {
            (0..self.right)
                .filter(move |&t| self.bits[s * self.right + t])
                .map(move |t| (StateId(s), StateId(t)))
        })
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    /// Pairs rendered by state name, for diagnostics and output.
    pub fn named_pairs(&self, left: &System, right: &System) -> BTreeSet<(String, String)> {
        self.pairs()
            .map(|(s, t)| (left.state_name(s).to_string(), right.state_name(t).to_string()))
            .collect()
    }
}

/// One transfer obligation of a pair game: every `forall`-transition on one
/// side must be answered by a `respond`-transition with the same event on the
/// other side, landing in the current relation.
#[derive(Copy, Clone, Debug)]
pub(crate) struct Obligation {
    pub forall: Mode,
    pub respond: Mode,
    /// When true, the challenge comes from the right-hand state.
    pub from_right: bool,
}

/// Refinement: left musts answered by right musts; right mays answered by left mays.
pub(crate) const REFINEMENT: [Obligation; 2] = [
    Obligation {
        forall: Mode::A,
        respond: Mode::A,
        from_right: false,
    },
    Obligation {
        forall: Mode::C,
        respond: Mode::C,
        from_right: true,
    },
];

/// Consistency: each side's musts answered by the other side's mays.
pub(crate) const CONSISTENCY: [Obligation; 2] = [
    Obligation {
        forall: Mode::A,
        respond: Mode::C,
        from_right: false,
    },
    Obligation {
        forall: Mode::A,
        respond: Mode::C,
        from_right: true,
    },
];

/// The state-pair game shared by refinement and consistency. `step` is one
/// round of removal: it keeps exactly the pairs whose obligations can be
/// discharged into the previous relation.
pub(crate) struct PairGame<'a> {
    pub left: &'a System,
    pub right: &'a System,
    pub obligations: &'a [Obligation],
}

impl PairGame<'_> {
    fn answered(&self, s: StateId, t: StateId, rel: &Relation) -> bool {
        let events = self.left.alphabet().len();
        self.obligations.iter().all(|ob| {
            (0..events).map(EventId).all(|e| {
                if ob.from_right {
                    self.right.succ(ob.forall, t, e).iter().all(|&t2| {
                        self.left
                            .succ(ob.respond, s, e)
                            .iter()
                            .any(|&s2| rel.contains(s2, t2))
                    })
                } else {
                    self.left.succ(ob.forall, s, e).iter().all(|&s2| {
                        self.right
                            .succ(ob.respond, t, e)
                            .iter()
                            .any(|&t2| rel.contains(s2, t2))
                    })
                }
            })
        })
    }

    pub fn full(&self) -> Relation {
        Relation::full(self.left.num_states(), self.right.num_states())
    }

    pub fn step(&self, prev: &Relation) -> Relation {
        let mut next = prev.clone();
        for (s, t) in prev.pairs() {
            if !self.answered(s, t, prev) {
                next.set(s, t, false);
            }
        }
        next
    }

    /// Iterates [`step`](Self::step) from the full product until stable.
    pub fn greatest(&self) -> Relation {
        let mut rel = self.full();
        loop {
            let next = self.step(&rel);
            if next == rel {
                return rel;
            }
            rel = next;
        }
    }

    /// `Q_0 ⊇ Q_1 ⊇ ...` up to and including the first repeated relation.
    pub fn chain(&self) -> Vec<Relation> {
        let mut chain = vec![self.full()];
        loop {
            let next = self.step(chain.last().expect("chain is nonempty"));
            if &next == chain.last().expect("chain is nonempty") {
                return chain;
            }
            chain.push(next);
        }
    }
}

//! Depth-bounded slices of implementation sets.
//!
//! An implementation cut at depth `k` is a finite tree; up to bisimulation it
//! is the set of its `(event, subtree)` pairs. Such trees are interned, so
//! equal classes share an id. For a modal state `s`, the cuts at depth `k` are
//! exactly the sets `X` where
//!
//! * every `(e, x)` in `X` is a depth-`k-1` cut of some may-successor of `s`
//!   along `e`, and
//! * every must-transition `(s, e, s')` is covered by some `(e, x)` in `X` with
//!   `x` a depth-`k-1` cut of `s'`.
//!
//! Choosing kept or dropped per may-transition of an unfolding is not enough:
//! one must-transition may need several distinct successors.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::mpa::Term;
use crate::refinement::Depth;
use crate::system::{EventAlphabet, EventId, Mode, Pointed, StateId, System};

pub type ClassId = usize;

pub const NIL: ClassId = 0;

/// Interned finite trees.
#[derive(Debug)]
pub struct Classes {
    table: Vec<Vec<(EventId, ClassId)>>,
    index: HashMap<Vec<(EventId, ClassId)>, ClassId>,
    trunc: HashMap<(ClassId, usize), ClassId>,
}

impl Default for Classes {
    fn default() -> Self {
        Self::new()
    }
}

impl Classes {
    pub fn new() -> Self {
        let mut c = Classes {
            table: Vec::new(),
            index: HashMap::new(),
            trunc: HashMap::new(),
        };
        c.intern(Vec::new());
        c
    }

    pub fn intern(&mut self, mut edges: Vec<(EventId, ClassId)>) -> ClassId {
        edges.sort_unstable();
        edges.dedup();
        if let Some(&id) = self.index.get(&edges) {
            return id;
        }
        let id = self.table.len();
        self.table.push(edges.clone());
        self.index.insert(edges, id);
        id
    }

    pub fn edges(&self, c: ClassId) -> &[(EventId, ClassId)] {
        &self.table[c]
    }

    pub fn to_term(&self, c: ClassId, alphabet: &EventAlphabet, memo: &mut HashMap<ClassId, Term>) -> Term {
        if let Some(t) = memo.get(&c) {
            return t.clone();
        }
        let t = if self.table[c].is_empty() {
            Term::nil()
        } else {
            let parts: Vec<Term> = self.table[c]
                .clone()
                .into_iter()
                .map(|(e, x)| Term::must(alphabet.name(e), self.to_term(x, alphabet, memo)))
                .collect();
            Term::sum_all(parts).expect("prefixes are valid summands")
        };
        memo.insert(c, t.clone());
        t
    }

    /// The tree cut at depth `k`. Interning makes two trees `k`-bisimilar
    /// exactly when their cuts share an id.
    pub fn truncate(&mut self, x: ClassId, k: usize) -> ClassId {
        if k == 0 {
            return NIL;
        }
        if let Some(&c) = self.trunc.get(&(x, k)) {
            return c;
        }
        let edges: Vec<(EventId, ClassId)> = self.table[x]
            .clone()
            .into_iter()
            .map(|(e, y)| (e, self.truncate(y, k - 1)))
            .collect();
        let c = self.intern(edges);
        self.trunc.insert((x, k), c);
        c
    }

    /// Largest `k` such that the two trees are `k`-bisimilar.
    pub fn agreement(&mut self, x: ClassId, y: ClassId) -> Depth {
        if x == y {
            return Depth::Infinite;
        }
        // distinct finite trees differ at some finite depth
        let mut k = 0;
        while self.truncate(x, k + 1) == self.truncate(y, k + 1) {
            k += 1;
        }
        Depth::Finite(k as u32)
    }
}

struct Enumerator<'a> {
    sys: &'a System,
    classes: &'a mut Classes,
    memo: HashMap<(usize, StateId), Rc<Vec<ClassId>>>,
    budget: usize,
    emitted: usize,
}

impl Enumerator<'_> {
    fn cuts(&mut self, s: StateId, k: usize) -> Result<Rc<Vec<ClassId>>> {
        if let Some(v) = self.memo.get(&(k, s)) {
            return Ok(v.clone());
        }
        let out = if k == 0 {
            vec![NIL]
        } else {
            self.level(s, k)?
        };
        let out = Rc::new(out);
        self.memo.insert((k, s), out.clone());
        Ok(out)
    }

    fn level(&mut self, s: StateId, k: usize) -> Result<Vec<ClassId>> {
        let sys = self.sys;
        let mut pool: BTreeSet<(EventId, ClassId)> = BTreeSet::new();
        for (e, t) in sys.out(Mode::C, s) {
            for &x in self.cuts(t, k - 1)?.iter() {
                pool.insert((e, x));
            }
        }
        let pool: Vec<(EventId, ClassId)> = pool.into_iter().collect();
        // for each must, the pool positions that cover it
        let mut covers: Vec<Vec<usize>> = Vec::new();
        for (e, t) in sys.out(Mode::A, s) {
            let ok: HashSet<ClassId> = self.cuts(t, k - 1)?.iter().copied().collect();
            covers.push(
                pool.iter()
                    .enumerate()
                    .filter(|(_, (f, x))| *f == e && ok.contains(x))
                    .map(|(i, _)| i)
                    .collect(),
            );
        }
        let last: Vec<usize> = covers.iter().map(|c| *c.last().expect("musts are mays")).collect();
        let mut hits = vec![0u32; covers.len()];
        let mut by_pos: Vec<Vec<usize>> = vec![Vec::new(); pool.len()];
        for (m, c) in covers.iter().enumerate() {
            for &i in c {
                by_pos[i].push(m);
            }
        }
        let mut chosen = Vec::new();
        let mut out = Vec::new();
        self.subsets(&pool, &by_pos, &last, 0, &mut hits, &mut chosen, &mut out)?;
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn subsets(
        &mut self,
        pool: &[(EventId, ClassId)],
        by_pos: &[Vec<usize>],
        last: &[usize],
        i: usize,
        hits: &mut Vec<u32>,
        chosen: &mut Vec<(EventId, ClassId)>,
        out: &mut Vec<ClassId>,
    ) -> Result<()> {
        if i == pool.len() {
            self.emitted += 1;
            if self.emitted > self.budget {
                return Err(Error::BudgetExceeded { budget: self.budget });
            }
            out.push(self.classes.intern(chosen.clone()));
            return Ok(());
        }
        // include
        chosen.push(pool[i]);
        for &m in &by_pos[i] {
            hits[m] += 1;
        }
        self.subsets(pool, by_pos, last, i + 1, hits, chosen, out)?;
        for &m in &by_pos[i] {
            hits[m] -= 1;
        }
        chosen.pop();
        // exclude, unless this is the last chance for an uncovered must
        let needed = by_pos[i].iter().any(|&m| hits[m] == 0 && last[m] == i);
        if !needed {
            self.subsets(pool, by_pos, last, i + 1, hits, chosen, out)?;
        }
        Ok(())
    }
}

pub const DEFAULT_BUDGET: usize = 10_000;

/// Depth-`k` cuts of the implementations of `p`, as interned classes.
pub fn implementation_classes(p: &Pointed, k: usize, budget: usize, classes: &mut Classes) -> Result<Vec<ClassId>> {
    p.ensure_modal()?;
    let mut en = Enumerator {
        sys: p.system(),
        classes,
        memo: HashMap::new(),
        budget,
        emitted: 0,
    };
    let v = en.cuts(p.init(), k)?;
    Ok(v.as_ref().clone())
}

/// Every implementation of `p` cut at depth `k`, one term per bisimulation
/// class, in a deterministic order. Each term `t` is `k`-bounded below `p`
/// (the pair survives `k` refinement rounds); when `p` is acyclic of depth at
/// most `k` the terms are exactly its finite implementations.
pub fn enumerate_bounded_implementations_with_budget(p: &Pointed, k: usize, budget: usize) -> Result<Vec<Term>> {
    let mut classes = Classes::new();
    let ids = implementation_classes(p, k, budget, &mut classes)?;
    let mut memo = HashMap::new();
    Ok(ids
        .into_iter()
        .map(|c| classes.to_term(c, p.alphabet(), &mut memo))
        .collect())
}

pub fn enumerate_bounded_implementations(p: &Pointed, k: usize) -> Result<Vec<Term>> {
    enumerate_bounded_implementations_with_budget(p, k, DEFAULT_BUDGET)
}

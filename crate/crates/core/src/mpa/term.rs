use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug)]
pub enum TermNode {
    Nil,
    Bot,
    Must(Arc<str>, Term),
    May(Arc<str>, Term),
    Sum(Term, Term),
}

/// A finite partial process. Subterms may be shared.
#[derive(Clone, Debug)]
pub struct Term(Arc<TermNode>);

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (TermNode::Nil, TermNode::Nil) | (TermNode::Bot, TermNode::Bot) => true,
            (TermNode::Must(e, a), TermNode::Must(f, b)) | (TermNode::May(e, a), TermNode::May(f, b)) => {
                e == f && a == b
            }
            (TermNode::Sum(a1, a2), TermNode::Sum(b1, b2)) => a1 == b1 && a2 == b2,
            _ => false,
        }
    }
}

impl Eq for Term {}

impl Term {
    fn mk(n: TermNode) -> Self {
        Term(Arc::new(n))
    }

    pub fn nil() -> Self {
        Self::mk(TermNode::Nil)
    }

    pub fn bot() -> Self {
        Self::mk(TermNode::Bot)
    }

    /// `e!.p`
    pub fn must(e: impl Into<Arc<str>>, p: Term) -> Self {
        Self::mk(TermNode::Must(e.into(), p))
    }

    /// `e?.p`
    pub fn may(e: impl Into<Arc<str>>, p: Term) -> Self {
        Self::mk(TermNode::May(e.into(), p))
    }

    /// `a + b`; neither side may be `0` or `bot`.
    pub fn sum(a: Term, b: Term) -> Result<Self> {
        for t in [&a, &b] {
            if matches!(t.node(), TermNode::Nil | TermNode::Bot) {
                return Err(Error::Precondition(format!("`{t}` cannot be a summand")));
            }
        }
        Ok(Self::mk(TermNode::Sum(a, b)))
    }

    /// Left-nested sum of the given summands; a single summand is returned
    /// unchanged and an empty list is an error.
    pub fn sum_all(parts: impl IntoIterator<Item = Term>) -> Result<Self> {
        let mut it = parts.into_iter();
        let first = it
            .next()
            .ok_or_else(|| Error::Precondition("empty sum".into()))?;
        it.try_fold(first, Term::sum)
    }

    pub fn node(&self) -> &TermNode {
        &self.0
    }

    pub fn id(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn is_bot(&self) -> bool {
        matches!(self.node(), TermNode::Bot)
    }

    pub fn is_nil(&self) -> bool {
        matches!(self.node(), TermNode::Nil)
    }

    /// The prefixes a sum is built from, left to right. A prefix is its own
    /// single summand; `0` and `bot` have none.
    pub fn summands(&self) -> Vec<&Term> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            match t.node() {
                TermNode::Nil | TermNode::Bot => {}
                TermNode::Must(..) | TermNode::May(..) => out.push(t),
                TermNode::Sum(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
            }
        }
        out
    }

    /// `(event, is_must, continuation)` of a prefix.
    pub fn as_prefix(&self) -> Option<(&Arc<str>, bool, &Term)> {
        match self.node() {
            TermNode::Must(e, p) => Some((e, true, p)),
            TermNode::May(e, p) => Some((e, false, p)),
            _ => None,
        }
    }

    pub fn events(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            match t.node() {
                TermNode::Nil | TermNode::Bot => {}
                TermNode::Must(e, p) | TermNode::May(e, p) => {
                    out.insert(e.clone());
                    stack.push(p);
                }
                TermNode::Sum(a, b) => {
                    stack.push(a);
                    stack.push(b);
                }
            }
        }
        out
    }

    /// Number of syntax nodes, counting shared subterms once per occurrence.
    pub fn size(&self) -> usize {
        match self.node() {
            TermNode::Nil | TermNode::Bot => 1,
            TermNode::Must(_, p) | TermNode::May(_, p) => 1 + p.size(),
            TermNode::Sum(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// No `bot` and no may-prefix anywhere.
    pub fn is_implementation(&self) -> bool {
        match self.node() {
            TermNode::Nil => true,
            TermNode::Bot | TermNode::May(..) => false,
            TermNode::Must(_, p) => p.is_implementation(),
            TermNode::Sum(a, b) => a.is_implementation() && b.is_implementation(),
        }
    }
}

/// Prefixes add one, sums take the maximum.
pub fn term_modal_depth(t: &Term) -> usize {
    let mut memo = std::collections::HashMap::new();
    fn go(t: &Term, memo: &mut std::collections::HashMap<usize, usize>) -> usize {
        if let Some(&d) = memo.get(&t.id()) {
            return d;
        }
        let d = match t.node() {
            TermNode::Nil | TermNode::Bot => 0,
            TermNode::Must(_, p) | TermNode::May(_, p) => 1 + go(p, memo),
            TermNode::Sum(a, b) => go(a, memo).max(go(b, memo)),
        };
        memo.insert(t.id(), d);
        d
    }
    go(t, &mut memo)
}

fn write_term(t: &Term, paren_sum: bool, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t.node() {
        TermNode::Nil => out.write_str("0"),
        TermNode::Bot => out.write_str("bot"),
        TermNode::Must(e, p) | TermNode::May(e, p) => {
            let mark = if matches!(t.node(), TermNode::Must(..)) { '!' } else { '?' };
            write!(out, "{e}{mark}.")?;
            write_term(p, true, out)
        }
        TermNode::Sum(a, b) => {
            if paren_sum {
                out.write_str("(")?;
            }
            write_term(a, false, out)?;
            out.write_str(" + ")?;
            write_term(b, true, out)?;
            if paren_sum {
                out.write_str(")")?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(self, false, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printing_brackets_nested_sums() {
        let a0 = Term::must("a", Term::nil());
        let bq = Term::may("b", Term::bot());
        let s = Term::sum(a0.clone(), bq.clone()).unwrap();
        assert_eq!(s.to_string(), "a!.0 + b?.bot");
        let right = Term::sum(a0.clone(), s.clone()).unwrap();
        assert_eq!(right.to_string(), "a!.0 + (a!.0 + b?.bot)");
        let left = Term::sum(s.clone(), a0).unwrap();
        assert_eq!(left.to_string(), "a!.0 + b?.bot + a!.0");
        assert_eq!(Term::must("c", s).to_string(), "c!.(a!.0 + b?.bot)");
    }

    #[test]
    fn summand_side_condition() {
        assert!(Term::sum(Term::must("a", Term::nil()), Term::nil()).is_err());
        assert!(Term::sum(Term::bot(), Term::must("a", Term::nil())).is_err());
    }

    #[test]
    fn depths() {
        assert_eq!(term_modal_depth(&Term::bot()), 0);
        let t = Term::must("a", Term::may("b", Term::nil()));
        assert_eq!(term_modal_depth(&t), 2);
        assert_eq!(t.size(), 3);
        assert!(!t.is_implementation());
    }
}

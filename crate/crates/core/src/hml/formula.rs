use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

/// Core Hennessy-Milner syntax. Box, disjunction and `ff` are derived.
#[derive(Debug)]
pub enum Node {
    True,
    Not(Formula),
    Dia(Arc<str>, Formula),
    And(Formula, Formula),
}

/// A shared, immutable formula. Subformulas may be shared between parents;
/// evaluation memoizes on node identity.
#[derive(Clone, Debug)]
pub struct Formula(Arc<Node>);

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (Node::True, Node::True) => true,
            (Node::Not(a), Node::Not(b)) => a == b,
            (Node::Dia(e, a), Node::Dia(f, b)) => e == f && a == b,
            (Node::And(a1, a2), Node::And(b1, b2)) => a1 == b1 && a2 == b2,
            _ => false,
        }
    }
}

impl Eq for Formula {}

impl Formula {
    fn mk(node: Node) -> Self {
        Formula(Arc::new(node))
    }

    pub fn tt() -> Self {
        Self::mk(Node::True)
    }

    pub fn ff() -> Self {
        Self::not(Self::tt())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Self::mk(Node::Not(f))
    }

    pub fn dia(event: impl Into<Arc<str>>, f: Formula) -> Self {
        Self::mk(Node::Dia(event.into(), f))
    }

    /// `[e]f`, encoded as `¬⟨e⟩¬f`.
    pub fn boxed(event: impl Into<Arc<str>>, f: Formula) -> Self {
        Self::not(Self::dia(event, Self::not(f)))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Self::mk(Node::And(a, b))
    }

    /// `a ∨ b`, encoded as `¬(¬a ∧ ¬b)`.
    pub fn or(a: Formula, b: Formula) -> Self {
        Self::not(Self::and(Self::not(a), Self::not(b)))
    }

    /// Left-nested conjunction; the empty conjunction is `tt`.
    pub fn and_all(parts: impl IntoIterator<Item = Formula>) -> Self {
        parts
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or_else(Formula::tt)
    }

    /// Left-nested disjunction; the empty disjunction is `ff`.
    pub fn or_any(parts: impl IntoIterator<Item = Formula>) -> Self {
        parts
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or_else(Formula::ff)
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    /// Identity of the shared node, used as a memo key.
    pub fn id(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    /// Events occurring in the formula.
    pub fn events(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        let mut seen = HashSet::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            if !seen.insert(f.id()) {
                continue;
            }
            match f.node() {
                Node::True => {}
                Node::Not(a) => stack.push(a),
                Node::Dia(e, a) => {
                    out.insert(e.clone());
                    stack.push(a);
                }
                Node::And(a, b) => {
                    stack.push(a);
                    stack.push(b);
                }
            }
        }
        out
    }

    // Derived-form views used by the printer and by the NNF translation.

    pub(crate) fn as_ff(&self) -> bool {
        matches!(self.node(), Node::Not(a) if matches!(a.node(), Node::True))
    }

    pub(crate) fn as_box(&self) -> Option<(&Arc<str>, &Formula)> {
        match self.node() {
            Node::Not(a) => match a.node() {
                Node::Dia(e, b) => match b.node() {
                    Node::Not(c) => Some((e, c)),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }
    }

    pub(crate) fn as_or(&self) -> Option<(&Formula, &Formula)> {
        match self.node() {
            Node::Not(a) => match a.node() {
                Node::And(l, r) => match (l.node(), r.node()) {
                    (Node::Not(x), Node::Not(y)) => Some((x, y)),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }
    }
}

/// Maximal nesting of modalities.
pub fn modal_depth(f: &Formula) -> usize {
    fn go(f: &Formula, memo: &mut HashMap<usize, usize>) -> usize {
        if let Some(&d) = memo.get(&f.id()) {
            return d;
        }
        let d = match f.node() {
            Node::True => 0,
            Node::Not(a) => go(a, memo),
            Node::Dia(_, a) => 1 + go(a, memo),
            Node::And(a, b) => go(a, memo).max(go(b, memo)),
        };
        memo.insert(f.id(), d);
        d
    }
    go(f, &mut HashMap::new())
}

/// Equivalent formula without `tt`/`ff` clutter: unit and zero laws of `∧`,
/// double negation, `⟨e⟩ff = ff` and `φ ∧ φ = φ` for a shared operand.
/// All rewrites are sound under both judgments.
pub fn simplify(f: &Formula) -> Formula {
    fn is_tt(f: &Formula) -> bool {
        matches!(f.node(), Node::True)
    }
    fn is_ff(f: &Formula) -> bool {
        matches!(f.node(), Node::Not(a) if is_tt(a))
    }
    fn go(f: &Formula, memo: &mut HashMap<usize, Formula>) -> Formula {
        if let Some(g) = memo.get(&f.id()) {
            return g.clone();
        }
        let g = match f.node() {
            Node::True => f.clone(),
            Node::Not(a) => {
                let a = go(a, memo);
                match a.node() {
                    Node::Not(b) => b.clone(),
                    _ => Formula::not(a),
                }
            }
            Node::Dia(e, a) => {
                let a = go(a, memo);
                if is_ff(&a) {
                    a
                } else {
                    Formula::dia(e.clone(), a)
                }
            }
            Node::And(a, b) => {
                let (a, b) = (go(a, memo), go(b, memo));
                if is_tt(&a) || is_ff(&b) || a.id() == b.id() {
                    b
                } else if is_tt(&b) || is_ff(&a) {
                    a
                } else {
                    Formula::and(a, b)
                }
            }
        };
        memo.insert(f.id(), g.clone());
        g
    }
    go(f, &mut HashMap::new())
}

// Precedence levels: `|` < `&` < prefix operators and atoms.
const OR: u8 = 1;
const AND: u8 = 2;
const UNARY: u8 = 3;

fn write_formula(f: &Formula, ctx: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let level = if f.as_or().is_some() {
        OR
    } else if matches!(f.node(), Node::And(..)) {
        AND
    } else {
        UNARY
    };
    let paren = level < ctx;
    if paren {
        out.write_str("(")?;
    }
    if f.as_ff() {
        out.write_str("ff")?;
    } else if let Some((e, body)) = f.as_box() {
        write!(out, "[{e}]")?;
        write_formula(body, UNARY, out)?;
    } else if let Some((a, b)) = f.as_or() {
        write_formula(a, OR, out)?;
        out.write_str(" | ")?;
        write_formula(b, AND, out)?;
    } else {
        match f.node() {
            Node::True => out.write_str("tt")?,
            Node::Not(a) => {
                out.write_str("!")?;
                write_formula(a, UNARY, out)?;
            }
            Node::Dia(e, a) => {
                write!(out, "<{e}>")?;
                write_formula(a, UNARY, out)?;
            }
            Node::And(a, b) => {
                write_formula(a, AND, out)?;
                out.write_str(" & ")?;
                write_formula(b, UNARY, out)?;
            }
        }
    }
    if paren {
        out.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, OR, f)
    }
}

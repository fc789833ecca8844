//! Greatest-fixpoint formulas: HML plus variables and `nu`, negation-free.

use std::fmt;

use super::formula::{Formula, Node};
use crate::error::{Error, Result};
use crate::refinement::is_implementation;
use crate::system::{Mode, Pointed, StateId, System};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NuFormula {
    True,
    False,
    Var(u32),
    And(Vec<NuFormula>),
    Or(Vec<NuFormula>),
    Dia(String, Box<NuFormula>),
    Boxed(String, Box<NuFormula>),
    Nu(u32, Box<NuFormula>),
}

impl NuFormula {
    /// n-ary conjunction; zero operands give `tt`, one operand is returned as is.
    pub fn and(mut parts: Vec<NuFormula>) -> Self {
        match parts.len() {
            0 => NuFormula::True,
            1 => parts.pop().unwrap(),
            _ => NuFormula::And(parts),
        }
    }

    /// n-ary disjunction; zero operands give `ff`.
    pub fn or(mut parts: Vec<NuFormula>) -> Self {
        match parts.len() {
            0 => NuFormula::False,
            1 => parts.pop().unwrap(),
            _ => NuFormula::Or(parts),
        }
    }

    pub fn dia(e: impl Into<String>, f: NuFormula) -> Self {
        NuFormula::Dia(e.into(), Box::new(f))
    }

    pub fn boxed(e: impl Into<String>, f: NuFormula) -> Self {
        NuFormula::Boxed(e.into(), Box::new(f))
    }

    pub fn nu(var: u32, body: NuFormula) -> Self {
        NuFormula::Nu(var, Box::new(body))
    }

    /// Negation normal form of an HML formula. Shared subformulas are
    /// expanded, so the result is a tree.
    pub fn from_hml(f: &Formula) -> Self {
        fn go(f: &Formula, pos: bool) -> NuFormula {
            match f.node() {
                Node::True if pos => NuFormula::True,
                Node::True => NuFormula::False,
                Node::Not(a) => go(a, !pos),
                Node::Dia(e, a) if pos => NuFormula::dia(&**e, go(a, true)),
                Node::Dia(e, a) => NuFormula::boxed(&**e, go(a, false)),
                Node::And(a, b) if pos => NuFormula::And(vec![go(a, true), go(b, true)]),
                Node::And(a, b) => NuFormula::Or(vec![go(a, false), go(b, false)]),
            }
        }
        go(f, true)
    }

    /// Largest variable index used, bound or free.
    fn max_var(&self) -> u32 {
        match self {
            NuFormula::True | NuFormula::False => 0,
            NuFormula::Var(v) => *v,
            NuFormula::And(xs) | NuFormula::Or(xs) => xs.iter().map(Self::max_var).max().unwrap_or(0),
            NuFormula::Dia(_, a) | NuFormula::Boxed(_, a) => a.max_var(),
            NuFormula::Nu(v, a) => (*v).max(a.max_var()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            NuFormula::True | NuFormula::False | NuFormula::Var(_) => 1,
            NuFormula::And(xs) | NuFormula::Or(xs) => 1 + xs.iter().map(Self::size).sum::<usize>(),
            NuFormula::Dia(_, a) | NuFormula::Boxed(_, a) | NuFormula::Nu(_, a) => 1 + a.size(),
        }
    }
}

/// `X_(M,s)`: one binder per state along each calling context, so a state
/// reached again inside its own body becomes a variable.
pub fn characteristic_nu(p: &Pointed) -> Result<NuFormula> {
    p.ensure_modal()?;
    let sys = p.system();
    let mut ctx: Vec<(StateId, u32)> = Vec::new();
    let mut next = 0;
    Ok(gen(sys, p.init(), &mut ctx, &mut next))
}

fn gen(sys: &System, s: StateId, ctx: &mut Vec<(StateId, u32)>, next: &mut u32) -> NuFormula {
    if let Some(&(_, v)) = ctx.iter().rev().find(|(t, _)| *t == s) {
        return NuFormula::Var(v);
    }
    *next += 1;
    let var = *next;
    ctx.push((s, var));
    let mut parts = Vec::new();
    for (e, t) in sys.out(Mode::A, s) {
        let name = sys.alphabet().name(e).to_string();
        parts.push(NuFormula::dia(name, gen(sys, t, ctx, next)));
    }
    for e in sys.alphabet().ids() {
        let succ: Vec<NuFormula> = sys
            .succ(Mode::C, s, e)
            .iter()
            .map(|&t| gen(sys, t, ctx, next))
            .collect();
        parts.push(NuFormula::boxed(sys.alphabet().name(e), NuFormula::or(succ)));
    }
    ctx.pop();
    NuFormula::nu(var, NuFormula::and(parts))
}

/// Evaluates a closed formula on an implementation. Each `nu` starts from
/// the full state set and iterates its body to stability.
pub fn check_nu(l: &Pointed, f: &NuFormula) -> Result<bool> {
    if !is_implementation(l) {
        return Err(Error::NotImplementation(format!(
            "state `{}` reaches a may-transition",
            l.init_name()
        )));
    }
    let sys = l.system();
    let mut env: Vec<Option<Vec<bool>>> = vec![None; f.max_var() as usize + 1];
    Ok(eval(sys, f, &mut env)?[l.init().0])
}

fn eval(sys: &System, f: &NuFormula, env: &mut Vec<Option<Vec<bool>>>) -> Result<Vec<bool>> {
    let n = sys.num_states();
    Ok(match f {
        NuFormula::True => vec![true; n],
        NuFormula::False => vec![false; n],
        NuFormula::Var(v) => env
            .get(*v as usize)
            .cloned()
            .flatten()
            .ok_or(Error::UnboundVariable(*v))?,
        NuFormula::And(xs) => {
            let mut acc = vec![true; n];
            for x in xs {
                let y = eval(sys, x, env)?;
                acc.iter_mut().zip(y).for_each(|(a, b)| *a &= b);
            }
            acc
        }
        NuFormula::Or(xs) => {
            let mut acc = vec![false; n];
            for x in xs {
                let y = eval(sys, x, env)?;
                acc.iter_mut().zip(y).for_each(|(a, b)| *a |= b);
            }
            acc
        }
        NuFormula::Dia(e, a) | NuFormula::Boxed(e, a) => {
            let ev = sys.alphabet().id(e).ok_or_else(|| Error::UnknownEvent(e.clone()))?;
            let inner = eval(sys, a, env)?;
            let dia = matches!(f, NuFormula::Dia(..));
            sys.states()
                .map(|s| {
                    let succ = sys.succ(Mode::C, s, ev);
                    if dia {
                        succ.iter().any(|t| inner[t.0])
                    } else {
                        succ.iter().all(|t| inner[t.0])
                    }
                })
                .collect()
        }
        NuFormula::Nu(v, body) => {
            let slot = *v as usize;
            let saved = env[slot].take();
            let mut cur = vec![true; n];
            loop {
                env[slot] = Some(cur.clone());
                let next = eval(sys, body, env)?;
                if next == cur {
                    break;
                }
                cur = next;
            }
            env[slot] = saved;
            cur
        }
    })
}

const OR: u8 = 1;
const AND: u8 = 2;
const UNARY: u8 = 3;

fn level(f: &NuFormula) -> u8 {
    match f {
        // a binder extends as far right as possible, so it is bracketed
        // everywhere except at the top or as another binder's body
        NuFormula::Nu(..) => 0,
        NuFormula::Or(_) => OR,
        NuFormula::And(_) => AND,
        _ => UNARY,
    }
}

fn write_nu(f: &NuFormula, ctx: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let paren = level(f) < ctx;
    if paren {
        out.write_str("(")?;
    }
    match f {
        NuFormula::True => out.write_str("tt")?,
        NuFormula::False => out.write_str("ff")?,
        NuFormula::Var(v) => write!(out, "X{v}")?,
        NuFormula::And(xs) | NuFormula::Or(xs) => {
            let (sep, inner) = if matches!(f, NuFormula::And(_)) {
                (" & ", UNARY)
            } else {
                (" | ", AND)
            };
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    out.write_str(sep)?;
                }
                write_nu(x, inner, out)?;
            }
        }
        NuFormula::Dia(e, a) => {
            write!(out, "<{e}>")?;
            write_nu(a, UNARY, out)?;
        }
        NuFormula::Boxed(e, a) => {
            write!(out, "[{e}]")?;
            write_nu(a, UNARY, out)?;
        }
        NuFormula::Nu(v, body) => {
            write!(out, "nu X{v} . ")?;
            write_nu(body, 0, out)?;
        }
    }
    if paren {
        out.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for NuFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_nu(self, 0, f)
    }
}

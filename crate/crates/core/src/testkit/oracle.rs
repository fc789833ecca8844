//! Reference implementations that avoid the fixpoint engine entirely.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::hml::Checker;
use crate::metrics::DyadicDistance;
use crate::mpa::{char_formula, enumerate, term_modal_depth, Term};
use crate::system::{Mode, Pointed, StateId, System};

/// Refinement as a game: the pair `(s, t)` survives `d` rounds if every
/// abstract must is answered by a concrete must, and every concrete may by an
/// abstract may, with the answering pair surviving `d - 1` rounds. With at
/// least `|M|·|N|` rounds the answer is exact.
pub fn brute_force_refines(abstract_: &Pointed, concrete: &Pointed, depth_cap: usize) -> Result<bool> {
    let (m, n) = (abstract_.system(), concrete.system());
    m.alphabet().ensure_same(n.alphabet())?;
    let need = m.num_states() * n.num_states();
    if depth_cap < need {
        return Err(Error::Precondition(format!(
            "depth cap {depth_cap} is below the product size {need}"
        )));
    }
    let mut memo = HashMap::new();
    Ok(survives(m, n, abstract_.init(), concrete.init(), depth_cap, &mut memo))
}

fn survives(
    m: &System,
    n: &System,
    s: StateId,
    t: StateId,
    d: usize,
    memo: &mut HashMap<(StateId, StateId, usize), bool>,
) -> bool {
    if d == 0 {
        return true;
    }
    if let Some(&v) = memo.get(&(s, t, d)) {
        return v;
    }
    let mut ok = true;
    'outer: for e in m.alphabet().ids() {
        for &s2 in m.succ(Mode::A, s, e) {
            let answered = n
                .succ(Mode::A, t, e)
                .iter()
                .any(|&t2| survives(m, n, s2, t2, d - 1, memo));
            if !answered {
                ok = false;
                break 'outer;
            }
        }
        for &t2 in n.succ(Mode::C, t, e) {
            let answered = m
                .succ(Mode::C, s, e)
                .iter()
                .any(|&s2| survives(m, n, s2, t2, d - 1, memo));
            if !answered {
                ok = false;
                break 'outer;
            }
        }
    }
    memo.insert((s, t, d), ok);
    ok
}

/// Depth-`k` approximant of a state as a term: `bot` at depth zero, `0` for
/// a deadlock, otherwise one prefix per transition.
fn approx(sys: &System, s: StateId, k: usize, memo: &mut HashMap<(StateId, usize), Term>) -> Term {
    if let Some(t) = memo.get(&(s, k)) {
        return t.clone();
    }
    let t = if k == 0 {
        Term::bot()
    } else {
        let mut parts = Vec::new();
        for e in sys.alphabet().ids() {
            for &d in sys.succ(Mode::C, s, e) {
                let cont = approx(sys, d, k - 1, memo);
                let must = sys.succ(Mode::A, s, e).contains(&d);
                let name = sys.alphabet().name(e);
                parts.push(if must { Term::must(name, cont) } else { Term::may(name, cont) });
            }
        }
        if parts.is_empty() {
            Term::nil()
        } else {
            Term::sum_all(parts).expect("prefixes are valid summands")
        }
    };
    memo.insert((s, k), t.clone());
    t
}

/// `D_k(s, t)`: does `t` satisfy the characteristic formula of the depth-`k`
/// approximant of `s`, for every pair of states.
fn satisfaction_matrix(
    from: &System,
    to_checker: &mut Checker<'_>,
    to: &System,
    k: usize,
    terms: &mut HashMap<(StateId, usize), Term>,
) -> Result<Vec<bool>> {
    let mut out = Vec::new();
    for s in from.states() {
        let t = approx(from, s, k, terms);
        let phi = char_formula(&t, from.alphabet())?;
        for q in to.states() {
            out.push(to_checker.holds(q, &phi, Mode::A)?);
        }
    }
    Ok(out)
}

/// Distance from model checking characteristic formulas: at depth `k`
/// compare which approximants of one side the other side satisfies. The
/// first `k` with a disagreement at the initial pair gives `2^-(k-1)`; if the
/// satisfaction matrices stop changing first, the distance is zero. Small
/// enumerated terms are checked on both sides as well, and must not
/// contradict the result.
pub fn oracle_distance(p: &Pointed, q: &Pointed, depth_cap: usize) -> Result<DyadicDistance> {
    let (ps, qs) = (p.system(), q.system());
    ps.alphabet().ensure_same(qs.alphabet())?;
    let mut pc = Checker::new(ps);
    let mut qc = Checker::new(qs);
    let (mut pt, mut qt) = (HashMap::new(), HashMap::new());
    let (mut prev_pq, mut prev_qp): (Option<Vec<bool>>, Option<Vec<bool>>) = (None, None);
    let init_pq = p.init().0 * qs.num_states() + q.init().0;
    let init_qp = q.init().0 * ps.num_states() + p.init().0;
    let mut result = None;
    for k in 1..=depth_cap + 1 {
        let pq = satisfaction_matrix(ps, &mut qc, qs, k, &mut pt)?;
        let qp = satisfaction_matrix(qs, &mut pc, ps, k, &mut qt)?;
        if !pq[init_pq] || !qp[init_qp] {
            result = Some(DyadicDistance::Pow(k as u32 - 1));
            break;
        }
        if prev_pq.as_ref() == Some(&pq) && prev_qp.as_ref() == Some(&qp) {
            result = Some(DyadicDistance::Zero);
            break;
        }
        prev_pq = Some(pq);
        prev_qp = Some(qp);
    }
    let result = result.ok_or(Error::BudgetExceeded { budget: depth_cap })?;

    // a term of depth d separating the two sides bounds the agreement depth by d
    for t in enumerate(ps.alphabet(), 1, 2) {
        let phi = char_formula(&t, ps.alphabet())?;
        let on_p = pc.holds(p.init(), &phi, Mode::A)?;
        let on_q = qc.holds(q.init(), &phi, Mode::A)?;
        if on_p != on_q {
            let bound = DyadicDistance::Pow(term_modal_depth(&t) as u32);
            if result < bound {
                return Err(Error::Internal(format!(
                    "term `{t}` separates the pair but the distance is {result}"
                )));
            }
        }
    }
    Ok(result)
}

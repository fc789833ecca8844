use crate::system::{Mode, Pointed, StateId, SystemBuilder, Transition};

fn rebuild(p: &Pointed, drop_state: Option<StateId>, drop_edge: Option<(Mode, Transition)>) -> Option<Pointed> {
    let sys = p.system();
    if drop_state == Some(p.init()) {
        return None;
    }
    let mut b = SystemBuilder::new(sys.kind(), sys.alphabet().clone());
    for s in sys.states().filter(|&s| Some(s) != drop_state) {
        b.state(sys.state_name(s));
    }
    for mode in [Mode::A, Mode::C] {
        for t in sys.relation(mode) {
            if drop_state.is_some_and(|d| t.src == d || t.dst == d) {
                continue;
            }
            // a dropped must goes from both relations; a dropped may only from r_c
            if let Some((m, e)) = drop_edge {
                if e == *t && (m == mode || (m == Mode::A && sys.is_modal())) {
                    continue;
                }
            }
            b.add_named(mode, sys.state_name(t.src), sys.alphabet().name(t.event), sys.state_name(t.dst))
                .expect("names come from the same system");
        }
    }
    let rebuilt = b.build().ok()?;
    Pointed::named(rebuilt, p.init_name()).ok()
}

/// One-step reductions of a system: first every single state deletion, then
/// every single transition deletion.
pub fn candidates(p: &Pointed) -> Vec<Pointed> {
    let sys = p.system();
    let mut out: Vec<Pointed> = sys.states().filter_map(|s| rebuild(p, Some(s), None)).collect();
    for mode in [Mode::A, Mode::C] {
        for t in sys.relation(mode) {
            if mode == Mode::C && sys.is_modal() && sys.has_transition(Mode::A, t) {
                // removing only the r_c half of a must would break modality
                continue;
            }
            out.extend(rebuild(p, None, Some((mode, *t))));
        }
    }
    out
}

/// Greedy minimization of a single failing system.
pub fn shrink_system(mut p: Pointed, fails: impl Fn(&Pointed) -> bool) -> Pointed {
    'progress: loop {
        for c in candidates(&p) {
            if fails(&c) {
                p = c;
                continue 'progress;
            }
        }
        return p;
    }
}

/// Greedy minimization of a failing pair: keeps applying the first reduction
/// of either side under which `fails` still holds.
pub fn shrink_pair(
    mut p: Pointed,
    mut q: Pointed,
    fails: impl Fn(&Pointed, &Pointed) -> bool,
) -> (Pointed, Pointed) {
    'progress: loop {
        for c in candidates(&p) {
            if fails(&c, &q) {
                p = c;
                continue 'progress;
            }
        }
        for c in candidates(&q) {
            if fails(&p, &c) {
                q = c;
                continue 'progress;
            }
        }
        return (p, q);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::refinement::refines;

    #[test]
    fn shrinks_to_a_small_witness() {
        // fig1 is not refined by fig1 at Drinks; the minimal pair keeps one must
        let (p, q) = shrink_pair(fixtures::fig1(), fixtures::fig1().at("Drinks").unwrap(), |a, b| {
            !refines(a, b).unwrap()
        });
        assert!(!refines(&p, &q).unwrap());
        assert!(p.system().num_states() + q.system().num_states() <= 3);
        assert!(p.system().relation(Mode::C).len() <= 1);
    }
}

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hml::Formula;
use crate::mpa::Term;
use crate::system::{EventAlphabet, Kind, Mode, Pointed, StateId, SystemBuilder, Transition};

/// Parameters of [`random_modal_system`]. Generation is a pure function of
/// the parameters, seed included.
#[derive(Clone, Debug, PartialEq)]
pub struct GenParams {
    pub states: RangeInclusive<usize>,
    pub events: RangeInclusive<usize>,
    /// Probability that a triple `(s, e, t)` becomes a must-transition.
    pub must_density: f64,
    /// Probability that a triple that is not a must becomes a may-transition.
    pub may_density: f64,
    pub seed: u64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            states: 1..=4,
            events: 1..=2,
            must_density: 0.2,
            may_density: 0.2,
            seed: 0,
        }
    }
}

impl GenParams {
    pub fn with_seed(&self, seed: u64) -> Self {
        GenParams { seed, ..self.clone() }
    }
}

pub fn event_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            let c = (b'a' + (i % 26) as u8) as char;
            if i < 26 {
                c.to_string()
            } else {
                format!("{c}{}", i / 26)
            }
        })
        .collect()
}

pub fn alphabet_of_size(n: usize) -> EventAlphabet {
    EventAlphabet::new(event_names(n)).expect("n > 0")
}

/// A modal system over states `s0, s1, ...` and events `a, b, ...`, pointed at
/// `s0` and trimmed to the reachable part.
pub fn random_modal_system(params: &GenParams) -> Pointed {
    assert!((0.0..=1.0).contains(&params.must_density));
    assert!((0.0..=1.0).contains(&params.may_density));
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let n = rng.gen_range(params.states.clone()).max(1);
    let k = rng.gen_range(params.events.clone()).max(1);
    let mut b = SystemBuilder::new(Kind::Modal, alphabet_of_size(k));
    let states: Vec<StateId> = (0..n).map(|i| b.state(&format!("s{i}"))).collect();
    for &s in &states {
        for e in 0..k {
            for &t in &states {
                let tr = Transition::new(s, crate::system::EventId(e), t);
                if rng.gen_bool(params.must_density) {
                    b.add(Mode::A, tr);
                    b.add(Mode::C, tr);
                } else if rng.gen_bool(params.may_density) {
                    b.add(Mode::C, tr);
                }
            }
        }
    }
    let sys = b.build().expect("modal by construction");
    sys.restrict_to_reachable(states[0])
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A term of depth at most `depth` whose sums have at most `width` summands.
pub fn random_term(rng: &mut impl Rng, alphabet: &EventAlphabet, depth: usize, width: usize) -> Term {
    if depth == 0 || rng.gen_bool(0.2) {
        return if rng.gen_bool(0.5) { Term::nil() } else { Term::bot() };
    }
    let events: Vec<&str> = alphabet.names().collect();
    let count = rng.gen_range(1..=width.max(1));
    let parts: Vec<Term> = (0..count)
        .map(|_| {
            let e = *events.choose(rng).expect("nonempty alphabet");
            let cont = random_term(rng, alphabet, depth - 1, width);
            if rng.gen_bool(0.5) {
                Term::must(e, cont)
            } else {
                Term::may(e, cont)
            }
        })
        .collect();
    Term::sum_all(parts).expect("prefixes are valid summands")
}

/// An HML formula of modal depth at most `depth`, using all derived forms.
pub fn random_formula(rng: &mut impl Rng, alphabet: &EventAlphabet, depth: usize) -> Formula {
    let events: Vec<&str> = alphabet.names().collect();
    let leaf = |rng: &mut dyn rand::RngCore| {
        if rng.gen_bool(0.5) {
            Formula::tt()
        } else {
            Formula::ff()
        }
    };
    if depth == 0 {
        return leaf(rng);
    }
    let e = *events.choose(rng).expect("nonempty alphabet");
    match rng.gen_range(0..7) {
        0 => leaf(rng),
        1 => Formula::not(random_formula(rng, alphabet, depth)),
        2 => Formula::dia(e, random_formula(rng, alphabet, depth - 1)),
        3 => Formula::boxed(e, random_formula(rng, alphabet, depth - 1)),
        4 => Formula::and(
            random_formula(rng, alphabet, depth - 1),
            random_formula(rng, alphabet, depth),
        ),
        5 => Formula::or(
            random_formula(rng, alphabet, depth),
            random_formula(rng, alphabet, depth - 1),
        ),
        _ => Formula::dia(e, Formula::tt()),
    }
}

/// A mixed system refinement-equivalent to `p` that satisfies the mix
/// condition but is not modal: every must-transition gets an asserted-only
/// twin leading to a fresh may-stub, which every state refines.
pub fn mixed_variant(p: &Pointed) -> Pointed {
    let sys = p.system();
    let mut b = SystemBuilder::new(Kind::Mixed, sys.alphabet().clone());
    for s in sys.states() {
        b.state(sys.state_name(s));
    }
    let stub = b.state("stub");
    for e in sys.alphabet().ids() {
        b.add(Mode::C, Transition::new(stub, e, stub));
    }
    for mode in [Mode::A, Mode::C] {
        for t in sys.relation(mode) {
            b.add(mode, *t);
        }
    }
    for t in sys.relation(Mode::A) {
        b.add(Mode::A, Transition::new(t.src, t.event, stub));
    }
    Pointed::new(b.build().expect("mixed systems are unconstrained"), p.init())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let p = GenParams::default().with_seed(7);
        assert_eq!(random_modal_system(&p), random_modal_system(&p));
    }

    #[test]
    fn zero_density_is_transition_free() {
        let p = GenParams {
            must_density: 0.0,
            may_density: 0.0,
            ..GenParams::default()
        };
        for seed in 0..20 {
            let s = random_modal_system(&p.with_seed(seed));
            assert!(s.system().relation(Mode::C).is_empty());
            assert_eq!(s.system().num_states(), 1);
        }
    }

    #[test]
    fn generated_systems_validate() {
        for seed in 0..100 {
            let s = random_modal_system(&GenParams::default().with_seed(seed));
            assert!(s.system().validate(true).is_empty());
        }
    }

    #[test]
    fn random_terms_respect_bounds() {
        let mut r = rng(3);
        let a = alphabet_of_size(2);
        for _ in 0..200 {
            let t = random_term(&mut r, &a, 3, 2);
            assert!(crate::mpa::term_modal_depth(&t) <= 3);
            assert!(crate::hml::modal_depth(&random_formula(&mut r, &a, 3)) <= 3);
        }
    }
}

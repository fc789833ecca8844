//! Randomized invariants of systems, logic, partial processes and metrics.

use proptest::prelude::*;

use mtskit::hml::{check, check3, check_nu, modal_depth, simplify, NuFormula, Verdict3};
use mtskit::metrics::{c1, c2_bounded, distance, DyadicDistance, IntervalEstimate};
use mtskit::mpa::{char_formula, operational_semantics, phi_probe, unfold_system, Term, TermNode};
use mtskit::refinement::{
    common_refinement, equivalence_depth, is_implementation, is_implementation_equivalent, refinement_equivalent,
    refines, Depth,
};
use mtskit::system::{must_projection, reachable, Mode, Pointed, SystemBuilder};
use mtskit::testkit::{random_formula, random_modal_system, random_term, rng, GenParams};

fn small(seed: u64) -> Pointed {
    random_modal_system(&GenParams {
        states: 1..=4,
        events: 2..=2,
        must_density: 0.2,
        may_density: 0.25,
        seed,
    })
}

fn sparse(seed: u64) -> Pointed {
    random_modal_system(&GenParams {
        states: 1..=3,
        events: 2..=2,
        must_density: 0.15,
        may_density: 0.1,
        seed,
    })
}

fn has_bot_or_may(t: &Term) -> bool {
    match t.node() {
        TermNode::Nil => false,
        TermNode::Bot | TermNode::May(..) => true,
        TermNode::Must(_, p) => has_bot_or_may(p),
        TermNode::Sum(a, b) => has_bot_or_may(a) || has_bot_or_may(b),
    }
}

fn with_extra_transition(p: &Pointed, seed: u64) -> Pointed {
    let sys = p.system();
    let mut b = SystemBuilder::new(sys.kind(), sys.alphabet().clone());
    for s in sys.states() {
        b.state(sys.state_name(s));
    }
    for mode in [Mode::A, Mode::C] {
        for t in sys.relation(mode) {
            b.add(mode, *t);
        }
    }
    let n = sys.num_states();
    let pick = |k: u64| mtskit::system::StateId((seed.wrapping_mul(k + 7) >> 3) as usize % n);
    let e = mtskit::system::EventId(seed as usize % sys.alphabet().len());
    b.add(Mode::C, mtskit::system::Transition::new(pick(1), e, pick(2)));
    Pointed::new(b.build().expect("adding a may keeps modality"), p.init())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn must_projection_is_an_implementation_below(x in any::<u64>()) {
        let p = small(x);
        let l = must_projection(&p);
        prop_assert!(is_implementation(&l));
        prop_assert!(refines(&p, &l).unwrap());
        let names = |q: &Pointed| -> Vec<String> {
            reachable(q).into_iter().map(|s| q.system().state_name(s).to_string()).collect()
        };
        let all = names(&p);
        prop_assert!(names(&l).iter().all(|s| all.contains(s)));
    }

    #[test]
    fn reachable_is_monotone(x in any::<u64>(), y in any::<u64>()) {
        let p = small(x);
        let bigger = with_extra_transition(&p, y);
        prop_assert!(reachable(&p).is_subset(&reachable(&bigger)));
    }

    #[test]
    fn constructed_systems_validate(x in any::<u64>()) {
        let p = small(x);
        prop_assert!(p.system().validate(true).is_empty());
        let t = random_term(&mut rng(x), p.alphabet(), 3, 2);
        let s = operational_semantics(&t, p.alphabet()).unwrap();
        prop_assert!(s.system().validate(true).is_empty());
        prop_assert!(s.system().is_modal());
        prop_assert_eq!(is_implementation(&s), !has_bot_or_may(&t));
    }

    #[test]
    fn asserted_implies_consistent(x in any::<u64>()) {
        let p = small(x);
        let mut r = rng(x);
        let l = must_projection(&p);
        for _ in 0..20 {
            let f = random_formula(&mut r, p.alphabet(), 3);
            if check(&p, &f, Mode::A).unwrap() {
                prop_assert!(check(&p, &f, Mode::C).unwrap());
            }
            prop_assert_eq!(check(&l, &f, Mode::A).unwrap(), check(&l, &f, Mode::C).unwrap());
            prop_assert_ne!(check3(&l, &f).unwrap(), Verdict3::Unknown);
        }
    }

    #[test]
    fn refinement_preserves_asserted_formulas(x in any::<u64>(), y in any::<u64>()) {
        let (p, q) = (small(x), small(y));
        let mut r = rng(y);
        let concretes = [must_projection(&p), q];
        for c in concretes.iter().filter(|c| refines(&p, c).unwrap()) {
            for _ in 0..20 {
                let f = random_formula(&mut r, p.alphabet(), 3);
                if check(&p, &f, Mode::A).unwrap() {
                    prop_assert!(check(c, &f, Mode::A).unwrap());
                }
            }
        }
    }

    #[test]
    fn simplification_preserves_both_judgments(x in any::<u64>()) {
        let p = small(x);
        let mut r = rng(x ^ 1);
        for _ in 0..20 {
            let f = random_formula(&mut r, p.alphabet(), 4);
            let g = simplify(&f);
            prop_assert!(modal_depth(&g) <= modal_depth(&f));
            for m in [Mode::A, Mode::C] {
                prop_assert_eq!(check(&p, &f, m).unwrap(), check(&p, &g, m).unwrap(), "{} vs {}", f, g);
            }
        }
    }

    #[test]
    fn nu_without_binders_is_hml(x in any::<u64>()) {
        let l = must_projection(&small(x));
        let mut r = rng(x);
        for _ in 0..20 {
            let f = random_formula(&mut r, l.alphabet(), 3);
            let nu = NuFormula::from_hml(&f);
            prop_assert_eq!(check_nu(&l, &nu).unwrap(), check(&l, &f, Mode::A).unwrap());
        }
    }

    #[test]
    fn characteristic_formulas_interchange_refinement(x in any::<u64>(), y in any::<u64>()) {
        let q = small(y);
        let t = random_term(&mut rng(x), q.alphabet(), 3, 2);
        let p = operational_semantics(&t, q.alphabet()).unwrap();
        let phi = char_formula(&t, q.alphabet()).unwrap();
        prop_assert_eq!(refines(&p, &q).unwrap(), check(&q, &phi, Mode::A).unwrap());
        let l = must_projection(&p);
        prop_assert!(check(&l, &phi, Mode::A).unwrap());
    }

    #[test]
    fn unfoldings_form_a_chain_below(x in any::<u64>()) {
        let p = small(x);
        let mut prev: Option<Pointed> = None;
        for m in 0..4u32 {
            let u = unfold_system(&p, m as usize).unwrap();
            prop_assert!(refines(&u, &p).unwrap());
            prop_assert!(equivalence_depth(&p, &u).unwrap() >= Depth::Finite(m));
            prop_assert!(distance(&p, &u).unwrap() <= DyadicDistance::Pow(m));
            if let Some(prev) = &prev {
                prop_assert!(refines(prev, &u).unwrap());
            }
            prev = Some(u);
        }
    }

    #[test]
    fn probes_characterize_implementations(x in any::<u64>()) {
        let q = small(x);
        let mut r = rng(x);
        let names: Vec<String> = q.alphabet().names().map(str::to_string).collect();
        let equiv = is_implementation_equivalent(&q).unwrap();
        for i in 0..20usize {
            let trace: Vec<&str> = (0..i % 3).map(|j| names[(i + j) % names.len()].as_str()).collect();
            let t = random_term(&mut r, q.alphabet(), 2, 2);
            let f = phi_probe(&trace, &names[i % names.len()], &t, q.alphabet()).unwrap();
            let holds = check(&q, &f, Mode::A).unwrap();
            if equiv {
                prop_assert!(holds);
            }
            if !holds {
                prop_assert!(!equiv);
            }
        }
    }

    #[test]
    fn distance_is_an_ultrametric(x in any::<u64>(), y in any::<u64>(), z in any::<u64>()) {
        let (p, q, r) = (small(x), small(y), small(z));
        let pq = distance(&p, &q).unwrap();
        prop_assert_eq!(pq, distance(&q, &p).unwrap());
        prop_assert_eq!(pq.is_zero(), refinement_equivalent(&p, &q).unwrap());
        prop_assert!(distance(&p, &r).unwrap() <= pq.max(distance(&q, &r).unwrap()));
    }

    #[test]
    fn c1_kernel_is_common_refinement(x in any::<u64>(), y in any::<u64>()) {
        let (p, q) = (small(x), small(y));
        let d = c1(&p, &q).unwrap();
        prop_assert_eq!(d, c1(&q, &p).unwrap());
        prop_assert_eq!(d.is_zero(), common_refinement(&p, &q).unwrap().is_some());
    }
}

fn below(a: IntervalEstimate, b: IntervalEstimate) -> bool {
    a.lower <= b.upper
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn c2_bounds_c1_and_is_ultrametric(x in any::<u64>(), y in any::<u64>(), z in any::<u64>()) {
        let (p, q, r) = (sparse(x), sparse(y), sparse(z));
        let k = 3;
        let (Ok(pq), Ok(qp), Ok(pr), Ok(qr)) = (
            c2_bounded(&p, &q, k),
            c2_bounded(&q, &p, k),
            c2_bounded(&p, &r, k),
            c2_bounded(&q, &r, k),
        ) else {
            // over budget: nothing to compare
            return Ok(());
        };
        prop_assert_eq!(pq, qp);
        prop_assert!(below(IntervalEstimate::exact(c1(&p, &q).unwrap()), pq));
        let bound = pr.upper.max(qr.upper);
        prop_assert!(pq.lower <= bound);
    }
}

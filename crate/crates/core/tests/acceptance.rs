//! Acceptance criteria 1-13. Every criterion runs on its own thread and
//! prints one PASS/FAIL line; the process exits non-zero if any fails. This
//! target has no libtest harness so the lines are always shown.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;

use mtskit::cli;
use mtskit::fixtures;
use mtskit::hml::{characteristic_nu, check, check_nu, Formula};
use mtskit::io::{
    parse_formula, parse_nu_formula, parse_system, parse_term, print_formula, print_nu_formula, print_system,
    print_term, CliResult,
};
use mtskit::metrics::{
    c1, c2_bounded, distance, enumerate_bounded_implementations, hausdorff_bounded, DyadicDistance,
};
use mtskit::mpa::{char_formula, enumerate, operational_semantics, phi_probe, unfold, unfold_system, Term};
use mtskit::refinement::{
    common_refinement, distinguishing_formula, is_implementation_equivalent, normalize_mixed, refinement_equivalent,
    refines,
};
use mtskit::system::{must_projection, Mode, Pointed};
use mtskit::testkit::{
    brute_force_refines, candidates, oracle_distance, random_formula, random_modal_system, random_term, rng,
    GenParams,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T>(r: mtskit::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn params(states: std::ops::RangeInclusive<usize>, events: std::ops::RangeInclusive<usize>, seed: u64) -> GenParams {
    GenParams {
        states,
        events,
        must_density: 0.2,
        may_density: 0.25,
        seed,
    }
}

/// Small corpus for the bounded-enumeration criteria: few may-transitions so
/// that implementation cuts at depth 3 stay within the default budget.
fn sparse(seed: u64) -> Pointed {
    random_modal_system(&GenParams {
        states: 1..=4,
        events: 1..=2,
        must_density: 0.2,
        may_density: 0.1,
        seed,
    })
}

/// A random one-step reduction of `p`, or `p` itself.
fn perturb(p: &Pointed, r: &mut impl Rng) -> Pointed {
    candidates(p).choose(r).cloned().unwrap_or_else(|| p.clone())
}

fn timed<T>(limit: Duration, f: impl FnOnce() -> T) -> Result<T, String> {
    let start = Instant::now();
    let v = f();
    let t = start.elapsed();
    ensure!(t < limit, "took {t:?}, limit {limit:?}");
    Ok(v)
}

fn criterion_1() -> Outcome {
    let second = Duration::from_secs(1);
    let waits = ok(fixtures::fig1().at("Waits"))?;
    let waits3 = ok(fixtures::fig3().at("Waits"))?;
    ensure!(ok(timed(second, || refines(&waits, &waits3))?)?, "fig3 does not refine fig1");
    let norm = ok(timed(second, || normalize_mixed(&fixtures::fig4_left()))?)?;
    ensure!(
        ok(refinement_equivalent(&norm, &fixtures::fig4_right()))?,
        "normalized fig4 left is not equivalent to fig4 right"
    );
    let tom = ok(fixtures::fig3().at("TomDrinks"))?;
    let u = ok(timed(second, || unfold_system(&tom, 1))?)?;
    ensure!(ok(refinement_equivalent(&u, &fixtures::fig8()))?, "unfold at TomDrinks differs from fig8");
    Ok(format!("unfold = {}", print_term(&ok(unfold(&tom, 1))?)))
}

fn criterion_2() -> Outcome {
    let talks = ok(fixtures::fig1().at("Talks"))?;
    let waits = ok(fixtures::fig1().at("Waits"))?;
    let f = |s: &str| parse_formula(s).map_err(|e| e.to_string());
    let cases = [
        (&talks, "<drinks>tt", Mode::C, true),
        (&talks, "<drinks>tt", Mode::A, false),
        (&talks, "<drinks>tt | !<drinks>tt", Mode::A, false),
        (&waits, "[newPint][talks](<drinks>tt | !<drinks>tt)", Mode::A, false),
    ];
    for (p, text, mode, want) in cases {
        let got = ok(check(p, &f(text)?, mode))?;
        ensure!(got == want, "{text} in mode {mode:?} at {}: got {got}", p.init_name());
    }
    Ok("4 judgments".into())
}

fn criterion_3() -> Outcome {
    let (mut total, mut positive) = (0, 0);
    for seed in 0..600u64 {
        let random = random_modal_system(&params(1..=6, 1..=3, seed));
        let alphabet = random.alphabet().clone();
        let mut r = rng(seed);
        let depth = r.gen_range(0..=4);
        let term = random_term(&mut r, &alphabet, depth, 2);
        let sos = ok(operational_semantics(&term, &alphabet))?;
        let q = match seed % 3 {
            0 => random,
            1 => must_projection(&sos),
            _ => ok(operational_semantics(&random_term(&mut r, &alphabet, depth, 2), &alphabet))?,
        };
        let phi = ok(char_formula(&term, &alphabet))?;
        let by_refinement = ok(refines(&sos, &q))?;
        let by_logic = ok(check(&q, &phi, Mode::A))?;
        ensure!(
            by_refinement == by_logic,
            "seed {seed}: term {term}: refines {by_refinement}, check {by_logic}\n{}",
            print_system(&q)
        );
        total += 1;
        positive += by_refinement as usize;
    }
    Ok(format!("{total} pairs, {positive} refining"))
}

/// A pair `(abstract, concrete)` with the concrete side refining the abstract one.
fn refining_pair(seed: u64) -> Result<(Pointed, Pointed), String> {
    let p = random_modal_system(&params(1..=4, 1..=2, seed));
    let mut r = rng(seed);
    Ok(match seed % 4 {
        0 => {
            let mp = must_projection(&p);
            (p, mp)
        }
        1 => (ok(unfold_system(&p, r.gen_range(0..=3)))?, p),
        2 => {
            let q = perturb(&p, &mut r);
            if ok(refines(&p, &q))? {
                (p, q)
            } else {
                (q.clone(), must_projection(&q))
            }
        }
        _ => {
            let q = ok(normalize_mixed(&mtskit::testkit::mixed_variant(&p)))?;
            (q, p)
        }
    })
}

fn criterion_4() -> Outcome {
    let mut checks = 0;
    for seed in 0..200u64 {
        let (m, n) = refining_pair(seed)?;
        ensure!(ok(refines(&m, &n))?, "seed {seed}: generated pair does not refine");
        let mut r = rng(seed ^ 0xf0);
        for _ in 0..50 {
            let f = random_formula(&mut r, m.alphabet(), 3);
            let (ma, mc) = (ok(check(&m, &f, Mode::A))?, ok(check(&m, &f, Mode::C))?);
            let (na, nc) = (ok(check(&n, &f, Mode::A))?, ok(check(&n, &f, Mode::C))?);
            ensure!(!ma || na, "seed {seed}: asserted {f} lost by refinement");
            ensure!(!nc || mc, "seed {seed}: consistent {f} not reflected");
            ensure!((!ma || mc) && (!na || nc), "seed {seed}: asserted but not consistent: {f}");
            checks += 1;
        }
    }
    Ok(format!("200 refining pairs, {checks} formulas, 0 violations"))
}

fn criterion_5() -> Outcome {
    let (mut pairs, mut seed) = (0, 0u64);
    while pairs < 250 {
        let p = random_modal_system(&params(1..=4, 1..=2, seed));
        let q = if seed % 2 == 0 {
            random_modal_system(&params(1..=4, 1..=2, seed + 100_000).clone())
        } else {
            perturb(&p, &mut rng(seed))
        };
        seed += 1;
        if q.alphabet() != p.alphabet() || ok(refines(&p, &q))? {
            continue;
        }
        let f = ok(distinguishing_formula(&p, &q))?;
        ensure!(ok(check(&p, &f, Mode::A))?, "formula {f} fails on the abstract side");
        ensure!(!ok(check(&q, &f, Mode::A))?, "formula {f} holds on the concrete side");
        pairs += 1;
    }
    Ok(format!("{pairs} non-refining pairs"))
}

fn criterion_6() -> Outcome {
    let mut nonzero_below_one = 0;
    let mut oracle_pairs = 0;
    for seed in 0..1000u64 {
        let mut r = rng(seed);
        let p = random_modal_system(&params(1..=4, 1..=2, seed));
        let related = |r: &mut rand_chacha::ChaCha8Rng| -> Result<Pointed, String> {
            Ok(match r.gen_range(0..3) {
                0 => random_modal_system(&params(1..=4, 1..=2, r.gen())).with_alphabet(p.alphabet()).unwrap_or_else(|_| perturb(&p, r)),
                1 => perturb(&p, r),
                _ => ok(unfold_system(&p, r.gen_range(0..=3)))?,
            })
        };
        let q = related(&mut r)?;
        let s = related(&mut r)?;
        let pq = ok(distance(&p, &q))?;
        ensure!(pq == ok(distance(&q, &p))?, "seed {seed}: asymmetric");
        let cap = p.system().num_states() * q.system().num_states();
        let equivalent = ok(brute_force_refines(&p, &q, cap))? && ok(brute_force_refines(&q, &p, cap))?;
        ensure!(pq.is_zero() == equivalent, "seed {seed}: kernel mismatch, distance {pq}");
        let bound = ok(distance(&p, &s))?.max(ok(distance(&s, &q))?);
        ensure!(pq <= bound, "seed {seed}: d(p,q) = {pq} exceeds max(d(p,r), d(r,q)) = {bound}");
        if pq != DyadicDistance::Zero && pq != DyadicDistance::ONE {
            nonzero_below_one += 1;
        }
        if p.system().num_states() <= 4 && q.system().num_states() <= 4 {
            let oracle = ok(oracle_distance(&p, &q, cap))?;
            ensure!(oracle == pq, "seed {seed}: distance {pq}, oracle {oracle}");
            oracle_pairs += 1;
        }
    }
    Ok(format!(
        "1000 triples ({nonzero_below_one} with 0 < d < 1), {oracle_pairs} oracle pairs"
    ))
}

fn criterion_7() -> Outcome {
    for seed in 0..100u64 {
        let p = random_modal_system(&params(1..=5, 1..=2, seed));
        let mut prev: Option<Pointed> = None;
        for m in 0..=5 {
            let u = ok(unfold_system(&p, m))?;
            let d = ok(distance(&p, &u))?;
            ensure!(d <= DyadicDistance::Pow(m as u32), "seed {seed}, m {m}: distance {d}");
            ensure!(ok(refines(&u, &p))?, "seed {seed}, m {m}: p does not refine its unfolding");
            if let Some(prev) = &prev {
                ensure!(ok(refines(prev, &u))?, "seed {seed}, m {m}: unfoldings are not a chain");
            }
            prev = Some(u);
        }
    }
    Ok("100 systems, m = 0..5".into())
}

fn criterion_8() -> Outcome {
    let mut witnesses = 0;
    for seed in 0..300u64 {
        let p = random_modal_system(&params(1..=4, 1..=2, seed));
        let mut r = rng(seed);
        let q = match seed % 3 {
            0 => random_modal_system(&params(1..=4, 1..=2, seed + 7_000)),
            1 => perturb(&p, &mut r),
            _ => ok(unfold_system(&perturb(&p, &mut r), r.gen_range(0..=2)))?,
        };
        if q.alphabet() != p.alphabet() {
            continue;
        }
        let zero = ok(c1(&p, &q))?.is_zero();
        let w = ok(common_refinement(&p, &q))?;
        ensure!(zero == w.is_some(), "seed {seed}: c1 zero {zero}, witness {}", w.is_some());
        if let Some(w) = w {
            ensure!(ok(refines(&p, &w))? && ok(refines(&q, &w))?, "seed {seed}: witness does not refine");
            ensure!(w.system().is_modal(), "seed {seed}: witness not modal");
            witnesses += 1;
        }
    }
    Ok(format!("300 seeds, {witnesses} witnesses"))
}

const K: usize = 3;

struct Corpus {
    /// Each pair with its depth-`K` implementation cuts.
    pairs: Vec<(Pointed, Pointed, Vec<Term>, Vec<Term>)>,
    /// Generated pairs whose cuts do not fit the enumeration budget.
    rejected: usize,
}

/// Pairs for criteria 9 and 10: sparse systems with at most 4 states over at
/// most 2 events. A pair is kept when both sides can be enumerated within the
/// default budget; the number of rejected pairs is reported.
fn small_corpus() -> Corpus {
    let mut pairs = Vec::new();
    let mut rejected = 0;
    let mut seed = 0;
    while pairs.len() < 150 {
        let p = sparse(seed);
        let mut r = rng(seed);
        let q = match seed % 3 {
            0 => sparse(seed + 50_000),
            1 => perturb(&p, &mut r),
            _ => perturb(&perturb(&p, &mut r), &mut r),
        };
        seed += 1;
        if q.alphabet() != p.alphabet() {
            continue;
        }
        match (enumerate_bounded_implementations(&p, K), enumerate_bounded_implementations(&q, K)) {
            (Ok(l), Ok(r)) => pairs.push((p, q, l, r)),
            _ => rejected += 1,
        }
    }
    Corpus { pairs, rejected }
}

/// `k`-bisimilarity of two implementation terms.
fn agree(x: &Term, y: &Term, k: usize, memo: &mut HashMap<(usize, usize, usize), bool>) -> bool {
    if k == 0 {
        return true;
    }
    if let Some(&v) = memo.get(&(x.id(), y.id(), k)) {
        return v;
    }
    let steps = |t: &Term| -> Vec<(String, Term)> {
        if t.is_nil() {
            return Vec::new();
        }
        t.summands()
            .into_iter()
            .map(|s| {
                let (e, _, c) = s.as_prefix().expect("implementation summands are prefixes");
                (e.to_string(), c.clone())
            })
            .collect()
    };
    let (xs, ys) = (steps(x), steps(y));
    // k-bisimilarity is symmetric, so both directions can call `agree(a, b)`
    let mut covered = |from: &[(String, Term)], to: &[(String, Term)]| {
        from.iter()
            .all(|(e, a)| to.iter().any(|(f, b)| f == e && agree(a, b, k - 1, memo)))
    };
    let v = covered(&xs, &ys) && covered(&ys, &xs);
    memo.insert((x.id(), y.id(), k), v);
    v
}

fn criterion_9() -> Outcome {
    let corpus = small_corpus();
    let mut sizes = 0;
    for (i, (p, q, left, right)) in corpus.pairs.iter().enumerate() {
        sizes += left.len() * right.len();
        let mut memo = HashMap::new();
        // least truncated distance over all pairs of cuts
        let mut best = DyadicDistance::ONE;
        'search: for x in left {
            for y in right {
                let n = (0..=K).take_while(|&k| agree(x, y, k, &mut memo)).last().expect("0-bisimilar");
                best = best.min(DyadicDistance::Pow(n as u32).truncate(K as u32));
                if best.is_zero() {
                    break 'search;
                }
            }
        }
        let want = ok(c1(p, q))?.truncate(K as u32);
        ensure!(
            best == want,
            "pair {i}: c1 {want}, brute force {best}\n{}---\n{}",
            print_system(p),
            print_system(q)
        );
    }
    Ok(format!(
        "{} pairs, {sizes} implementation pairs, {} over budget",
        corpus.pairs.len(),
        corpus.rejected
    ))
}

fn criterion_10() -> Outcome {
    let corpus = small_corpus();
    let mut exact = 0;
    for (i, (p, q, _, _)) in corpus.pairs.iter().enumerate() {
        let lo = ok(c1(p, q))?;
        let h = ok(hausdorff_bounded(p, q, K as u32))?;
        let hi = ok(c2_bounded(p, q, K as u32))?;
        ensure!(lo <= h.upper, "pair {i}: c1 {lo} above hausdorff {h}");
        ensure!(h.lower <= hi.upper, "pair {i}: hausdorff {h} above c2 {hi}");
        if h.exact && hi.exact {
            ensure!(h.lower <= hi.lower, "pair {i}: hausdorff {h} above c2 {hi}");
            exact += 1;
        }
    }
    Ok(format!(
        "{} pairs, {exact} with both estimates exact, {} over budget",
        corpus.pairs.len(),
        corpus.rejected
    ))
}

fn criterion_11() -> Outcome {
    let (mut pairs, mut positive) = (0, 0);
    for seed in 0..200u64 {
        let m = random_modal_system(&params(1..=4, 1..=2, seed));
        let nu = ok(characteristic_nu(&m))?;
        let mut ls = vec![
            must_projection(&m),
            must_projection(&random_modal_system(&params(1..=4, 1..=2, seed + 9_000))),
        ];
        if let Ok(impls) = enumerate_bounded_implementations(&m, 2) {
            ls.extend(impls.iter().take(4).map(|t| operational_semantics(t, m.alphabet()).expect("same alphabet")));
        }
        for l in ls {
            let Ok(l) = l.with_alphabet(m.alphabet()) else { continue };
            if l.alphabet() != m.alphabet() {
                continue;
            }
            let by_nu = ok(check_nu(&l, &nu))?;
            let by_refinement = ok(refines(&m, &l))?;
            ensure!(by_nu == by_refinement, "seed {seed}: nu {by_nu}, refines {by_refinement}\n{}", print_system(&l));
            pairs += 1;
            positive += by_nu as usize;
        }
    }
    ensure!(pairs >= 300, "only {pairs} pairs");
    Ok(format!("{pairs} pairs, {positive} satisfied"))
}

fn probes(alphabet: &mtskit::EventAlphabet, r: &mut impl Rng) -> Vec<Formula> {
    let terms = enumerate(alphabet, 2, 1);
    let names: Vec<&str> = alphabet.names().collect();
    let mut out = Vec::new();
    for _ in 0..40 {
        let len = r.gen_range(0..=2);
        let trace: Vec<&str> = (0..len).map(|_| *names.choose(r).expect("nonempty")).collect();
        let e = *names.choose(r).expect("nonempty");
        let t = terms.choose(r).expect("nonempty");
        out.push(phi_probe(&trace, e, t, alphabet).expect("events come from the alphabet"));
    }
    out
}

fn criterion_12() -> Outcome {
    let (mut failing, mut checked) = (0, 0);
    for seed in 0..150u64 {
        let p = random_modal_system(&params(1..=4, 1..=2, seed));
        let mut r = rng(seed);
        let ps = probes(p.alphabet(), &mut r);
        let imp = must_projection(&p);
        for f in &ps {
            ensure!(ok(check(&imp, f, Mode::A))?, "seed {seed}: implementation fails probe {f}");
        }
        let fails = ps.iter().any(|f| !check(&p, f, Mode::A).unwrap_or(true));
        let equiv = ok(is_implementation_equivalent(&p))?;
        if fails {
            failing += 1;
            ensure!(!equiv, "seed {seed}: fails a probe but is implementation-equivalent");
        }
        ensure!(equiv == ok(refines(&imp, &p))?, "seed {seed}: disagrees with refines");
        let cap = imp.system().num_states() * p.system().num_states();
        ensure!(
            equiv == ok(brute_force_refines(&imp, &p, cap))?,
            "seed {seed}: disagrees with brute force"
        );
        checked += 1;
    }
    Ok(format!("{checked} systems, {failing} failing some probe"))
}

fn fixture_path(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(std::iter::once("mtskit").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).expect("utf-8 output"))
}

fn criterion_13() -> Outcome {
    let mut systems: Vec<Pointed> = fixtures::all();
    systems.extend((0..200).map(|s| random_modal_system(&params(1..=6, 1..=3, s))));
    for p in &systems {
        let text = print_system(p);
        let back = ok(parse_system(&text))?;
        ensure!(&back == p, "system round trip changed\n{text}");
        ensure!(print_system(&back) == text, "printing is not stable\n{text}");
        let modal = if p.system().is_modal() { p.clone() } else { ok(normalize_mixed(p))? };
        let nu = ok(characteristic_nu(&modal))?;
        let nu_text = print_nu_formula(&nu);
        ensure!(ok(parse_nu_formula(&nu_text))? == nu, "nu round trip changed {nu_text}");
    }
    let mut r = rng(13);
    let alphabet = mtskit::testkit::alphabet_of_size(3);
    for _ in 0..500 {
        let f = random_formula(&mut r, &alphabet, 4);
        let text = print_formula(&f);
        ensure!(ok(parse_formula(&text))? == f, "formula round trip changed {text}");
        let t = random_term(&mut r, &alphabet, 4, 3);
        let text = print_term(&t);
        ensure!(ok(parse_term(&text))? == t, "term round trip changed {text}");
    }
    let (f1, f3) = (fixture_path("fig1.mts"), fixture_path("fig3.mts"));
    let commands: Vec<Vec<&str>> = vec![
        vec!["--json", "refines", &f1, &f3],
        vec!["--json", "distance", &f1, &f3],
        vec!["--json", "depth", &f3, &f1],
        vec!["--json", "check", "--mode", "3", "--formula", "<drinks>tt", &f1, "--state", "Talks"],
        vec!["--json", "c2", &f1, &f1, "--depth", "2"],
        vec!["--json", "unfold", &f3, "-m", "2", "--as-term"],
        vec!["--json", "charformula", &f1, "--nu"],
        vec!["--json", "--seed", "4", "random"],
    ];
    for args in &commands {
        let (code, first) = run_cli(args);
        ensure!(code == 0, "{args:?} exited {code}");
        let (_, second) = run_cli(args);
        ensure!(first == second, "{args:?} is not byte-deterministic");
        let parsed: CliResult = serde_json::from_str(&first).map_err(|e| e.to_string())?;
        ensure!(parsed.schema == 1, "schema {}", parsed.schema);
        ensure!(format!("{}\n", parsed.to_json()) == first, "{args:?}: JSON does not round-trip");
    }
    Ok(format!("{} systems, 500 formulas and terms, {} CLI commands", systems.len(), commands.len()))
}

fn main() {
    let criteria: Vec<(u32, fn() -> Outcome)> = vec![
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
        (12, criterion_12),
        (13, criterion_13),
    ];
    let results: Vec<(u32, Outcome, Duration)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(n, f)| {
                s.spawn(move || {
                    let start = Instant::now();
                    let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".to_string()));
                    (n, r, start.elapsed())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("joined")).collect()
    });
    let mut failed = Vec::new();
    for (n, r, t) in &results {
        match r {
            Ok(detail) => println!("criterion {n:>2}: PASS ({detail}; {:.2}s)", t.as_secs_f64()),
            Err(why) => {
                println!("criterion {n:>2}: FAIL ({why})");
                failed.push(*n);
            }
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}

//! Seeded cross-validation suites. Case `i` of a run with seed `s` uses seed
//! `s + i`, so a failure can be replayed alone with `--cases 1`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hml::check;
use crate::io::{print_system, print_term};
use crate::metrics::{c1, distance, DyadicDistance};
use crate::mpa::{char_formula, operational_semantics};
use crate::refinement::{common_refinement, refinement_equivalent, refines};
use crate::system::{Mode, Pointed};

use super::gen::{random_modal_system, random_term, rng, GenParams};
use super::oracle::oracle_distance;
use super::shrink::{shrink_pair, shrink_system};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Psip,
    Metrics,
    Consistency,
    All,
}

impl Suite {
    fn parts(self) -> &'static [Suite] {
        match self {
            Suite::All => &[Suite::Psip, Suite::Metrics, Suite::Consistency],
            Suite::Psip => &[Suite::Psip],
            Suite::Metrics => &[Suite::Metrics],
            Suite::Consistency => &[Suite::Consistency],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Psip => "psip",
            Suite::Metrics => "metrics",
            Suite::Consistency => "consistency",
            Suite::All => "all",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "psip" => Ok(Suite::Psip),
            "metrics" => Ok(Suite::Metrics),
            "consistency" => Ok(Suite::Consistency),
            "all" => Ok(Suite::All),
            other => Err(Error::Precondition(format!("unknown suite `{other}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Failure {
    pub suite: Suite,
    pub seed: u64,
    pub property: &'static str,
    /// Minimized counterexample in the text formats.
    pub reproduction: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FAIL {} seed={} property={}", self.suite, self.seed, self.property)?;
        f.write_str(&self.reproduction)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub cases: usize,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn small() -> GenParams {
    GenParams {
        states: 1..=4,
        events: 2..=2,
        must_density: 0.2,
        may_density: 0.25,
        seed: 0,
    }
}

fn show_pair(p: &Pointed, q: &Pointed) -> String {
    format!("--- left\n{}--- right\n{}", print_system(p), print_system(q))
}

fn psip_case(seed: u64) -> Result<Option<Failure>> {
    let q = random_modal_system(&GenParams {
        states: 1..=5,
        ..small().with_seed(seed)
    });
    let term = random_term(&mut rng(seed ^ 0x5eed), q.alphabet(), 3, 2);
    let phi = char_formula(&term, q.alphabet())?;
    let p = operational_semantics(&term, q.alphabet())?;
    let disagree = |q: &Pointed| -> bool {
        refines(&p, q).ok() != check(q, &phi, Mode::A).ok()
    };
    if !disagree(&q) {
        return Ok(None);
    }
    let q = shrink_system(q, disagree);
    Ok(Some(Failure {
        suite: Suite::Psip,
        seed,
        property: "refines(sos(t), q) iff q |=a phi_t",
        reproduction: format!("term: {}\n--- system\n{}", print_term(&term), print_system(&q)),
    }))
}

fn metric_violation(p: &Pointed, q: &Pointed, r: &Pointed) -> Result<Option<&'static str>> {
    let pq = distance(p, q)?;
    if pq != distance(q, p)? {
        return Ok(Some("symmetry"));
    }
    if pq.is_zero() != refinement_equivalent(p, q)? {
        return Ok(Some("kernel"));
    }
    if pq > distance(p, r)?.max(distance(r, q)?) {
        return Ok(Some("strong triangle"));
    }
    let cap = p.system().num_states() * q.system().num_states();
    if pq != oracle_distance(p, q, cap)? {
        return Ok(Some("oracle agreement"));
    }
    Ok(None)
}

fn metrics_case(seed: u64) -> Result<Option<Failure>> {
    let gen = |k: u64| random_modal_system(&small().with_seed(seed.wrapping_mul(3).wrapping_add(k)));
    let (p, q, r) = (gen(0), gen(1), gen(2));
    let Some(property) = metric_violation(&p, &q, &r)? else {
        return Ok(None);
    };
    let (p, q) = shrink_pair(p, q, |a, b| metric_violation(a, b, &r).ok().flatten() == Some(property));
    Ok(Some(Failure {
        suite: Suite::Metrics,
        seed,
        property,
        reproduction: format!("{}--- third\n{}", show_pair(&p, &q), print_system(&r)),
    }))
}

fn consistency_violation(p: &Pointed, q: &Pointed) -> Result<bool> {
    let zero = c1(p, q)? == DyadicDistance::Zero;
    Ok(match common_refinement(p, q)? {
        Some(w) => !zero || !refines(p, &w)? || !refines(q, &w)?,
        None => zero,
    })
}

fn consistency_case(seed: u64) -> Result<Option<Failure>> {
    let gen = |k: u64| random_modal_system(&small().with_seed(seed.wrapping_mul(2).wrapping_add(k)));
    let (p, q) = (gen(0), gen(1));
    if !consistency_violation(&p, &q)? {
        return Ok(None);
    }
    let (p, q) = shrink_pair(p, q, |a, b| consistency_violation(a, b).unwrap_or(true));
    Ok(Some(Failure {
        suite: Suite::Consistency,
        seed,
        property: "c1 = 0 iff a verified common refinement exists",
        reproduction: show_pair(&p, &q),
    }))
}

/// Runs `cases` seeded cases of each selected suite. Errors from the engine
/// count as failures, with the error text as reproduction.
pub fn run_suite(suite: Suite, cases: usize, seed: u64) -> Report {
    let mut report = Report::default();
    for &part in suite.parts() {
        for i in 0..cases {
            let s = seed.wrapping_add(i as u64);
            let outcome = match part {
                Suite::Psip => psip_case(s),
                Suite::Metrics => metrics_case(s),
                _ => consistency_case(s),
            };
            report.cases += 1;
            match outcome {
                Ok(None) => {}
                Ok(Some(f)) => report.failures.push(f),
                Err(e) => report.failures.push(Failure {
                    suite: part,
                    seed: s,
                    property: "no engine error",
                    reproduction: format!("{e}\n"),
                }),
            }
        }
    }
    report
}

//! The `mtskit` command line. Exit status 0 means a value was computed
//! (whatever it is), 1 a usage, parse or precondition error, 2 an internal
//! validation failure.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::hml::{characteristic_nu, check, check3};
use crate::io::{
    parse_formula, parse_system, parse_term, print_formula, print_nu_formula, print_system, print_term, CliResult,
    Payload,
};
use crate::metrics::{self, DEFAULT_BUDGET};
use crate::mpa::{char_formula, phi_probe, unfold, unfold_system};
use crate::refinement::{
    common_refinement, consistency_relation, distinguishing_formula, equivalence_depth, is_implementation_equivalent,
    mix_condition_violation, normalize_mixed, refinement_equivalent, refines,
};
use crate::system::{must_projection, EventAlphabet, Mode};
use crate::testkit::{random_modal_system, GenParams};

#[derive(Parser, Debug)]
#[command(name = "mtskit", version, about = "Refinement, logic and distances for modal transition systems")]
pub struct Cli {
    /// Emit the versioned JSON envelope instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for generator-backed commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Initial state override; repeat to address the second input.
    #[arg(long, global = true)]
    pub state: Vec<String>,
    /// Extend the inputs' alphabets to their union (and to the events of a
    /// formula or term argument) before comparing.
    #[arg(long, global = true)]
    pub widen: bool,
    /// Report wall-clock time (stderr in text mode, `timing_ms` in JSON).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckMode {
    A,
    C,
    #[value(name = "3")]
    Three,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Model check an HML formula.
    Check {
        #[arg(long, value_enum)]
        mode: CheckMode,
        #[arg(long)]
        formula: String,
        file: PathBuf,
    },
    /// Does CONCRETE refine ABSTRACT?
    Refines {
        #[arg(value_name = "ABSTRACT")]
        abstract_: PathBuf,
        concrete: PathBuf,
    },
    /// Refinement equivalence.
    Equiv { a: PathBuf, b: PathBuf },
    /// Equivalence depth (`inf` for equivalent systems).
    Depth { a: PathBuf, b: PathBuf },
    /// Dyadic distance `2^-depth`.
    Distance { a: PathBuf, b: PathBuf },
    /// Mix condition.
    McCheck { file: PathBuf },
    /// Modal normal form of a mixed system.
    Normalize { file: PathBuf },
    /// Do two modal systems have a common refinement?
    Consistent { a: PathBuf, b: PathBuf },
    /// Write a common refinement to OUT when one exists.
    Witness {
        a: PathBuf,
        b: PathBuf,
        #[arg(short = 'o', long = "output")]
        out: PathBuf,
    },
    /// Optimistic distance between implementation sets.
    C1 { a: PathBuf, b: PathBuf },
    /// Pessimistic distance over implementations cut at depth K.
    C2 {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        depth: u32,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Hausdorff distance over implementations cut at depth K.
    Hausdorff {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        depth: u32,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Depth-M unfolding.
    Unfold {
        file: PathBuf,
        #[arg(short = 'm')]
        m: usize,
        #[arg(long)]
        as_term: bool,
    },
    /// Characteristic HML formula of a term, or ν-formula of a system.
    Charformula {
        #[arg(long, conflicts_with_all = ["file", "nu"])]
        term: Option<String>,
        #[arg(requires = "nu")]
        file: Option<PathBuf>,
        #[arg(long)]
        nu: bool,
    },
    /// Maximality probe formula for a trace, event and term.
    Probe {
        #[arg(long, allow_hyphen_values = true)]
        trace: String,
        #[arg(long)]
        event: String,
        #[arg(long)]
        term: String,
    },
    /// HML formula true on ABSTRACT and false on CONCRETE.
    Distinguish {
        #[arg(value_name = "ABSTRACT")]
        abstract_: PathBuf,
        concrete: PathBuf,
    },
    /// Must-projection.
    Implementation { file: PathBuf },
    /// Is the system equivalent to its must-projection?
    IsLtsequiv { file: PathBuf },
    /// Random modal system.
    Random {
        #[arg(long, default_value_t = 4)]
        states: usize,
        #[arg(long, default_value_t = 2)]
        events: usize,
        #[arg(long, default_value_t = 0.2)]
        must_density: f64,
        #[arg(long, default_value_t = 0.2)]
        may_density: f64,
    },
}

struct Ctx<'a> {
    cli: &'a Cli,
    diagnostics: Vec<String>,
    /// Input position, for `--state`.
    loaded: usize,
}

impl Ctx<'_> {
    fn load(&mut self, path: &Path) -> Result<crate::system::Pointed> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
        let p = parse_system(&text).map_err(|e| match e {
            Error::Syntax { line, col, msg } => Error::Syntax {
                line,
                col,
                msg: format!("{}: {msg}", path.display()),
            },
            other => other,
        })?;
        let p = match self.cli.state.get(self.loaded) {
            Some(s) => p.at(s)?,
            None => p,
        };
        self.loaded += 1;
        Ok(p)
    }

    fn pair(&mut self, a: &Path, b: &Path) -> Result<(crate::system::Pointed, crate::system::Pointed)> {
        let (p, q) = (self.load(a)?, self.load(b)?);
        if self.cli.widen {
            let union = p.alphabet().widened(q.alphabet().names());
            let union = union.widened(p.alphabet().names());
            return Ok((p.with_alphabet(&union)?, q.with_alphabet(&union)?));
        }
        Ok((p, q))
    }

    fn widen_to<'e>(
        &self,
        p: crate::system::Pointed,
        events: impl IntoIterator<Item = &'e str>,
    ) -> Result<crate::system::Pointed> {
        if !self.cli.widen {
            return Ok(p);
        }
        let a = p.alphabet().widened(events);
        p.with_alphabet(&a)
    }
}

fn term_alphabet(events: Vec<&str>) -> Result<EventAlphabet> {
    let mut names: Vec<&str> = events;
    names.sort_unstable();
    names.dedup();
    if names.is_empty() {
        // an event-free term still needs a nonempty alphabet
        names.push("a");
    }
    EventAlphabet::new(names)
}

fn execute(ctx: &mut Ctx<'_>) -> Result<Payload> {
    let cli = ctx.cli;
    Ok(match &cli.command {
        Command::Check { mode, formula, file } => {
            let f = parse_formula(formula)?;
            let events = f.events();
            let p = ctx.load(file)?;
            let p = ctx.widen_to(p, events.iter().map(|e| e.as_ref()))?;
            match mode {
                CheckMode::A => Payload::Bool(check(&p, &f, Mode::A)?),
                CheckMode::C => Payload::Bool(check(&p, &f, Mode::C)?),
                CheckMode::Three => Payload::Verdict(check3(&p, &f)?),
            }
        }
        Command::Refines { abstract_, concrete } => {
            let (p, q) = ctx.pair(abstract_, concrete)?;
            Payload::Bool(refines(&p, &q)?)
        }
        Command::Equiv { a, b } => {
            let (p, q) = ctx.pair(a, b)?;
            Payload::Bool(refinement_equivalent(&p, &q)?)
        }
        Command::Depth { a, b } => {
            let (p, q) = ctx.pair(a, b)?;
            Payload::Depth(equivalence_depth(&p, &q)?)
        }
        Command::Distance { a, b } => {
            let (p, q) = ctx.pair(a, b)?;
            Payload::Distance(metrics::distance(&p, &q)?)
        }
        Command::McCheck { file } => {
            let p = ctx.load(file)?;
            let v = mix_condition_violation(p.system());
            if let Some(t) = v {
                ctx.diagnostics
                    .push(format!("must-transition {} has no matching r_a ∩ r_c transition", p.system().show_transition(&t)));
            }
            Payload::Bool(v.is_none())
        }
        Command::Normalize { file } => {
            let p = ctx.load(file)?;
            Payload::System(print_system(&normalize_mixed(&p)?))
        }
        Command::Consistent { a, b } => {
            let (p, q) = ctx.pair(a, b)?;
            let rel = consistency_relation(&p, &q)?;
            Payload::Bool(rel.contains(p.init(), q.init()))
        }
        Command::Witness { a, b, out } => {
            let (p, q) = ctx.pair(a, b)?;
            match common_refinement(&p, &q)? {
                Some(w) => {
                    std::fs::write(out, print_system(&w))
                        .map_err(|e| Error::Precondition(format!("cannot write {}: {e}", out.display())))?;
                    ctx.diagnostics.push(format!("witness written to {}", out.display()));
                    Payload::Bool(true)
                }
                None => {
                    ctx.diagnostics.push("no common refinement exists".to_string());
                    Payload::Bool(false)
                }
            }
        }
        Command::C1 { a, b } => {
            let (p, q) = ctx.pair(a, b)?;
            Payload::Distance(metrics::c1(&p, &q)?)
        }
        Command::C2 { a, b, depth, budget } => {
            let (p, q) = ctx.pair(a, b)?;
            Payload::Estimate(metrics::c2_bounded_with_budget(&p, &q, *depth, *budget)?)
        }
        Command::Hausdorff { a, b, depth, budget } => {
            let (p, q) = ctx.pair(a, b)?;
            Payload::Estimate(metrics::hausdorff_bounded_with_budget(&p, &q, *depth, *budget)?)
        }
        Command::Unfold { file, m, as_term } => {
            let p = ctx.load(file)?;
            if *as_term {
                Payload::Term(print_term(&unfold(&p, *m)?))
            } else {
                Payload::System(print_system(&unfold_system(&p, *m)?))
            }
        }
        Command::Charformula { term, file, nu } => match (term, file) {
            (Some(t), _) => {
                let t = parse_term(t)?;
                let a = term_alphabet(t.events().iter().map(|e| e.as_ref()).collect())?;
                Payload::Formula(print_formula(&char_formula(&t, &a)?))
            }
            (None, Some(file)) if *nu => {
                let p = ctx.load(file)?;
                Payload::Formula(print_nu_formula(&characteristic_nu(&p)?))
            }
            _ => return Err(Error::Precondition("give either --term T or FILE --nu".to_string())),
        },
        Command::Probe { trace, event, term } => {
            let t = parse_term(term)?;
            let trace: Vec<&str> = trace.split_whitespace().collect();
            let term_events = t.events();
            let mut events: Vec<&str> = term_events.iter().map(|e| e.as_ref()).collect();
            events.extend(trace.iter().copied());
            events.push(event);
            let a = term_alphabet(events)?;
            Payload::Formula(print_formula(&phi_probe(&trace, event, &t, &a)?))
        }
        Command::Distinguish { abstract_, concrete } => {
            let (p, q) = ctx.pair(abstract_, concrete)?;
            Payload::Formula(print_formula(&distinguishing_formula(&p, &q)?))
        }
        Command::Implementation { file } => {
            let p = ctx.load(file)?;
            p.ensure_modal()?;
            Payload::System(print_system(&must_projection(&p)))
        }
        Command::IsLtsequiv { file } => {
            let p = ctx.load(file)?;
            Payload::Bool(is_implementation_equivalent(&p)?)
        }
        Command::Random {
            states,
            events,
            must_density,
            may_density,
        } => {
            if *states == 0 || *events == 0 {
                return Err(Error::Precondition("need at least one state and one event".to_string()));
            }
            for d in [must_density, may_density] {
                if !(0.0..=1.0).contains(d) {
                    return Err(Error::Precondition(format!("density {d} is outside [0, 1]")));
                }
            }
            let params = GenParams {
                states: *states..=*states,
                events: *events..=*events,
                must_density: *must_density,
                may_density: *may_density,
                seed: cli.seed,
            };
            Payload::System(print_system(&random_modal_system(&params)))
        }
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Refines { .. } => "refines",
        Command::Equiv { .. } => "equiv",
        Command::Depth { .. } => "depth",
        Command::Distance { .. } => "distance",
        Command::McCheck { .. } => "mc-check",
        Command::Normalize { .. } => "normalize",
        Command::Consistent { .. } => "consistent",
        Command::Witness { .. } => "witness",
        Command::C1 { .. } => "c1",
        Command::C2 { .. } => "c2",
        Command::Hausdorff { .. } => "hausdorff",
        Command::Unfold { .. } => "unfold",
        Command::Charformula { .. } => "charformula",
        Command::Probe { .. } => "probe",
        Command::Distinguish { .. } => "distinguish",
        Command::Implementation { .. } => "implementation",
        Command::IsLtsequiv { .. } => "is-ltsequiv",
        Command::Random { .. } => "random",
    }
}

/// Runs the command line `argv` (program name first) and returns the exit
/// status.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    let args: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let start = Instant::now();
    let mut ctx = Ctx {
        cli: &cli,
        diagnostics: Vec::new(),
        loaded: 0,
    };
    let result = execute(&mut ctx);
    let elapsed = start.elapsed().as_millis() as u64;
    let payload = match result {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return if matches!(e, Error::Internal(_)) { 2 } else { 1 };
        }
    };
    if cli.json {
        let mut r = CliResult::new(command_name(&cli.command), args, payload);
        r.diagnostics = ctx.diagnostics;
        if cli.timing {
            r.timing_ms = Some(elapsed);
        }
        let _ = writeln!(out, "{}", r.to_json());
    } else {
        let _ = writeln!(out, "{payload}");
        for d in &ctx.diagnostics {
            let _ = writeln!(err, "note: {d}");
        }
        if cli.timing {
            let _ = writeln!(err, "time: {elapsed} ms");
        }
    }
    0
}

//! Line-based text format for pointed systems.
//!
//! ```text
//! mts modal                 # or `mts mixed`
//! alphabet: e1 e2 ...
//! states: s0 s1 ...         # optional; when present every state must be listed
//! init: s0
//! must s e t                # modal: r_a and r_c     mixed: `a s e t` (r_a only)
//! may s e t                 # modal: r_c only        mixed: `c s e t` (r_c only)
//! ```
//!
//! `#` starts a comment running to the end of the line. The printer always
//! emits a `states:` line so isolated states survive a round trip.

use std::fmt::Write as _;

use indexmap::IndexSet;

use crate::error::{Error, Result};
use crate::system::{EventAlphabet, Kind, Mode, Pointed, SystemBuilder};

struct Token<'a> {
    text: &'a str,
    col: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let line = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    col: line[..s].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            col: line[..s].chars().count() + 1,
        });
    }
    out
}

struct Line<'a> {
    no: usize,
    toks: Vec<Token<'a>>,
}

/// Parses the text format into a pointed system.
pub fn parse_system(text: &str) -> Result<Pointed> {
    let lines: Vec<Line<'_>> = text
        .lines()
        .enumerate()
        .map(|(i, l)| Line {
            no: i + 1,
            toks: tokens(l),
        })
        .filter(|l| !l.toks.is_empty())
        .collect();
    let mut iter = lines.iter();
    let header = iter
        .next()
        .ok_or_else(|| Error::syntax(1, 1, "empty input, expected `mts modal` or `mts mixed`"))?;
    let kind = match header.toks.as_slice() {
        [m, k] if m.text == "mts" && k.text == "modal" => Kind::Modal,
        [m, k] if m.text == "mts" && k.text == "mixed" => Kind::Mixed,
        [m, k] if m.text == "mts" => {
            return Err(Error::syntax(header.no, k.col, format!("unknown system kind `{}`", k.text)))
        }
        _ => {
            return Err(Error::syntax(
                header.no,
                header.toks[0].col,
                "expected header `mts modal` or `mts mixed`",
            ))
        }
    };

    let mut alphabet: Option<(usize, Vec<&Token<'_>>)> = None;
    let mut declared: Option<(usize, Vec<&Token<'_>>)> = None;
    let mut init: Option<(usize, &Token<'_>)> = None;
    let mut transitions: Vec<(&Line<'_>, Mode, bool)> = Vec::new();

    for line in iter {
        let head = &line.toks[0];
        let rest: Vec<&Token<'_>> = line.toks[1..].iter().collect();
        match head.text {
            "alphabet:" | "states:" | "init:" => {
                let (slot_name, dup) = match head.text {
                    "alphabet:" => ("alphabet", alphabet.is_some()),
                    "states:" => ("states", declared.is_some()),
                    _ => ("init", init.is_some()),
                };
                if dup {
                    return Err(Error::syntax(line.no, head.col, format!("duplicate `{slot_name}:` line")));
                }
                match head.text {
                    "alphabet:" => {
                        if rest.is_empty() {
                            return Err(Error::syntax(line.no, head.col, "empty alphabet"));
                        }
                        alphabet = Some((line.no, rest));
                    }
                    "states:" => declared = Some((line.no, rest)),
                    _ => match rest.as_slice() {
                        [s] => init = Some((line.no, s)),
                        [] => return Err(Error::syntax(line.no, head.col, "missing initial state")),
                        [_, extra, ..] => {
                            return Err(Error::syntax(line.no, extra.col, "expected a single initial state"))
                        }
                    },
                }
            }
            kw => {
                let (mode, both) = match (kind, kw) {
                    (Kind::Modal, "must") => (Mode::A, true),
                    (Kind::Modal, "may") => (Mode::C, false),
                    (Kind::Mixed, "a") => (Mode::A, false),
                    (Kind::Mixed, "c") => (Mode::C, false),
                    (Kind::Modal, _) => {
                        return Err(Error::syntax(
                            line.no,
                            head.col,
                            format!("unexpected `{kw}`, modal files use `must` and `may`"),
                        ))
                    }
                    (Kind::Mixed, _) => {
                        return Err(Error::syntax(
                            line.no,
                            head.col,
                            format!("unexpected `{kw}`, mixed files use `a` and `c`"),
                        ))
                    }
                };
                if line.toks.len() != 4 {
                    let col = line.toks.get(4).map_or(head.col, |t| t.col);
                    return Err(Error::syntax(line.no, col, "expected `<kind> source event target`"));
                }
                transitions.push((line, mode, both));
            }
        }
    }

    let (_, events) = alphabet.ok_or_else(|| Error::syntax(header.no, 1, "missing `alphabet:` line"))?;
    let (init_line, init_tok) = init.ok_or_else(|| Error::syntax(header.no, 1, "missing `init:` line"))?;
    let alphabet = EventAlphabet::new(events.iter().map(|t| t.text))?;
    let mut b = SystemBuilder::new(kind, alphabet);
    let declared_set: Option<IndexSet<&str>> = declared.as_ref().map(|(_, toks)| toks.iter().map(|t| t.text).collect());
    if let Some((_, toks)) = &declared {
        for t in toks {
            b.state(t.text);
        }
    }
    let check_state = |line: usize, tok: &Token<'_>| -> Result<()> {
        match &declared_set {
            Some(set) if !set.contains(tok.text) => {
                Err(Error::syntax(line, tok.col, format!("unknown state `{}`", tok.text)))
            }
            _ => Ok(()),
        }
    };
    check_state(init_line, init_tok)?;
    let init_id = b.state(init_tok.text);
    for (line, mode, both) in transitions {
        let (s, e, t) = (&line.toks[1], &line.toks[2], &line.toks[3]);
        let ev = b
            .event(e.text)
            .map_err(|_| Error::syntax(line.no, e.col, format!("unknown event `{}`", e.text)))?;
        check_state(line.no, s)?;
        check_state(line.no, t)?;
        let (si, ti) = (b.state(s.text), b.state(t.text));
        let tr = crate::system::Transition::new(si, ev, ti);
        b.add(mode, tr);
        if both {
            b.add(Mode::C, tr);
        }
    }
    Ok(Pointed::new(b.build()?, init_id))
}

/// Prints a pointed system in canonical order.
pub fn print_system(p: &Pointed) -> String {
    let sys = p.system();
    let mut out = String::new();
    let modal = sys.kind() == Kind::Modal;
    out.push_str(if modal { "mts modal\n" } else { "mts mixed\n" });
    let events: Vec<&str> = sys.alphabet().names().collect();
    let _ = writeln!(out, "alphabet: {}", events.join(" "));
    let states: Vec<&str> = sys.states().map(|s| sys.state_name(s)).collect();
    let _ = writeln!(out, "states: {}", states.join(" "));
    let _ = writeln!(out, "init: {}", p.init_name());
    let line = |out: &mut String, kw: &str, t: &crate::system::Transition| {
        let _ = writeln!(
            out,
            "{kw} {} {} {}",
            sys.state_name(t.src),
            sys.alphabet().name(t.event),
            sys.state_name(t.dst)
        );
    };
    if modal {
        for t in sys.relation(Mode::C) {
            let kw = if sys.has_transition(Mode::A, t) { "must" } else { "may" };
            line(&mut out, kw, t);
        }
    } else {
        let all: std::collections::BTreeSet<_> =
            sys.relation(Mode::A).union(sys.relation(Mode::C)).copied().collect();
        for t in &all {
            if sys.has_transition(Mode::A, t) {
                line(&mut out, "a", t);
            }
            if sys.has_transition(Mode::C, t) {
                line(&mut out, "c", t);
            }
        }
    }
    out
}

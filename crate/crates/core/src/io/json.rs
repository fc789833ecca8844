use std::fmt;

use serde::{Deserialize, Serialize};

use crate::hml::Verdict3;
use crate::metrics::{DyadicDistance, IntervalEstimate};
use crate::refinement::Depth;

pub const SCHEMA_VERSION: u32 = 1;

/// The computed value of a command. Systems, formulas and terms travel in
/// their text formats.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "value", rename_all = "snake_case")]
pub enum Payload {
    Bool(bool),
    Verdict(Verdict3),
    Distance(DyadicDistance),
    Estimate(IntervalEstimate),
    Depth(Depth),
    Relation(Vec<(String, String)>),
    System(String),
    Formula(String),
    Term(String),
}

impl fmt::Display for Payload {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Payload::Bool(b) => f.write_str(if *b { "yes" } else { "no" }),
            Payload::Verdict(v) => write!(f, "{v}"),
            Payload::Distance(d) => write!(f, "{d}"),
            Payload::Estimate(e) => write!(f, "{e}"),
            Payload::Depth(d) => write!(f, "{d}"),
            Payload::Relation(pairs) => {
                for (i, (s, t)) in pairs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "({s},{t})")?;
                }
                Ok(())
            }
            // system text already ends in a newline
            Payload::System(s) => f.write_str(s.trim_end_matches('\n')),
            Payload::Formula(s) | Payload::Term(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CliResult {
    pub schema: u32,
    pub command: String,
    pub args: Vec<String>,
    pub result: Payload,
    pub diagnostics: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl CliResult {
    pub fn new(command: &str, args: Vec<String>, result: Payload) -> Self {
        CliResult {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            args,
            result,
            diagnostics: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

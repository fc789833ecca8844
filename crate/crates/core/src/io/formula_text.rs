//! Formula grammar, loosest first:
//!
//! ```text
//! F ::= F '|' F | F '&' F | '!' F | '<' e '>' F | '[' e ']' F
//!     | 'tt' | 'ff' | '(' F ')'                      HML
//!     | 'nu' X '.' F | X                              nu-formulas only
//! ```
//!
//! Binary operators associate to the left. A `nu` binder extends as far to
//! the right as possible.

use super::lexer::{Cursor, Tok};
use crate::error::Result;
use crate::hml::{Formula, NuFormula};

pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut c = Cursor::new(text)?;
    let f = hml_or(&mut c)?;
    c.finish()?;
    Ok(f)
}

pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}

fn hml_or(c: &mut Cursor) -> Result<Formula> {
    let mut f = hml_and(c)?;
    while c.eat('|') {
        f = Formula::or(f, hml_and(c)?);
    }
    Ok(f)
}

fn hml_and(c: &mut Cursor) -> Result<Formula> {
    let mut f = hml_unary(c)?;
    while c.eat('&') {
        f = Formula::and(f, hml_unary(c)?);
    }
    Ok(f)
}

fn hml_unary(c: &mut Cursor) -> Result<Formula> {
    if c.eat('!') {
        return Ok(Formula::not(hml_unary(c)?));
    }
    if c.eat('<') {
        let e = c.ident("an event")?;
        c.expect('>')?;
        return Ok(Formula::dia(e, hml_unary(c)?));
    }
    if c.eat('[') {
        let e = c.ident("an event")?;
        c.expect(']')?;
        return Ok(Formula::boxed(e, hml_unary(c)?));
    }
    if c.eat('(') {
        let f = hml_or(c)?;
        c.expect(')')?;
        return Ok(f);
    }
    match c.peek() {
        Tok::Ident(s) if s == "tt" => {
            c.bump();
            Ok(Formula::tt())
        }
        Tok::Ident(s) if s == "ff" => {
            c.bump();
            Ok(Formula::ff())
        }
        _ => Err(c.error(format!("expected a formula, found {}", c.describe()))),
    }
}

pub fn parse_nu_formula(text: &str) -> Result<NuFormula> {
    let mut c = Cursor::new(text)?;
    let f = nu_or(&mut c)?;
    c.finish()?;
    Ok(f)
}

pub fn print_nu_formula(f: &NuFormula) -> String {
    f.to_string()
}

fn nu_or(c: &mut Cursor) -> Result<NuFormula> {
    let mut parts = vec![nu_and(c)?];
    while c.eat('|') {
        parts.push(nu_and(c)?);
    }
    Ok(NuFormula::or(parts))
}

fn nu_and(c: &mut Cursor) -> Result<NuFormula> {
    let mut parts = vec![nu_unary(c)?];
    while c.eat('&') {
        parts.push(nu_unary(c)?);
    }
    Ok(NuFormula::and(parts))
}

fn variable(s: &str) -> Option<u32> {
    s.strip_prefix('X')?.parse().ok()
}

fn nu_unary(c: &mut Cursor) -> Result<NuFormula> {
    if c.eat('<') {
        let e = c.ident("an event")?;
        c.expect('>')?;
        return Ok(NuFormula::dia(e, nu_unary(c)?));
    }
    if c.eat('[') {
        let e = c.ident("an event")?;
        c.expect(']')?;
        return Ok(NuFormula::boxed(e, nu_unary(c)?));
    }
    if c.eat('(') {
        let f = nu_or(c)?;
        c.expect(')')?;
        return Ok(f);
    }
    if *c.peek() == Tok::Sym('!') {
        return Err(c.error("negation is not allowed in nu-formulas"));
    }
    let word = match c.peek() {
        Tok::Ident(s) => s.clone(),
        _ => return Err(c.error(format!("expected a formula, found {}", c.describe()))),
    };
    match word.as_str() {
        "tt" => {
            c.bump();
            Ok(NuFormula::True)
        }
        "ff" => {
            c.bump();
            Ok(NuFormula::False)
        }
        "nu" => {
            c.bump();
            let name = c.ident("a variable")?;
            let v = variable(&name).ok_or_else(|| c.error(format!("`{name}` is not a variable `X<n>`")))?;
            c.expect('.')?;
            Ok(NuFormula::nu(v, nu_or(c)?))
        }
        w => match variable(w) {
            Some(v) => {
                c.bump();
                Ok(NuFormula::Var(v))
            }
            None => Err(c.error(format!("expected a formula, found `{w}`"))),
        },
    }
}

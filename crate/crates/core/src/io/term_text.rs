//! Term grammar:
//!
//! ```text
//! P ::= P '+' P | e '!' '.' P | e '?' '.' P | '0' | 'bot' | '(' P ')'
//! ```
//!
//! Prefixes bind tighter than `+`, which associates to the left. `0` and
//! `bot` may not appear as summands.

use super::lexer::{Cursor, Tok};
use crate::error::Result;
use crate::mpa::Term;

pub fn parse_term(text: &str) -> Result<Term> {
    let mut c = Cursor::new(text)?;
    let t = sum(&mut c)?;
    c.finish()?;
    Ok(t)
}

pub fn print_term(t: &Term) -> String {
    t.to_string()
}

fn sum(c: &mut Cursor) -> Result<Term> {
    let first_err = c.error("`0` and `bot` cannot be summands");
    let mut t = prefix(c)?;
    while *c.peek() == Tok::Sym('+') {
        if t.is_nil() || t.is_bot() {
            return Err(first_err);
        }
        c.bump();
        let here = c.error("`0` and `bot` cannot be summands");
        let rhs = prefix(c)?;
        if rhs.is_nil() || rhs.is_bot() {
            return Err(here);
        }
        t = Term::sum(t, rhs)?;
    }
    Ok(t)
}

fn prefix(c: &mut Cursor) -> Result<Term> {
    if c.eat('(') {
        let t = sum(c)?;
        c.expect(')')?;
        return Ok(t);
    }
    let word = c.ident("a term")?;
    match word.as_str() {
        "0" => return Ok(Term::nil()),
        "bot" => return Ok(Term::bot()),
        _ => {}
    }
    let must = if c.eat('!') {
        true
    } else if c.eat('?') {
        false
    } else {
        return Err(c.error(format!("expected `!` or `?` after `{word}`, found {}", c.describe())));
    };
    c.expect('.')?;
    let cont = prefix(c)?;
    Ok(if must {
        Term::must(word, cont)
    } else {
        Term::may(word, cont)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn basic_terms() {
        assert!(parse_term("bot").unwrap().is_bot());
        assert!(parse_term("0").unwrap().is_nil());
        let t = parse_term("drinks?.bot + orders?.bot + talks!.0").unwrap();
        assert_eq!(t.to_string(), "drinks?.bot + orders?.bot + talks!.0");
        assert_eq!(t.summands().len(), 3);
    }

    #[test]
    fn prefix_binds_tighter_than_sum() {
        let t = parse_term("a!.b?.0 + c!.0").unwrap();
        assert_eq!(t.summands().len(), 2);
        let u = parse_term("a!.(b?.0 + c!.0)").unwrap();
        assert_eq!(u.summands().len(), 1);
        assert_eq!(u.to_string(), "a!.(b?.0 + c!.0)");
    }

    #[test]
    fn summand_side_condition() {
        let err = parse_term("a!.0 + 0").unwrap_err();
        assert_eq!(err, Error::syntax(1, 8, "`0` and `bot` cannot be summands"));
        assert!(parse_term("bot + a?.0").is_err());
        assert!(parse_term("a!.0 + (0)").is_err());
    }

    #[test]
    fn round_trip() {
        for s in ["a!.0 + (b?.bot + a!.0)", "x!.(y?.0 + z!.bot) + w?.0", "bot"] {
            let t = parse_term(s).unwrap();
            assert_eq!(t.to_string(), s);
            assert_eq!(parse_term(&t.to_string()).unwrap(), t);
        }
    }

    #[test]
    fn errors() {
        assert!(parse_term("a.0").is_err());
        assert!(parse_term("a!0").is_err());
        assert!(parse_term("").is_err());
        assert!(parse_term("a!.0 +").is_err());
    }
}

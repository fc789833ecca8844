//! Text formats and the JSON result envelope.

use mtskit::io::{parse_formula, parse_system, print_formula, print_system, CliResult, Payload};
use mtskit::metrics::distance;

const TEXT: &str = "mts mixed
alphabet: a b
init: s
a s a t   # asserted only
c s a t
c t b s
";

fn main() -> mtskit::Result<()> {
    let p = parse_system(TEXT)?;
    let canonical = print_system(&p);
    print!("{canonical}");
    assert_eq!(parse_system(&canonical)?, p);

    let f = parse_formula("!<a>!(tt & <b>tt)")?;
    println!("{}", print_formula(&f));

    let r = CliResult::new("distance", vec![], Payload::Distance(distance(&p, &p)?));
    println!("{}", r.to_json());
    println!("{}", parse_system("mts modal\nalphabet: a\ninit: s\nmust s b s\n").unwrap_err());
    Ok(())
}

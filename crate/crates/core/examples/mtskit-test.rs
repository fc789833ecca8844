//! Seeded cross-validation runner. Failures print the seed and a minimized
//! reproduction.
//!
//! ```text
//! cargo run --release --example mtskit-test -- --suite all --cases 200 --seed 1
//! ```

use clap::Parser;
use mtskit::testkit::{run_suite, Suite};

#[derive(Parser)]
struct Args {
    /// psip, metrics, consistency or all
    #[arg(long, default_value = "all")]
    suite: Suite,
    #[arg(long, default_value_t = 100)]
    cases: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() {
    let args = Args::parse();
    let report = run_suite(args.suite, args.cases, args.seed);
    for f in &report.failures {
        println!("{f}");
    }
    println!(
        "{} cases, {} failures (suite {}, seed {})",
        report.cases,
        report.failures.len(),
        args.suite,
        args.seed
    );
    if !report.passed() {
        std::process::exit(1);
    }
}

//! One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

use std::process::ExitCode;

use prigid_cli::accept::{run_suite, Options};
use prigid_cli::cli::DEFAULT_SEED;

fn main() -> ExitCode {
    let opts = Options { seed: DEFAULT_SEED, quick: false };
    let suite = run_suite(&opts, vec!["accept".into()]);
    for r in &suite.results {
        println!("{}", r.line());
        if !r.pass {
            println!("     detail: {}", r.detail);
        }
    }
    for n in &suite.report.notes {
        println!("{}", n.line());
    }
    let passed = suite.results.iter().filter(|r| r.pass).count();
    println!("acceptance: {passed}/{} criteria passed", suite.results.len());
    if suite.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

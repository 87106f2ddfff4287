//! Run a verification suite from code and print its records.
//!
//! `cargo run --example run_suite -- kernel`

use amalgam_lab::harness::{run_suite, SuiteConfig, SuiteReport};
use amalgam_lab::Result;

pub fn run(name: &str) -> Result<SuiteReport> {
    run_suite(name, &SuiteConfig::default())
}

fn main() -> Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "kernel".into());
    let rep = run(&name)?;
    for r in &rep.records {
        println!(
            "{:5} {:40} {:>14.6e} {:>14.6e}",
            if r.pass { "ok" } else { "FAIL" },
            r.id,
            r.lhs,
            r.rhs
        );
    }
    println!(
        "{}: {} records, {}",
        rep.suite,
        rep.records.len(),
        if rep.pass() { "pass" } else { "fail" }
    );
    Ok(())
}

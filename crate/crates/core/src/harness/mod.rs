//! Named verification suites, their configuration and reports.

pub mod config;
pub mod probe;
pub mod report;
mod suites;
pub mod sweeps;

use std::time::Instant;

pub use config::{ExpsSection, GridSection, Samples, SuiteConfig, SweepSection, Tolerances};
pub use probe::{commutator_lower_probe, fourier_coefficients, ProbeReport, ProbeSetup};
pub use report::{aggregate, load_reports, rows_to_csv, Record, Row, SuiteReport};
pub use sweeps::{commutator_upper_sweep, hls_ratio_sweep, CommutatorSweep, HlsSweep};

use crate::error::{Error, Result};

/// Registered suite names.
pub const SUITES: [&str; 11] = [
    "norm-axioms",
    "index-gate",
    "embeddings",
    "equivalences",
    "dilation",
    "duality",
    "hls",
    "maximal",
    "commutator-upper",
    "commutator-lower",
    "kernel",
];

/// Run one suite. Module errors propagate; failed checks land in the records.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut out = suites::Outcome::default();
    match name {
        "norm-axioms" => suites::axioms::run(cfg, &mut out)?,
        "index-gate" => suites::gate::run(cfg, &mut out)?,
        "embeddings" => suites::embeddings::run(cfg, &mut out)?,
        "equivalences" => suites::equivalences::run(cfg, &mut out)?,
        "dilation" => suites::dilation::run(cfg, &mut out)?,
        "duality" => suites::duality::run(cfg, &mut out)?,
        "hls" => suites::hls::run(cfg, &mut out)?,
        "maximal" => suites::maximal::run(cfg, &mut out)?,
        "commutator-upper" => suites::commutator::run_upper(cfg, &mut out)?,
        "commutator-lower" => suites::commutator::run_lower(cfg, &mut out)?,
        "kernel" => suites::kernel::run(cfg, &mut out)?,
        other => return Err(Error::UnknownSuite(other.to_string())),
    }
    Ok(SuiteReport {
        suite: name.to_string(),
        config_echo: cfg.echo(),
        records: out.records,
        constants: out.constants,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use amalgam_lab::harness::{run_suite, Record, SuiteConfig, SuiteReport, Tolerances};

struct Criterion {
    name: &'static str,
    limit: Option<Duration>,
    check: fn(&SuiteConfig) -> Result<Vec<String>, String>,
}

fn suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport, String> {
    run_suite(name, cfg).map_err(|e| format!("{name}: {e}"))
}

/// Failed ids among `records`, or an error if there are none at all.
fn failed(label: &str, records: &[&Record]) -> Vec<String> {
    if records.is_empty() {
        return vec![format!("{label}: no records")];
    }
    records
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{label}/{} lhs={:e} rhs={:e}", r.id, r.lhs, r.rhs))
        .collect()
}

fn all(rep: &SuiteReport) -> Vec<String> {
    failed(&rep.suite, &rep.records.iter().collect::<Vec<_>>())
}

fn need(rep: &SuiteReport, prefix: &str, min: usize) -> Vec<String> {
    let g = rep.group(prefix);
    let mut out = failed(&format!("{}:{prefix}", rep.suite), &g);
    if g.len() < min {
        out.push(format!(
            "{}: expected at least {min} `{prefix}` records, got {}",
            rep.suite,
            g.len()
        ));
    }
    out
}

fn exact_identities(cfg: &SuiteConfig) -> Result<Vec<String>, String> {
    let rep = suite("norm-axioms", cfg)?;
    let mut out = all(&rep);
    for p in [
        "identity-st-",
        "identity-st-compose-",
        "identity-commutator-constant-",
        "identity-collapse-",
        "identity-partition-",
    ] {
        out.extend(need(&rep, p, 2));
    }
    Ok(out)
}

fn quadrature(cfg: &SuiteConfig) -> Result<Vec<String>, String> {
    let rep = suite("kernel", cfg)?;
    let mut out = all(&rep);
    out.extend(need(&rep, "quadrature-at-", 2));
    out.extend(need(&rep, "quadrature-convergence-", 1));
    out.extend(need(&rep, "heat-g", 4));
    Ok(out)
}

fn inequalities(cfg: &SuiteConfig) -> Result<Vec<String>, String> {
    let duality = suite("duality", cfg)?;
    let embeddings = suite("embeddings", cfg)?;
    let maximal = suite("maximal", cfg)?;
    let upper = suite("commutator-upper", cfg)?;
    let mut out = need(&duality, "holder-random-pairs", 1);
    out.extend(need(&duality, "duality-random-pairs", 1));
    out.extend(all(&embeddings));
    out.extend(all(&maximal));
    out.extend(need(&maximal, "pointwise-centered", 1));
    out.extend(need(&upper, "drift-", 3));
    Ok(out)
}

fn equivalences(cfg: &SuiteConfig) -> Result<Vec<String>, String> {
    let rep = suite("equivalences", cfg)?;
    let mut out = all(&rep);
    out.extend(need(&rep, "band-stability-", 4));
    Ok(out)
}

fn scaling(cfg: &SuiteConfig) -> Result<Vec<String>, String> {
    let dil = suite("dilation", cfg)?;
    let hls = suite("hls", cfg)?;
    let mut out = all(&dil);
    out.extend(need(&dil, "scaling-residual-", 5));
    out.extend(all(&hls));
    out.extend(need(&hls, "hls-mismatch-", 2));
    out.extend(need(&hls, "hls-matched-flat", 1));
    Ok(out)
}

fn commutators(cfg: &SuiteConfig) -> Result<Vec<String>, String> {
    let upper = suite("commutator-upper", cfg)?;
    let lower = suite("commutator-lower", cfg)?;
    let duality = suite("duality", cfg)?;
    let mut out = need(&upper, "upper-", 3);
    out.extend(all(&lower));
    out.extend(need(&lower, "lower-constant-", 2));
    out.extend(need(&lower, "lower-log-", 2));
    out.extend(need(&duality, "char-", 4));
    Ok(out)
}

fn gate(cfg: &SuiteConfig) -> Result<Vec<String>, String> {
    let rep = suite("index-gate", cfg)?;
    let mut out = all(&rep);
    out.extend(need(&rep, "gate-forced-divergence", 1));
    out.extend(need(&rep, "gate-reject-", 2));
    out.extend(need(&rep, "gate-accept-", 1));
    Ok(out)
}

const CRITERIA: [Criterion; 7] = [
    Criterion {
        name: "1 exact identities",
        limit: Some(Duration::from_secs(10)),
        check: exact_identities,
    },
    Criterion {
        name: "2 quadrature vs closed form",
        limit: Some(Duration::from_secs(30)),
        check: quadrature,
    },
    Criterion {
        name: "3 inequality sweeps",
        limit: Some(Duration::from_secs(180)),
        check: inequalities,
    },
    Criterion {
        name: "4 equivalence bands",
        limit: Some(Duration::from_secs(120)),
        check: equivalences,
    },
    Criterion {
        name: "5 scaling laws",
        limit: Some(Duration::from_secs(120)),
        check: scaling,
    },
    Criterion {
        name: "6 commutator suite",
        limit: Some(Duration::from_secs(180)),
        check: commutators,
    },
    Criterion {
        name: "7 index gate",
        limit: None,
        check: gate,
    },
];

fn main() -> ExitCode {
    let cfg = SuiteConfig::default();
    // the stated tolerances and sample counts are the defaults
    let t = &cfg.tolerances;
    assert_eq!(*t, Tolerances::default());
    assert_eq!((t.identity, t.inequality, t.heat), (1e-12, 1e-9, 1e-6));
    assert_eq!((t.quadrature, t.convergence_factor, t.fit_residual), (0.01, 1.8, 1e-3));
    assert_eq!(
        (t.slope, t.flat_factor, t.band, t.stability, t.tail),
        (0.05, 4.0, 0.1, 0.5, 0.2)
    );
    let s = &cfg.samples;
    assert_eq!(
        (s.holder, s.duality, s.embeddings, s.maximal, s.drift),
        (200, 100, 100, 20, 50)
    );
    assert_eq!((s.equivalence, s.fourier_cutoff), (50, 8));

    let mut ok = true;
    for c in &CRITERIA {
        let start = Instant::now();
        let res = (c.check)(&cfg);
        let took = start.elapsed();
        let mut problems = match res {
            Ok(p) => p,
            Err(e) => vec![e],
        };
        if let Some(limit) = c.limit {
            if took > limit {
                problems.push(format!("runtime {took:.1?} over {limit:?}"));
            }
        }
        let pass = problems.is_empty();
        ok &= pass;
        println!(
            "[{}] criterion {:30} {:>8.2?}",
            if pass { "PASS" } else { "FAIL" },
            c.name,
            took
        );
        for p in problems {
            println!("       {p}");
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

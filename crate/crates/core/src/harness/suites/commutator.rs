//! Commutators with BMO symbols: upper-bound constants, BMO lemmas, and the
//! lower-bound probe.

use super::{next_seed, seeds, Outcome, Step};
use crate::amalgam::discrete_alpha_norm;
use crate::amalgam::{validate_exponents, FractionalSystem, RadiusSweep, WindowFamily};
use crate::bmo::{bmo_norm, doubling_drift, mixed_bmo_norm, BallFamily};
use crate::error::Result;
use crate::grid::{make_grid, sample, FieldSpec, Grid, GridFunction, WindowSpec};
use crate::harness::probe::{commutator_lower_probe, ProbeSetup};
use crate::harness::report::Record;
use crate::harness::sweeps::commutator_upper_sweep;
use crate::harness::SuiteConfig;
use crate::norms::{exponents, Exponent};
use crate::operators::{commutator, RieszParams};

const UPPER: &str = "commutator with a BMO symbol is bounded between matched alpha spaces";
const DRIFT: &str = "BMO averages drift at most linearly along doubling chains";
const MIXED: &str = "mixed-norm BMO seminorm is comparable to the BMO norm";
const LOWER: &str = "boundedness of the commutator forces bounded mean oscillation";
const SERIES: &str = "absolutely convergent Fourier expansion of the kernel power";

/// `n = 1`, `gamma = 1/2`, `(4/3, 8)^{10/7} -> (4, 8)^5`.
pub fn default_system() -> Result<FractionalSystem> {
    let s = [Exponent::new(8.0)?];
    let source = validate_exponents(&[Exponent::from_inv(0.75)?], &s, Exponent::from_inv(0.7)?, 1)?;
    let target = validate_exponents(&[Exponent::new(4.0)?], &s, Exponent::from_inv(0.2)?, 1)?;
    FractionalSystem::new(source, target, 0.5)
}

fn grid1() -> Result<Grid> {
    make_grid(&[[-8.0, 8.0]], &[1024])
}

fn random_fields(seed: u64, count: usize, lo: f64, hi: f64, grid: &Grid) -> Result<Vec<GridFunction<f64>>> {
    let mut rng = seeds(seed, 0xc0);
    (0..count)
        .map(|_| sample(&FieldSpec::random(next_seed(&mut rng), &[lo], &[hi]), grid))
        .collect()
}

pub fn run_upper(cfg: &SuiteConfig, out: &mut Outcome) -> Step {
    let grid = grid1()?;
    let sys = default_system()?;
    let params = RieszParams::new(sys.gamma, 1)?;
    let sweep = RadiusSweep::dyadic(-4, 2, WindowFamily::Cube)?;
    let fam = BallFamily::default_for(&grid);
    let k = cfg.samples.commutator / 2;

    // two independent subfamilies of (b, f)
    let mut sups = Vec::new();
    for (i, seed) in [cfg.seed, cfg.seed.wrapping_add(17)].into_iter().enumerate() {
        let bs = random_fields(seed, k.max(1), -4.0, 4.0, &grid)?;
        let fs = random_fields(seed ^ 0xff, k.max(1), -2.0, 2.0, &grid)?;
        let sw = commutator_upper_sweep(&bs, &sys, &fs, &fam, &sweep)?;
        out.constant(format!("upper-sup-subfamily-{i}"), sw.sup);
        sups.push(sw.sup);
    }
    let finite = sups.iter().all(|v| v.is_finite() && *v > 0.0);
    out.push(Record::flag("upper-finite", UPPER, sups[0], sups[1], finite));
    out.push(Record::abs_close(
        "upper-stability",
        UPPER,
        sups[0] / sups[1],
        1.0,
        cfg.tolerances.stability,
    ));

    // log|x| against indicators
    let log = sample(&FieldSpec::LogAbs { center: vec![] }, &grid)?;
    let inds = vec![
        sample(
            &FieldSpec::IndicatorBox {
                lower: vec![-1.0],
                upper: vec![1.0],
            },
            &grid,
        )?,
        sample(
            &FieldSpec::IndicatorBox {
                lower: vec![0.0],
                upper: vec![0.5],
            },
            &grid,
        )?,
        sample(
            &FieldSpec::IndicatorBall {
                center: vec![2.0],
                radius: 0.25,
            },
            &grid,
        )?,
    ];
    let sw = commutator_upper_sweep(std::slice::from_ref(&log), &sys, &inds, &fam, &sweep)?;
    out.constant("upper-log-sup", sw.sup);
    out.push(Record::flag(
        "upper-log-finite",
        UPPER,
        sw.sup,
        0.0,
        sw.sup.is_finite() && sw.sup > 0.0,
    ));

    // constant symbol, and linearity in b
    let c = GridFunction::constant(&grid, 2.5);
    let sw = commutator_upper_sweep(std::slice::from_ref(&c), &sys, &inds, &fam, &sweep)?;
    let worst = sw.null_numerators.iter().cloned().fold(0.0, f64::max);
    out.push(Record::flag(
        "upper-constant-symbol",
        UPPER,
        worst,
        0.0,
        sw.constants.is_empty() && worst < 1e-10,
    ));
    let a = discrete_alpha_norm(&commutator(&log, &inds[0], params)?, &sys.target, &sweep)?.value;
    let b = discrete_alpha_norm(&commutator(&log.scale(2.0), &inds[0], params)?, &sys.target, &sweep)?.value;
    out.push(Record::close(
        "upper-linear-in-symbol",
        UPPER,
        b,
        2.0 * a,
        cfg.tolerances.identity,
    ));

    drift(cfg, &grid, &log, out)?;
    mixed(cfg, out)
}

fn drift(cfg: &SuiteConfig, grid: &Grid, log: &GridFunction<f64>, out: &mut Outcome) -> Step {
    // midpoint samples of log|x| on the cells inside (-R, R), centred on a cell edge
    let h = grid.spacing()[0];
    let sampled_mean = |radius: f64| {
        let m = (radius / h).round() as usize;
        (1..=m).map(|k| ((k as f64 - 0.5) * h).ln()).sum::<f64>() / m as f64
    };
    let r = doubling_drift(log, &WindowSpec::ball(&[0.0], 0.25)?, 1)?;
    let want = sampled_mean(1.0) - sampled_mean(0.25);
    out.push(Record::close(
        "drift-log",
        DRIFT,
        r.drift,
        want,
        cfg.tolerances.identity,
    ));
    out.push(Record::le(
        "drift-log-bound",
        DRIFT,
        r.drift,
        r.bound,
        cfg.tolerances.inequality,
    ));
    out.constant("drift-log-continuum", 4f64.ln());
    let c = GridFunction::constant(grid, -1.0);
    let r = doubling_drift(&c, &WindowSpec::ball(&[0.0], 0.25)?, 2)?;
    out.push(Record::flag("drift-constant", DRIFT, r.drift, 0.0, r.drift == 0.0));

    let mut rng = seeds(cfg.seed, 0xd5);
    let mut viol = 0usize;
    let mut worst = 0.0f64;
    for _ in 0..cfg.samples.drift {
        let b = sample(&FieldSpec::random(next_seed(&mut rng), &[-4.0], &[4.0]), grid)?;
        // centers on cell edges in [-2, 2]
        let center = ((next_seed(&mut rng) % 257) as f64 - 128.0) * h;
        for j in 1..=3u32 {
            for r in [0.125, 0.25] {
                let rep = doubling_drift(&b, &WindowSpec::ball(&[center], r)?, j)?;
                viol += (!rep.pass) as usize;
                if rep.bound > 0.0 {
                    worst = worst.max(rep.drift / rep.bound);
                }
            }
        }
    }
    out.push(Record::flag("drift-random", DRIFT, viol as f64, 0.0, viol == 0));
    out.constant("drift-max-ratio", worst);
    Ok(())
}

fn mixed(cfg: &SuiteConfig, out: &mut Outcome) -> Step {
    let grid = make_grid(&[[-2.0, 2.0], [-2.0, 2.0]], &[32, 32])?;
    let fam = BallFamily::default_for(&grid);
    let p = exponents(&[3.0, 2.0])?;
    let log = sample(&FieldSpec::LogAbs { center: vec![] }, &grid)?;
    let mut rng = seeds(cfg.seed, 0xb0);
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    let mut exact = true;
    let ones = exponents(&[1.0, 1.0])?;
    for _ in 0..cfg.samples.bmo {
        let bump = sample(
            &FieldSpec::random(next_seed(&mut rng), &[-1.5, -1.5], &[1.5, 1.5]),
            &grid,
        )?;
        let u = next_seed(&mut rng);
        let (a, c) = ((u % 7) as f64 / 3.0 - 1.0, ((u >> 8) % 5) as f64 / 4.0);
        let b = GridFunction::from_fn(&grid, |x| a * x[0])?
            .add(&log.scale(c))?
            .add(&bump)?;
        let base = bmo_norm(&b, &fam)?;
        if base == 0.0 {
            continue;
        }
        let ratio = mixed_bmo_norm(&b, &p, &fam)? / base;
        lo = lo.min(ratio);
        hi = hi.max(ratio);
        exact &= mixed_bmo_norm(&b, &ones, &fam)?.to_bits() == base.to_bits();
    }
    out.push(Record::flag(
        "mixed-bmo-band",
        MIXED,
        hi,
        lo,
        lo > 0.0 && hi.is_finite(),
    ));
    out.push(Record::flag("mixed-bmo-ones-equal", MIXED, 0.0, 0.0, exact));
    out.constant("mixed-bmo-ratio-min", lo);
    out.constant("mixed-bmo-ratio-max", hi);
    Ok(())
}

pub fn run_lower(cfg: &SuiteConfig, out: &mut Outcome) -> Step {
    let grid = grid1()?;
    let sys = default_system()?;
    let sweep = RadiusSweep::dyadic(-4, 2, WindowFamily::Cube)?;
    let m = cfg.samples.fourier_cutoff;
    let symbols = [
        ("constant", GridFunction::constant(&grid, 1.5)),
        ("log", sample(&FieldSpec::LogAbs { center: vec![] }, &grid)?),
    ];
    for (name, b) in &symbols {
        for t in [0.5, 1.0] {
            let rep = commutator_lower_probe(b, &sys, &ProbeSetup::new(vec![0.0], t, m), &sweep)?;
            let id = format!("lower-{name}-t{t}");
            out.push(Record::flag(
                id.clone(),
                LOWER,
                rep.oscillation,
                rep.bound * (1.0 + rep.tail),
                rep.pass,
            ));
            out.push(Record::le(
                format!("{id}-tail"),
                SERIES,
                rep.tail,
                cfg.tolerances.tail,
                0.0,
            ));
            out.constant(format!("{id}-oscillation"), rep.oscillation);
            out.constant(format!("{id}-series-oscillation"), rep.series_oscillation);
            out.constant(format!("{id}-bound"), rep.bound);
            out.constant(format!("{id}-tail"), rep.tail);
            if *name == "log" && t == 1.0 {
                let ps = &rep.partial_sums;
                let increasing = ps.windows(2).all(|w| w[1] >= w[0]);
                let steps: Vec<f64> = ps.windows(2).map(|w| w[1] - w[0]).collect();
                let late = steps[steps.len() - 1];
                let early = steps[0];
                out.push(Record::flag(
                    "series-partial-sums",
                    SERIES,
                    late,
                    early,
                    increasing && late < early,
                ));
                for (k, v) in ps.iter().enumerate() {
                    out.constant(format!("series-partial-sum-{}", k + 1), *v);
                }
                out.push(Record::flag(
                    "lower-log-positive",
                    LOWER,
                    rep.oscillation,
                    0.0,
                    rep.oscillation > 0.0,
                ));
            }
        }
    }
    Ok(())
}

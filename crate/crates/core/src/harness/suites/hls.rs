//! Fractional integration between alpha spaces: flat ratios at matched
//! indices, and the predicted dilation slope when the indices are off.

use super::{next_seed, or_e, or_ex, seeds, Outcome, Step};
use crate::amalgam::{validate_exponents, FractionalSystem, RadiusSweep, WindowFamily};
use crate::error::Result;
use crate::grid::{make_grid, sample, FieldSpec, Grid, GridFunction};
use crate::harness::report::Record;
use crate::harness::sweeps::hls_ratio_sweep;
use crate::harness::SuiteConfig;
use crate::norms::Exponent;

const FLAT: &str = "fractional integral bounded between matched alpha spaces: dilation-flat ratios";
const SLOPE: &str = "matched indices are necessary: ratio slope gamma - n/alpha + n/beta";

fn family(cfg: &SuiteConfig, grid: &Grid) -> Result<Vec<GridFunction<f64>>> {
    let n = grid.dim();
    let mut out = vec![
        sample(
            &FieldSpec::IndicatorBox {
                lower: vec![-1.0; n],
                upper: vec![1.0; n],
            },
            grid,
        )?,
        sample(
            &FieldSpec::IndicatorBox {
                lower: vec![0.0; n],
                upper: vec![0.5; n],
            },
            grid,
        )?,
        sample(
            &FieldSpec::Gaussian {
                center: vec![0.25; n],
                width: 0.5,
                amplitude: 1.0,
            },
            grid,
        )?,
        GridFunction::zeros(grid),
    ];
    let mut rng = seeds(cfg.seed, 0x41);
    for _ in 0..3 {
        out.push(sample(
            &FieldSpec::random(next_seed(&mut rng), &vec![-1.5; n], &vec![1.5; n]),
            grid,
        )?);
    }
    Ok(out)
}

pub fn run(cfg: &SuiteConfig, out: &mut Outcome) -> Step {
    let grid = cfg.grid_or(&make_grid(&[[-8.0, 8.0]], &[1024])?)?;
    let n = grid.dim();
    let p = or_ex(&cfg.exps.p, &vec![1.25; n]);
    let q = or_ex(&cfg.exps.q, &vec![2.0; n]);
    let s = or_ex(&cfg.exps.s, &vec![32.0; n]);
    let alpha = or_e(cfg.exps.alpha, 1.0 / 0.55);
    let gamma = cfg.exps.gamma.unwrap_or(0.3);
    let nf = n as f64;
    let beta = match cfg.exps.beta {
        Some(b) => b,
        None => Exponent::from_inv(alpha.inv() - gamma / nf)?,
    };
    let source = validate_exponents(&p, &s, alpha, n)?;
    let sweep = cfg.sweep_or(RadiusSweep::dyadic(-3, 2, WindowFamily::Cube)?)?;
    let fam = family(cfg, &grid)?;
    let ts = [0.5, 1.0, 2.0, 4.0];

    let matched = FractionalSystem::new(source.clone(), validate_exponents(&q, &s, beta, n)?, gamma)?;
    let sw = hls_ratio_sweep(&matched, &fam, &ts, &sweep)?;
    let worst = sw.flatness.iter().cloned().fold(0.0, f64::max);
    out.push(Record::le(
        "hls-matched-flat",
        FLAT,
        worst,
        cfg.tolerances.flat_factor,
        0.0,
    ));
    out.push(Record::flag(
        "hls-zero-skipped",
        FLAT,
        sw.skipped as f64,
        1.0,
        sw.skipped == 1,
    ));
    let all: Vec<f64> = sw.ratios.iter().flatten().cloned().collect();
    out.constant(
        "hls-matched-ratio-min",
        all.iter().cloned().fold(f64::INFINITY, f64::min),
    );
    out.constant("hls-matched-ratio-max", all.iter().cloned().fold(0.0, f64::max));
    out.constant("hls-matched-flatness", worst);

    for (tag, shift) in [("minus", -0.2), ("plus", 0.2)] {
        let ib = beta.inv() + shift / nf;
        let target = validate_exponents(&q, &s, Exponent::from_inv(ib)?, n)?;
        let sys = FractionalSystem::new(source.clone(), target, gamma)?;
        let sw = hls_ratio_sweep(&sys, &fam, &ts, &sweep)?;
        let dev = sw
            .slopes
            .iter()
            .map(|s| (s - sw.predicted_slope).abs())
            .fold(0.0, f64::max);
        out.push(Record::le(
            format!("hls-mismatch-{tag}-slope"),
            SLOPE,
            dev,
            cfg.tolerances.slope,
            0.0,
        ));
        out.constant(format!("hls-mismatch-{tag}-predicted"), sw.predicted_slope);
        out.constant(format!("hls-mismatch-{tag}-measured"), sw.slopes[0]);
    }
    Ok(())
}

//! Equivalence bands: window radius, cubes against balls, continuous against discrete.

use super::{configured_system, next_seed, seeds, Outcome, Step};
use crate::amalgam::ExponentSystem;
use crate::amalgam::{equivalence_ratio, EquivalenceMode, RadiusSweep, RatioBand, WindowFamily};
use crate::error::Result;
use crate::grid::{make_grid, sample, FieldSpec, Grid};
use crate::harness::report::Record;
use crate::harness::SuiteConfig;

const RADIUS: &str = "window radius changes the amalgam norm by bounded factors";
const CUBES: &str = "cube and ball windows give equivalent amalgam norms";
const DISCRETE: &str = "continuous and discrete alpha norms are equivalent";

fn bands(
    cfg: &SuiteConfig,
    grid: &Grid,
    sys: &ExponentSystem,
    sweep: &RadiusSweep,
    seed: u64,
) -> Result<Vec<(&'static str, &'static str, RatioBand)>> {
    let n = grid.dim();
    let modes = [
        ("rho-half", RADIUS, EquivalenceMode::BallVsScaledBall { rho: 0.5 }),
        ("rho-two", RADIUS, EquivalenceMode::BallVsScaledBall { rho: 2.0 }),
        ("cube-vs-ball", CUBES, EquivalenceMode::CubeVsBall),
        (
            "continuous-vs-discrete",
            DISCRETE,
            EquivalenceMode::ContinuousVsDiscrete,
        ),
    ];
    let mut acc: Vec<Option<RatioBand>> = vec![None; modes.len()];
    let mut rng = seeds(seed, 0xe9);
    for _ in 0..cfg.samples.equivalence {
        let f = sample(
            &FieldSpec::random(next_seed(&mut rng), &vec![-1.0; n], &vec![1.0; n]),
            grid,
        )?;
        for (k, m) in modes.iter().enumerate() {
            let b = equivalence_ratio(&f, sys, m.2, sweep)?;
            acc[k] = Some(acc[k].map_or(b, |a| a.merge(b)));
        }
    }
    Ok(modes
        .iter()
        .zip(acc)
        .map(|(m, b)| (m.0, m.1, b.expect("at least one sample")))
        .collect())
}

pub fn run(cfg: &SuiteConfig, out: &mut Outcome) -> Step {
    let grid = cfg.grid_or(&make_grid(&[[-4.0, 4.0], [-4.0, 4.0]], &[64, 64])?)?;
    let n = grid.dim();
    let sys = configured_system(cfg, n)?;
    let sweep = cfg.sweep_or(RadiusSweep::dyadic(-2, 1, WindowFamily::Cube)?.with_radius(0.125)?)?;
    let a = bands(cfg, &grid, &sys, &sweep, cfg.seed)?;
    let b = bands(cfg, &grid, &sys, &sweep, cfg.seed.wrapping_add(1))?;
    for ((id, anchor, ba), (_, _, bb)) in a.iter().zip(&b) {
        let (wa, wb) = (ba.width(), bb.width());
        out.push(Record::abs_close(
            format!("band-stability-{id}"),
            anchor,
            wa / wb,
            1.0,
            cfg.tolerances.band,
        ));
        let finite = ba.min > 0.0 && ba.max.is_finite() && bb.min > 0.0 && bb.max.is_finite();
        out.push(Record::flag(
            format!("band-finite-{id}"),
            anchor,
            ba.min,
            ba.max,
            finite,
        ));
        out.constant(format!("{id}-min"), ba.min);
        out.constant(format!("{id}-max"), ba.max);
        out.constant(format!("{id}-width-seed-a"), wa);
        out.constant(format!("{id}-width-seed-b"), wb);
    }
    Ok(())
}

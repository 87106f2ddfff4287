//! Embeddings: amalgam into the alpha space, and monotonicity in the local exponent.

use super::{e1, next_seed, or_e, or_ex, seeds, Outcome, Step};
use crate::amalgam::{embedding_check, RadiusSweep, WindowFamily};
use crate::grid::{make_grid, sample, FieldSpec, GridFunction};
use crate::harness::report::Record;
use crate::harness::SuiteConfig;

const INTO_ALPHA: &str = "embedding: amalgam norm bounded by the alpha norm";
const MONO: &str = "embedding: alpha norm increases with the local exponent";

pub fn run(cfg: &SuiteConfig, out: &mut Outcome) -> Step {
    let grid = cfg.grid_or(&make_grid(&[[-8.0, 8.0]], &[512])?)?;
    let n = grid.dim();
    let sweep = cfg.sweep_or(RadiusSweep::dyadic(-3, 2, WindowFamily::Ball)?)?;
    let tol = cfg.tolerances.inequality;

    // reference: ball indicator, p = 2, q = 4, s = alpha = 4 (boundary for q)
    let chi = sample(
        &FieldSpec::IndicatorBall {
            center: vec![0.0; n],
            radius: 1.0,
        },
        &grid,
    )?;
    let (p, q, s) = (vec![e1(2.0); n], vec![e1(4.0); n], vec![e1(4.0); n]);
    let r = embedding_check(&chi, &p, &q, &s, e1(4.0), &sweep)?;
    out.push(Record::le(
        "embed-indicator-into-alpha",
        INTO_ALPHA,
        r.global,
        r.alpha_p,
        tol,
    ));
    out.push(Record::le("embed-indicator-monotone", MONO, r.alpha_p, r.alpha_q, tol));
    let z = embedding_check(&GridFunction::<f64>::zeros(&grid), &p, &q, &s, e1(4.0), &sweep)?;
    out.push(Record::le("embed-zero", INTO_ALPHA, z.global, z.alpha_p, 0.0));

    let p = or_ex(&cfg.exps.p, &vec![2.0; n]);
    let q = or_ex(&cfg.exps.q, &vec![4.0; n]);
    let s = or_ex(&cfg.exps.s, &vec![8.0; n]);
    let alpha = or_e(cfg.exps.alpha, 6.0);
    let mut rng = seeds(cfg.seed, 0xe3);
    let (mut v1, mut v2) = (0usize, 0usize);
    let (mut w1, mut w2) = (0.0f64, 0.0f64);
    for _ in 0..cfg.samples.embeddings {
        let f = sample(
            &FieldSpec::random(next_seed(&mut rng), &vec![-2.0; n], &vec![2.0; n]),
            &grid,
        )?;
        let r = embedding_check(&f, &p, &q, &s, alpha, &sweep)?;
        v1 += (r.global > r.alpha_p * (1.0 + tol)) as usize;
        v2 += (r.alpha_p > r.alpha_q * (1.0 + tol)) as usize;
        w1 = w1.max(r.global / r.alpha_p);
        w2 = w2.max(r.alpha_p / r.alpha_q);
    }
    out.push(Record::flag(
        "embed-random-into-alpha",
        INTO_ALPHA,
        v1 as f64,
        0.0,
        v1 == 0,
    ));
    out.push(Record::flag("embed-random-monotone", MONO, v2 as f64, 0.0, v2 == 0));
    out.constant("max-global-over-alpha", w1);
    out.constant("max-alpha-p-over-alpha-q", w2);
    Ok(())
}

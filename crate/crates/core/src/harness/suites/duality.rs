//! Windowed Holder, the duality inequality for block decompositions, and the
//! characteristic-function scaling of both norms.

use rand::Rng;

use super::{configured_system, e1, next_seed, seeds, Outcome, Step};
use crate::amalgam::{discrete_amalgam_norm, validate_exponents, RadiusSweep, WindowFamily};
use crate::grid::{make_grid, sample, FieldSpec};
use crate::harness::report::Record;
use crate::harness::SuiteConfig;
use crate::norms::{conjugate_all, product_l1};
use crate::predual::{characteristic_norm_bounds, duality_check, make_block_decomposition, Block};

const HOLDER: &str = "windowed Holder inequality at cube scale r";
const DUALITY: &str = "pairing with a block decomposition is bounded by the alpha norm times the coefficient sum";
const CHAR: &str = "ball indicators scale like r0^(n/alpha) and r0^(n/alpha') in the two spaces";

pub fn run(cfg: &SuiteConfig, out: &mut Outcome) -> Step {
    let grid = cfg.grid_or(&make_grid(&[[-4.0, 4.0], [-4.0, 4.0]], &[64, 64])?)?;
    let n = grid.dim();
    let sys = configured_system(cfg, n)?;
    let tol = cfg.tolerances.inequality;
    let radii = [0.5, 1.0, 2.0];

    let mut rng = seeds(cfg.seed, 0xd0);
    let (pc, sc) = (conjugate_all(sys.p()), conjugate_all(sys.s()));
    let mut viol = 0usize;
    let mut worst = 0.0f64;
    for _ in 0..cfg.samples.holder {
        let f = sample(
            &FieldSpec::random(next_seed(&mut rng), &vec![-2.0; n], &vec![2.0; n]),
            &grid,
        )?;
        let g = sample(
            &FieldSpec::random(next_seed(&mut rng), &vec![-2.0; n], &vec![2.0; n]),
            &grid,
        )?;
        let r = radii[rng.gen_range(0..radii.len())];
        let lhs = product_l1(&f, &g)?;
        let rhs = discrete_amalgam_norm(&f, sys.p(), sys.s(), r)? * discrete_amalgam_norm(&g, &pc, &sc, r)?;
        viol += (lhs > rhs * (1.0 + tol)) as usize;
        worst = worst.max(lhs / rhs);
    }
    out.push(Record::flag("holder-random-pairs", HOLDER, viol as f64, 0.0, viol == 0));
    out.constant("holder-max-ratio", worst);

    let sweep = cfg.sweep_or(RadiusSweep::dyadic(-2, 1, WindowFamily::Cube)?)?;
    let mut viol = 0usize;
    let mut worst = 0.0f64;
    for _ in 0..cfg.samples.duality {
        let g = sample(
            &FieldSpec::random(next_seed(&mut rng), &vec![-3.0; n], &vec![3.0; n]),
            &grid,
        )?;
        let count = rng.gen_range(1..=5);
        let mut blocks = Vec::with_capacity(count);
        for _ in 0..count {
            let r = radii[rng.gen_range(0..radii.len())];
            // block lives on grid / r so that its dilate lands on the grid
            let fine = grid.scaled(1.0 / r);
            let f = sample(
                &FieldSpec::random(next_seed(&mut rng), &vec![-1.5; n], &vec![1.5; n]),
                &fine,
            )?;
            let nrm = discrete_amalgam_norm(&f, &pc, &sc, 1.0)?;
            let shrink = rng.gen_range(0.5..1.0);
            blocks.push(Block {
                c: rng.gen_range(-2.0..2.0),
                r,
                f: f.scale(shrink / nrm),
            });
        }
        let dec = make_block_decomposition(blocks, &sys)?;
        let rep = duality_check(&g, &dec, &sys, &sweep)?;
        viol += (rep.lhs > rep.rhs * (1.0 + tol)) as usize;
        if rep.rhs > 0.0 {
            worst = worst.max(rep.lhs / rep.rhs);
        }
    }
    out.push(Record::flag(
        "duality-random-pairs",
        DUALITY,
        viol as f64,
        0.0,
        viol == 0,
    ));
    out.constant("duality-max-ratio", worst);

    characteristic(cfg, out)
}

fn characteristic(cfg: &SuiteConfig, out: &mut Outcome) -> Step {
    let grid = make_grid(&[[-16.0, 16.0]], &[1024])?;
    let r0s: Vec<f64> = (-4..=3).map(|j| 2f64.powi(j)).collect();
    let sweep = RadiusSweep::dyadic(-5, 3, WindowFamily::Ball)?;
    let mixed = configured_system(&SuiteConfig::default(), 1)?;
    let scalar = validate_exponents(&[e1(2.0)], &[e1(2.0)], e1(2.0), 1)?;
    for (tag, sys) in [("mixed", mixed), ("scalar", scalar)] {
        let recs = characteristic_norm_bounds(&r0s, &sys, &sweep, &grid)?;
        let band = |f: &dyn Fn(usize) -> f64| {
            let v: Vec<f64> = (0..recs.len()).map(f).collect();
            let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = v.iter().cloned().fold(0.0, f64::max);
            (lo, hi)
        };
        let (alo, ahi) = band(&|i| recs[i].alpha_ratio);
        let (hlo, hhi) = band(&|i| recs[i].h_ratio);
        out.constant(format!("char-{tag}-alpha-ratio-min"), alo);
        out.constant(format!("char-{tag}-alpha-ratio-max"), ahi);
        out.constant(format!("char-{tag}-h-ratio-min"), hlo);
        out.constant(format!("char-{tag}-h-ratio-max"), hhi);
        let bounded = alo > 0.0 && ahi.is_finite() && hlo > 0.0 && hhi.is_finite();
        out.push(Record::flag(
            format!("char-{tag}-alpha-bounded"),
            CHAR,
            ahi,
            alo,
            bounded,
        ));
        out.push(Record::flag(format!("char-{tag}-h-bounded"), CHAR, hhi, hlo, bounded));
        if tag == "scalar" {
            // p = s = alpha: both ratios are exact constants
            out.push(Record::close(
                "char-scalar-alpha-constant",
                CHAR,
                ahi,
                alo,
                cfg.tolerances.quadrature,
            ));
            out.push(Record::close(
                "char-scalar-h-constant",
                CHAR,
                hhi,
                hlo,
                cfg.tolerances.identity,
            ));
        }
    }
    Ok(())
}

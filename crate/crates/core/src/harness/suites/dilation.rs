//! Dilation identities and measured scaling exponents.

use super::{configured_system, fit_line, max_rel_diff, next_seed, seeds, Outcome, Step};
use crate::amalgam::{
    alpha_amalgam_norm, discrete_alpha_norm, discrete_amalgam_norm, global_amalgam_norm, RadiusSweep, WindowFamily,
};
use crate::error::Result;
use crate::grid::{make_grid, sample, FieldSpec, Grid, GridFunction};
use crate::harness::report::Record;
use crate::harness::SuiteConfig;
use crate::norms::{mixed_lebesgue_norm, sum_inv};
use crate::operators::{dilate, fractional_integral, st_dilation, RieszParams};

const ST_ID: &str = "normalized dilation at scale one is the identity";
const ST_COMP: &str = "normalized dilations compose multiplicatively";
const ST_SUP: &str = "alpha norm is the supremum of unit-scale norms of normalized dilates";
const PLAIN: &str = "plain dilation resamples exactly";
const COVAR: &str = "fractional integral commutes with dilation up to t^-gamma";
const SCALING: &str = "dilation exponents of the amalgam norms";

fn identities(cfg: &SuiteConfig, grid: &Grid, tag: &str, out: &mut Outcome) -> Step {
    let n = grid.dim();
    let tol = cfg.tolerances.identity;
    let sys = configured_system(cfg, n)?;
    let mut rng = seeds(cfg.seed, 0xd1 + n as u64);
    let f = sample(
        &FieldSpec::random(next_seed(&mut rng), &vec![-1.5; n], &vec![1.5; n]),
        grid,
    )?;
    let a = sys.alpha();

    let st1 = st_dilation(&f, 1.0, a)?;
    out.push(Record::flag(format!("st-identity-{tag}"), ST_ID, 0.0, 0.0, st1 == f));
    let lhs = st_dilation(&st_dilation(&f, 4.0, a)?, 2.0, a)?;
    let rhs = st_dilation(&f, 8.0, a)?;
    let d = max_rel_diff(lhs.values(), rhs.values());
    out.push(Record::flag(
        format!("st-compose-{tag}"),
        ST_COMP,
        d,
        tol,
        lhs.grid() == rhs.grid() && d <= tol,
    ));
    let lhs = st_dilation(&st_dilation(&f, 0.5, a)?, 2.0, a)?;
    let d = max_rel_diff(lhs.values(), f.values());
    out.push(Record::flag(
        format!("st-inverse-{tag}"),
        ST_COMP,
        d,
        tol,
        lhs.grid() == f.grid() && d <= tol,
    ));

    // sup over rho of 1||St_rho f|| equals the discrete alpha norm, with r = 1/rho
    let sweep = RadiusSweep::dyadic(-2, 1, WindowFamily::Cube)?;
    let direct = discrete_alpha_norm(&f, &sys, &sweep)?.value;
    let mut via = 0.0f64;
    for &r in sweep.radii() {
        let g = st_dilation(&f, 1.0 / r, a)?;
        via = via.max(discrete_amalgam_norm(&g, sys.p(), sys.s(), 1.0)?);
    }
    out.push(Record::close(format!("st-sup-{tag}"), ST_SUP, via, direct, tol));

    let id = dilate(&f, 1.0)?;
    out.push(Record::flag(format!("dilate-identity-{tag}"), PLAIN, 0.0, 0.0, id == f));
    let chi = |h: f64, g: &Grid| {
        sample(
            &FieldSpec::IndicatorBox {
                lower: vec![-h; n],
                upper: vec![h; n],
            },
            g,
        )
    };
    let d2 = dilate(&chi(1.0, grid)?, 2.0)?;
    let want = chi(0.5, d2.grid())?;
    out.push(Record::flag(
        format!("dilate-support-{tag}"),
        PLAIN,
        0.0,
        0.0,
        d2 == want,
    ));

    let params = RieszParams::new(if n == 1 { 0.5 } else { 1.0 }, n)?;
    let i_f = fractional_integral(&f, params)?;
    for t in [0.5, 2.0, 4.0] {
        let lhs = fractional_integral(&dilate(&f, t)?, params)?;
        let rhs = dilate(&i_f, t)?.scale(t.powf(-params.gamma()));
        let d = max_rel_diff(lhs.values(), rhs.values());
        out.push(Record::flag(
            format!("covariance-{tag}-t{t}"),
            COVAR,
            d,
            1e-10,
            d <= 1e-10,
        ));
    }
    Ok(())
}

/// Norm of `delta_t f` with every window radius scaled by `1/t`.
type ScaledNorm = dyn Fn(&GridFunction<f64>, f64) -> Result<f64>;

fn scaling(cfg: &SuiteConfig, grid: &Grid, tag: &str, out: &mut Outcome) -> Step {
    let n = grid.dim();
    let sys = configured_system(cfg, n)?;
    let (p, s) = (sys.p().to_vec(), sys.s().to_vec());
    let nf = n as f64;
    let mut rng = seeds(cfg.seed, 0xd7 + n as u64);
    let f = sample(
        &FieldSpec::random(next_seed(&mut rng), &vec![-1.0; n], &vec![1.0; n]),
        grid,
    )?;
    let cube = RadiusSweep::dyadic(-2, 0, WindowFamily::Cube)?;
    let ball = cube.with_family(WindowFamily::Ball)?;
    let (sp, ss) = (sum_inv(&p), sum_inv(&s));
    let ia = sys.alpha().inv();
    let sys2 = sys.clone();
    let sys3 = sys.clone();
    let (p1, p2, s2, p3, s3) = (p.clone(), p.clone(), s.clone(), p.clone(), s.clone());
    let cases: Vec<(&str, f64, Box<ScaledNorm>)> = vec![
        ("mixed-lebesgue", -sp, Box::new(move |g, _| mixed_lebesgue_norm(g, &p1))),
        (
            "discrete-amalgam",
            -sp,
            Box::new(move |g, t| discrete_amalgam_norm(g, &p2, &s2, 1.0 / t)),
        ),
        (
            "global-amalgam",
            -sp - ss,
            Box::new(move |g, t| global_amalgam_norm(g, &p3, &s3, 1.0 / t)),
        ),
        ("discrete-alpha", -nf * ia, {
            let c = cube.clone();
            Box::new(move |g, t| Ok(discrete_alpha_norm(g, &sys2, &c.scaled(1.0 / t)?)?.value))
        }),
        ("alpha", -nf * ia, {
            let b = ball.clone();
            Box::new(move |g, t| Ok(alpha_amalgam_norm(g, &sys3, &b.scaled(1.0 / t)?)?.value))
        }),
    ];
    let ts = [0.5, 1.0, 2.0, 4.0];
    let xs: Vec<f64> = ts.iter().map(|t: &f64| t.ln()).collect();
    for (name, predicted, norm) in &cases {
        let ys = ts
            .iter()
            .map(|&t| Ok(norm(&dilate(&f, t)?, t)?.ln()))
            .collect::<Result<Vec<f64>>>()?;
        let (slope, _, res) = fit_line(&xs, &ys);
        out.push(Record::le(
            format!("scaling-residual-{name}-{tag}"),
            SCALING,
            res,
            cfg.tolerances.fit_residual,
            0.0,
        ));
        out.push(Record::abs_close(
            format!("scaling-exponent-{name}-{tag}"),
            SCALING,
            slope,
            *predicted,
            cfg.tolerances.fit_residual,
        ));
        out.constant(format!("exponent-{name}-{tag}"), slope);
    }
    Ok(())
}

pub fn run(cfg: &SuiteConfig, out: &mut Outcome) -> Step {
    let g1 = cfg.grid_or(&make_grid(&[[-8.0, 8.0]], &[1024])?)?;
    identities(cfg, &g1, "1d", out)?;
    scaling(cfg, &g1, "1d", out)?;
    if cfg.grid.is_none() {
        let g2 = make_grid(&[[-4.0, 4.0], [-4.0, 4.0]], &[64, 64])?;
        identities(cfg, &g2, "2d", out)?;
        scaling(cfg, &g2, "2d", out)?;
    }
    Ok(())
}

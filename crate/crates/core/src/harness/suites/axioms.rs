//! Norm axioms on random pairs, plus the exact identities (scalar collapse,
//! partition identity, St identities, commutator with a constant).

use super::{e1, ex, max_rel_diff, next_seed, or_e, or_ex, seeds, Outcome, Step};
use crate::amalgam::{
    alpha_amalgam_norm, discrete_alpha_norm, discrete_amalgam_norm, global_amalgam_norm, validate_exponents,
    ExponentSystem, RadiusSweep, WindowFamily,
};
use crate::error::Result;
use crate::grid::{make_grid, sample, FieldSpec, Grid, GridFunction};
use crate::harness::report::Record;
use crate::harness::SuiteConfig;
use crate::norms::{conjugate_all, mixed_lebesgue_norm, product_l1, Exponent};
use crate::operators::{commutator, fractional_integral, st_dilation, RieszParams};

const AXIOM: &str = "amalgam norm axioms";
const COLLAPSE: &str = "scalar exponents collapse mixed norms";
const PARTITION: &str = "cube partition identity for equal scalar exponents";
const ST_ID: &str = "normalized dilation at scale one is the identity";
const ST_COMP: &str = "normalized dilations compose multiplicatively";
const COMM_CONST: &str = "commutator with a constant symbol vanishes";
const HOLDER: &str = "Holder inequality on the whole box";

struct Case {
    tag: &'static str,
    grid: Grid,
    sys: ExponentSystem,
    support: (Vec<f64>, Vec<f64>),
    rho: f64,
    sweep: RadiusSweep,
}

fn norms(c: &Case, f: &GridFunction<f64>) -> Result<Vec<(&'static str, f64)>> {
    let (p, s) = (c.sys.p(), c.sys.s());
    Ok(vec![
        ("mixed-lebesgue", mixed_lebesgue_norm(f, p)?),
        ("global", global_amalgam_norm(f, p, s, c.rho)?),
        ("discrete", discrete_amalgam_norm(f, p, s, 1.0)?),
        (
            "alpha",
            alpha_amalgam_norm(f, &c.sys, &c.sweep.with_family(WindowFamily::Ball)?)?.value,
        ),
        ("discrete-alpha", discrete_alpha_norm(f, &c.sys, &c.sweep)?.value),
    ])
}

fn axioms(cfg: &SuiteConfig, c: &Case, out: &mut Outcome) -> Step {
    let tol = cfg.tolerances.identity;
    let mut rng = seeds(cfg.seed, 0xa1 + c.tag.len() as u64);
    let (lo, hi) = (&c.support.0, &c.support.1);
    let mut worst_tri: f64 = 0.0;
    let mut worst_hom: f64 = 0.0;
    let mut tri_ok = true;
    let mut hom_ok = true;
    let mut mono_ok = true;
    let mut holder_ok = true;
    let mut worst_holder: f64 = 0.0;
    let pc = conjugate_all(c.sys.p());
    for _ in 0..cfg.samples.axioms {
        let f = sample(&FieldSpec::random(next_seed(&mut rng), lo, hi), &c.grid)?;
        let g = sample(&FieldSpec::random(next_seed(&mut rng), lo, hi), &c.grid)?;
        let sum = f.add(&g)?;
        let nf = norms(c, &f)?;
        let ng = norms(c, &g)?;
        let ns = norms(c, &sum)?;
        let nc = norms(c, &f.scale(-2.5))?;
        // pointwise min(|f|, |g|) <= |g|
        let small = f.zip_map(&g, |a, b| a.abs().min(b.abs()))?;
        let nsmall = norms(c, &small)?;
        for k in 0..nf.len() {
            let rhs = nf[k].1 + ng[k].1;
            if ns[k].1 > rhs * (1.0 + tol) {
                tri_ok = false;
            }
            worst_tri = worst_tri.max(ns[k].1 / rhs);
            let d = (nc[k].1 - 2.5 * nf[k].1).abs() / (2.5 * nf[k].1);
            worst_hom = worst_hom.max(d);
            hom_ok &= d <= tol;
            mono_ok &= nsmall[k].1 <= ng[k].1 * (1.0 + tol);
        }
        let lhs = product_l1(&f, &g)?;
        let rhs = mixed_lebesgue_norm(&f, c.sys.p())? * mixed_lebesgue_norm(&g, &pc)?;
        holder_ok &= lhs <= rhs * (1.0 + cfg.tolerances.inequality);
        worst_holder = worst_holder.max(lhs / rhs);
    }
    out.push(Record::flag(
        format!("axiom-triangle-{}", c.tag),
        AXIOM,
        worst_tri,
        1.0,
        tri_ok,
    ));
    out.push(Record::flag(
        format!("axiom-homogeneity-{}", c.tag),
        AXIOM,
        worst_hom,
        tol,
        hom_ok,
    ));
    out.push(Record::flag(
        format!("axiom-monotone-{}", c.tag),
        AXIOM,
        0.0,
        0.0,
        mono_ok,
    ));
    out.push(Record::flag(
        format!("holder-box-{}", c.tag),
        HOLDER,
        worst_holder,
        1.0,
        holder_ok,
    ));
    let z = GridFunction::<f64>::zeros(&c.grid);
    let nz = norms(c, &z)?;
    let zmax = nz.iter().map(|v| v.1).fold(0.0, f64::max);
    out.push(Record::flag(
        format!("axiom-zero-{}", c.tag),
        AXIOM,
        zmax,
        0.0,
        zmax == 0.0,
    ));
    Ok(())
}

/// Independent oracle `(sum |f|^p h^n)^{1/p}` with one scalar exponent.
fn flat_norm(f: &GridFunction<f64>, p: f64) -> f64 {
    if p.is_infinite() {
        return f.max_modulus();
    }
    let s: f64 = f.values().iter().map(|v| v.abs().powf(p)).sum();
    (s * f.grid().cell_volume()).powf(1.0 / p)
}

fn identities(cfg: &SuiteConfig, grid: &Grid, tag: &str, out: &mut Outcome) -> Step {
    let tol = cfg.tolerances.identity;
    let n = grid.dim();
    let mut rng = seeds(cfg.seed, 0xb2 + n as u64);
    let f = sample(
        &FieldSpec::random(next_seed(&mut rng), &vec![-1.5; n], &vec![1.5; n]),
        grid,
    )?;
    for p in [1.0, 2.0, 3.0, f64::INFINITY] {
        let pe = vec![e1(p); n];
        let lhs = mixed_lebesgue_norm(&f, &pe)?;
        out.push(Record::close(
            format!("identity-collapse-{tag}-p{p}"),
            COLLAPSE,
            lhs,
            flat_norm(&f, p),
            tol,
        ));
        for r in [0.25, 0.5, 1.0] {
            let d = discrete_amalgam_norm(&f, &pe, &pe, r)?;
            out.push(Record::close(
                format!("identity-partition-{tag}-p{p}-r{r}"),
                PARTITION,
                d,
                lhs,
                tol,
            ));
        }
    }
    // with p = s the gate pins alpha to p, so every radius gives the flat norm
    let p = 2.0;
    let alpha = p;
    let pe = vec![e1(p); n];
    let sys = validate_exponents(&pe, &pe, e1(alpha), n)?;
    let sweep = RadiusSweep::dyadic(-2, 1, WindowFamily::Cube)?;
    let lhs = discrete_alpha_norm(&f, &sys, &sweep)?.value;
    let flat = flat_norm(&f, p);
    let rhs = sweep
        .radii()
        .iter()
        .map(|r| r.powf(n as f64 / alpha - n as f64 / p) * flat)
        .fold(0.0, f64::max);
    out.push(Record::close(
        format!("identity-partition-alpha-{tag}"),
        PARTITION,
        lhs,
        rhs,
        tol,
    ));

    // alpha-norm of the cube indicator with zero weight exponent
    let chi = sample(
        &FieldSpec::IndicatorBox {
            lower: vec![-1.0; n],
            upper: vec![1.0; n],
        },
        grid,
    )?;
    let inf = vec![Exponent::INFINITY; n];
    let two = vec![e1(2.0); n];
    let sys = validate_exponents(&two, &inf, e1(2.0), n)?;
    let sweep = RadiusSweep::dyadic(-1, 1, WindowFamily::Ball)?;
    let v = alpha_amalgam_norm(&chi, &sys, &sweep)?.value;
    let want = 2f64.powf(n as f64 / 2.0);
    out.push(Record::close(
        format!("identity-collapse-alpha-{tag}"),
        COLLAPSE,
        v,
        want,
        tol,
    ));

    // St identities
    let a = e1(3.0);
    let st1 = st_dilation(&f, 1.0, a)?;
    out.push(Record::flag(format!("identity-st1-{tag}"), ST_ID, 0.0, 0.0, st1 == f));
    let lhs = st_dilation(&st_dilation(&f, 4.0, a)?, 2.0, a)?;
    let rhs = st_dilation(&f, 8.0, a)?;
    let d = max_rel_diff(lhs.values(), rhs.values());
    out.push(Record::flag(
        format!("identity-st-compose-{tag}"),
        ST_COMP,
        d,
        tol,
        lhs.grid() == rhs.grid() && d <= tol,
    ));

    // [c, I] f = 0
    let gamma = if n == 1 { 0.5 } else { 1.0 };
    let params = RieszParams::new(gamma, n)?;
    let c = 3.25;
    let b = GridFunction::constant(grid, c);
    let comm = commutator(&b, &f, params)?;
    let scale = c * fractional_integral(&f, params)?.max_modulus();
    out.push(Record::le(
        format!("identity-commutator-constant-{tag}"),
        COMM_CONST,
        comm.max_modulus(),
        tol * scale,
        0.0,
    ));
    Ok(())
}

pub fn run(cfg: &SuiteConfig, out: &mut Outcome) -> Step {
    let g1 = make_grid(&[[-8.0, 8.0]], &[1024])?;
    let g2 = make_grid(&[[-4.0, 4.0], [-4.0, 4.0]], &[128, 128])?;
    identities(cfg, &cfg.grid_or(&g1)?, "1d", out)?;
    if cfg.grid.is_none() {
        identities(cfg, &g2, "2d", out)?;
    }

    let sweep = cfg.sweep_or(RadiusSweep::dyadic(-2, 0, WindowFamily::Cube)?)?;
    let c1 = Case {
        tag: "1d",
        grid: cfg.grid_or(&g1)?,
        sys: validate_exponents(
            &or_ex(&cfg.exps.p, &[2.0]),
            &or_ex(&cfg.exps.s, &[4.0]),
            or_e(cfg.exps.alpha, 3.0),
            1,
        )?,
        support: (vec![-2.0], vec![2.0]),
        rho: 1.0,
        sweep: sweep.clone(),
    };
    axioms(cfg, &c1, out)?;
    let c2 = Case {
        tag: "2d",
        grid: make_grid(&[[-4.0, 4.0], [-4.0, 4.0]], &[64, 64])?,
        sys: validate_exponents(&ex(&[2.0, 4.0]), &ex(&[4.0, 8.0]), e1(1.0 / 0.3), 2)?,
        support: (vec![-1.5, -1.5], vec![1.5, 1.5]),
        rho: 1.0,
        sweep,
    };
    if cfg.grid.is_none() {
        axioms(cfg, &c2, out)?;
    }
    Ok(())
}

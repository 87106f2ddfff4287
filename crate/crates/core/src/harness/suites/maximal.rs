//! Fractional maximal function: pointwise domination by the fractional
//! integral, boundedness ratios, and the annular estimate.

use super::{next_seed, seeds, Outcome, Step};
use crate::amalgam::unit_ball_volume;
use crate::amalgam::{discrete_alpha_norm, validate_exponents, RadiusSweep, WindowFamily};
use crate::grid::{make_grid, sample, FieldSpec};
use crate::harness::report::Record;
use crate::harness::SuiteConfig;
use crate::norms::Exponent;
use crate::operators::{
    centered_bound_constant, fractional_integral, fractional_maximal, fractional_maximal_centered, RieszParams,
};

const POINTWISE: &str = "fractional maximal function dominated pointwise by the fractional integral";
const BOUNDED: &str = "fractional maximal function bounded between alpha spaces";
const ANNULAR: &str = "annular estimate for the fractional integral away from the support";
const VALUE: &str = "fractional maximal function of an interval indicator";

pub fn run(cfg: &SuiteConfig, out: &mut Outcome) -> Step {
    let tol = cfg.tolerances.inequality;
    let grid = make_grid(&[[-8.0, 8.0]], &[512])?;
    let h = grid.spacing()[0];
    let params = RieszParams::new(0.5, 1)?;
    let k_centered = centered_bound_constant(params);
    let k_uncentered = k_centered * 2f64.powf(1.0 - params.gamma());
    out.constant("centered-constant", k_centered);
    // radii are multiples of h, so every counted cell lies inside the ball
    let sweep = RadiusSweep::dyadic(-4, 2, WindowFamily::Ball)?;
    assert!(sweep.radii().iter().all(|r| (r / h).fract() == 0.0));

    let src = validate_exponents(
        &[Exponent::from_inv(0.55)?],
        &[Exponent::new(32.0)?],
        Exponent::from_inv(0.55)?,
        1,
    )?;
    let tgt = validate_exponents(
        &[Exponent::new(2.0)?],
        &[Exponent::new(32.0)?],
        Exponent::from_inv(0.05)?,
        1,
    )?;
    let nsweep = RadiusSweep::dyadic(-3, 2, WindowFamily::Cube)?;

    let mut rng = seeds(cfg.seed, 0x3a);
    let (mut viol_c, mut viol_u, mut neg) = (0usize, 0usize, 0usize);
    let (mut worst_c, mut worst_u) = (0.0f64, 0.0f64);
    let (mut kmin, mut kmax) = (f64::INFINITY, 0.0f64);
    for _ in 0..cfg.samples.maximal {
        let f = sample(&FieldSpec::random(next_seed(&mut rng), &[-3.0], &[3.0]), &grid)?;
        let af = f.map(f64::abs);
        let iaf = fractional_integral(&af, params)?;
        let mc = fractional_maximal_centered(&f, params, &sweep, true)?;
        let mu = fractional_maximal(&f, params, &sweep, &grid)?;
        for i in 0..grid.len() {
            let (c, u, v) = (mc.values()[i], mu.values()[i], iaf.values()[i]);
            viol_c += (c > k_centered * v * (1.0 + tol)) as usize;
            viol_u += (u > k_uncentered * v * (1.0 + tol)) as usize;
            neg += (c < 0.0 || u < 0.0 || v < 0.0) as usize;
            if v > 0.0 {
                worst_c = worst_c.max(c / (k_centered * v));
                worst_u = worst_u.max(u / (k_uncentered * v));
            }
        }
        let ratio = discrete_alpha_norm(&mu, &tgt, &nsweep)?.value / discrete_alpha_norm(&f, &src, &nsweep)?.value;
        kmin = kmin.min(ratio);
        kmax = kmax.max(ratio);
    }
    out.push(Record::flag(
        "pointwise-centered",
        POINTWISE,
        viol_c as f64,
        0.0,
        viol_c == 0,
    ));
    out.push(Record::flag(
        "pointwise-uncentered",
        POINTWISE,
        viol_u as f64,
        0.0,
        viol_u == 0,
    ));
    out.push(Record::flag("positivity", POINTWISE, neg as f64, 0.0, neg == 0));
    out.constant("pointwise-centered-max-ratio", worst_c);
    out.constant("pointwise-uncentered-max-ratio", worst_u);
    out.push(Record::flag(
        "alpha-bounded",
        BOUNDED,
        kmax,
        kmin,
        kmax.is_finite() && kmin > 0.0,
    ));
    out.constant("alpha-ratio-min", kmin);
    out.constant("alpha-ratio-max", kmax);

    // sup M chi_[-1,1] = 2^{1/2}, from the ball B(0, 1)
    let g2 = make_grid(&[[-2.0, 2.0]], &[64])?;
    let chi = sample(
        &FieldSpec::IndicatorBox {
            lower: vec![-1.0],
            upper: vec![1.0],
        },
        &g2,
    )?;
    let centers = make_grid(&[[-1.0, 1.0]], &[33])?;
    let radii = RadiusSweep::new((1..=32).map(|k| k as f64 / 16.0).collect(), WindowFamily::Ball)?;
    let m = fractional_maximal(&chi, params, &radii, &centers)?;
    out.push(Record::close(
        "indicator-value",
        VALUE,
        m.max_modulus(),
        2f64.sqrt(),
        cfg.tolerances.identity,
    ));

    // f outside 2B(0, r): I|f| on B against sum_j |2^{j+1} B|^{gamma-1} int_{2^{j+1}B} |f|
    let r = 0.5;
    let vn = unit_ball_volume(1);
    let mut worst = 0.0f64;
    for _ in 0..cfg.samples.maximal {
        let f = sample(&FieldSpec::random(next_seed(&mut rng), &[1.5], &[6.0]), &grid)?;
        let af = f.map(f64::abs);
        let iaf = fractional_integral(&af, params)?;
        let mut sum = 0.0;
        let mut j = 1;
        loop {
            let rad = r * 2f64.powi(j + 1);
            let mass: f64 = (0..grid.len())
                .filter(|&i| grid.point(i)[0].abs() < rad)
                .map(|i| af.values()[i])
                .sum::<f64>()
                * h;
            sum += (vn * rad).powf(params.gamma() - 1.0) * mass;
            if rad >= 8.0 {
                break;
            }
            j += 1;
        }
        let inner = (0..grid.len())
            .filter(|&i| grid.point(i)[0].abs() < r)
            .map(|i| iaf.values()[i])
            .fold(0.0, f64::max);
        if sum > 0.0 {
            worst = worst.max(inner / sum);
        }
    }
    out.push(Record::flag(
        "annular-constant",
        ANNULAR,
        worst,
        0.0,
        worst.is_finite() && worst > 0.0,
    ));
    out.constant("annular-measured-constant", worst);
    Ok(())
}

//! Centered fractional maximal function of an interval indicator, and the
//! pointwise domination by the Riesz potential.

use amalgam_lab::amalgam::{RadiusSweep, WindowFamily};
use amalgam_lab::operators::{centered_bound_constant, fractional_integral, fractional_maximal_centered, RieszParams};
use amalgam_lab::{make_grid, sample, FieldSpec, Result};

pub struct Summary {
    pub peak: f64,
    pub constant: f64,
    /// max over the grid of `M f / (C I f)`
    pub worst_ratio: f64,
}

pub fn run() -> Result<Summary> {
    let grid = make_grid(&[[-8.0, 8.0]], &[512])?;
    let params = RieszParams::new(0.5, 1)?;
    let f = sample(
        &FieldSpec::IndicatorBox {
            lower: vec![-1.0],
            upper: vec![1.0],
        },
        &grid,
    )?;
    let m = fractional_maximal_centered(&f, params, &RadiusSweep::dyadic(-4, 2, WindowFamily::Ball)?, false)?;
    let i = fractional_integral(&f, params)?;
    let c = centered_bound_constant(params);
    let worst_ratio = m
        .values()
        .iter()
        .zip(i.values())
        .map(|(a, b)| a / (c * b))
        .fold(0.0, f64::max);
    Ok(Summary {
        peak: m.max_modulus(),
        constant: c,
        worst_ratio,
    })
}

fn main() -> Result<()> {
    let s = run()?;
    println!(
        "max of M_(1/2) chi_[-1,1]: {:.10} (continuum value sqrt 2 = {:.10})",
        s.peak,
        2f64.sqrt()
    );
    println!("centered bound constant:   {:.10}", s.constant);
    println!("worst M / (C I):           {:.10}", s.worst_ratio);
    Ok(())
}

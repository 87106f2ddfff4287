//! A block decomposition read from JSON, synthesized on the grid and paired
//! against a test function.

use amalgam_lab::amalgam::{validate_exponents, RadiusSweep, WindowFamily};
use amalgam_lab::norms::exponents;
use amalgam_lab::predual::{duality_check, h_norm_upper_bound, DecompositionDoc};
use amalgam_lab::{make_grid, sample, Exponent, FieldSpec, Result};

// alpha' = 3/2 for alpha = 3; blocks are unit-norm scaled indicators
const DOC: &str = r#"{
  "alpha_prime": 1.5,
  "blocks": [
    {"c": 0.5, "r": 1.0, "field": {"field": "indicator-box", "params": {"lower": [-0.25], "upper": [0.25]}}},
    {"c": -0.25, "r": 2.0, "field": {"field": "indicator-box", "params": {"lower": [0.5], "upper": [0.75]}}}
  ]
}"#;

pub fn run() -> Result<(f64, f64, f64)> {
    let grid = make_grid(&[[-8.0, 8.0]], &[1024])?;
    let sys = validate_exponents(&exponents(&[2.0])?, &exponents(&[4.0])?, Exponent::new(3.0)?, 1)?;
    let dec = DecompositionDoc::from_json(DOC)?.build(&grid, &sys)?;
    let g = sample(
        &FieldSpec::Gaussian {
            center: vec![0.3],
            width: 1.0,
            amplitude: 2.0,
        },
        &grid,
    )?;
    let rep = duality_check(&g, &dec, &sys, &RadiusSweep::dyadic(-4, 3, WindowFamily::Cube)?)?;
    Ok((rep.lhs, rep.rhs, h_norm_upper_bound(&dec)))
}

fn main() -> Result<()> {
    let (lhs, rhs, h) = run()?;
    println!("sum |c_j| = {h}");
    println!("|<f, g>| = {lhs:.8} <= {rhs:.8}");
    Ok(())
}

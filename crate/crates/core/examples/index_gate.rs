//! The admissibility window for alpha, and what happens when it is overridden.

use amalgam_lab::amalgam::{alpha_amalgam_norm, validate_exponents, ExponentSystem, RadiusSweep, WindowFamily};
use amalgam_lab::norms::exponents;
use amalgam_lab::{make_grid, sample, Exponent, FieldSpec, Result};

pub fn run() -> Result<(Vec<(f64, String)>, Vec<(f64, f64)>)> {
    let p = exponents(&[2.0])?;
    let s = exponents(&[4.0])?;
    let mut verdicts = Vec::new();
    for a in [1.0, 2.0, 3.0, 4.0, 8.0] {
        let v = match validate_exponents(&p, &s, Exponent::new(a)?, 1) {
            Ok(sys) => format!("{:?}", sys.status()),
            Err(e) => e.to_string(),
        };
        verdicts.push((a, v));
    }

    // alpha = 1 sits above the window; the sup over radii keeps growing
    let grid = make_grid(&[[-10.0, 10.0], [-10.0, 10.0]], &[80, 80])?;
    let chi = sample(
        &FieldSpec::IndicatorBall {
            center: vec![0.0, 0.0],
            radius: 1.0,
        },
        &grid,
    )?;
    let two = exponents(&[2.0, 2.0])?;
    let four = exponents(&[4.0, 4.0])?;
    let forced = ExponentSystem::forced(&two, &four, Exponent::new(1.0)?)?;
    let mut growth = Vec::new();
    for top in 0..=3 {
        let sweep = RadiusSweep::dyadic(-2, top, WindowFamily::Ball)?;
        growth.push((2f64.powi(top), alpha_amalgam_norm(&chi, &forced, &sweep)?.value));
    }
    Ok((verdicts, growth))
}

fn main() -> Result<()> {
    let (verdicts, growth) = run()?;
    for (a, v) in verdicts {
        println!("alpha = {a}: {v}");
    }
    println!("forced alpha = 1, chi of the unit disc:");
    for (r, v) in growth {
        println!("  sweep up to r = {r:2}: {v:.6}");
    }
    Ok(())
}

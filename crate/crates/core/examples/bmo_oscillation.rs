//! Mean oscillation of log|x|, a bounded bump and a constant, plus the drift
//! of ball averages along a doubling chain.

use amalgam_lab::bmo::{bmo_norm, doubling_drift, BallFamily, ContainmentPolicy};
use amalgam_lab::grid::WindowSpec;
use amalgam_lab::{make_grid, sample, FieldSpec, GridFunction, Result};

pub fn run() -> Result<(Vec<(&'static str, f64)>, f64, f64)> {
    let grid = make_grid(&[[-8.0, 8.0]], &[1024])?;
    let family = BallFamily::new(4, vec![1.0 / 32.0, 1.0 / 8.0, 0.5, 2.0], ContainmentPolicy::Inside)?;
    let log = sample(&FieldSpec::LogAbs { center: vec![] }, &grid)?;
    let bump = sample(
        &FieldSpec::Gaussian {
            center: vec![1.0],
            width: 0.5,
            amplitude: 3.0,
        },
        &grid,
    )?;
    let flat = GridFunction::constant(&grid, 7.0);
    let norms = vec![
        ("log|x|", bmo_norm(&log, &family)?),
        ("gaussian", bmo_norm(&bump, &family)?),
        ("constant", bmo_norm(&flat, &family)?),
    ];
    let d = doubling_drift(&log, &WindowSpec::ball(&[0.0], 0.25)?, 1)?;
    Ok((norms, d.drift, d.bound))
}

fn main() -> Result<()> {
    let (norms, drift, bound) = run()?;
    for (name, v) in norms {
        println!("BMO({name}) = {v:.8}");
    }
    println!(
        "log|x| drift B(0,1/4) -> B(0,1): {drift:.8} <= {bound:.8} (continuum value ln 4 = {:.8})",
        4f64.ln()
    );
    Ok(())
}

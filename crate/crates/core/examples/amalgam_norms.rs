//! Amalgam norms of a ball indicator: ball windows, cube windows and the
//! alpha-weighted supremum over radii.

use amalgam_lab::amalgam::{
    alpha_amalgam_norm, discrete_alpha_norm, discrete_amalgam_norm, global_amalgam_norm, validate_exponents,
    RadiusSweep, WindowFamily,
};
use amalgam_lab::norms::exponents;
use amalgam_lab::{make_grid, sample, Exponent, FieldSpec, Result};

pub struct Summary {
    pub global: Vec<(f64, f64)>,
    pub discrete: Vec<(f64, f64)>,
    pub alpha_ball: (f64, f64),
    pub alpha_cube: (f64, f64),
}

pub fn run() -> Result<Summary> {
    let grid = make_grid(&[[-8.0, 8.0]], &[1024])?;
    let f = sample(
        &FieldSpec::IndicatorBall {
            center: vec![0.5],
            radius: 1.0,
        },
        &grid,
    )?;
    let p = exponents(&[2.0])?;
    let s = exponents(&[4.0])?;
    let radii = [0.25, 0.5, 1.0, 2.0];
    let global = radii
        .iter()
        .map(|&r| Ok((r, global_amalgam_norm(&f, &p, &s, r)?)))
        .collect::<Result<_>>()?;
    let discrete = radii
        .iter()
        .map(|&r| Ok((r, discrete_amalgam_norm(&f, &p, &s, r)?)))
        .collect::<Result<_>>()?;
    let sys = validate_exponents(&p, &s, Exponent::new(3.0)?, 1)?;
    let ball = alpha_amalgam_norm(&f, &sys, &RadiusSweep::dyadic(-3, 2, WindowFamily::Ball)?)?;
    let cube = discrete_alpha_norm(&f, &sys, &RadiusSweep::dyadic(-3, 2, WindowFamily::Cube)?)?;
    Ok(Summary {
        global,
        discrete,
        alpha_ball: (ball.value, ball.argmax_radius),
        alpha_cube: (cube.value, cube.argmax_radius),
    })
}

fn main() -> Result<()> {
    let s = run()?;
    println!("radius   ball-window   cube-window");
    for ((r, g), (_, d)) in s.global.iter().zip(&s.discrete) {
        println!("{r:6}   {g:.8}    {d:.8}");
    }
    println!("alpha=3 ball sup {:.8} at r={}", s.alpha_ball.0, s.alpha_ball.1);
    println!("alpha=3 cube sup {:.8} at r={}", s.alpha_cube.0, s.alpha_cube.1);
    Ok(())
}

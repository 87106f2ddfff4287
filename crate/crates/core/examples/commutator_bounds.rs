//! Commutator `[b, I_(1/2)]` with b = log|x|: the ratio against BMO times the
//! source norm, and the lower probe that recovers the oscillation of b.

use amalgam_lab::amalgam::{validate_exponents, FractionalSystem, RadiusSweep, WindowFamily};
use amalgam_lab::bmo::BallFamily;
use amalgam_lab::harness::{commutator_lower_probe, commutator_upper_sweep, ProbeSetup};
use amalgam_lab::{make_grid, sample, Exponent, FieldSpec, Result};

pub struct Summary {
    pub constants: Vec<f64>,
    pub oscillation: f64,
    pub bound: f64,
    pub tail: f64,
    pub probe_pass: bool,
}

pub fn run() -> Result<Summary> {
    let grid = make_grid(&[[-8.0, 8.0]], &[1024])?;
    let s = [Exponent::new(8.0)?];
    let source = validate_exponents(&[Exponent::from_inv(0.75)?], &s, Exponent::from_inv(0.7)?, 1)?;
    let target = validate_exponents(&[Exponent::new(4.0)?], &s, Exponent::from_inv(0.2)?, 1)?;
    let sys = FractionalSystem::new(source, target, 0.5)?;
    let sweep = RadiusSweep::dyadic(-4, 2, WindowFamily::Cube)?;

    let b = sample(&FieldSpec::LogAbs { center: vec![] }, &grid)?;
    let fs = [
        FieldSpec::IndicatorBox {
            lower: vec![-1.0],
            upper: vec![1.0],
        },
        FieldSpec::IndicatorBox {
            lower: vec![0.0],
            upper: vec![0.5],
        },
        FieldSpec::Gaussian {
            center: vec![-2.0],
            width: 0.5,
            amplitude: 1.0,
        },
    ];
    let family = fs.iter().map(|f| sample(f, &grid)).collect::<Result<Vec<_>>>()?;
    let up = commutator_upper_sweep(
        std::slice::from_ref(&b),
        &sys,
        &family,
        &BallFamily::default_for(&grid),
        &sweep,
    )?;

    let probe = commutator_lower_probe(&b, &sys, &ProbeSetup::new(vec![0.0], 1.0, 8), &sweep)?;
    Ok(Summary {
        constants: up.constants,
        oscillation: probe.oscillation,
        bound: probe.bound,
        tail: probe.tail,
        probe_pass: probe.pass,
    })
}

fn main() -> Result<()> {
    let s = run()?;
    for (k, c) in s.constants.iter().enumerate() {
        println!("f{k}: ||[b,I]f|| / (||b||_BMO ||f||) = {c:.6}");
    }
    println!(
        "probe: oscillation {:.6} <= {:.6} (tail {:.4}) -> {}",
        s.oscillation,
        s.bound * (1.0 + s.tail),
        s.tail,
        if s.probe_pass { "pass" } else { "fail" }
    );
    Ok(())
}

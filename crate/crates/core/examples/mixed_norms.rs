//! Iterated mixed Lebesgue norms of a few sampled fields, axis 0 first.

use amalgam_lab::norms::{exponents, mixed_lebesgue_norm};
use amalgam_lab::{make_grid, sample, FieldSpec, Result};

pub fn run() -> Result<Vec<(String, f64)>> {
    let grid = make_grid(&[[-4.0, 4.0], [-4.0, 4.0]], &[128, 128])?;
    let fields = [
        (
            "unit square",
            FieldSpec::IndicatorBox {
                lower: vec![0.0, 0.0],
                upper: vec![1.0, 1.0],
            },
        ),
        (
            "gaussian",
            FieldSpec::Gaussian {
                center: vec![0.0, 0.0],
                width: 1.0,
                amplitude: 1.0,
            },
        ),
    ];
    let mut out = Vec::new();
    for (name, spec) in &fields {
        let f = sample(spec, &grid)?;
        for p in [[1.0, 1.0], [2.0, 4.0], [4.0, 2.0], [2.0, f64::INFINITY]] {
            let v = mixed_lebesgue_norm(&f, &exponents(&p)?)?;
            out.push((format!("{name} p=({}, {})", p[0], p[1]), v));
        }
    }
    Ok(out)
}

fn main() -> Result<()> {
    for (label, v) in run()? {
        println!("{label:28} {v:.10}");
    }
    Ok(())
}

//! Riesz potential of an interval indicator against the closed form, with the
//! error halving under grid refinement.

use amalgam_lab::operators::{fractional_integral, RieszParams};
use amalgam_lab::{make_grid, sample, FieldSpec, GridFunction, Result};

// C int_{-1}^{1} |x - y|^{-1/2} dy with C = 1/sqrt(2 pi)
fn closed_form(x: f64) -> f64 {
    let c = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
    let prim = |u: f64| 2.0 * u.signum() * u.abs().sqrt();
    c * (prim(x + 1.0) - prim(x - 1.0))
}

fn at(f: &GridFunction<f64>, x: f64) -> f64 {
    let g = f.grid();
    let h = g.spacing()[0];
    let j = ((x - g.lower()[0]) / h).floor() as usize;
    f.values()[j]
}

pub fn run() -> Result<Vec<(usize, f64, f64)>> {
    let params = RieszParams::new(0.5, 1)?;
    let mut rows = Vec::new();
    for cells in [512usize, 1024, 2048, 4096] {
        let h = 8.0 / cells as f64;
        // shift the box so that 0 and 2 are cell midpoints
        let grid = make_grid(&[[-4.0 - h / 2.0, 4.0 - h / 2.0]], &[cells])?;
        let f = sample(
            &FieldSpec::IndicatorBox {
                lower: vec![-1.0],
                upper: vec![1.0],
            },
            &grid,
        )?;
        let u = fractional_integral(&f, params)?;
        let e0 = (at(&u, 0.0) - closed_form(0.0)).abs() / closed_form(0.0);
        let e2 = (at(&u, 2.0) - closed_form(2.0)).abs() / closed_form(2.0);
        rows.push((cells, e0, e2));
    }
    Ok(rows)
}

fn main() -> Result<()> {
    println!(
        "I_(1/2) chi_[-1,1]: closed form {:.12} at 0, {:.12} at 2",
        closed_form(0.0),
        closed_form(2.0)
    );
    println!("cells   rel.err(0)    rel.err(2)");
    for (n, a, b) in run()? {
        println!("{n:5}   {a:.3e}     {b:.3e}");
    }
    Ok(())
}

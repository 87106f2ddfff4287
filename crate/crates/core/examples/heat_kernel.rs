//! Riesz constants, and the kernel recovered from the heat semigroup.

use amalgam_lab::operators::{heat_kernel_reconstruction, riesz_constant};
use amalgam_lab::Result;

/// Rows `(gamma, d, heat integral, C d^(gamma - 1))` in one dimension.
pub fn run() -> Result<Vec<(f64, f64, f64, f64)>> {
    let mut rows = Vec::new();
    for gamma in [0.25, 0.5] {
        for d in [1.0, 2.0] {
            let heat = heat_kernel_reconstruction(gamma, 1, d)?;
            let direct = riesz_constant(gamma, 1)? * d.powf(gamma - 1.0);
            rows.push((gamma, d, heat, direct));
        }
    }
    Ok(rows)
}

fn main() -> Result<()> {
    println!("C(1/2, n=1) = {:.16}", riesz_constant(0.5, 1)?);
    println!("C(1, n=2)   = {:.16}", riesz_constant(1.0, 2)?);
    println!("gamma  d   heat integral        C d^(gamma-1)");
    for (g, d, heat, direct) in run()? {
        println!("{g:5}  {d}  {heat:.15}  {direct:.15}");
    }
    Ok(())
}

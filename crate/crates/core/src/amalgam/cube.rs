use rayon::prelude::*;

use super::{ExponentSystem, RadiusSweep, SupValue};
use crate::error::{Error, Result};
use crate::grid::{Grid, GridFunction};
use crate::norms::{mixed_sequence_norm, reduce_dense, Exponent, LatticeArray};
use crate::scalar::Scalar;

/// Per-axis runs `(k, start, end)` of cells whose midpoints fall in `r[k, k+1)`.
fn axis_runs(grid: &Grid, axis: usize, r: f64) -> Result<Vec<(i64, usize, usize)>> {
    let h = grid.spacing()[axis];
    let m = r / h;
    if m.round() < 1.0 || (m - m.round()).abs() > 1e-9 * m {
        return Err(Error::NonTiling { r, axis, h });
    }
    let mut runs: Vec<(i64, usize, usize)> = Vec::new();
    for j in 0..grid.counts()[axis] {
        let k = (grid.midpoint(axis, j) / r).floor() as i64;
        match runs.last_mut() {
            Some(last) if last.0 == k => last.2 = j + 1,
            _ => runs.push((k, j, j + 1)),
        }
    }
    Ok(runs)
}

/// `k -> ||f chi_{Q_{r,k}}||_p` over the cubes meeting the box.
pub fn cube_lattice<T: Scalar>(f: &GridFunction<T>, p: &[Exponent], r: f64) -> Result<LatticeArray> {
    let grid = f.grid();
    let n = grid.dim();
    if p.len() != n {
        return Err(Error::ExponentArity {
            expected: n,
            got: p.len(),
        });
    }
    let runs: Vec<Vec<(i64, usize, usize)>> = (0..n).map(|a| axis_runs(grid, a, r)).collect::<Result<_>>()?;
    let abs: Vec<f64> = f.values().iter().map(|v| v.modulus()).collect();
    let dims: Vec<usize> = runs.iter().map(|r| r.len()).collect();
    let total: usize = dims.iter().product();
    let counts = grid.counts();
    let h = grid.spacing();
    let values: Vec<f64> = (0..total)
        .into_par_iter()
        .map(|mut c| {
            let mut sel = [(0i64, 0usize, 1usize); 3];
            for a in 0..n {
                sel[a] = runs[a][c % dims[a]];
                c /= dims[a];
            }
            let bdims = [sel[0].2 - sel[0].1, sel[1].2 - sel[1].1, sel[2].2 - sel[2].1];
            let mut buf = Vec::with_capacity(bdims.iter().product());
            let c0 = counts[0];
            let c1 = if n > 1 { counts[1] } else { 1 };
            for k in sel[2].1..sel[2].2 {
                for j in sel[1].1..sel[1].2 {
                    let row = (k * c1 + j) * c0;
                    buf.extend_from_slice(&abs[row + sel[0].1..row + sel[0].2]);
                }
            }
            reduce_dense(buf, &bdims[..n], h, p)
        })
        .collect();
    let lo: Vec<i64> = runs.iter().map(|r| r[0].0).collect();
    LatticeArray::new(lo, dims, values)
}

/// `r||f||_{p,s}`: the `l^s` norm of the cube norms at side `r`.
pub fn discrete_amalgam_norm<T: Scalar>(f: &GridFunction<T>, p: &[Exponent], s: &[Exponent], r: f64) -> Result<f64> {
    let lat = cube_lattice(f, p, r)?;
    mixed_sequence_norm(&lat, s)
}

/// `sup_r r^{n/alpha - sum 1/p_i} r||f||_{p,s}` over the sweep.
pub fn discrete_alpha_norm<T: Scalar>(
    f: &GridFunction<T>,
    sys: &ExponentSystem,
    sweep: &RadiusSweep,
) -> Result<SupValue> {
    let e = sys.cube_weight_exponent();
    let profile = sweep
        .radii()
        .iter()
        .map(|&r| Ok((r, r.powf(e) * discrete_amalgam_norm(f, sys.p(), sys.s(), r)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SupValue::from_profile(profile))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_grid, sample, FieldSpec};
    use crate::norms::{exponents, mixed_lebesgue_norm};

    #[test]
    fn single_cube() {
        let g = make_grid(&[[-2.0, 2.0], [-2.0, 2.0]], &[16, 16]).unwrap();
        let f = sample(
            &FieldSpec::IndicatorBox {
                lower: vec![0.0, 0.0],
                upper: vec![1.0, 1.0],
            },
            &g,
        )
        .unwrap();
        for (p, s) in [([2.0, 3.0], [1.0, 4.0]), ([1.0, f64::INFINITY], [f64::INFINITY, 2.0])] {
            let v = discrete_amalgam_norm(&f, &exponents(&p).unwrap(), &exponents(&s).unwrap(), 1.0).unwrap();
            assert!((v - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn scalar_partition_identity() {
        let g = make_grid(&[[-2.0, 2.0], [-2.0, 2.0]], &[32, 32]).unwrap();
        let f = sample(&FieldSpec::random(3, &[-1.5, -1.5], &[1.5, 1.5]), &g).unwrap();
        for p in [1.0, 2.5, 4.0] {
            let e = exponents(&[p, p]).unwrap();
            let full = mixed_lebesgue_norm(&f, &e).unwrap();
            for r in [0.25, 0.5, 1.0, 2.0] {
                let d = discrete_amalgam_norm(&f, &e, &e, r).unwrap();
                assert!((d - full).abs() <= 1e-12 * full, "p={p} r={r}");
            }
        }
    }

    #[test]
    fn non_tiling_rejected() {
        let g = make_grid(&[[-2.0, 2.0]], &[16]).unwrap();
        let f = GridFunction::constant(&g, 1.0);
        let e = exponents(&[2.0]).unwrap();
        assert!(matches!(
            discrete_amalgam_norm(&f, &e, &e, 0.3),
            Err(Error::NonTiling { .. })
        ));
        assert!(matches!(
            discrete_amalgam_norm(&f, &e, &e, 0.125),
            Err(Error::NonTiling { .. })
        ));
        assert_eq!(
            discrete_amalgam_norm(&GridFunction::<f64>::zeros(&g), &e, &e, 1.0).unwrap(),
            0.0
        );
    }
}

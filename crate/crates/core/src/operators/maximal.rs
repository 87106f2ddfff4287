use rayon::prelude::*;

use super::RieszParams;
use crate::amalgam::{unit_ball_volume, RadiusSweep};
use crate::error::{Error, Result};
use crate::grid::{BallStencil, Grid, GridFunction};
use crate::scalar::{compensated_sum, Scalar};

/// `(1/C_gamma) v_n^{gamma/n - 1}`: centered `M_gamma f <= this * I_gamma |f|`.
pub fn centered_bound_constant(params: RieszParams) -> f64 {
    let n = params.dim() as f64;
    unit_ball_volume(params.dim()).powf(params.gamma() / n - 1.0) / params.constant()
}

fn ball_weight(n: usize, gamma: f64, r: f64) -> f64 {
    (unit_ball_volume(n) * r.powi(n as i32)).powf(gamma / n as f64 - 1.0)
}

/// Uncentered `M_gamma f(x)`: max over balls `B(c, r)` containing `x`, `c` a
/// midpoint of `centers`, `r` in the sweep, of `|B|^{gamma/n - 1} int_B |f|`.
pub fn fractional_maximal<T: Scalar>(
    f: &GridFunction<T>,
    params: RieszParams,
    sweep: &RadiusSweep,
    centers: &Grid,
) -> Result<GridFunction<f64>> {
    let grid = f.grid();
    let n = grid.dim();
    if centers.dim() != n || params.dim() != n {
        return Err(Error::GridMismatch);
    }
    let abs: Vec<f64> = f.values().iter().map(|v| v.modulus()).collect();
    let vol = grid.cell_volume();
    let jobs: Vec<(usize, f64)> = (0..centers.len())
        .flat_map(|c| sweep.radii().iter().map(move |&r| (c, r)))
        .collect();
    // each ball: (value, member cells)
    let balls: Vec<(f64, Vec<usize>)> = jobs
        .par_iter()
        .map(|&(c, r)| {
            let y = centers.point(c);
            let members = ball_cells(grid, &y[..n], r);
            let mass = compensated_sum(members.iter().map(|&i| abs[i])) * vol;
            (ball_weight(n, params.gamma(), r) * mass, members)
        })
        .collect();
    let mut out = vec![0.0f64; grid.len()];
    for (v, members) in balls {
        for i in members {
            if v > out[i] {
                out[i] = v;
            }
        }
    }
    GridFunction::new(grid.clone(), out)
}

fn ball_cells(grid: &Grid, y: &[f64], r: f64) -> Vec<usize> {
    let n = grid.dim();
    let mut lo = [0usize; 3];
    let mut hi = [0usize; 3];
    for a in 0..n {
        let h = grid.spacing()[a];
        let l = ((y[a] - r - grid.lower()[a]) / h - 0.5).floor().max(0.0);
        let u = ((y[a] + r - grid.lower()[a]) / h - 0.5).ceil();
        if u < 0.0 || l > (grid.counts()[a] - 1) as f64 {
            return Vec::new();
        }
        lo[a] = l as usize;
        hi[a] = (u as usize).min(grid.counts()[a] - 1);
    }
    let mut out = Vec::new();
    let r2 = r * r;
    for k in lo[2]..=hi[2] {
        for j in lo[1]..=hi[1] {
            for i in lo[0]..=hi[0] {
                let m = [i, j, k];
                let d2: f64 = (0..n)
                    .map(|a| {
                        let d = grid.midpoint(a, m[a]) - y[a];
                        d * d
                    })
                    .sum();
                if d2 < r2 {
                    out.push(grid.ravel(&m[..n]));
                }
            }
        }
    }
    out
}

/// Centered `M_gamma f(x) = max_r |B(x,r)|^{gamma/n-1} int_{B(x,r)} |f|`.
/// With `inside_only`, only balls contained in the box count.
pub fn fractional_maximal_centered<T: Scalar>(
    f: &GridFunction<T>,
    params: RieszParams,
    sweep: &RadiusSweep,
    inside_only: bool,
) -> Result<GridFunction<f64>> {
    let grid = f.grid();
    let n = grid.dim();
    if params.dim() != n {
        return Err(Error::GridMismatch);
    }
    let abs: Vec<f64> = f.values().iter().map(|v| v.modulus()).collect();
    let vol = grid.cell_volume();
    let mut out = vec![0.0f64; grid.len()];
    for &r in sweep.radii() {
        let st = BallStencil::new(grid.spacing(), r);
        let w = ball_weight(n, params.gamma(), r);
        let vals: Vec<f64> = (0..grid.len())
            .into_par_iter()
            .map_init(Vec::new, |buf, i| {
                let m = grid.unravel(i);
                if inside_only {
                    for a in 0..n {
                        let x = grid.midpoint(a, m[a]);
                        if x - r < grid.lower()[a] || x + r > grid.upper()[a] {
                            return 0.0;
                        }
                    }
                }
                st.gather(&abs, grid.counts(), m, buf);
                w * compensated_sum(buf.iter().cloned()) * vol
            })
            .collect();
        for (o, v) in out.iter_mut().zip(vals) {
            if v > *o {
                *o = v;
            }
        }
    }
    GridFunction::new(grid.clone(), out)
}

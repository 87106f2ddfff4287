use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{unit_ball_volume, ExponentSystem, RadiusSweep};
use crate::error::{Error, Result};
use crate::grid::{BallStencil, Grid, GridFunction};
use crate::norms::{reduce_dense, Exponent};
use crate::scalar::Scalar;

/// Supremum over a radius sweep, with the per-radius terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupValue {
    pub value: f64,
    /// Smallest radius attaining the maximum.
    pub argmax_radius: f64,
    pub profile: Vec<(f64, f64)>,
}

impl SupValue {
    pub(crate) fn from_profile(profile: Vec<(f64, f64)>) -> SupValue {
        let mut best = profile[0];
        for &(r, v) in &profile[1..] {
            if v > best.1 {
                best = (r, v);
            }
        }
        SupValue {
            value: best.1,
            argmax_radius: best.0,
            profile,
        }
    }
}

/// Distance from the support to the box boundary, measured at midpoints.
pub(crate) fn support_margin(abs: &[f64], grid: &Grid) -> f64 {
    let n = grid.dim();
    let mut margin = f64::INFINITY;
    for (i, &v) in abs.iter().enumerate() {
        if v == 0.0 {
            continue;
        }
        let x = grid.point(i);
        for a in 0..n {
            margin = margin.min(x[a] - grid.lower()[a]).min(grid.upper()[a] - x[a]);
        }
    }
    margin
}

fn check_margin(abs: &[f64], grid: &Grid, radius: f64) -> Result<()> {
    let margin = support_margin(abs, grid);
    if margin < radius * (1.0 - 1e-12) {
        return Err(Error::BoxTooSmall { margin, radius });
    }
    Ok(())
}

fn inner_norms(abs: &[f64], grid: &Grid, radius: f64, p: &[Exponent]) -> Vec<f64> {
    let st = BallStencil::new(grid.spacing(), radius);
    let h = grid.spacing();
    (0..grid.len())
        .into_par_iter()
        .map_init(Vec::new, |buf, i| {
            let dims = st.gather(abs, grid.counts(), grid.unravel(i), buf);
            reduce_dense(std::mem::take(buf), &dims[..grid.dim()], h, p)
        })
        .collect()
}

fn check_arity(grid: &Grid, v: &[Exponent]) -> Result<()> {
    if v.len() != grid.dim() {
        return Err(Error::ExponentArity {
            expected: grid.dim(),
            got: v.len(),
        });
    }
    Ok(())
}

/// `y -> ||f chi_{B(y,r)}||_p` at every cell midpoint `y`.
pub fn ball_window_norms<T: Scalar>(f: &GridFunction<T>, p: &[Exponent], radius: f64) -> Result<GridFunction<f64>> {
    check_arity(f.grid(), p)?;
    if !(radius > 0.0) {
        return Err(Error::InvalidParameter(format!("radius {radius}")));
    }
    let abs: Vec<f64> = f.values().iter().map(|v| v.modulus()).collect();
    GridFunction::new(f.grid().clone(), inner_norms(&abs, f.grid(), radius, p))
}

fn global_from_abs(abs: &[f64], grid: &Grid, p: &[Exponent], s: &[Exponent], rho: f64) -> Result<f64> {
    check_margin(abs, grid, rho)?;
    let inner = inner_norms(abs, grid, rho, p);
    Ok(reduce_dense(inner, grid.counts(), grid.spacing(), s))
}

/// `|| ||f chi_{B(.,rho)}||_p ||_s` with centers on the grid midpoints.
pub fn global_amalgam_norm<T: Scalar>(f: &GridFunction<T>, p: &[Exponent], s: &[Exponent], rho: f64) -> Result<f64> {
    check_arity(f.grid(), p)?;
    check_arity(f.grid(), s)?;
    if !(rho > 0.0) {
        return Err(Error::InvalidParameter(format!("window radius {rho}")));
    }
    let abs: Vec<f64> = f.values().iter().map(|v| v.modulus()).collect();
    global_from_abs(&abs, f.grid(), p, s, rho)
}

/// `sup_r |B(.,r)|^{1/alpha - hm(p) - hm(s)} || ||f chi_B(.,r)||_p ||_s` over the sweep.
pub fn alpha_amalgam_norm<T: Scalar>(
    f: &GridFunction<T>,
    sys: &ExponentSystem,
    sweep: &RadiusSweep,
) -> Result<SupValue> {
    let grid = f.grid();
    check_arity(grid, sys.p())?;
    let n = grid.dim();
    let abs: Vec<f64> = f.values().iter().map(|v| v.modulus()).collect();
    let e = sys.ball_weight_exponent();
    let vn = unit_ball_volume(n);
    let mut profile = Vec::with_capacity(sweep.radii().len());
    for &r in sweep.radii() {
        let g = global_from_abs(&abs, grid, sys.p(), sys.s(), r)?;
        let w = (vn * r.powi(n as i32)).powf(e);
        profile.push((r, w * g));
    }
    Ok(SupValue::from_profile(profile))
}

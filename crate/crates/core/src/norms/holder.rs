use serde::{Deserialize, Serialize};

use super::{conjugate_all, product_l1, Exponent};
use crate::amalgam::discrete_amalgam_norm;
use crate::error::Result;
use crate::grid::GridFunction;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HolderReport {
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

/// `int |fg| <= r||f||_{p,s} * r||g||_{p',s'}` at cube scale `r`.
pub fn windowed_holder_bound(
    f: &GridFunction<f64>,
    g: &GridFunction<f64>,
    p: &[Exponent],
    s: &[Exponent],
    r: f64,
) -> Result<HolderReport> {
    let lhs = product_l1(f, g)?;
    let nf = discrete_amalgam_norm(f, p, s, r)?;
    let ng = discrete_amalgam_norm(g, &conjugate_all(p), &conjugate_all(s), r)?;
    let rhs = nf * ng;
    Ok(HolderReport {
        lhs,
        rhs,
        pass: lhs <= rhs * (1.0 + 1e-12),
    })
}

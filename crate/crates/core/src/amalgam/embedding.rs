use serde::{Deserialize, Serialize};

use super::{alpha_amalgam_norm, global_amalgam_norm, unit_ball_volume, validate_exponents, RadiusSweep};
use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::norms::Exponent;

const SLACK: f64 = 1e-12;

/// Radius of the unit-volume ball; with it the global norm is one term of the alpha sup.
pub fn unit_window_radius(n: usize) -> f64 {
    unit_ball_volume(n).powf(-1.0 / n as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    /// `||f||_{(p,s)}` with window radius [`unit_window_radius`].
    pub global: f64,
    pub alpha_p: f64,
    pub alpha_q: f64,
    /// `global <= alpha_p`
    pub amalgam_in_alpha: bool,
    /// `alpha_p <= alpha_q`
    pub monotone_in_p: bool,
    pub pass: bool,
}

/// Check `||f||_{(p,s)} <= ||f||_{(p,s)^alpha} <= ||f||_{(q,s)^alpha}` for `p <= q`.
///
/// The unit-volume window radius is merged into the sweep.
pub fn embedding_check(
    f: &GridFunction<f64>,
    p: &[Exponent],
    q: &[Exponent],
    s: &[Exponent],
    alpha: Exponent,
    sweep: &RadiusSweep,
) -> Result<EmbeddingReport> {
    let n = f.grid().dim();
    if p.iter().zip(q).any(|(a, b)| a.value() > b.value()) || p.len() != q.len() {
        return Err(Error::Precondition("p <= q entrywise".into()));
    }
    let sp = validate_exponents(p, s, alpha, n)?;
    let sq = validate_exponents(q, s, alpha, n)?;
    let rho = unit_window_radius(n);
    let sweep = sweep.with_radius(rho)?;
    let global = global_amalgam_norm(f, p, s, rho)?;
    let alpha_p = alpha_amalgam_norm(f, &sp, &sweep)?.value;
    let alpha_q = alpha_amalgam_norm(f, &sq, &sweep)?.value;
    let amalgam_in_alpha = global <= alpha_p * (1.0 + SLACK);
    let monotone_in_p = alpha_p <= alpha_q * (1.0 + SLACK);
    Ok(EmbeddingReport {
        global,
        alpha_p,
        alpha_q,
        amalgam_in_alpha,
        monotone_in_p,
        pass: amalgam_in_alpha && monotone_in_p,
    })
}

//! Ratio sweeps behind the fractional-integral and commutator suites.

use serde::{Deserialize, Serialize};

use crate::amalgam::{discrete_alpha_norm, FractionalSystem, GateStatus, RadiusSweep};
use crate::bmo::{bmo_norm, BallFamily};
use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::operators::{commutator, dilate, fractional_integral, RieszParams};

use super::suites::fit_line;

fn gated(sys: &FractionalSystem) -> Result<()> {
    if sys.source.status() == GateStatus::Forced || sys.target.status() == GateStatus::Forced {
        return Err(Error::Precondition("both index gates must pass".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HlsSweep {
    pub ts: Vec<f64>,
    /// `ratios[i][k]`: function `i` spread by `ts[k]`.
    pub ratios: Vec<Vec<f64>>,
    /// Fitted slope of `log R` against `log t`, per function.
    pub slopes: Vec<f64>,
    /// `max R / min R` over the dilates, per function.
    pub flatness: Vec<f64>,
    pub predicted_slope: f64,
    /// Functions left out because they vanish.
    pub skipped: usize,
}

/// `R = ||I f||_{(q,s)^beta} / ||f||_{(p,s)^alpha}` (cube norms) for `f(./t)`,
/// with the sweep scaled by `t`. Then `R(t) = t^{gamma - n/alpha + n/beta} R(1)`.
pub fn hls_ratio_sweep(
    sys: &FractionalSystem,
    family: &[GridFunction<f64>],
    ts: &[f64],
    sweep: &RadiusSweep,
) -> Result<HlsSweep> {
    gated(sys)?;
    let n = sys.source.dim();
    let params = RieszParams::new(sys.gamma, n)?;
    let xs: Vec<f64> = ts.iter().map(|t| t.ln()).collect();
    let mut out = HlsSweep {
        ts: ts.to_vec(),
        ratios: Vec::new(),
        slopes: Vec::new(),
        flatness: Vec::new(),
        predicted_slope: sys.hls_slope(),
        skipped: 0,
    };
    for f in family {
        if f.is_zero() {
            out.skipped += 1;
            continue;
        }
        let rs =
            ts.iter()
                .map(|&t| {
                    let g = dilate(f, 1.0 / t)?;
                    let ig = fractional_integral(&g, params)?;
                    let sw = sweep.scaled(t)?;
                    Ok(discrete_alpha_norm(&ig, &sys.target, &sw)?.value
                        / discrete_alpha_norm(&g, &sys.source, &sw)?.value)
                })
                .collect::<Result<Vec<f64>>>()?;
        let ys: Vec<f64> = rs.iter().map(|r| r.ln()).collect();
        out.slopes.push(fit_line(&xs, &ys).0);
        let hi = rs.iter().cloned().fold(0.0, f64::max);
        let lo = rs.iter().cloned().fold(f64::INFINITY, f64::min);
        out.flatness.push(hi / lo);
        out.ratios.push(rs);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommutatorSweep {
    /// `||[b, I] f||_{(q,s)^beta} / (||b||_BMO ||f||_{(p,s)^alpha})` per `(b, f)` pair.
    pub constants: Vec<f64>,
    pub sup: f64,
    /// Numerators for symbols with zero BMO norm.
    pub null_numerators: Vec<f64>,
}

pub fn commutator_upper_sweep(
    symbols: &[GridFunction<f64>],
    sys: &FractionalSystem,
    family: &[GridFunction<f64>],
    bmo_family: &BallFamily,
    sweep: &RadiusSweep,
) -> Result<CommutatorSweep> {
    gated(sys)?;
    let params = RieszParams::new(sys.gamma, sys.source.dim())?;
    let mut out = CommutatorSweep {
        constants: Vec::new(),
        sup: 0.0,
        null_numerators: Vec::new(),
    };
    for b in symbols {
        let bn = bmo_norm(b, bmo_family)?;
        for f in family {
            let fnorm = discrete_alpha_norm(f, &sys.source, sweep)?.value;
            if fnorm == 0.0 {
                continue;
            }
            let num = discrete_alpha_norm(&commutator(b, f, params)?, &sys.target, sweep)?.value;
            if bn == 0.0 {
                let scale =
                    b.max_modulus() * discrete_alpha_norm(&fractional_integral(f, params)?, &sys.target, sweep)?.value;
                if num > 1e-10 * scale.max(f64::MIN_POSITIVE) {
                    return Err(Error::Precondition(format!("zero BMO norm but commutator norm {num}")));
                }
                out.null_numerators.push(num);
                continue;
            }
            let k = num / (bn * fnorm);
            out.sup = out.sup.max(k);
            out.constants.push(k);
        }
    }
    Ok(out)
}

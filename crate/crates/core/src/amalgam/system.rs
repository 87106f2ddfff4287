use serde::{Deserialize, Serialize};

use crate::error::{Error, GateViolation, Result};
use crate::norms::{conjugate_all, mean_inv, sum_inv, Exponent};

/// Absolute slack on the gate inequalities; inside it a system is `Boundary`.
pub const GATE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GateStatus {
    Admissible,
    /// One of the gate inequalities holds with equality.
    Boundary,
    /// Built without the gate; norms may be infinite in the limit.
    Forced,
}

/// Exponents `(p, s, alpha)` of an amalgam space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentSystem {
    p: Vec<Exponent>,
    s: Vec<Exponent>,
    alpha: Exponent,
    status: GateStatus,
}

/// Accept iff `(1/n) sum 1/s_i <= 1/alpha <= (1/n) sum 1/p_i`.
pub fn validate_exponents(p: &[Exponent], s: &[Exponent], alpha: Exponent, n: usize) -> Result<ExponentSystem> {
    check_arity(p, s, n)?;
    let ms = mean_inv(s);
    let mp = mean_inv(p);
    let ia = alpha.inv();
    if ms > ia + GATE_SLACK {
        return Err(Error::IndexGate(GateViolation::Lower {
            mean_inv_s: ms,
            inv_alpha: ia,
        }));
    }
    if ia > mp + GATE_SLACK {
        return Err(Error::IndexGate(GateViolation::Upper {
            inv_alpha: ia,
            mean_inv_p: mp,
        }));
    }
    let status = if (ms - ia).abs() <= GATE_SLACK || (ia - mp).abs() <= GATE_SLACK {
        GateStatus::Boundary
    } else {
        GateStatus::Admissible
    };
    Ok(ExponentSystem {
        p: p.to_vec(),
        s: s.to_vec(),
        alpha,
        status,
    })
}

fn check_arity(p: &[Exponent], s: &[Exponent], n: usize) -> Result<()> {
    if n == 0 || n > 3 {
        return Err(Error::Dimension(n));
    }
    for v in [p, s] {
        if v.len() != n {
            return Err(Error::ExponentArity {
                expected: n,
                got: v.len(),
            });
        }
    }
    Ok(())
}

impl ExponentSystem {
    /// Skip the gate. Only for divergence experiments.
    pub fn forced(p: &[Exponent], s: &[Exponent], alpha: Exponent) -> Result<Self> {
        check_arity(p, s, p.len())?;
        Ok(ExponentSystem {
            p: p.to_vec(),
            s: s.to_vec(),
            alpha,
            status: GateStatus::Forced,
        })
    }

    pub fn dim(&self) -> usize {
        self.p.len()
    }

    pub fn p(&self) -> &[Exponent] {
        &self.p
    }

    pub fn s(&self) -> &[Exponent] {
        &self.s
    }

    pub fn alpha(&self) -> Exponent {
        self.alpha
    }

    pub fn status(&self) -> GateStatus {
        self.status
    }

    pub fn p_conj(&self) -> Vec<Exponent> {
        conjugate_all(&self.p)
    }

    pub fn s_conj(&self) -> Vec<Exponent> {
        conjugate_all(&self.s)
    }

    pub fn alpha_conj(&self) -> Exponent {
        self.alpha.conjugate()
    }

    /// Exponent of `|B(y,r)|` in the ball weight: `1/alpha - hm(p) - hm(s)`.
    pub fn ball_weight_exponent(&self) -> f64 {
        self.alpha.inv() - mean_inv(&self.p) - mean_inv(&self.s)
    }

    /// Exponent of `r` in the cube weight: `n/alpha - sum 1/p_i`.
    pub fn cube_weight_exponent(&self) -> f64 {
        self.dim() as f64 * self.alpha.inv() - sum_inv(&self.p)
    }
}

/// Source space `(p, s)^alpha`, target `(q, s)^beta` and the order `gamma`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FractionalSystem {
    pub source: ExponentSystem,
    pub target: ExponentSystem,
    pub gamma: f64,
}

impl FractionalSystem {
    pub fn new(source: ExponentSystem, target: ExponentSystem, gamma: f64) -> Result<Self> {
        let n = source.dim();
        if target.dim() != n {
            return Err(Error::InvalidParameter("source/target dimension".into()));
        }
        if !(gamma > 0.0 && gamma < n as f64) {
            return Err(Error::Gamma { gamma, n });
        }
        Ok(FractionalSystem { source, target, gamma })
    }

    /// `gamma - n/alpha + n/beta`: the dilation slope of the HLS ratio.
    pub fn hls_slope(&self) -> f64 {
        let n = self.source.dim() as f64;
        self.gamma - n * self.source.alpha().inv() + n * self.target.alpha().inv()
    }

    pub fn is_matched(&self) -> bool {
        self.hls_slope().abs() <= 1e-12
    }

    /// `sum 1/p_i - sum 1/q_i - gamma`.
    pub fn lebesgue_mismatch(&self) -> f64 {
        sum_inv(self.source.p()) - sum_inv(self.target.p()) - self.gamma
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::exponents;

    fn sys(alpha: f64) -> Result<ExponentSystem> {
        let p = exponents(&[2.0, 2.0]).unwrap();
        let s = exponents(&[4.0, 4.0]).unwrap();
        validate_exponents(&p, &s, Exponent::new(alpha).unwrap(), 2)
    }

    #[test]
    fn gate_examples() {
        assert_eq!(sys(3.0).unwrap().status(), GateStatus::Admissible);
        assert!(matches!(sys(1.0), Err(Error::IndexGate(GateViolation::Upper { .. }))));
        assert!(matches!(sys(8.0), Err(Error::IndexGate(GateViolation::Lower { .. }))));
        assert_eq!(sys(2.0).unwrap().status(), GateStatus::Boundary);
        assert_eq!(sys(4.0).unwrap().status(), GateStatus::Boundary);
    }

    #[test]
    fn violation_names_the_inequality() {
        let msg = sys(8.0).unwrap_err().to_string();
        assert!(msg.contains("1/s_i <= 1/alpha"), "{msg}");
        let msg = sys(1.0).unwrap_err().to_string();
        assert!(msg.contains("1/alpha <= (1/n)sum 1/p_i"), "{msg}");
    }

    #[test]
    fn weights() {
        let s = sys(3.0).unwrap();
        assert!((s.ball_weight_exponent() - (1.0 / 3.0 - 0.5 - 0.25)).abs() < 1e-15);
        assert!((s.cube_weight_exponent() - (2.0 / 3.0 - 1.0)).abs() < 1e-15);
    }
}

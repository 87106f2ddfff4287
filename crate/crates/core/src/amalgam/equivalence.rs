use serde::{Deserialize, Serialize};

use super::{
    alpha_amalgam_norm, discrete_alpha_norm, discrete_amalgam_norm, global_amalgam_norm, ExponentSystem, RadiusSweep,
};
use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::norms::sum_inv;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum EquivalenceMode {
    /// Window radius `rho` against radius 1.
    BallVsScaledBall { rho: f64 },
    /// `r^{-sum 1/s_i} || ||f chi_B(.,r)||_p ||_s` against `r||f||_{p,s}`, per sweep radius.
    CubeVsBall,
    /// Ball alpha-norm against the cube alpha-norm.
    ContinuousVsDiscrete,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioBand {
    pub min: f64,
    pub max: f64,
}

impl RatioBand {
    pub fn point(x: f64) -> Self {
        RatioBand { min: x, max: x }
    }

    pub fn width(&self) -> f64 {
        self.max / self.min
    }

    pub fn merge(self, other: RatioBand) -> RatioBand {
        RatioBand {
            min: self.min.min(other.min),
            max: self.max.max(other.max),
        }
    }

    fn from_iter<I: IntoIterator<Item = f64>>(it: I) -> RatioBand {
        it.into_iter()
            .map(RatioBand::point)
            .reduce(RatioBand::merge)
            .expect("nonempty")
    }
}

pub fn equivalence_ratio(
    f: &GridFunction<f64>,
    sys: &ExponentSystem,
    mode: EquivalenceMode,
    sweep: &RadiusSweep,
) -> Result<RatioBand> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let (p, s) = (sys.p(), sys.s());
    match mode {
        EquivalenceMode::BallVsScaledBall { rho } => {
            let a = global_amalgam_norm(f, p, s, rho)?;
            let b = global_amalgam_norm(f, p, s, 1.0)?;
            Ok(RatioBand::point(a / b))
        }
        EquivalenceMode::CubeVsBall => {
            let e = -sum_inv(s);
            let ratios = sweep
                .radii()
                .iter()
                .map(|&r| {
                    let ball = global_amalgam_norm(f, p, s, r)?;
                    let cube = discrete_amalgam_norm(f, p, s, r)?;
                    Ok(r.powf(e) * ball / cube)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(RatioBand::from_iter(ratios))
        }
        EquivalenceMode::ContinuousVsDiscrete => {
            let a = alpha_amalgam_norm(f, sys, sweep)?;
            let b = discrete_alpha_norm(f, sys, sweep)?;
            Ok(RatioBand::point(a.value / b.value))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::{validate_exponents, WindowFamily};
    use crate::grid::{make_grid, sample, FieldSpec};
    use crate::norms::{exponents, Exponent};

    #[test]
    fn homogeneity_cancels() {
        let g = make_grid(&[[-4.0, 4.0]], &[128]).unwrap();
        let f = sample(&FieldSpec::random(11, &[-1.0], &[1.0]), &g).unwrap();
        let sys = validate_exponents(
            &exponents(&[2.0]).unwrap(),
            &exponents(&[4.0]).unwrap(),
            Exponent::new(3.0).unwrap(),
            1,
        )
        .unwrap();
        let sweep = RadiusSweep::dyadic(-2, 1, WindowFamily::Cube).unwrap();
        for mode in [
            EquivalenceMode::BallVsScaledBall { rho: 2.0 },
            EquivalenceMode::CubeVsBall,
            EquivalenceMode::ContinuousVsDiscrete,
        ] {
            let a = equivalence_ratio(&f, &sys, mode, &sweep).unwrap();
            let b = equivalence_ratio(&f.scale(10.0), &sys, mode, &sweep).unwrap();
            assert!((a.min - b.min).abs() < 1e-12 * a.min);
            assert!((a.max - b.max).abs() < 1e-12 * a.max);
            assert!(a.min > 0.0 && a.max.is_finite());
        }
        assert_eq!(
            equivalence_ratio(
                &GridFunction::<f64>::zeros(&g),
                &sys,
                EquivalenceMode::CubeVsBall,
                &sweep
            ),
            Err(Error::ZeroFunction)
        );
    }
}

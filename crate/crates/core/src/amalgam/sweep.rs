use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WindowFamily {
    Ball,
    Cube,
}

/// Finite increasing list of radii standing in for `sup_{r>0}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusSweep {
    radii: Vec<f64>,
    family: WindowFamily,
}

impl RadiusSweep {
    pub fn new(radii: Vec<f64>, family: WindowFamily) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::Sweep("no radii".into()));
        }
        if radii.iter().any(|r| !(*r > 0.0) || !r.is_finite()) {
            return Err(Error::Sweep("radii must be positive".into()));
        }
        if radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Sweep("radii must be strictly increasing".into()));
        }
        Ok(RadiusSweep { radii, family })
    }

    /// `r = 2^j` for `j` in `jmin..=jmax`.
    pub fn dyadic(jmin: i32, jmax: i32, family: WindowFamily) -> Result<Self> {
        Self::new((jmin..=jmax).map(|j| 2f64.powi(j)).collect(), family)
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn family(&self) -> WindowFamily {
        self.family
    }

    /// Insert `r` keeping the order; no-op if already present.
    pub fn with_radius(&self, r: f64) -> Result<Self> {
        let mut radii = self.radii.clone();
        if !radii.contains(&r) {
            radii.push(r);
            radii.sort_by(|a, b| a.partial_cmp(b).unwrap());
        }
        Self::new(radii, self.family)
    }

    pub fn with_family(&self, family: WindowFamily) -> Result<Self> {
        Self::new(self.radii.clone(), family)
    }

    pub fn scaled(&self, t: f64) -> Result<Self> {
        Self::new(self.radii.iter().map(|r| r * t).collect(), self.family)
    }

    pub fn contains(&self, r: f64) -> bool {
        self.radii.contains(&r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(RadiusSweep::new(vec![], WindowFamily::Ball).is_err());
        assert!(RadiusSweep::new(vec![1.0, 1.0], WindowFamily::Ball).is_err());
        assert!(RadiusSweep::new(vec![-1.0], WindowFamily::Ball).is_err());
        let d = RadiusSweep::dyadic(-1, 2, WindowFamily::Cube).unwrap();
        assert_eq!(d.radii(), &[0.5, 1.0, 2.0, 4.0]);
        assert_eq!(d.with_radius(3.0).unwrap().radii(), &[0.5, 1.0, 2.0, 3.0, 4.0]);
    }
}

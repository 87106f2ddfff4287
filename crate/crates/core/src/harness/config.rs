use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::amalgam::{RadiusSweep, WindowFamily};
use crate::error::{Error, Result};
use crate::grid::{make_grid, Grid};
use crate::norms::Exponent;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub bounds: Vec<[f64; 2]>,
    pub counts: Vec<usize>,
}

impl GridSection {
    pub fn build(&self) -> Result<Grid> {
        make_grid(&self.bounds, &self.counts)
    }
}

/// Exponents; every field falls back to the suite's own default.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExpsSection {
    pub p: Option<Vec<Exponent>>,
    pub q: Option<Vec<Exponent>>,
    pub s: Option<Vec<Exponent>>,
    pub alpha: Option<Exponent>,
    pub beta: Option<Exponent>,
    pub gamma: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    pub radii: Option<Vec<f64>>,
    pub window: Option<WindowFamily>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// relative, exact identities
    pub identity: f64,
    /// relative slack for inequalities
    pub inequality: f64,
    /// quadrature against closed forms
    pub quadrature: f64,
    pub heat: f64,
    pub convergence_factor: f64,
    /// allowed drift of band widths between seeds
    pub band: f64,
    pub fit_residual: f64,
    pub slope: f64,
    pub flat_factor: f64,
    /// commutator constants across subfamilies
    pub stability: f64,
    /// Fourier tail allowance in the lower probe
    pub tail: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            identity: 1e-12,
            inequality: 1e-9,
            quadrature: 0.01,
            heat: 1e-6,
            convergence_factor: 1.8,
            band: 0.1,
            fit_residual: 1e-3,
            slope: 0.05,
            flat_factor: 4.0,
            stability: 0.5,
            tail: 0.2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Samples {
    pub holder: usize,
    pub duality: usize,
    pub embeddings: usize,
    pub maximal: usize,
    pub drift: usize,
    pub equivalence: usize,
    pub bmo: usize,
    pub commutator: usize,
    pub axioms: usize,
    pub fourier_cutoff: usize,
}

impl Default for Samples {
    fn default() -> Self {
        Samples {
            holder: 200,
            duality: 100,
            embeddings: 100,
            maximal: 20,
            drift: 50,
            equivalence: 50,
            bmo: 20,
            commutator: 8,
            axioms: 20,
            fourier_cutoff: 8,
        }
    }
}

/// Suite configuration. Every section is optional; suites pick their own
/// grids and exponents when a key is absent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub grid: Option<GridSection>,
    pub exps: ExpsSection,
    pub sweep: SweepSection,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub samples: Samples,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            grid: None,
            exps: ExpsSection::default(),
            sweep: SweepSection::default(),
            seed: 2024,
            tolerances: Tolerances::default(),
            samples: Samples::default(),
        }
    }
}

impl SuiteConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let cfg: SuiteConfig = toml::from_str(s)?;
        cfg.check()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn check(&self) -> Result<()> {
        if let Some(g) = &self.grid {
            g.build()?;
        }
        if let Some(r) = &self.sweep.radii {
            RadiusSweep::new(r.clone(), WindowFamily::Cube)?;
        }
        if let Some(g) = self.exps.gamma {
            if !(g > 0.0) {
                return Err(Error::Config(format!("gamma must be positive, got {g}")));
            }
        }
        Ok(())
    }

    /// The configured grid or `default`.
    pub fn grid_or(&self, default: &Grid) -> Result<Grid> {
        match &self.grid {
            Some(g) => g.build(),
            None => Ok(default.clone()),
        }
    }

    /// The configured radii (with `family`) or `default`.
    pub fn sweep_or(&self, default: RadiusSweep) -> Result<RadiusSweep> {
        match &self.sweep.radii {
            Some(r) => RadiusSweep::new(r.clone(), self.sweep.window.unwrap_or(default.family())),
            None => Ok(default),
        }
    }

    pub fn echo(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("config serializes")
    }
}

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::Record;
use super::SuiteConfig;
use crate::amalgam::{validate_exponents, ExponentSystem};
use crate::error::Result;
use crate::norms::{exponents, Exponent};

pub mod axioms;
pub mod commutator;
pub mod dilation;
pub mod duality;
pub mod embeddings;
pub mod equivalences;
pub mod gate;
pub mod hls;
pub mod kernel;
pub mod maximal;

#[derive(Debug, Default)]
pub struct Outcome {
    pub records: Vec<Record>,
    pub constants: BTreeMap<String, f64>,
}

impl Outcome {
    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn constant(&mut self, key: impl Into<String>, v: f64) {
        self.constants.insert(key.into(), v);
    }
}

/// Per-suite stream of derived seeds.
pub fn seeds(seed: u64, tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn next_seed(rng: &mut ChaCha8Rng) -> u64 {
    rng.gen()
}

pub fn ex(v: &[f64]) -> Vec<Exponent> {
    exponents(v).expect("literal exponents")
}

pub fn e1(v: f64) -> Exponent {
    Exponent::new(v).expect("literal exponent")
}

/// Configured vector or the default.
pub fn or_ex(v: &Option<Vec<Exponent>>, default: &[f64]) -> Vec<Exponent> {
    v.clone().unwrap_or_else(|| ex(default))
}

pub fn or_e(v: Option<Exponent>, default: f64) -> Exponent {
    v.unwrap_or_else(|| e1(default))
}

/// Least-squares line through `(x, y)`: slope, intercept, max residual.
pub fn fit_line(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = sxy / sxx;
    let icpt = my - slope * mx;
    let res = x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - icpt - slope * a).abs())
        .fold(0.0, f64::max);
    (slope, icpt, res)
}

pub fn max_rel_diff(a: &[f64], b: &[f64]) -> f64 {
    let scale = a.iter().chain(b).map(|v| v.abs()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max) / scale
}

/// Default mixed system per dimension: `p = (2, 4, 2)`, `s = (4, 8, 4)`, `1/alpha = 0.3`,
/// truncated to `n` entries, each overridable from the config.
pub fn configured_system(cfg: &SuiteConfig, n: usize) -> Result<ExponentSystem> {
    let p = or_ex(&cfg.exps.p, &[2.0, 4.0, 2.0][..n.min(3)]);
    let s = or_ex(&cfg.exps.s, &[4.0, 8.0, 4.0][..n.min(3)]);
    let default_alpha = if n == 1 { 3.0 } else { 1.0 / 0.3 };
    validate_exponents(&p, &s, or_e(cfg.exps.alpha, default_alpha), n)
}

pub type Step = Result<()>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let x = [0.0, 1.0, 2.0, 3.0];
        let y: Vec<f64> = x.iter().map(|v| 2.0 * v - 1.0).collect();
        let (s, c, r) = fit_line(&x, &y);
        assert!((s - 2.0).abs() < 1e-14 && (c + 1.0).abs() < 1e-14 && r < 1e-14);
    }
}

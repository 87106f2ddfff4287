//! Mean oscillation, BMO seminorms over finite ball families, and the
//! dyadic-doubling drift of ball averages.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{window_mask, Grid, GridFunction, WindowSpec};
use crate::norms::{mixed_lebesgue_norm, Exponent};
use crate::scalar::compensated_sum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ContainmentPolicy {
    /// Balls may stick out of the box; only the part inside is seen.
    Clip,
    /// Only balls contained in the box.
    Inside,
}

/// Balls centered at every `stride`-th cell midpoint with the given radii.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BallFamily {
    pub stride: usize,
    pub radii: Vec<f64>,
    pub policy: ContainmentPolicy,
}

impl BallFamily {
    pub fn new(stride: usize, radii: Vec<f64>, policy: ContainmentPolicy) -> Result<Self> {
        if stride == 0 || radii.is_empty() {
            return Err(Error::EmptyFamily);
        }
        if radii.iter().any(|r| !(*r > 0.0)) || radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(
                "family radii must be positive and increasing".into(),
            ));
        }
        Ok(BallFamily { stride, radii, policy })
    }

    /// Stride 4, dyadic radii from `2h` up to a quarter of the box, inside only.
    pub fn default_for(grid: &Grid) -> Self {
        let h = grid.spacing().iter().cloned().fold(0.0, f64::max);
        let ext = grid
            .lower()
            .iter()
            .zip(grid.upper())
            .map(|(a, b)| b - a)
            .fold(f64::INFINITY, f64::min);
        let mut radii = Vec::new();
        let mut r = 2.0 * h;
        while r <= ext / 4.0 {
            radii.push(r);
            r *= 2.0;
        }
        if radii.is_empty() {
            radii.push(ext / 4.0);
        }
        BallFamily {
            stride: 4,
            radii,
            policy: ContainmentPolicy::Inside,
        }
    }

    pub fn balls(&self, grid: &Grid) -> Vec<WindowSpec> {
        let n = grid.dim();
        let mut out = Vec::new();
        for i in 0..grid.len() {
            let m = grid.unravel(i);
            if (0..n).any(|a| m[a] % self.stride != 0) {
                continue;
            }
            let y = &grid.point(i)[..n];
            for &r in &self.radii {
                if self.policy == ContainmentPolicy::Inside
                    && (0..n).any(|a| y[a] - r < grid.lower()[a] || y[a] + r > grid.upper()[a])
                {
                    continue;
                }
                out.push(WindowSpec::Ball {
                    center: y.to_vec(),
                    radius: r,
                });
            }
        }
        out
    }
}

/// Mask average `b_B` and mask.
fn ball_mean_mask(b: &GridFunction<f64>, ball: &WindowSpec) -> Result<(f64, GridFunction<f64>)> {
    let mask = window_mask(ball, b.grid())?;
    let count = compensated_sum(mask.values().iter().cloned());
    if count == 0.0 {
        return Err(Error::EmptyWindow);
    }
    let sum = compensated_sum(b.values().iter().zip(mask.values()).map(|(x, m)| x * m));
    Ok((sum / count, mask))
}

/// `b_B`, the average of `b` over the cells of `B`.
pub fn ball_mean(b: &GridFunction<f64>, ball: &WindowSpec) -> Result<f64> {
    Ok(ball_mean_mask(b, ball)?.0)
}

/// `||(b - b_B) chi_B||_p / ||chi_B||_p`; with `p = 1` the mean oscillation.
fn oscillation_ratio(b: &GridFunction<f64>, ball: &WindowSpec, p: &[Exponent]) -> Result<f64> {
    let (mean, mask) = ball_mean_mask(b, ball)?;
    let dev = b.zip_map(&mask, |x, m| (x - mean) * m)?;
    Ok(mixed_lebesgue_norm(&dev, p)? / mixed_lebesgue_norm(&mask, p)?)
}

/// `(1/|B|) int_B |b - b_B|` with `|B|` the measure of the cells in `B`.
pub fn mean_oscillation(b: &GridFunction<f64>, ball: &WindowSpec) -> Result<f64> {
    let ones = vec![Exponent::ONE; b.grid().dim()];
    oscillation_ratio(b, ball, &ones)
}

fn family_max(b: &GridFunction<f64>, balls: &[WindowSpec], p: &[Exponent]) -> Result<f64> {
    if balls.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let vals = balls
        .par_iter()
        .map(|w| oscillation_ratio(b, w, p))
        .collect::<Result<Vec<f64>>>()?;
    Ok(vals.into_iter().fold(0.0, f64::max))
}

pub fn bmo_norm(b: &GridFunction<f64>, family: &BallFamily) -> Result<f64> {
    let ones = vec![Exponent::ONE; b.grid().dim()];
    family_max(b, &family.balls(b.grid()), &ones)
}

/// `sup_B ||b - b_B||_{L^p(B)} / ||chi_B||_p` over the family.
pub fn mixed_bmo_norm(b: &GridFunction<f64>, p: &[Exponent], family: &BallFamily) -> Result<f64> {
    family_max(b, &family.balls(b.grid()), p)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DriftReport {
    pub drift: f64,
    pub bound: f64,
    pub pass: bool,
    /// Mean oscillation on `2^i B`, `i = 0..=j+1`.
    pub chain: Vec<f64>,
}

/// `|b_{2^{j+1} B} - b_B| <= (j+1) 2^n sup_chain osc`.
pub fn doubling_drift(b: &GridFunction<f64>, ball: &WindowSpec, j: u32) -> Result<DriftReport> {
    let (center, r) = match ball {
        WindowSpec::Ball { center, radius } => (center.clone(), *radius),
        WindowSpec::Cube { .. } => return Err(Error::InvalidParameter("doubling needs a ball".into())),
    };
    if j == 0 {
        return Err(Error::InvalidParameter("j must be positive".into()));
    }
    let grid = b.grid();
    let n = grid.dim();
    let chain: Vec<WindowSpec> = (0..=j + 1)
        .map(|i| WindowSpec::ball(&center, r * 2f64.powi(i as i32)))
        .collect::<Result<_>>()?;
    let top = r * 2f64.powi(j as i32 + 1);
    if (0..n).any(|a| center[a] - top < grid.lower()[a] || center[a] + top > grid.upper()[a]) {
        return Err(Error::ChainOutside);
    }
    let first = ball_mean(b, &chain[0])?;
    let last = ball_mean(b, &chain[chain.len() - 1])?;
    let oscs = chain
        .iter()
        .map(|w| mean_oscillation(b, w))
        .collect::<Result<Vec<f64>>>()?;
    let sup = oscs.iter().cloned().fold(0.0, f64::max);
    let drift = (last - first).abs();
    let bound = (j + 1) as f64 * 2f64.powi(n as i32) * sup;
    Ok(DriftReport {
        drift,
        bound,
        pass: drift <= bound * (1.0 + 1e-9),
        chain: oscs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_grid, sample, FieldSpec};
    use crate::norms::exponents;

    fn log_abs(g: &Grid) -> GridFunction<f64> {
        sample(&FieldSpec::LogAbs { center: vec![] }, g).unwrap()
    }

    #[test]
    fn linear_oscillation() {
        let g = make_grid(&[[-2.0, 2.0]], &[64]).unwrap();
        let b = GridFunction::from_fn(&g, |x| x[0]).unwrap();
        let v = mean_oscillation(&b, &WindowSpec::ball(&[0.0], 1.0).unwrap()).unwrap();
        assert!((v - 0.5).abs() < 1e-14);
        let c = GridFunction::constant(&g, 2.0);
        assert_eq!(
            mean_oscillation(&c, &WindowSpec::ball(&[0.0], 1.0).unwrap()).unwrap(),
            0.0
        );
        assert_eq!(
            mean_oscillation(&c, &WindowSpec::ball(&[0.01], 0.001).unwrap()),
            Err(Error::EmptyWindow)
        );
    }

    #[test]
    fn log_is_scale_invariant() {
        let g = make_grid(&[[-4.0, 4.0]], &[4096]).unwrap();
        let b = log_abs(&g);
        let vals: Vec<f64> = [0.25, 0.5, 1.0, 2.0]
            .iter()
            .map(|&r| mean_oscillation(&b, &WindowSpec::ball(&[0.0], r).unwrap()).unwrap())
            .collect();
        // exact value 2/e
        for v in &vals {
            assert!((v / vals[0] - 1.0).abs() < 0.01, "{vals:?}");
            assert!((v - 2.0 / std::f64::consts::E).abs() < 0.01);
        }
    }

    #[test]
    fn seminorm_properties() {
        let g = make_grid(&[[-2.0, 2.0], [-2.0, 2.0]], &[32, 32]).unwrap();
        let b = sample(&FieldSpec::random(4, &[-1.5, -1.5], &[1.5, 1.5]), &g).unwrap();
        let fam = BallFamily::default_for(&g);
        let v = bmo_norm(&b, &fam).unwrap();
        assert!((bmo_norm(&b.map(|x| x + 5.0), &fam).unwrap() - v).abs() <= 1e-12 * v);
        let w = bmo_norm(&b.scale(-2.0), &fam).unwrap();
        assert!((w - 2.0 * v).abs() <= 1e-14 * w);
        assert!(v <= 2.0 * b.max_modulus());
        let ones = exponents(&[1.0, 1.0]).unwrap();
        assert_eq!(mixed_bmo_norm(&b, &ones, &fam).unwrap().to_bits(), v.to_bits());
        assert_eq!(bmo_norm(&GridFunction::constant(&g, 1.0), &fam).unwrap(), 0.0);
    }

    #[test]
    fn log_drift() {
        // mean of log|x| over (-r, r) is log r - 1: two doublings drift log 4
        let g = make_grid(&[[-2.0, 2.0]], &[8192]).unwrap();
        let b = log_abs(&g);
        let rep = doubling_drift(&b, &WindowSpec::ball(&[0.0], 0.25).unwrap(), 1).unwrap();
        assert!((rep.drift - 4f64.ln()).abs() < 1e-3, "{}", rep.drift);
        assert!(rep.pass);
        assert_eq!(
            doubling_drift(&b, &WindowSpec::ball(&[0.0], 0.75).unwrap(), 1),
            Err(Error::ChainOutside)
        );
    }
}

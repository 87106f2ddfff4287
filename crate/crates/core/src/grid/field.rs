use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Grid, GridFunction};
use crate::error::{Error, Result};

fn zero_center() -> Vec<f64> {
    Vec::new()
}

fn one() -> f64 {
    1.0
}

fn yes() -> bool {
    true
}

/// Builtin test fields. Config form: `field = "<name>"` plus `params = {...}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "field", content = "params", rename_all = "kebab-case")]
pub enum FieldSpec {
    Constant {
        value: f64,
    },
    IndicatorBall {
        #[serde(default = "zero_center")]
        center: Vec<f64>,
        radius: f64,
    },
    /// Closed box `[lower, upper]`.
    IndicatorBox {
        lower: Vec<f64>,
        upper: Vec<f64>,
    },
    Gaussian {
        #[serde(default = "zero_center")]
        center: Vec<f64>,
        width: f64,
        #[serde(default = "one")]
        amplitude: f64,
    },
    /// `|x - center|^exponent`; needs `exponent > -n`.
    PowerRadial {
        exponent: f64,
        #[serde(default = "zero_center")]
        center: Vec<f64>,
    },
    LogAbs {
        #[serde(default = "zero_center")]
        center: Vec<f64>,
    },
    /// `exp(-2i m.x / t)` on the open ball `B(center, radius)`.
    CosineModulatedIndicator {
        m: Vec<f64>,
        t: f64,
        #[serde(default = "zero_center")]
        center: Vec<f64>,
        radius: f64,
    },
    /// 1-5 Gaussian bumps plus an optional box, all cut off outside `[lower, upper]`.
    RandomBumpSum {
        seed: u64,
        lower: Vec<f64>,
        upper: Vec<f64>,
        #[serde(default = "yes")]
        indicator: bool,
    },
}

#[derive(Debug, Clone)]
struct Bump {
    center: [f64; 3],
    inv_two_w2: f64,
    amp: f64,
}

#[derive(Debug, Clone)]
struct BumpSum {
    lower: Vec<f64>,
    upper: Vec<f64>,
    bumps: Vec<Bump>,
    boxed: Option<(Vec<f64>, Vec<f64>, f64)>,
}

impl BumpSum {
    fn generate(seed: u64, lower: &[f64], upper: &[f64], indicator: bool) -> BumpSum {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = lower.len();
        let count = rng.gen_range(1..=5);
        let ext: f64 = lower
            .iter()
            .zip(upper)
            .map(|(a, b)| b - a)
            .fold(f64::INFINITY, f64::min);
        let bumps = (0..count)
            .map(|_| {
                let mut center = [0.0; 3];
                for a in 0..n {
                    center[a] = rng.gen_range(lower[a]..upper[a]);
                }
                let w = ext * rng.gen_range(0.05..0.3);
                Bump {
                    center,
                    inv_two_w2: 1.0 / (2.0 * w * w),
                    amp: rng.gen_range(0.2..2.0),
                }
            })
            .collect();
        let boxed = if indicator && rng.gen_bool(0.5) {
            let mut lo = Vec::with_capacity(n);
            let mut hi = Vec::with_capacity(n);
            for a in 0..n {
                let x = rng.gen_range(lower[a]..upper[a]);
                let y = rng.gen_range(lower[a]..upper[a]);
                lo.push(x.min(y));
                hi.push(x.max(y));
            }
            Some((lo, hi, rng.gen_range(0.2..1.5)))
        } else {
            None
        };
        BumpSum {
            lower: lower.to_vec(),
            upper: upper.to_vec(),
            bumps,
            boxed,
        }
    }

    fn eval(&self, x: &[f64]) -> f64 {
        if !in_closed_box(x, &self.lower, &self.upper) {
            return 0.0;
        }
        let mut v = 0.0;
        for b in &self.bumps {
            let d2: f64 = x.iter().enumerate().map(|(a, &xa)| (xa - b.center[a]).powi(2)).sum();
            v += b.amp * (-d2 * b.inv_two_w2).exp();
        }
        if let Some((lo, hi, amp)) = &self.boxed {
            if in_closed_box(x, lo, hi) {
                v += amp;
            }
        }
        v
    }
}

fn in_closed_box(x: &[f64], lo: &[f64], hi: &[f64]) -> bool {
    x.iter().zip(lo.iter().zip(hi)).all(|(&v, (&a, &b))| v >= a && v <= b)
}

fn dist2(x: &[f64], c: &[f64]) -> f64 {
    x.iter().zip(c).map(|(a, b)| (a - b) * (a - b)).sum()
}

fn center_or_origin(c: &[f64], n: usize) -> Result<Vec<f64>> {
    match c.len() {
        0 => Ok(vec![0.0; n]),
        k if k == n => Ok(c.to_vec()),
        k => Err(Error::InvalidParameter(format!(
            "center has {k} coordinates, grid has {n}"
        ))),
    }
}

fn check_len(v: &[f64], n: usize, what: &str) -> Result<()> {
    if v.len() != n {
        return Err(Error::InvalidParameter(format!(
            "{what} has {} coordinates, grid has {n}",
            v.len()
        )));
    }
    Ok(())
}

fn positive(x: f64, what: &str) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{what} must be positive, got {x}")))
    }
}

/// Reject grids with a midpoint on the singular point.
fn check_singular(grid: &Grid, c: &[f64]) -> Result<()> {
    let hmin = grid.spacing().iter().cloned().fold(f64::INFINITY, f64::min);
    let tol = 1e-12 * hmin * hmin;
    let n = grid.dim();
    for i in 0..grid.len() {
        if dist2(&grid.point(i)[..n], c) <= tol {
            return Err(Error::SingularMidpoint(i));
        }
    }
    Ok(())
}

impl FieldSpec {
    pub fn name(&self) -> &'static str {
        match self {
            FieldSpec::Constant { .. } => "constant",
            FieldSpec::IndicatorBall { .. } => "indicator-ball",
            FieldSpec::IndicatorBox { .. } => "indicator-box",
            FieldSpec::Gaussian { .. } => "gaussian",
            FieldSpec::PowerRadial { .. } => "power-radial",
            FieldSpec::LogAbs { .. } => "log-abs",
            FieldSpec::CosineModulatedIndicator { .. } => "cosine-modulated-indicator",
            FieldSpec::RandomBumpSum { .. } => "random-bump-sum",
        }
    }

    pub fn is_complex(&self) -> bool {
        matches!(self, FieldSpec::CosineModulatedIndicator { .. })
    }

    pub fn random(seed: u64, lower: &[f64], upper: &[f64]) -> FieldSpec {
        FieldSpec::RandomBumpSum {
            seed,
            lower: lower.to_vec(),
            upper: upper.to_vec(),
            indicator: true,
        }
    }

    fn evaluator(&self, grid: &Grid) -> Result<Box<dyn Fn(&[f64]) -> Complex64 + Sync>> {
        let n = grid.dim();
        let re = |v: f64| Complex64::new(v, 0.0);
        Ok(match self.clone() {
            FieldSpec::Constant { value } => {
                if !value.is_finite() {
                    return Err(Error::InvalidParameter("constant must be finite".into()));
                }
                Box::new(move |_| re(value))
            }
            FieldSpec::IndicatorBall { center, radius } => {
                positive(radius, "radius")?;
                let c = center_or_origin(&center, n)?;
                let r2 = radius * radius;
                Box::new(move |x| re(if dist2(x, &c) < r2 { 1.0 } else { 0.0 }))
            }
            FieldSpec::IndicatorBox { lower, upper } => {
                check_len(&lower, n, "lower")?;
                check_len(&upper, n, "upper")?;
                if lower.iter().zip(&upper).any(|(a, b)| !(a <= b)) {
                    return Err(Error::InvalidParameter("box lower > upper".into()));
                }
                Box::new(move |x| re(if in_closed_box(x, &lower, &upper) { 1.0 } else { 0.0 }))
            }
            FieldSpec::Gaussian {
                center,
                width,
                amplitude,
            } => {
                positive(width, "width")?;
                let c = center_or_origin(&center, n)?;
                let k = 1.0 / (2.0 * width * width);
                Box::new(move |x| re(amplitude * (-dist2(x, &c) * k).exp()))
            }
            FieldSpec::PowerRadial { exponent, center } => {
                if !(exponent > -(n as f64)) || !exponent.is_finite() {
                    return Err(Error::InvalidParameter(format!(
                        "power-radial exponent {exponent} must exceed -{n}"
                    )));
                }
                let c = center_or_origin(&center, n)?;
                if exponent < 0.0 {
                    check_singular(grid, &c)?;
                }
                Box::new(move |x| re(dist2(x, &c).sqrt().powf(exponent)))
            }
            FieldSpec::LogAbs { center } => {
                let c = center_or_origin(&center, n)?;
                check_singular(grid, &c)?;
                Box::new(move |x| re(0.5 * dist2(x, &c).ln()))
            }
            FieldSpec::CosineModulatedIndicator { m, t, center, radius } => {
                check_len(&m, n, "m")?;
                positive(t, "t")?;
                positive(radius, "radius")?;
                let c = center_or_origin(&center, n)?;
                let r2 = radius * radius;
                Box::new(move |x| {
                    if dist2(x, &c) < r2 {
                        let phase: f64 = x.iter().zip(&m).map(|(a, b)| a * b).sum();
                        Complex64::from_polar(1.0, -2.0 * phase / t)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
            }
            FieldSpec::RandomBumpSum {
                seed,
                lower,
                upper,
                indicator,
            } => {
                check_len(&lower, n, "lower")?;
                check_len(&upper, n, "upper")?;
                if lower.iter().zip(&upper).any(|(a, b)| !(a < b)) {
                    return Err(Error::InvalidParameter("bump region is empty".into()));
                }
                let bs = BumpSum::generate(seed, &lower, &upper, indicator);
                Box::new(move |x| re(bs.eval(x)))
            }
        })
    }
}

/// Sample a real field at cell midpoints.
pub fn sample(spec: &FieldSpec, grid: &Grid) -> Result<GridFunction<f64>> {
    if spec.is_complex() {
        return Err(Error::ComplexField(spec.name()));
    }
    let f = spec.evaluator(grid)?;
    GridFunction::from_fn(grid, |x| f(x).re)
}

pub fn sample_complex(spec: &FieldSpec, grid: &Grid) -> Result<GridFunction<Complex64>> {
    let f = spec.evaluator(grid)?;
    GridFunction::from_fn(grid, |x| f(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid;

    #[test]
    fn constant_and_ball() {
        let g = make_grid(&[[-2.0, 2.0]], &[8]).unwrap();
        let c = sample(&FieldSpec::Constant { value: 1.0 }, &g).unwrap();
        assert!(c.values().iter().all(|&v| v == 1.0));
        let b = sample(
            &FieldSpec::IndicatorBall {
                center: vec![0.0],
                radius: 1.0,
            },
            &g,
        )
        .unwrap();
        assert_eq!(b.values(), &[0., 0., 1., 1., 1., 1., 0., 0.]);
    }

    #[test]
    fn log_abs_needs_even_symmetric_grid() {
        let odd = make_grid(&[[-2.0, 2.0]], &[7]).unwrap();
        let spec = FieldSpec::LogAbs { center: vec![] };
        assert_eq!(sample(&spec, &odd), Err(Error::SingularMidpoint(3)));
        let even = make_grid(&[[-2.0, 2.0]], &[8]).unwrap();
        assert!(sample(&spec, &even).is_ok());
    }

    #[test]
    fn deterministic_random_fields() {
        let g = make_grid(&[[-2.0, 2.0], [-2.0, 2.0]], &[16, 16]).unwrap();
        let spec = FieldSpec::random(7, &[-1.0, -1.0], &[1.0, 1.0]);
        let a = sample(&spec, &g).unwrap();
        let b = sample(&spec, &g).unwrap();
        assert_eq!(a.values(), b.values());
        assert!(a.values().iter().all(|&v| v >= 0.0));
        // support inside the closed region
        for i in 0..g.len() {
            let x = g.point(i);
            if x[0].abs() > 1.0 || x[1].abs() > 1.0 {
                assert_eq!(a.values()[i], 0.0);
            }
        }
        let other = sample(&FieldSpec::random(8, &[-1.0, -1.0], &[1.0, 1.0]), &g).unwrap();
        assert_ne!(a.values(), other.values());
    }

    #[test]
    fn complex_field_routing() {
        let g = make_grid(&[[-2.0, 2.0]], &[8]).unwrap();
        let spec = FieldSpec::CosineModulatedIndicator {
            m: vec![1.0],
            t: 1.0,
            center: vec![0.0],
            radius: 1.0,
        };
        assert!(matches!(sample(&spec, &g), Err(Error::ComplexField(_))));
        let z = sample_complex(&spec, &g).unwrap();
        assert!((z.values()[3].norm() - 1.0).abs() < 1e-15);
        assert_eq!(z.values()[0], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn config_form() {
        let spec: FieldSpec = toml::from_str("field = \"gaussian\"\nparams = { width = 0.5, center = [0.0] }").unwrap();
        assert_eq!(
            spec,
            FieldSpec::Gaussian {
                center: vec![0.0],
                width: 0.5,
                amplitude: 1.0
            }
        );
        let bad = FieldSpec::PowerRadial {
            exponent: -1.5,
            center: vec![],
        };
        let g = make_grid(&[[-2.0, 2.0]], &[8]).unwrap();
        assert!(matches!(sample(&bad, &g), Err(Error::InvalidParameter(_))));
    }
}

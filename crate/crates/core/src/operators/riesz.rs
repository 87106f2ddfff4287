use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use super::quadrature::integrate;
use crate::error::{Error, Result};
use crate::grid::{Grid, GridFunction};
use crate::scalar::Scalar;

/// `C_gamma` with `C_gamma^{-1} = pi^{n/2} 2^gamma Gamma(gamma/2) / Gamma((n-gamma)/2)`.
pub fn riesz_constant(gamma: f64, n: usize) -> Result<f64> {
    if !(gamma > 0.0 && gamma < n as f64) {
        return Err(Error::Gamma { gamma, n });
    }
    let nf = n as f64;
    let lg = ln_gamma((nf - gamma) / 2.0) - ln_gamma(gamma / 2.0);
    Ok(lg.exp() / (PI.powf(nf / 2.0) * 2f64.powf(gamma)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RieszRaw", into = "RieszRaw")]
pub struct RieszParams {
    gamma: f64,
    n: usize,
    c: f64,
}

#[derive(Serialize, Deserialize)]
struct RieszRaw {
    gamma: f64,
    n: usize,
}

impl TryFrom<RieszRaw> for RieszParams {
    type Error = Error;
    fn try_from(r: RieszRaw) -> Result<Self> {
        RieszParams::new(r.gamma, r.n)
    }
}

impl From<RieszParams> for RieszRaw {
    fn from(p: RieszParams) -> Self {
        RieszRaw { gamma: p.gamma, n: p.n }
    }
}

impl RieszParams {
    pub fn new(gamma: f64, n: usize) -> Result<Self> {
        Ok(RieszParams {
            gamma,
            n,
            c: riesz_constant(gamma, n)?,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn constant(&self) -> f64 {
        self.c
    }
}

/// Cells with every `|d_i| <= NEAR[n-1]` get exact kernel integrals; others a
/// second-order corrected midpoint rule. In 1D every cell is exact.
const NEAR: [usize; 3] = [usize::MAX, 8, 3];
const QUAD_TOL: f64 = 1e-15;

/// `int_{[0,x]} |z|^{gamma-n} dz` for `x >= 0` componentwise.
fn corner_integral(x: &[f64], gamma: f64) -> Result<f64> {
    if x.iter().any(|&v| v == 0.0) {
        return Ok(0.0);
    }
    let n = x.len();
    let m = gamma - n as f64;
    match n {
        1 => Ok(x[0].powf(gamma) / gamma),
        2 => {
            // Euler: gamma * int_box k = sum over far faces of (z.nu) int_face k
            let face = |a: f64, len: f64| -> Result<f64> {
                integrate(|y| (a * a + y * y).powf(m / 2.0), 0.0, len, 0.0, QUAD_TOL).map(|v| a * v)
            };
            Ok((face(x[0], x[1])? + face(x[1], x[0])?) / gamma)
        }
        3 => {
            let face = |a: f64, l1: f64, l2: f64| -> Result<f64> {
                let inner = |u: f64| {
                    integrate(|v| (a * a + u * u + v * v).powf(m / 2.0), 0.0, l2, 0.0, QUAD_TOL).unwrap_or(f64::NAN)
                };
                let v = integrate(inner, 0.0, l1, 0.0, QUAD_TOL)?;
                if v.is_nan() {
                    return Err(Error::Quadrature("inner face integral".into()));
                }
                Ok(a * v)
            };
            Ok((face(x[0], x[1], x[2])? + face(x[1], x[0], x[2])? + face(x[2], x[0], x[1])?) / gamma)
        }
        _ => Err(Error::Dimension(n)),
    }
}

/// Exact `int_cell |z|^{gamma-n}` for the cell `prod [(d_i - 1/2) a_i, (d_i + 1/2) a_i]`
/// from a table of corner integrals at `(j + 1/2) a`, `j = 0..=k`.
fn exact_cell(d: &[usize], corners: &[f64], k: usize) -> f64 {
    let n = d.len();
    let mut total = 0.0;
    for mask in 0..(1usize << n) {
        let mut sign = 1.0;
        let mut idx = 0usize;
        for a in (0..n).rev() {
            let hi = mask >> a & 1 == 1;
            // P(x) = sgn(x) G(|x|); at d = 0 the lower end -1/2 flips sign twice
            let (j, s) = if hi {
                (d[a], 1.0)
            } else if d[a] == 0 {
                (0, 1.0)
            } else {
                (d[a] - 1, -1.0)
            };
            sign *= s;
            idx = idx * (k + 1) + j;
        }
        total += sign * corners[idx];
    }
    total
}

/// Precomputed weights `w(d) = C * int_{cell d} |z|^{gamma-n}` for a grid.
#[derive(Debug, Clone)]
pub struct RieszKernel {
    grid: Grid,
    params: RieszParams,
    table: Vec<f64>,
}

impl RieszKernel {
    pub fn new(grid: &Grid, params: RieszParams) -> Result<Self> {
        let n = grid.dim();
        if n != params.dim() {
            return Err(Error::InvalidParameter(format!(
                "kernel for dimension {}, grid has {n}",
                params.dim()
            )));
        }
        let h = grid.spacing();
        let scale = h[0];
        let a: Vec<f64> = h.iter().map(|x| x / scale).collect();
        let counts = grid.counts();
        let gamma = params.gamma;
        let m = gamma - n as f64;
        let k = NEAR[n - 1].min(*counts.iter().max().unwrap());

        // unit-cell table in units where h_0 = 1, scaled by C h_0^gamma
        let unit: Vec<f64> = if n == 1 {
            (0..counts[0])
                .map(|d| {
                    if d == 0 {
                        2.0 * 0.5f64.powf(gamma) / gamma
                    } else {
                        let lo = d as f64 - 0.5;
                        let hi = d as f64 + 0.5;
                        (hi.powf(gamma) - lo.powf(gamma)) / gamma
                    }
                })
                .collect()
        } else {
            let ncorner = (k + 1).pow(n as u32);
            let corners: Vec<f64> = (0..ncorner)
                .into_par_iter()
                .map(|mut c| {
                    let mut x = vec![0.0; n];
                    for ax in 0..n {
                        let j = c % (k + 1);
                        c /= k + 1;
                        x[ax] = (j as f64 + 0.5) * a[ax];
                    }
                    corner_integral(&x, gamma)
                })
                .collect::<Result<_>>()?;
            let vol: f64 = a.iter().product();
            let total: usize = counts.iter().product();
            (0..total)
                .into_par_iter()
                .map(|mut i| {
                    let mut d = [0usize; 3];
                    for ax in 0..n {
                        d[ax] = i % counts[ax];
                        i /= counts[ax];
                    }
                    let d = &d[..n];
                    if d.iter().all(|&v| v <= k) {
                        exact_cell(d, &corners, k)
                    } else {
                        let z: Vec<f64> = d.iter().zip(&a).map(|(&di, &ai)| di as f64 * ai).collect();
                        let r2: f64 = z.iter().map(|v| v * v).sum();
                        let r = r2.sqrt();
                        let base = r.powf(m);
                        let mut corr = 0.0;
                        for ax in 0..n {
                            let d2 = m * r.powf(m - 2.0) + m * (m - 2.0) * z[ax] * z[ax] * r.powf(m - 4.0);
                            corr += a[ax] * a[ax] / 24.0 * d2;
                        }
                        vol * (base + corr)
                    }
                })
                .collect()
        };
        let factor = params.c * scale.powf(gamma);
        Ok(RieszKernel {
            grid: grid.clone(),
            params,
            table: unit.into_iter().map(|w| w * factor).collect(),
        })
    }

    pub fn params(&self) -> RieszParams {
        self.params
    }

    /// Weight for the cell offset `d` (absolute values per axis).
    pub fn weight(&self, d: &[usize]) -> f64 {
        let c = self.grid.counts();
        let mut idx = 0;
        for a in (0..d.len()).rev() {
            idx = idx * c[a] + d[a];
        }
        self.table[idx]
    }

    fn offset_index(&self, i: [usize; 3], j: [usize; 3]) -> usize {
        let c = self.grid.counts();
        let mut idx = 0;
        for a in (0..self.grid.dim()).rev() {
            idx = idx * c[a] + i[a].abs_diff(j[a]);
        }
        idx
    }

    fn support<T: Scalar>(&self, f: &GridFunction<T>) -> Result<Vec<([usize; 3], T)>> {
        if f.grid() != &self.grid {
            return Err(Error::GridMismatch);
        }
        Ok(f.values()
            .iter()
            .enumerate()
            .filter(|(_, v)| v.modulus() != 0.0)
            .map(|(j, &v)| (self.grid.unravel(j), v))
            .collect())
    }

    /// `I_gamma f` at one cell.
    pub fn apply_at<T: Scalar>(&self, f: &GridFunction<T>, cell: usize) -> Result<T> {
        let supp = self.support(f)?;
        let i = self.grid.unravel(cell);
        let mut acc = T::default();
        for (j, v) in &supp {
            acc += *v * self.table[self.offset_index(i, *j)];
        }
        Ok(acc)
    }

    pub fn apply<T: Scalar>(&self, f: &GridFunction<T>) -> Result<GridFunction<T>> {
        let supp = self.support(f)?;
        let values: Vec<T> = (0..self.grid.len())
            .into_par_iter()
            .map(|cell| {
                let i = self.grid.unravel(cell);
                let mut acc = T::default();
                for (j, v) in &supp {
                    acc += *v * self.table[self.offset_index(i, *j)];
                }
                acc
            })
            .collect();
        Ok(GridFunction::from_parts(self.grid.clone(), values))
    }
}

/// `I_gamma f = C_gamma int f(y) |x-y|^{gamma-n} dy` by product integration.
pub fn fractional_integral<T: Scalar>(f: &GridFunction<T>, params: RieszParams) -> Result<GridFunction<T>> {
    RieszKernel::new(f.grid(), params)?.apply(f)
}

/// `[b, I_gamma] f = b I_gamma f - I_gamma(b f)`.
pub fn commutator<T: Scalar>(
    b: &GridFunction<f64>,
    f: &GridFunction<T>,
    params: RieszParams,
) -> Result<GridFunction<T>> {
    if b.grid() != f.grid() {
        return Err(Error::GridMismatch);
    }
    let k = RieszKernel::new(f.grid(), params)?;
    commutator_with(&k, b, f)
}

pub(crate) fn commutator_with<T: Scalar>(
    k: &RieszKernel,
    b: &GridFunction<f64>,
    f: &GridFunction<T>,
) -> Result<GridFunction<T>> {
    let i_f = k.apply(f)?;
    let bf = f.mul_real(b)?;
    let i_bf = k.apply(&bf)?;
    let bi = i_f.mul_real(b)?;
    bi.sub(&i_bf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_grid, sample, FieldSpec};

    // reference values from a 30-digit evaluation of the gamma-function formula
    const C_TABLE: [(usize, f64, f64); 8] = [
        (1, 0.5, 0.39894228040143267794),
        (2, 1.0, 0.15915494309189533577),
        (1, 0.25, 0.14927036108294766127),
        (1, 0.75, 1.0662193213524481036),
        (2, 0.5, 0.076074279862467707967),
        (2, 1.5, 0.33296793550170026196),
        (3, 1.0, 0.050660591821168885722),
        (3, 2.5, 0.12698727186848193957),
    ];

    #[test]
    fn constants_match_reference() {
        for (n, g, want) in C_TABLE {
            let c = riesz_constant(g, n).unwrap();
            assert!((c - want).abs() <= 1e-12 * want, "n={n} g={g}: {c} vs {want}");
        }
        assert!(riesz_constant(1.0, 1).is_err());
        assert!(riesz_constant(0.0, 2).is_err());
    }

    #[test]
    fn corner_integral_1d_and_symmetry() {
        let g = 0.5;
        assert!((corner_integral(&[4.0], g).unwrap() - 4.0).abs() < 1e-15);
        let a = corner_integral(&[0.7, 1.3], g).unwrap();
        let b = corner_integral(&[1.3, 0.7], g).unwrap();
        assert!((a - b).abs() < 1e-14);
    }

    #[test]
    fn corner_integral_2d_polar_check() {
        // gamma = 1: int_{[0,s]^2} 1/|z| = 2 s log(1 + sqrt 2)
        let gamma = 1.0;
        let s = 1.0;
        let want = 2.0 * s * (std::f64::consts::SQRT_2 + 1.0).ln();
        let got = corner_integral(&[s, s], gamma).unwrap();
        assert!((got - want).abs() < 1e-13, "{got} vs {want}");
    }

    #[test]
    fn exact_cells_sum_to_box() {
        // cells |d| <= 2 in 2D tile [-2.5, 2.5]^2 = 4 * G(2.5, 2.5)
        let gamma = 0.7;
        let k = 3;
        let corners: Vec<f64> = (0..(k + 1) * (k + 1))
            .map(|c| corner_integral(&[(c % (k + 1)) as f64 + 0.5, (c / (k + 1)) as f64 + 0.5], gamma).unwrap())
            .collect();
        let mut total = 0.0;
        for d1 in 0..=2usize {
            for d0 in 0..=2usize {
                let mult = (if d0 == 0 { 1.0 } else { 2.0 }) * (if d1 == 0 { 1.0 } else { 2.0 });
                total += mult * exact_cell(&[d0, d1], &corners, k);
            }
        }
        let want = 4.0 * corner_integral(&[2.5, 2.5], gamma).unwrap();
        assert!((total - want).abs() < 1e-12 * want);
    }

    #[test]
    fn indicator_closed_forms() {
        let c = riesz_constant(0.5, 1).unwrap();
        let cells = 4096;
        let h = 8.0 / cells as f64;
        let g = make_grid(&[[-4.0 - h / 2.0, 4.0 - h / 2.0]], &[cells]).unwrap();
        let f = sample(
            &FieldSpec::IndicatorBox {
                lower: vec![-1.0],
                upper: vec![1.0],
            },
            &g,
        )
        .unwrap();
        let k = RieszKernel::new(&g, RieszParams::new(0.5, 1).unwrap()).unwrap();
        let at0 = k.apply_at(&f, cells / 2).unwrap();
        let at2 = k.apply_at(&f, cells / 2 + (2.0 / h) as usize).unwrap();
        assert!((at0 - 4.0 * c).abs() < 0.01 * 4.0 * c);
        let want2 = 2.0 * c * (3f64.sqrt() - 1.0);
        assert!((at2 - want2).abs() < 0.01 * want2);
    }

    #[test]
    fn commutator_moment() {
        // b(x) = x, f = chi_[0,1], x = 0: -(2/3) C
        let cells = 2048;
        let g = make_grid(&[[-2.0, 2.0]], &[cells]).unwrap();
        let h = 4.0 / cells as f64;
        let b = GridFunction::from_fn(&g, |x| x[0]).unwrap();
        let f = GridFunction::from_fn(&g, |x| if x[0] > 0.0 && x[0] < 1.0 { 1.0 } else { 0.0 }).unwrap();
        let p = RieszParams::new(0.5, 1).unwrap();
        let out = commutator(&b, &f, p).unwrap();
        // average of the two cells adjacent to 0
        let x0 = (out.values()[cells / 2 - 1] + out.values()[cells / 2]) / 2.0;
        let want = -0.26596152026762178529;
        assert!((x0 - want).abs() < 0.01 * want.abs(), "{x0} (h={h})");
    }

    #[test]
    fn constant_b_cancels() {
        let g = make_grid(&[[-2.0, 2.0], [-2.0, 2.0]], &[24, 24]).unwrap();
        let f = sample(&FieldSpec::random(1, &[-1.0, -1.0], &[1.0, 1.0]), &g).unwrap();
        let b = GridFunction::constant(&g, 3.7);
        let out = commutator(&b, &f, RieszParams::new(1.0, 2).unwrap()).unwrap();
        let scale = fractional_integral(&f, RieszParams::new(1.0, 2).unwrap())
            .unwrap()
            .max_modulus()
            * 3.7;
        assert!(out.max_modulus() <= 1e-14 * scale);
    }
}

//! Tensor grids, sampled functions, windows and the test-field catalogue.

mod field;
mod window;

pub use field::{sample, sample_complex, FieldSpec};
pub use window::{restrict, window_mask, BallStencil, WindowSpec};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, ScalarKind};

pub const DEFAULT_CELL_BUDGET: usize = 1 << 24;

/// Axis-aligned box split into `counts[i]` equal cells per axis.
///
/// Linear cell index runs with axis 0 fastest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GridSpec", into = "GridSpec")]
pub struct Grid {
    lower: Vec<f64>,
    upper: Vec<f64>,
    counts: Vec<usize>,
    h: Vec<f64>,
}

/// Serialized form: `{"bounds": [[lo, hi], ...], "counts": [...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridSpec {
    pub bounds: Vec<[f64; 2]>,
    pub counts: Vec<usize>,
}

impl TryFrom<GridSpec> for Grid {
    type Error = Error;
    fn try_from(s: GridSpec) -> Result<Grid> {
        make_grid(&s.bounds, &s.counts)
    }
}

impl From<Grid> for GridSpec {
    fn from(g: Grid) -> GridSpec {
        GridSpec {
            bounds: g.lower.iter().zip(&g.upper).map(|(&a, &b)| [a, b]).collect(),
            counts: g.counts,
        }
    }
}

pub fn make_grid(bounds: &[[f64; 2]], counts: &[usize]) -> Result<Grid> {
    make_grid_with_budget(bounds, counts, DEFAULT_CELL_BUDGET)
}

pub fn make_grid_with_budget(bounds: &[[f64; 2]], counts: &[usize], budget: usize) -> Result<Grid> {
    let n = bounds.len();
    if n == 0 || n > 3 {
        return Err(Error::Dimension(n));
    }
    if counts.len() != n {
        return Err(Error::InvalidParameter(format!(
            "{} bounds but {} counts",
            n,
            counts.len()
        )));
    }
    let mut cells: usize = 1;
    let mut h = Vec::with_capacity(n);
    for (axis, (b, &c)) in bounds.iter().zip(counts).enumerate() {
        let [lo, hi] = *b;
        if c < 2 || !lo.is_finite() || !hi.is_finite() || hi <= lo {
            return Err(Error::DegenerateAxis(axis));
        }
        cells = cells.saturating_mul(c);
        h.push((hi - lo) / c as f64);
    }
    if cells > budget {
        return Err(Error::Budget { cells, budget });
    }
    Ok(Grid {
        lower: bounds.iter().map(|b| b[0]).collect(),
        upper: bounds.iter().map(|b| b[1]).collect(),
        counts: counts.to_vec(),
        h,
    })
}

impl Grid {
    /// Symmetric box `[-half, half]^n` with `cells` cells per axis.
    pub fn cube(n: usize, half: f64, cells: usize) -> Result<Grid> {
        make_grid(&vec![[-half, half]; n], &vec![cells; n])
    }

    pub fn dim(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn spacing(&self) -> &[f64] {
        &self.h
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn len(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cell_volume(&self) -> f64 {
        self.h.iter().product()
    }

    pub fn midpoint(&self, axis: usize, j: usize) -> f64 {
        self.lower[axis] + (j as f64 + 0.5) * self.h[axis]
    }

    pub fn axis_midpoints(&self, axis: usize) -> Vec<f64> {
        (0..self.counts[axis]).map(|j| self.midpoint(axis, j)).collect()
    }

    pub fn unravel(&self, mut idx: usize) -> [usize; 3] {
        let mut out = [0; 3];
        for (a, &c) in self.counts.iter().enumerate() {
            out[a] = idx % c;
            idx /= c;
        }
        out
    }

    pub fn ravel(&self, multi: &[usize]) -> usize {
        let mut idx = 0;
        for a in (0..self.dim()).rev() {
            idx = idx * self.counts[a] + multi[a];
        }
        idx
    }

    pub fn point(&self, idx: usize) -> [f64; 3] {
        let m = self.unravel(idx);
        let mut x = [0.0; 3];
        for a in 0..self.dim() {
            x[a] = self.midpoint(a, m[a]);
        }
        x
    }

    /// Same counts, bounds multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Grid {
        Grid {
            lower: self.lower.iter().map(|x| x * factor).collect(),
            upper: self.upper.iter().map(|x| x * factor).collect(),
            counts: self.counts.clone(),
            h: self.h.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn contains_point(&self, x: &[f64]) -> bool {
        x.iter()
            .enumerate()
            .all(|(a, &v)| v >= self.lower[a] && v <= self.upper[a])
    }
}

/// Samples at cell midpoints, zero outside the box.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction<T = f64> {
    grid: Grid,
    values: Vec<T>,
}

impl<T: Scalar> GridFunction<T> {
    pub fn new(grid: Grid, values: Vec<T>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Length {
                expected: grid.len(),
                got: values.len(),
            });
        }
        if let Some(i) = values.iter().position(|v| !v.finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(GridFunction { grid, values })
    }

    pub(crate) fn from_parts(grid: Grid, values: Vec<T>) -> Self {
        debug_assert_eq!(grid.len(), values.len());
        GridFunction { grid, values }
    }

    pub fn zeros(grid: &Grid) -> Self {
        GridFunction {
            values: vec![T::default(); grid.len()],
            grid: grid.clone(),
        }
    }

    pub fn constant(grid: &Grid, c: T) -> Self {
        GridFunction {
            values: vec![c; grid.len()],
            grid: grid.clone(),
        }
    }

    /// Evaluate `f` at every cell midpoint.
    pub fn from_fn<F>(grid: &Grid, f: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> T + Sync,
    {
        let n = grid.dim();
        let values: Vec<T> = (0..grid.len())
            .into_par_iter()
            .map(|i| f(&grid.point(i)[..n]))
            .collect();
        Self::new(grid.clone(), values)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn kind(&self) -> ScalarKind {
        T::KIND
    }

    pub fn modulus(&self) -> GridFunction<f64> {
        GridFunction {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| v.modulus()).collect(),
        }
    }

    pub fn map<U: Scalar, F: Fn(T) -> U>(&self, f: F) -> GridFunction<U> {
        GridFunction {
            grid: self.grid.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn zip_map<U: Scalar, V: Scalar, F: Fn(T, U) -> V>(
        &self,
        other: &GridFunction<U>,
        f: F,
    ) -> Result<GridFunction<V>> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(GridFunction {
            grid: self.grid.clone(),
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, c: f64) -> Self {
        self.map(|v| v * c)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_map(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_map(other, |a, b| a - b)
    }

    /// Pointwise product with a real function.
    pub fn mul_real(&self, other: &GridFunction<f64>) -> Result<Self> {
        self.zip_map(other, |a, b| a * b)
    }

    pub fn max_modulus(&self) -> f64 {
        self.values.iter().map(|v| v.modulus()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.modulus() == 0.0)
    }

    /// Same samples reinterpreted on another grid with identical counts.
    pub fn with_grid(&self, grid: Grid) -> Result<Self> {
        if grid.counts() != self.grid.counts() {
            return Err(Error::GridMismatch);
        }
        Ok(GridFunction {
            grid,
            values: self.values.clone(),
        })
    }
}

impl GridFunction<f64> {
    pub fn to_complex(&self) -> GridFunction<Complex64> {
        self.map(Complex64::from_real)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spacing_1d() {
        let g = make_grid(&[[-1.0, 1.0]], &[4]).unwrap();
        assert_eq!(g.spacing(), &[0.5]);
    }

    #[test]
    fn spacing_2d() {
        let g = make_grid(&[[0.0, 2.0], [0.0, 3.0]], &[2, 3]).unwrap();
        assert_eq!(g.spacing(), &[1.0, 1.0]);
        assert_eq!(g.len(), 6);
    }

    #[test]
    fn zero_count_is_degenerate() {
        assert_eq!(make_grid(&[[0.0, 1.0]], &[0]), Err(Error::DegenerateAxis(0)));
        assert_eq!(make_grid(&[[1.0, 1.0]], &[4]), Err(Error::DegenerateAxis(0)));
        assert_eq!(make_grid(&[], &[]), Err(Error::Dimension(0)));
        assert!(matches!(
            make_grid_with_budget(&[[0.0, 1.0], [0.0, 1.0]], &[64, 64], 1000),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn ravel_roundtrip() {
        let g = make_grid(&[[0.0, 1.0], [0.0, 1.0], [0.0, 1.0]], &[3, 4, 5]).unwrap();
        for i in 0..g.len() {
            let m = g.unravel(i);
            assert_eq!(g.ravel(&m), i);
        }
        assert_eq!(g.unravel(1), [1, 0, 0]);
    }

    #[test]
    fn serde_roundtrip() {
        let g = make_grid(&[[-2.0, 2.0]], &[8]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"bounds":[[-2.0,2.0]],"counts":[8]}"#);
        let back: Grid = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Grid>(r#"{"bounds":[[0,1]],"counts":[1]}"#).is_err());
    }

    #[test]
    fn non_finite_samples_rejected() {
        let g = Grid::cube(1, 1.0, 4).unwrap();
        assert_eq!(
            GridFunction::new(g, vec![0.0, f64::NAN, 0.0, 0.0]),
            Err(Error::NonFinite(1))
        );
    }
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Grid, GridFunction};
use crate::norms::Exponent;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DilationKind {
    /// `delta_t f(x) = f(t x)`
    Plain,
    /// `St_r f = r^{-n/alpha} f(x / r)`
    Normalized { alpha: Exponent },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DilationParams {
    pub kind: DilationKind,
    pub scale: f64,
}

impl DilationParams {
    pub fn apply<T: Scalar>(&self, f: &GridFunction<T>) -> Result<GridFunction<T>> {
        match self.kind {
            DilationKind::Plain => dilate(f, self.scale),
            DilationKind::Normalized { alpha } => st_dilation(f, self.scale, alpha),
        }
    }
}

/// `k` with `t = 2^k`, or an error if `t` is not an exact power of two.
pub fn dyadic_exponent(t: f64) -> Result<i32> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::NonDyadic(t));
    }
    let k = t.log2().round() as i32;
    if 2f64.powi(k) == t {
        Ok(k)
    } else {
        Err(Error::NonDyadic(t))
    }
}

/// `delta_t f(x) = f(t x)`: the same samples on the grid scaled by `1/t`.
pub fn dilate<T: Scalar>(f: &GridFunction<T>, t: f64) -> Result<GridFunction<T>> {
    dyadic_exponent(t)?;
    f.with_grid(f.grid().scaled(1.0 / t))
}

/// `St_r^{(alpha)} f = r^{-n/alpha} f(./r)` on the grid scaled by `r`.
pub fn st_dilation<T: Scalar>(f: &GridFunction<T>, r: f64, alpha: Exponent) -> Result<GridFunction<T>> {
    dyadic_exponent(r)?;
    let n = f.grid().dim() as f64;
    let c = r.powf(-n * alpha.inv());
    Ok(f.with_grid(f.grid().scaled(r))?.scale(c))
}

/// Per-axis source index for each target cell; `None` outside the source box.
fn axis_map(src: &Grid, dst: &Grid, a: usize) -> Result<Vec<Option<usize>>> {
    let (sl, sh, sc) = (src.lower()[a], src.spacing()[a], src.counts()[a]);
    let (dl, dh) = (dst.lower()[a], dst.spacing()[a]);
    let tol = 1e-9 * sh.min(dh);
    (0..dst.counts()[a])
        .map(|j| {
            let lo = dl + j as f64 * dh;
            let hi = lo + dh;
            let su = src.upper()[a];
            if hi <= sl + tol || lo >= su - tol {
                return Ok(None);
            }
            let mid = 0.5 * (lo + hi);
            let s = ((mid - sl) / sh).floor();
            if s < 0.0 || s as usize >= sc {
                return Err(Error::IncompatibleScale(format!(
                    "axis {a}: target cell {j} straddles the source box"
                )));
            }
            let s = s as usize;
            let cl = sl + s as f64 * sh;
            if lo < cl - tol || hi > cl + sh + tol {
                return Err(Error::IncompatibleScale(format!(
                    "axis {a}: target cell {j} is not inside one source cell"
                )));
            }
            Ok(Some(s))
        })
        .collect()
}

/// Piecewise-constant transfer onto `target`; each target cell must lie in one source cell.
pub fn resample_exact<T: Scalar>(f: &GridFunction<T>, target: &Grid) -> Result<GridFunction<T>> {
    let src = f.grid();
    if src == target {
        return Ok(f.clone());
    }
    if src.dim() != target.dim() {
        return Err(Error::GridMismatch);
    }
    let maps: Vec<Vec<Option<usize>>> = (0..src.dim())
        .map(|a| axis_map(src, target, a))
        .collect::<Result<_>>()?;
    let values = (0..target.len())
        .map(|i| {
            let m = target.unravel(i);
            let mut s = [0usize; 3];
            for a in 0..src.dim() {
                match maps[a][m[a]] {
                    Some(k) => s[a] = k,
                    None => return T::default(),
                }
            }
            f.values()[src.ravel(&s[..src.dim()])]
        })
        .collect();
    Ok(GridFunction::from_parts(target.clone(), values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_grid, sample, FieldSpec};

    fn ind(g: &Grid, a: f64) -> GridFunction<f64> {
        sample(
            &FieldSpec::IndicatorBall {
                center: vec![0.0],
                radius: a,
            },
            g,
        )
        .unwrap()
    }

    #[test]
    fn plain_dilation() {
        let g = make_grid(&[[-2.0, 2.0]], &[16]).unwrap();
        let f = ind(&g, 1.0);
        assert_eq!(dilate(&f, 1.0).unwrap(), f);
        let d = dilate(&f, 2.0).unwrap();
        assert_eq!(d.grid(), &make_grid(&[[-1.0, 1.0]], &[16]).unwrap());
        assert_eq!(d, ind(d.grid(), 0.5));
        assert_eq!(dilate(&f, 3.0), Err(Error::NonDyadic(3.0)));
    }

    #[test]
    fn st_identity_and_composition() {
        let g = make_grid(&[[-2.0, 2.0], [-1.0, 3.0]], &[8, 8]).unwrap();
        let f = sample(&FieldSpec::random(5, &[-1.0, 0.0], &[1.0, 2.0]), &g).unwrap();
        let a = Exponent::new(3.0).unwrap();
        assert_eq!(st_dilation(&f, 1.0, a).unwrap(), f);
        let two = st_dilation(&st_dilation(&f, 4.0, a).unwrap(), 2.0, a).unwrap();
        let eight = st_dilation(&f, 8.0, a).unwrap();
        assert_eq!(two.grid(), eight.grid());
        for (x, y) in two.values().iter().zip(eight.values()) {
            assert!((x - y).abs() <= 1e-14 * y.abs());
        }
    }

    #[test]
    fn resample_nested_cells() {
        let coarse = make_grid(&[[-2.0, 2.0]], &[4]).unwrap();
        let fine = make_grid(&[[-4.0, 4.0]], &[32]).unwrap();
        let f = GridFunction::new(coarse.clone(), vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let r = resample_exact(&f, &fine).unwrap();
        assert_eq!(&r.values()[8..12], &[1.0; 4]);
        assert_eq!(&r.values()[20..24], &[4.0; 4]);
        assert_eq!(r.values()[0], 0.0);
        let back = resample_exact(&r, &fine).unwrap();
        assert_eq!(back, r);
        assert!(matches!(resample_exact(&r, &coarse), Err(Error::IncompatibleScale(_))));
    }
}

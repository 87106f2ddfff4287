use serde::{Deserialize, Serialize};

use super::{Grid, GridFunction};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Open ball `B(center, radius)` or half-open lattice cube `side * (k + [0,1)^n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WindowSpec {
    Ball { center: Vec<f64>, radius: f64 },
    Cube { side: f64, k: Vec<i64> },
}

impl WindowSpec {
    pub fn ball(center: &[f64], radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) || center.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter(format!("ball radius {radius}")));
        }
        Ok(WindowSpec::Ball {
            center: center.to_vec(),
            radius,
        })
    }

    pub fn cube(side: f64, k: &[i64]) -> Result<Self> {
        if !(side > 0.0 && side.is_finite()) {
            return Err(Error::InvalidParameter(format!("cube side {side}")));
        }
        Ok(WindowSpec::Cube { side, k: k.to_vec() })
    }

    fn check(&self, grid: &Grid) -> Result<()> {
        let n = grid.dim();
        match self {
            WindowSpec::Ball { center, radius } => {
                if center.len() != n {
                    return Err(Error::GridMismatch);
                }
                for a in 0..n {
                    if center[a] < grid.lower()[a] - radius || center[a] > grid.upper()[a] + radius {
                        return Err(Error::InvalidParameter("ball center outside the enlarged box".into()));
                    }
                }
            }
            WindowSpec::Cube { k, .. } => {
                if k.len() != n {
                    return Err(Error::GridMismatch);
                }
            }
        }
        Ok(())
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        match self {
            WindowSpec::Ball { center, radius } => {
                let d2: f64 = x.iter().zip(center).map(|(a, b)| (a - b) * (a - b)).sum();
                d2 < radius * radius
            }
            WindowSpec::Cube { side, k } => x.iter().zip(k).all(|(&v, &ki)| {
                let lo = side * ki as f64;
                v >= lo && v < lo + side
            }),
        }
    }
}

pub fn window_mask(w: &WindowSpec, grid: &Grid) -> Result<GridFunction<f64>> {
    w.check(grid)?;
    GridFunction::from_fn(grid, |x| if w.contains(x) { 1.0 } else { 0.0 })
}

pub fn restrict<T: Scalar>(f: &GridFunction<T>, w: &WindowSpec) -> Result<GridFunction<T>> {
    let mask = window_mask(w, f.grid())?;
    f.mul_real(&mask)
}

/// Offsets (in cells) whose midpoints lie in an open ball around a cell midpoint.
///
/// Membership is decided on `d_i * h_i`, which is exact for dyadic spacings,
/// so ties on the sphere are resolved identically at every center.
#[derive(Debug, Clone)]
pub struct BallStencil {
    ext: [usize; 3],
    side: [usize; 3],
    mask: Vec<bool>,
    n: usize,
}

impl BallStencil {
    pub fn new(h: &[f64], radius: f64) -> Self {
        let n = h.len();
        let mut ext = [0usize; 3];
        let mut side = [1usize; 3];
        for a in 0..n {
            ext[a] = (radius / h[a]).floor() as usize;
            side[a] = 2 * ext[a] + 1;
        }
        let total: usize = side.iter().product();
        let r2 = radius * radius;
        let mask = (0..total)
            .map(|mut i| {
                let mut d2 = 0.0;
                for a in 0..n {
                    let d = (i % side[a]) as f64 - ext[a] as f64;
                    i /= side[a];
                    let x = d * h[a];
                    d2 += x * x;
                }
                d2 < r2
            })
            .collect();
        BallStencil { ext, side, mask, n }
    }

    pub fn cell_count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    /// Copy the masked values around `center` into `buf`; returns the box dims.
    pub fn gather(&self, vals: &[f64], counts: &[usize], center: [usize; 3], buf: &mut Vec<f64>) -> [usize; 3] {
        let mut lo = [0usize; 3];
        let mut dims = [1usize; 3];
        let mut off = [0usize; 3];
        for a in 0..self.n {
            let c = center[a];
            let l = c.saturating_sub(self.ext[a]);
            let h = (c + self.ext[a]).min(counts[a] - 1);
            lo[a] = l;
            dims[a] = h - l + 1;
            off[a] = l + self.ext[a] - c;
        }
        buf.clear();
        let c0 = counts[0];
        let c1 = if self.n > 1 { counts[1] } else { 1 };
        for k in 0..dims[2] {
            for j in 0..dims[1] {
                let row = ((lo[2] + k) * c1 + lo[1] + j) * c0 + lo[0];
                let srow = ((off[2] + k) * self.side[1] + off[1] + j) * self.side[0] + off[0];
                for i in 0..dims[0] {
                    buf.push(if self.mask[srow + i] { vals[row + i] } else { 0.0 });
                }
            }
        }
        dims
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid;

    #[test]
    fn ball_mask_1d() {
        let g = make_grid(&[[-2.0, 2.0]], &[8]).unwrap();
        let m = window_mask(&WindowSpec::ball(&[0.0], 1.0).unwrap(), &g).unwrap();
        assert_eq!(m.values(), &[0., 0., 1., 1., 1., 1., 0., 0.]);
    }

    #[test]
    fn cube_mask_half_open() {
        let g = make_grid(&[[0.0, 2.0]], &[4]).unwrap();
        let m = window_mask(&WindowSpec::cube(1.0, &[0]).unwrap(), &g).unwrap();
        assert_eq!(m.values(), &[1., 1., 0., 0.]);
        let m1 = window_mask(&WindowSpec::cube(1.0, &[1]).unwrap(), &g).unwrap();
        let s: Vec<f64> = m.values().iter().zip(m1.values()).map(|(a, b)| a + b).collect();
        assert_eq!(s, vec![1.0; 4]);
    }

    #[test]
    fn restrict_idempotent_and_trivial_windows() {
        let g = make_grid(&[[-2.0, 2.0], [-1.0, 1.0]], &[8, 6]).unwrap();
        let f = GridFunction::from_fn(&g, |x| 1.0 + x[0] * x[1]).unwrap();
        let w = WindowSpec::ball(&[0.3, 0.0], 1.1).unwrap();
        let once = restrict(&f, &w).unwrap();
        assert_eq!(restrict(&once, &w).unwrap(), once);
        let big = WindowSpec::ball(&[0.0, 0.0], 10.0).unwrap();
        assert_eq!(restrict(&f, &big).unwrap(), f);
        let far = WindowSpec::ball(&[2.1, 1.1], 0.2).unwrap();
        assert!(restrict(&f, &far).unwrap().is_zero());
        assert!(window_mask(&WindowSpec::ball(&[9.0, 0.0], 1.0).unwrap(), &g).is_err());
    }

    #[test]
    fn stencil_matches_mask() {
        let g = make_grid(&[[-2.0, 2.0], [-2.0, 2.0]], &[16, 16]).unwrap();
        let st = BallStencil::new(g.spacing(), 0.75);
        let ones = vec![1.0; g.len()];
        let mut buf = Vec::new();
        for c in [[0usize, 0, 0], [7, 8, 0], [15, 3, 0]] {
            buf.clear();
            st.gather(&ones, g.counts(), c, &mut buf);
            let y = [g.midpoint(0, c[0]), g.midpoint(1, c[1])];
            let m = window_mask(&WindowSpec::ball(&y, 0.75).unwrap(), &g).unwrap();
            let want: f64 = m.values().iter().sum();
            assert_eq!(buf.iter().sum::<f64>(), want);
        }
    }
}

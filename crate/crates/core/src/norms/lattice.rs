use serde::{Deserialize, Serialize};

use super::{reduce_dense, Exponent};
use crate::error::{Error, Result};

/// Nonnegative values on a box of `Z^n`, zero elsewhere. Axis 0 fastest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeArray {
    lo: Vec<i64>,
    dims: Vec<usize>,
    values: Vec<f64>,
}

impl LatticeArray {
    pub fn new(lo: Vec<i64>, dims: Vec<usize>, values: Vec<f64>) -> Result<Self> {
        if lo.len() != dims.len() {
            return Err(Error::InvalidParameter("lattice origin/dims arity".into()));
        }
        let len: usize = dims.iter().product();
        if values.len() != len {
            return Err(Error::Length {
                expected: len,
                got: values.len(),
            });
        }
        if let Some(&v) = values.iter().find(|v| !(**v >= 0.0) || !v.is_finite()) {
            return Err(Error::NegativeEntry(v));
        }
        Ok(LatticeArray { lo, dims, values })
    }

    /// Build from sparse entries; repeated keys add up.
    pub fn from_entries<I>(n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, f64)>,
    {
        let entries: Vec<(Vec<i64>, f64)> = entries.into_iter().collect();
        if entries.is_empty() {
            return Ok(LatticeArray {
                lo: vec![0; n],
                dims: vec![1; n],
                values: vec![0.0],
            });
        }
        let mut lo = vec![i64::MAX; n];
        let mut hi = vec![i64::MIN; n];
        for (k, v) in &entries {
            if k.len() != n {
                return Err(Error::InvalidParameter("lattice index arity".into()));
            }
            if !(*v >= 0.0) || !v.is_finite() {
                return Err(Error::NegativeEntry(*v));
            }
            for a in 0..n {
                lo[a] = lo[a].min(k[a]);
                hi[a] = hi[a].max(k[a]);
            }
        }
        let dims: Vec<usize> = (0..n).map(|a| (hi[a] - lo[a] + 1) as usize).collect();
        let mut values = vec![0.0; dims.iter().product()];
        for (k, v) in entries {
            let mut idx = 0usize;
            for a in (0..n).rev() {
                idx = idx * dims[a] + (k[a] - lo[a]) as usize;
            }
            values[idx] += v;
        }
        Ok(LatticeArray { lo, dims, values })
    }

    pub fn dim(&self) -> usize {
        self.dims.len()
    }

    pub fn get(&self, k: &[i64]) -> f64 {
        let mut idx = 0usize;
        for a in (0..self.dim()).rev() {
            let off = k[a] - self.lo[a];
            if off < 0 || off as usize >= self.dims[a] {
                return 0.0;
            }
            idx = idx * self.dims[a] + off as usize;
        }
        self.values[idx]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
}

/// `l^s` norm iterated innermost over `k_1`, outermost over `k_n`.
pub fn mixed_sequence_norm(a: &LatticeArray, s: &[Exponent]) -> Result<f64> {
    if s.len() != a.dim() {
        return Err(Error::ExponentArity {
            expected: a.dim(),
            got: s.len(),
        });
    }
    let ones = vec![1.0; a.dim()];
    Ok(reduce_dense(a.values.clone(), &a.dims, &ones, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::exponents;

    #[test]
    fn two_entries_one_row() {
        let a = LatticeArray::from_entries(2, vec![(vec![0, 0], 1.0), (vec![1, 0], 1.0)]).unwrap();
        let v = mixed_sequence_norm(&a, &exponents(&[2.0, 3.0]).unwrap()).unwrap();
        assert!((v - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn single_row_reduction() {
        for m in 1..6 {
            let a = LatticeArray::from_entries(2, (0..m).map(|i| (vec![i, 4], 1.0))).unwrap();
            let v = mixed_sequence_norm(&a, &exponents(&[3.0, f64::INFINITY]).unwrap()).unwrap();
            assert!((v - (m as f64).powf(1.0 / 3.0)).abs() < 1e-14);
        }
    }

    #[test]
    fn zero_and_negative() {
        let z = LatticeArray::from_entries(1, vec![]).unwrap();
        assert_eq!(mixed_sequence_norm(&z, &exponents(&[2.0]).unwrap()).unwrap(), 0.0);
        assert!(matches!(
            LatticeArray::from_entries(1, vec![(vec![0], -1.0)]),
            Err(Error::NegativeEntry(_))
        ));
        assert_eq!(z.get(&[5]), 0.0);
    }
}

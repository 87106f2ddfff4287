use rayon::prelude::*;

use super::Exponent;
use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::scalar::{compensated_sum, Compensated, Scalar};

const PAR_THRESHOLD: usize = 1 << 14;

fn line_norm(v: &[f64], h: f64, p: Exponent) -> f64 {
    if p.is_infinite() {
        return v.iter().cloned().fold(0.0, f64::max);
    }
    let pv = p.value();
    let mut acc = Compensated::default();
    if pv == 1.0 {
        for &x in v {
            acc.add(x);
        }
        return acc.value() * h;
    }
    if pv == 2.0 {
        for &x in v {
            acc.add(x * x);
        }
        return (acc.value() * h).sqrt();
    }
    // large p: divide by the max first or x^p underflows
    let m = v.iter().cloned().fold(0.0, f64::max);
    if m == 0.0 {
        return 0.0;
    }
    for &x in v {
        acc.add((x / m).powf(pv));
    }
    m * (acc.value() * h).powf(p.inv())
}

/// Iterated norm of nonnegative values laid out with axis 0 fastest.
pub(crate) fn reduce_dense(mut cur: Vec<f64>, dims: &[usize], h: &[f64], p: &[Exponent]) -> f64 {
    for (&len, (&ha, &pa)) in dims.iter().zip(h.iter().zip(p)) {
        if len == 0 {
            return 0.0;
        }
        cur = if cur.len() >= PAR_THRESHOLD {
            cur.par_chunks(len).map(|l| line_norm(l, ha, pa)).collect()
        } else {
            cur.chunks(len).map(|l| line_norm(l, ha, pa)).collect()
        };
    }
    debug_assert_eq!(cur.len(), 1);
    cur[0]
}

/// `||f||_{L^p}` reducing axis 0 first; `p_i = inf` takes the max over the axis.
pub fn mixed_lebesgue_norm<T: Scalar>(f: &GridFunction<T>, p: &[Exponent]) -> Result<f64> {
    let g = f.grid();
    if p.len() != g.dim() {
        return Err(Error::ExponentArity {
            expected: g.dim(),
            got: p.len(),
        });
    }
    if let Some(i) = f.values().iter().position(|v| !v.finite()) {
        return Err(Error::NonFinite(i));
    }
    let abs: Vec<f64> = f.values().iter().map(|v| v.modulus()).collect();
    Ok(reduce_dense(abs, g.counts(), g.spacing(), p))
}

/// `int |f g|` by the midpoint rule.
pub fn product_l1<T: Scalar, U: Scalar>(f: &GridFunction<T>, g: &GridFunction<U>) -> Result<f64> {
    if f.grid() != g.grid() {
        return Err(Error::GridMismatch);
    }
    let s = compensated_sum(
        f.values()
            .iter()
            .zip(g.values())
            .map(|(a, b)| a.modulus() * b.modulus()),
    );
    Ok(s * f.grid().cell_volume())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_grid, sample, FieldSpec};
    use crate::norms::exponents;

    #[test]
    fn constant_on_rectangle() {
        let g = make_grid(&[[0.0, 2.0], [0.0, 3.0]], &[2, 3]).unwrap();
        let f = GridFunction::constant(&g, 1.0);
        let v = mixed_lebesgue_norm(&f, &exponents(&[1.0, 2.0]).unwrap()).unwrap();
        assert!((v - 12f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn large_exponent_small_values() {
        // 0.5^2000 underflows without rescaling
        let g = make_grid(&[[0.0, 4.0]], &[4]).unwrap();
        let f = GridFunction::new(g, vec![0.5, 0.25, 0.5, 0.0]).unwrap();
        let v = mixed_lebesgue_norm(&f, &exponents(&[2000.0]).unwrap()).unwrap();
        let want = 0.5 * 2f64.powf(1.0 / 2000.0);
        assert!((v - want).abs() < 1e-14);
    }

    #[test]
    fn unit_cube_indicator() {
        let g = make_grid(&[[-1.0, 2.0], [-1.0, 2.0]], &[12, 12]).unwrap();
        let f = sample(
            &FieldSpec::IndicatorBox {
                lower: vec![0.0, 0.0],
                upper: vec![1.0, 1.0],
            },
            &g,
        )
        .unwrap();
        for p in [[1.0, 1.0], [3.0, 2.0], [f64::INFINITY, 1.5], [2.0, f64::INFINITY]] {
            let v = mixed_lebesgue_norm(&f, &exponents(&p).unwrap()).unwrap();
            assert!((v - 1.0).abs() < 1e-14, "{p:?}: {v}");
        }
        let z = GridFunction::<f64>::zeros(&g);
        assert_eq!(mixed_lebesgue_norm(&z, &exponents(&[2.0, 3.0]).unwrap()).unwrap(), 0.0);
    }

    #[test]
    fn arity_checked() {
        let g = make_grid(&[[0.0, 1.0]], &[4]).unwrap();
        let f = GridFunction::constant(&g, 1.0);
        assert!(matches!(
            mixed_lebesgue_norm(&f, &exponents(&[2.0, 2.0]).unwrap()),
            Err(Error::ExponentArity { .. })
        ));
    }
}

//! Block decompositions, their synthesis, the pairing with amalgam
//! functions and the resulting duality inequality.

use serde::{Deserialize, Serialize};

use crate::amalgam::{
    alpha_amalgam_norm, discrete_alpha_norm, discrete_amalgam_norm, ExponentSystem, GateStatus, RadiusSweep,
};
use crate::error::{Error, Result};
use crate::grid::{sample, FieldSpec, Grid, GridFunction};
use crate::norms::{sum_inv, Exponent};
use crate::operators::{dyadic_exponent, resample_exact, st_dilation};
use crate::scalar::Scalar;

const BLOCK_SLACK: f64 = 1e-12;

/// One term `c St_r^{(alpha')}(f)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Block<T = f64> {
    pub c: T,
    pub r: f64,
    pub f: GridFunction<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlockDecomposition<T = f64> {
    blocks: Vec<Block<T>>,
    p_conj: Vec<Exponent>,
    s_conj: Vec<Exponent>,
    alpha_conj: Exponent,
    block_norms: Vec<f64>,
    coefficient_sum: f64,
}

/// Validate `1||f_j||_{p',s'} <= 1` for every block.
pub fn make_block_decomposition<T: Scalar>(
    blocks: Vec<Block<T>>,
    sys: &ExponentSystem,
) -> Result<BlockDecomposition<T>> {
    if blocks.is_empty() {
        return Err(Error::EmptyDecomposition);
    }
    let p_conj = sys.p_conj();
    let s_conj = sys.s_conj();
    let mut block_norms = Vec::with_capacity(blocks.len());
    for (index, b) in blocks.iter().enumerate() {
        dyadic_exponent(b.r)?;
        let norm = discrete_amalgam_norm(&b.f, &p_conj, &s_conj, 1.0)?;
        if norm > 1.0 + BLOCK_SLACK {
            return Err(Error::BlockNormExceeded { index, norm });
        }
        block_norms.push(norm);
    }
    let coefficient_sum = blocks.iter().map(|b| b.c.modulus()).sum();
    Ok(BlockDecomposition {
        blocks,
        p_conj,
        s_conj,
        alpha_conj: sys.alpha_conj(),
        block_norms,
        coefficient_sum,
    })
}

impl<T: Scalar> BlockDecomposition<T> {
    pub fn blocks(&self) -> &[Block<T>] {
        &self.blocks
    }

    pub fn block_norms(&self) -> &[f64] {
        &self.block_norms
    }

    pub fn alpha_conj(&self) -> Exponent {
        self.alpha_conj
    }

    pub fn p_conj(&self) -> &[Exponent] {
        &self.p_conj
    }

    pub fn s_conj(&self) -> &[Exponent] {
        &self.s_conj
    }
}

/// `sum_j c_j St_{r_j}^{(alpha')}(f_j)` on `grid`.
pub fn synthesize<T: Scalar>(dec: &BlockDecomposition<T>, grid: &Grid) -> Result<GridFunction<T>> {
    let mut acc = GridFunction::<T>::zeros(grid);
    for b in &dec.blocks {
        let st = st_dilation(&b.f, b.r, dec.alpha_conj)?;
        let on_grid = resample_exact(&st, grid)?;
        acc = acc.zip_map(&on_grid, |a, x| a + x * b.c)?;
    }
    Ok(acc)
}

/// `sum |c_j|`, an upper bound for the predual norm of the synthesized function.
pub fn h_norm_upper_bound<T: Scalar>(dec: &BlockDecomposition<T>) -> f64 {
    dec.coefficient_sum
}

/// `int f g` by the midpoint rule (bilinear, no conjugation).
pub fn pairing<T: Scalar>(f: &GridFunction<T>, g: &GridFunction<T>) -> Result<T> {
    if f.grid() != g.grid() {
        return Err(Error::GridMismatch);
    }
    let mut acc = T::default();
    for (a, b) in f.values().iter().zip(g.values()) {
        acc += *a * *b;
    }
    Ok(acc * f.grid().cell_volume())
}

/// Best single-block bound `min_r r^{n/alpha' - sum 1/p'_i} r||f||_{p',s'}` over the sweep.
///
/// Returns `(bound, r)`.
pub fn single_block_bound<T: Scalar>(
    f: &GridFunction<T>,
    sys: &ExponentSystem,
    sweep: &RadiusSweep,
) -> Result<(f64, f64)> {
    let n = f.grid().dim() as f64;
    let pc = sys.p_conj();
    let sc = sys.s_conj();
    let e = n * sys.alpha_conj().inv() - sum_inv(&pc);
    let mut best = (f64::INFINITY, sweep.radii()[0]);
    for &r in sweep.radii() {
        let v = r.powf(e) * discrete_amalgam_norm(f, &pc, &sc, r)?;
        if v < best.0 {
            best = (v, r);
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualityReport {
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

/// `|int f g| <= ||g||_{p,s,alpha} sum |c_j|` for `f` synthesized from `dec`.
pub fn duality_check(
    g: &GridFunction<f64>,
    dec: &BlockDecomposition<f64>,
    sys: &ExponentSystem,
    sweep: &RadiusSweep,
) -> Result<DualityReport> {
    if sys.status() == GateStatus::Forced {
        return Err(Error::Precondition("duality needs an admissible system".into()));
    }
    let f = synthesize(dec, g.grid())?;
    let lhs = pairing(&f, g)?.abs();
    let rhs = discrete_alpha_norm(g, sys, sweep)?.value * h_norm_upper_bound(dec);
    Ok(DualityReport {
        lhs,
        rhs,
        pass: lhs <= rhs * (1.0 + 1e-9),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharacteristicRecord {
    pub r0: f64,
    pub alpha_norm: f64,
    /// `alpha_norm / r0^{n/alpha}`
    pub alpha_ratio: f64,
    pub h_bound: f64,
    /// `h_bound / r0^{n/alpha'}`
    pub h_ratio: f64,
}

/// Norms of `chi_{B(0,r0)}`: the ball alpha-norm on `grid`, and the predual bound
/// of the single block `r0^{n/alpha'} ||chi_B(0,1)|| St_{r0}(chi_B(0,1) / ||chi_B(0,1)||)`.
pub fn characteristic_norm_bounds(
    r0s: &[f64],
    sys: &ExponentSystem,
    sweep: &RadiusSweep,
    grid: &Grid,
) -> Result<Vec<CharacteristicRecord>> {
    let n = grid.dim();
    let nf = n as f64;
    r0s.iter()
        .map(|&r0| {
            dyadic_exponent(r0)?;
            let chi = sample(
                &FieldSpec::IndicatorBall {
                    center: vec![0.0; n],
                    radius: r0,
                },
                grid,
            )?;
            let alpha_norm = alpha_amalgam_norm(&chi, sys, sweep)?.value;
            let fine = grid.scaled(1.0 / r0);
            let unit = sample(
                &FieldSpec::IndicatorBall {
                    center: vec![0.0; n],
                    radius: 1.0,
                },
                &fine,
            )?;
            let nrm = discrete_amalgam_norm(&unit, &sys.p_conj(), &sys.s_conj(), 1.0)?;
            let c = r0.powf(nf * sys.alpha_conj().inv()) * nrm;
            let dec = make_block_decomposition(
                vec![Block {
                    c,
                    r: r0,
                    f: unit.scale(1.0 / nrm),
                }],
                sys,
            )?;
            let back = synthesize(&dec, grid)?;
            let err = back
                .values()
                .iter()
                .zip(chi.values())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            if err > 1e-12 {
                return Err(Error::Precondition(format!("block synthesis off by {err}")));
            }
            let h_bound = h_norm_upper_bound(&dec);
            Ok(CharacteristicRecord {
                r0,
                alpha_norm,
                alpha_ratio: alpha_norm / r0.powf(nf * sys.alpha().inv()),
                h_bound,
                h_ratio: h_bound / r0.powf(nf * sys.alpha_conj().inv()),
            })
        })
        .collect()
}

/// Serialized decomposition: `{"alpha_prime": .., "blocks": [{"c", "r", "field"}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionDoc {
    pub alpha_prime: Exponent,
    pub blocks: Vec<BlockDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockDoc {
    pub c: f64,
    pub r: f64,
    pub field: FieldSpec,
}

impl DecompositionDoc {
    /// Sample block `j` on `grid / r_j`, so that its dilation lands on `grid`.
    pub fn build(&self, grid: &Grid, sys: &ExponentSystem) -> Result<BlockDecomposition<f64>> {
        let ap = sys.alpha_conj();
        let same = (ap.inv() - self.alpha_prime.inv()).abs() <= 1e-12;
        if !same {
            return Err(Error::Config(format!(
                "alpha_prime {} does not match the system ({})",
                self.alpha_prime, ap
            )));
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                dyadic_exponent(b.r)?;
                Ok(Block {
                    c: b.c,
                    r: b.r,
                    f: sample(&b.field, &grid.scaled(1.0 / b.r))?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        make_block_decomposition(blocks, sys)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

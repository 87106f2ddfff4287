//! Lower-bound probe for the commutator: the mean oscillation of `b` on a
//! ball is bounded through a Fourier expansion of `|u|^{n-gamma}` on a
//! far-away ball by operator norms of `[b, I_gamma]` on modulated indicators.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::amalgam::{discrete_alpha_norm, FractionalSystem, RadiusSweep};
use crate::error::{Error, Result};
use crate::grid::{sample_complex, window_mask, FieldSpec, GridFunction, WindowSpec};
use crate::operators::{commutator, RieszParams};
use crate::predual::single_block_bound;
use crate::scalar::compensated_sum;

/// Half-width where the cutoff is 1, and where it vanishes.
const FLAT: f64 = 2.0;
const EDGE: f64 = 3.5;
/// Trapezoid points per axis for the coefficients.
const NODES: usize = 512;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeSetup {
    pub x0: Vec<f64>,
    pub t: f64,
    pub z0: Vec<f64>,
    /// Fourier cutoff `M` on `|m|_inf`.
    pub cutoff: usize,
    /// Period of the expansion; at least `2 * EDGE`.
    pub period: f64,
}

impl ProbeSetup {
    pub fn new(x0: Vec<f64>, t: f64, cutoff: usize) -> Self {
        let mut z0 = vec![0.0; x0.len()];
        z0[0] = 4.0;
        ProbeSetup {
            x0,
            t,
            z0,
            cutoff,
            period: 8.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    /// `(1/|B|) int_B |b - b_{B_z0}|`
    pub oscillation: f64,
    /// The same through the truncated series.
    pub series_oscillation: f64,
    pub bound: f64,
    /// `sum_{|m| <= M} |a_m|`
    pub coefficient_sum: f64,
    /// Partial sums for cutoffs `1..=4M`.
    pub partial_sums: Vec<f64>,
    /// Estimated `sum_{|m| > M} |a_m|` relative to `coefficient_sum`.
    pub tail: f64,
    pub pass: bool,
}

fn smooth_step(x: f64) -> f64 {
    let phi = |v: f64| if v > 0.0 { (-1.0 / v).exp() } else { 0.0 };
    let a = phi(x);
    let b = phi(1.0 - x);
    if a + b == 0.0 {
        0.0
    } else {
        a / (a + b)
    }
}

fn cutoff(v: f64) -> f64 {
    smooth_step((EDGE - v.abs()) / (EDGE - FLAT))
}

/// Coefficients `a_m`, `|m|_inf <= mmax`, of the periodic function equal to
/// `|u|^{n - gamma}` on `B(-z0, 2)`, smoothly cut off inside the period cell
/// centered at `-z0`. Returned in lexicographic order of `m`, axis 0 fastest.
pub fn fourier_coefficients(gamma: f64, z0: &[f64], period: f64, mmax: usize) -> Result<Vec<(Vec<i64>, Complex64)>> {
    let n = z0.len();
    if period < 2.0 * EDGE {
        return Err(Error::InvalidParameter(format!("period {period} below {}", 2.0 * EDGE)));
    }
    if z0.iter().map(|v| v.abs()).fold(0.0, f64::max) <= EDGE {
        return Err(Error::InvalidParameter("the cutoff cell must avoid the origin".into()));
    }
    let k = NODES;
    let du = period / k as f64;
    let axis: Vec<f64> = (0..k).map(|j| -period / 2.0 + j as f64 * du).collect();
    let total = k.pow(n as u32);
    // samples of g on the periodic lattice
    let mut gs = Vec::with_capacity(total);
    for idx in 0..total {
        let mut rem = idx;
        let mut w = 1.0;
        let mut r2 = 0.0;
        let mut v = [0.0; 3];
        for a in 0..n {
            let loc = axis[rem % k];
            rem /= k;
            w *= cutoff(loc);
            let u = loc - z0[a];
            v[a] = loc;
            r2 += u * u;
        }
        gs.push((
            v,
            if w == 0.0 {
                0.0
            } else {
                w * r2.sqrt().powf(n as f64 - gamma)
            },
        ));
    }
    let side = 2 * mmax + 1;
    let count = side.pow(n as u32);
    let norm = (k as f64).powi(n as i32);
    let mut out = Vec::with_capacity(count);
    for c in 0..count {
        let mut rem = c;
        let m: Vec<i64> = (0..n)
            .map(|_| {
                let d = (rem % side) as i64 - mmax as i64;
                rem /= side;
                d
            })
            .collect();
        // phase relative to the cell center -z0
        let w = 2.0 * std::f64::consts::PI / period;
        let (mut re, mut im) = (0.0, 0.0);
        for (v, g) in &gs {
            if *g == 0.0 {
                continue;
            }
            let ph: f64 = (0..n).map(|a| -w * m[a] as f64 * (v[a] - z0[a])).sum();
            re += g * ph.cos();
            im += g * ph.sin();
        }
        out.push((m, Complex64::new(re / norm, im / norm)));
    }
    Ok(out)
}

fn shell_sums(coef: &[(Vec<i64>, Complex64)], mmax: usize) -> Vec<f64> {
    let mut s = vec![0.0; mmax + 1];
    for (m, a) in coef {
        let k = m.iter().map(|v| v.unsigned_abs() as usize).max().unwrap_or(0);
        s[k] += a.norm();
    }
    s
}

/// Run the probe on `B(x0, t)` against `B(x0 + z0 t, t)`.
pub fn commutator_lower_probe(
    b: &GridFunction<f64>,
    sys: &FractionalSystem,
    setup: &ProbeSetup,
    sweep: &RadiusSweep,
) -> Result<ProbeReport> {
    let grid = b.grid();
    let n = grid.dim();
    if setup.x0.len() != n || setup.z0.len() != n {
        return Err(Error::GridMismatch);
    }
    if setup.cutoff == 0 {
        return Err(Error::InvalidParameter("cutoff must be at least 1".into()));
    }
    let zn = setup.z0.iter().map(|v| v * v).sum::<f64>().sqrt();
    if zn < 2.0 {
        return Err(Error::Precondition("0 lies in B(z0, 2)".into()));
    }
    let gamma = sys.gamma;
    let params = RieszParams::new(gamma, n)?;
    let t = setup.t;
    let m = setup.cutoff;

    let coef = fourier_coefficients(gamma, &setup.z0, setup.period, 4 * m)?;
    let shells = shell_sums(&coef, 4 * m);
    let mut partial_sums = Vec::with_capacity(4 * m);
    let mut acc = shells[0];
    for s in &shells[1..] {
        acc += s;
        partial_sums.push(acc);
    }
    let coefficient_sum: f64 = shells[..=m].iter().sum();
    let known: f64 = shells[m + 1..].iter().sum();
    // geometric extrapolation of the shell sums beyond 4M
    let (k0, k1) = (2 * m + 1, 4 * m);
    let rho = (shells[k1] / shells[k0]).powf(1.0 / (k1 - k0) as f64);
    let rest = if rho < 1.0 {
        shells[k1] * rho / (1.0 - rho)
    } else {
        f64::INFINITY
    };
    let tail = (known + rest) / coefficient_sum;

    let ball = WindowSpec::ball(&setup.x0, t)?;
    let zc: Vec<f64> = setup.x0.iter().zip(&setup.z0).map(|(x, z)| x + z * t).collect();
    let ballz = WindowSpec::ball(&zc, t)?;
    let mb = window_mask(&ball, grid)?;
    let mz = window_mask(&ballz, grid)?;
    let vol = grid.cell_volume();
    let nb = compensated_sum(mb.values().iter().cloned());
    let nz = compensated_sum(mz.values().iter().cloned());
    if nb == 0.0 || nz == 0.0 {
        return Err(Error::EmptyWindow);
    }
    let (m_b, m_z) = (nb * vol, nz * vol);
    let mean_z = compensated_sum(b.values().iter().zip(mz.values()).map(|(v, w)| v * w)) / nz;
    let dev: Vec<f64> = b
        .values()
        .iter()
        .zip(mb.values())
        .map(|(v, w)| w * (v - mean_z))
        .collect();
    let oscillation = compensated_sum(dev.iter().map(|d| d.abs())) * vol / m_b;

    let h_ball = single_block_bound(&mb, &sys.target, sweep)?.0;
    let cst = params.constant();
    let pre = t.powf(n as f64 - gamma) / (cst * m_b * m_z);
    let mut series = Complex64::new(0.0, 0.0);
    let mut norm_sum = 0.0;
    for (mv, a) in coef
        .iter()
        .filter(|(mv, _)| mv.iter().all(|v| v.unsigned_abs() as usize <= m))
    {
        if a.norm() == 0.0 {
            continue;
        }
        let freq: Vec<f64> = mv
            .iter()
            .map(|&v| std::f64::consts::PI * v as f64 / setup.period)
            .collect();
        // conj(e_m) chi_{B_z0}, e_m(x) = exp(2 pi i m.x / (L t))
        let field = FieldSpec::CosineModulatedIndicator {
            m: freq,
            t,
            center: zc.clone(),
            radius: t,
        };
        let g = sample_complex(&field, grid)?;
        let c = commutator(b, &g, params)?;
        norm_sum += a.norm() * discrete_alpha_norm(&c, &sys.target, sweep)?.value;
        let mut pair = Complex64::new(0.0, 0.0);
        for i in 0..grid.len() {
            if dev[i] == 0.0 {
                continue;
            }
            let x = grid.point(i);
            let ph: f64 = (0..n)
                .map(|ax| 2.0 * std::f64::consts::PI * mv[ax] as f64 * x[ax] / (setup.period * t))
                .sum();
            pair += Complex64::from_polar(dev[i].signum(), ph) * c.values()[i];
        }
        series += *a * pair * vol;
    }
    let series_oscillation = (pre * series).re.abs();
    let bound = pre * h_ball * norm_sum;
    Ok(ProbeReport {
        oscillation,
        series_oscillation,
        bound,
        coefficient_sum,
        partial_sums,
        tail,
        pass: oscillation <= bound * (1.0 + tail) || oscillation == 0.0,
    })
}

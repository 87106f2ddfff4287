use std::f64::consts::PI;

use statrs::function::gamma::gamma as gamma_fn;

use super::quadrature::integrate;
use crate::error::{Error, Result};

/// `(1/Gamma(gamma/2)) int_0^inf (4 pi t)^{-n/2} e^{-d^2/4t} t^{gamma/2 - 1} dt`.
///
/// With `u = d^2/4t` this is `(4pi)^{-n/2} (d/2)^{gamma-n} Gamma((n-gamma)/2) / Gamma(gamma/2)`;
/// the remaining Gamma integral is evaluated by adaptive quadrature.
pub fn heat_kernel_reconstruction(gamma: f64, n: usize, d: f64) -> Result<f64> {
    if !(d > 0.0) || !d.is_finite() {
        return Err(Error::InvalidParameter(format!("separation {d} must be positive")));
    }
    if !(gamma > 0.0 && gamma < n as f64) {
        return Err(Error::Gamma { gamma, n });
    }
    let nf = n as f64;
    let a = (nf - gamma) / 2.0;
    // int_0^inf u^{a-1} e^{-u} du = (1/a) int_0^inf exp(-v^{1/a}) dv with v = u^a; cut at u = 50
    let upper = 50f64.powf(a);
    let g = integrate(|v: f64| (-v.powf(1.0 / a)).exp(), 0.0, upper, 0.0, 1e-13)? / a;
    Ok((4.0 * PI).powf(-nf / 2.0) * (d / 2.0).powf(gamma - nf) * g / gamma_fn(gamma / 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::riesz_constant;

    #[test]
    fn matches_riesz_kernel() {
        for (n, g, d, want) in [
            (1, 0.25, 1.0, 0.14927036108294766127),
            (1, 0.25, 2.0, 0.088756687729433319284),
            (1, 0.5, 1.0, 0.39894228040143267794),
            (1, 0.5, 2.0, 0.28209479177387814347),
            (2, 1.0, 1.5, 0.10610329539459689051),
        ] {
            let v = heat_kernel_reconstruction(g, n, d).unwrap();
            assert!((v - want).abs() < 1e-6 * want, "n={n} g={g} d={d}: {v}");
            let c = riesz_constant(g, n).unwrap() * d.powf(g - n as f64);
            assert!((v - c).abs() < 1e-6 * c);
        }
        assert!(heat_kernel_reconstruction(0.5, 1, 0.0).is_err());
    }

    #[test]
    fn doubling_ratio() {
        for n in 1..=3 {
            let g = 0.4 * n as f64;
            let r = heat_kernel_reconstruction(g, n, 2.0).unwrap() / heat_kernel_reconstruction(g, n, 1.0).unwrap();
            assert!((r - 2f64.powf(g - n as f64)).abs() < 1e-6);
        }
    }
}

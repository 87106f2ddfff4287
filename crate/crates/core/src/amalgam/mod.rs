//! Amalgam norms over balls and lattice cubes, the index gate, and the
//! equivalence and embedding measurements built on them.

mod ball;
mod cube;
mod embedding;
mod equivalence;
mod sweep;
mod system;

pub use ball::{alpha_amalgam_norm, ball_window_norms, global_amalgam_norm, SupValue};
pub use cube::{cube_lattice, discrete_alpha_norm, discrete_amalgam_norm};
pub use embedding::{embedding_check, unit_window_radius, EmbeddingReport};
pub use equivalence::{equivalence_ratio, EquivalenceMode, RatioBand};
pub use sweep::{RadiusSweep, WindowFamily};
pub use system::{validate_exponents, ExponentSystem, FractionalSystem, GateStatus, GATE_SLACK};

use statrs::function::gamma::gamma;

/// Volume of the unit ball in `R^n`.
pub fn unit_ball_volume(n: usize) -> f64 {
    match n {
        1 => 2.0,
        2 => std::f64::consts::PI,
        3 => 4.0 * std::f64::consts::PI / 3.0,
        _ => std::f64::consts::PI.powf(n as f64 / 2.0) / gamma(n as f64 / 2.0 + 1.0),
    }
}

//! Numerical toolkit for mixed-norm amalgam spaces: windowed norms, the
//! index gate, fractional integrals and commutators with BMO symbols,
//! block decompositions of the predual, and a suite harness that checks
//! the inequalities on grids.

pub mod amalgam;
pub mod bmo;
pub mod error;
pub mod grid;
pub mod harness;
pub mod norms;
pub mod operators;
pub mod predual;
pub mod scalar;

pub use error::{Error, GateViolation, Result};
pub use grid::{make_grid, sample, FieldSpec, Grid, GridFunction};
pub use norms::Exponent;
pub use scalar::Scalar;

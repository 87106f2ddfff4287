//! Riesz potentials, fractional maximal functions, commutators, dilations
//! and the heat-kernel form of the Riesz kernel.

mod dilation;
mod heat;
mod maximal;
pub mod quadrature;
mod riesz;

pub use dilation::{dilate, dyadic_exponent, resample_exact, st_dilation, DilationKind, DilationParams};
pub use heat::heat_kernel_reconstruction;
pub use maximal::{centered_bound_constant, fractional_maximal, fractional_maximal_centered};
pub use riesz::{commutator, fractional_integral, riesz_constant, RieszKernel, RieszParams};

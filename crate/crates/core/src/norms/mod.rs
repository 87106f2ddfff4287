//! Mixed Lebesgue and sequence norms, exponent conjugation, windowed Hölder.

mod exponent;
mod holder;
mod lattice;
mod lebesgue;

pub use exponent::{conjugate, conjugate_all, exponents, mean_inv, sum_inv, Exponent};
pub use holder::{windowed_holder_bound, HolderReport};
pub use lattice::{mixed_sequence_norm, LatticeArray};
pub(crate) use lebesgue::reduce_dense;
pub use lebesgue::{mixed_lebesgue_norm, product_l1};

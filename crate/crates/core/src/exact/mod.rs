//! Exact arithmetic over `Z[1/√2]`: dyadic rationals, integer matrices with a
//! global `(√2)^-k` scale, dyadic matrices, and integer elimination.

mod dyadic;
mod kernel;
mod rational;
mod scaled;

pub(crate) use dyadic::power_of_two_exponent;
pub use dyadic::Dyadic;
pub use kernel::{int_rank, kernel_basis, rank};
pub use rational::RationalMatrix;
pub use scaled::ScaledIntMatrix;

use crate::error::Result;

/// Exact product of two scaled integer matrices.
pub fn mat_mul(a: &ScaledIntMatrix, b: &ScaledIntMatrix) -> Result<ScaledIntMatrix> {
    a.mat_mul(b)
}

/// Exact `tr(a·b)`.
pub fn trace_product(a: &RationalMatrix, b: &RationalMatrix) -> Result<Dyadic> {
    a.trace_product(b)
}

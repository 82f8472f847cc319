//! Exact scalar arithmetic and the linear / integer algebra the rest of the
//! crate consumes.
//!
//! Two ground fields are provided: arbitrary-precision rationals ([`Rat`])
//! and prime fields ([`Fp`]). Matrices are sparse maps with a canonical
//! row-major entry order, so all computations are deterministic.

mod field;
mod matrix;
mod smith;

pub use field::{Field, Fp, Rat};

/// Primality test for small moduli.
pub fn is_prime_u64(n: u64) -> bool {
    field::is_prime(n)
}
pub use matrix::{ExactMatrix, Subspace};
pub use smith::{smith_normal_form, CokernelSummary, IntMatrix, SmithNormalForm};

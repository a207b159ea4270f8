//! Normal-ordered polynomial algebra over abstract chiral mode generators.
//!
//! Generators `a_n` carry an integer index; polynomials have exact
//! [`HbarSeries`](crate::scalars::HbarSeries) coefficients. The module
//! provides the commutative classical product, the chiral Poisson bracket,
//! star products defined by Wick pairings against a
//! [`ContractionKernel`], commutators, the re-ordering shift for quadratics,
//! and the truncated stress-tensor mode generators together with the
//! commutator split used by the Virasoro suites.

mod contraction;
mod monomial;
mod polynomial;
mod virasoro;

pub use contraction::ContractionKernel;
pub use monomial::ModeMonomial;
pub use polynomial::ModePolynomial;
pub use virasoro::{
    build_b, expected_central_covariant, expected_central_vacuum, virasoro_commutator,
    virasoro_commutator_covariant, CommutatorSplit,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    /// The Wick expansion needs more ħ headroom than the coefficients carry.
    #[error("pairing order {needed} exceeds hbar truncation order {available}")]
    TruncationOverflow { needed: usize, available: usize },
    /// The re-ordering shift is only derived for polynomials of degree <= 2.
    #[error("operation requires degree <= {max}, got degree {got}")]
    DegreeTooHigh { max: usize, got: usize },
    /// A mode-sum truncation window too small to contain the requested index.
    #[error("truncation K = {k_trunc} is smaller than |n| = {n_abs}")]
    InvalidTruncation { k_trunc: i64, n_abs: i64 },
}

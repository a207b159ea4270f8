//! Exact coefficient arithmetic: complex rationals, truncated formal power
//! series in ħ, Bernoulli numbers, and zeta values at non-positive integers.

mod bernoulli;
mod rational;
mod series;

pub use bernoulli::{bernoulli, bernoulli_row, zeta_neg};
pub use rational::GaussianRational;
pub use series::{series_mul, HbarSeries};

/// Default truncation order for ħ-series. All headline results live at ħ² or
/// below; the extra headroom is for vertex-operator expansions.
pub const DEFAULT_HBAR_ORDER: usize = 4;

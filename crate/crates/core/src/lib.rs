//! Exact-arithmetic deformation quantization for the chiral massless scalar
//! field on 2D Minkowski space and the Einstein cylinder.
//!
//! The crate is organised in layers:
//!
//! - [`scalars`]: complex rationals, truncated formal power series in the
//!   deformation parameter, Bernoulli numbers and zeta values at non-positive
//!   integers. Everything here is exact; no floats.
//! - [`algebra`]: the normal-ordered polynomial algebra over abstract chiral
//!   mode generators, with the classical product, the chiral Poisson bracket,
//!   Wick-contraction star products, commutators, re-ordering shifts, and the
//!   truncated Virasoro generators.
//! - [`kernels`]: closed-form propagator kernels on Minkowski space and the
//!   cylinder, the image-sum construction, the vacuum two-point kernel with
//!   its mode-sum/closed-form pair, and the smooth vacuum-minus-singular
//!   diagonal difference.
//! - [`functionals`]: concrete functionals of band-limited field
//!   configurations on the circle, evaluated spectrally. These cross-check
//!   the exact algebra along an independent numeric route.
//! - [`conformal`]: circle diffeomorphisms with third-order jets, weighted
//!   pushforward/pullback, the Schwarzian derivative, and the stress-tensor
//!   anomaly checks.
//! - [`suites`]: named verification suites producing machine-readable
//!   pass/fail reports.

pub mod algebra;
pub mod conformal;
pub mod functionals;
pub mod kernels;
pub mod scalars;
pub mod suites;

pub use scalars::{GaussianRational, HbarSeries};

//! Conformal-covariance toolkit: circle diffeomorphisms with third-order jet
//! arithmetic, weighted pushforward/pullback with duality checks, the
//! Schwarzian derivative, transformed-parametrix diagonal limits, the
//! stress-tensor anomaly, and primary-field covariance checks.

mod anomaly;
mod diffeo;
mod jet;
mod maps;

pub use anomaly::{
    diag_limit_extrapolated, diag_limit_symmetric, hadamard_diag_limit, primary_check_dphi,
    stress_anomaly, TorusField,
};
pub use diffeo::CircleDiffeo;
pub use jet::Jet3;
pub use maps::{
    weighted_pullback_at, weighted_pushforward_at, FrameMorphism, ManifoldTag, TorusMap, WeightPair,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConformalError {
    #[error("map is not orientation-preserving: derivative {deriv} at u = {at}")]
    NotOrientationPreserving { at: f64, deriv: f64 },
    #[error("derivative vanishes at u = {0}; map not invertible there")]
    NonInvertiblePoint(f64),
    #[error("jet has vanishing first derivative; Schwarzian undefined")]
    DegenerateJet,
    #[error("diagonal separation must be nonzero; use the limit contract")]
    ZeroSeparation,
}

/// Schwarzian derivative `S(f) = f'''/f' - (3/2)(f''/f')²` of any map given
/// by its third-order jet at a point.
pub fn schwarzian_of_jet(jet: &Jet3) -> Result<f64, ConformalError> {
    if jet.d1 == 0.0 {
        return Err(ConformalError::DegenerateJet);
    }
    let r2 = jet.d2 / jet.d1;
    Ok(jet.d3 / jet.d1 - 1.5 * r2 * r2)
}

/// Schwarzian of a closed-form map in jet arithmetic (ℝ-map mode: the map
/// need not be a circle diffeomorphism).
pub fn schwarzian_fn(map: impl Fn(Jet3) -> Jet3, u: f64) -> Result<f64, ConformalError> {
    let jet = map(Jet3::variable(u));
    schwarzian_of_jet(&jet).map_err(|_| ConformalError::NonInvertiblePoint(u))
}

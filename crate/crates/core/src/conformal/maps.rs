use super::CircleDiffeo;

/// Conformal weights `(h, h̃)` of a field.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightPair {
    pub h: f64,
    pub h_tilde: f64,
}

impl WeightPair {
    pub fn new(h: f64, h_tilde: f64) -> Self {
        WeightPair { h, h_tilde }
    }

    /// Scaling dimension `Δ = h + h̃`.
    pub fn scaling_dimension(&self) -> f64 {
        self.h + self.h_tilde
    }

    /// Spin `s = h - h̃`.
    pub fn spin(&self) -> f64 {
        self.h - self.h_tilde
    }
}

/// Split conformal map of the torus/plane in null coordinates:
/// `χ(u, v) = (μ(u), ν(v))` with conformal factor `Ω² = μ'(u) ν'(v)`.
#[derive(Clone, Debug)]
pub struct TorusMap {
    pub mu: CircleDiffeo,
    pub nu: CircleDiffeo,
}

impl TorusMap {
    pub fn new(mu: CircleDiffeo, nu: CircleDiffeo) -> Self {
        TorusMap { mu, nu }
    }

    pub fn identity() -> Self {
        TorusMap {
            mu: CircleDiffeo::identity(),
            nu: CircleDiffeo::identity(),
        }
    }

    pub fn apply(&self, u: f64, v: f64) -> (f64, f64) {
        (self.mu.eval(u), self.nu.eval(v))
    }

    pub fn invert(&self, u: f64, v: f64) -> (f64, f64) {
        (self.mu.inverse(u), self.nu.inverse(v))
    }

    /// `Ω(x)` at `x = (u, v)` (positive square root).
    pub fn conformal_factor(&self, u: f64, v: f64) -> f64 {
        (self.mu.derivative(u) * self.nu.derivative(v)).sqrt()
    }

    /// Pointwise composition `self ∘ other`.
    pub fn compose_apply(&self, other: &TorusMap, u: f64, v: f64) -> (f64, f64) {
        let (a, b) = other.apply(u, v);
        self.apply(a, b)
    }
}

/// Weighted pushforward `χ_*(Ω^{-Δ} f)` evaluated at a target point `y`.
/// `f` is any sampled test function on the source.
pub fn weighted_pushforward_at(
    f: &impl Fn(f64, f64) -> f64,
    map: &TorusMap,
    delta: f64,
    y: (f64, f64),
) -> f64 {
    let (u, v) = map.invert(y.0, y.1);
    map.conformal_factor(u, v).powf(-delta) * f(u, v)
}

/// Weighted pullback `Ω^{Δ} χ^* φ` evaluated at a source point `x`.
pub fn weighted_pullback_at(
    phi: &impl Fn(f64, f64) -> f64,
    map: &TorusMap,
    delta: f64,
    x: (f64, f64),
) -> f64 {
    let (a, b) = map.apply(x.0, x.1);
    map.conformal_factor(x.0, x.1).powf(delta) * phi(a, b)
}

/// Tag for the two background spacetimes in play.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ManifoldTag {
    Minkowski2,
    Cylinder,
}

/// A frame-compatible conformal morphism, recorded as plain data: manifold
/// tags, the split map pair, and constant frame rescalings. The left/right
/// frame factors are `ω_ℓ(u) = c_ℓ μ'(u)` and `ω_r(v) = c_r ν'(v)`.
#[derive(Clone, Debug)]
pub struct FrameMorphism {
    pub source: ManifoldTag,
    pub target: ManifoldTag,
    pub map: TorusMap,
    pub left_rescale: f64,
    pub right_rescale: f64,
}

impl FrameMorphism {
    pub fn conformal(source: ManifoldTag, target: ManifoldTag, map: TorusMap) -> Self {
        FrameMorphism {
            source,
            target,
            map,
            left_rescale: 1.0,
            right_rescale: 1.0,
        }
    }

    /// Boost morphism `b_α`: frames rescale by `(1/α, α)`, underlying map is
    /// the identity.
    pub fn boost(tag: ManifoldTag, alpha: f64) -> Self {
        FrameMorphism {
            source: tag,
            target: tag,
            map: TorusMap::identity(),
            left_rescale: 1.0 / alpha,
            right_rescale: alpha,
        }
    }

    /// Dilation morphism `d_α`: frames rescale by `(α, α)`.
    pub fn dilation(tag: ManifoldTag, alpha: f64) -> Self {
        FrameMorphism {
            source: tag,
            target: tag,
            map: TorusMap::identity(),
            left_rescale: alpha,
            right_rescale: alpha,
        }
    }

    pub fn omega_left(&self, u: f64) -> f64 {
        self.left_rescale * self.map.mu.derivative(u)
    }

    pub fn omega_right(&self, v: f64) -> f64 {
        self.right_rescale * self.map.nu.derivative(v)
    }

    /// Frame-compatibility predicate: both frame factors must be smooth and
    /// everywhere positive. The diffeomorphism factors are positive by
    /// construction, so only the constant rescalings can fail.
    pub fn is_admissible(&self) -> bool {
        self.left_rescale > 0.0 && self.right_rescale > 0.0
    }

    /// Scaling dimension seen by a rigid dilation: `Ω = √(ω_ℓ ω_r)`.
    pub fn rigid_conformal_factor(&self) -> f64 {
        (self.left_rescale * self.right_rescale).sqrt()
    }
}

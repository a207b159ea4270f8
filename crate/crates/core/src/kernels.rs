//! Closed-form integral kernels: Minkowski and cylinder Pauli-Jordan
//! functions, the method-of-images partial sums, the cylinder vacuum
//! two-point kernel for the chiral derivative field (mode sum and closed
//! form), the singular parametrix, and the smooth diagonal difference
//! between them.
//!
//! Conventions pinned here and respected everywhere else:
//! - `sgn(0) = 0`, and floors at exact multiples of 2π are the mathematical
//!   floor; both only matter on measure-zero sets.
//! - The chiral derivative kernel is `(1/4π) Σ_{k>=1} k e^{-ik(u-u')}`, and
//!   the ε-regularisation is an explicit parameter so convergence-rate tests
//!   are first class.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use thiserror::Error;

use std::f64::consts::PI;

pub const TWO_PI: f64 = 2.0 * PI;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KernelError {
    #[error("chiral separation {0} lies outside the chart (|u_sep| < 2π required)")]
    OutsideChart(f64),
    #[error("length scale must be positive, got {0}")]
    NonPositiveScale(f64),
}

/// A point in null coordinates `u = t - x`, `v = t + x`.
///
/// Cylinder points are equivalence classes under
/// `(u, v) ~ (u + 2π, v - 2π)`; [`NullPoint::canonical_cyl`] picks the
/// representative with `u ∈ [0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NullPoint {
    pub u: f64,
    pub v: f64,
}

impl NullPoint {
    pub fn new(u: f64, v: f64) -> Self {
        NullPoint { u, v }
    }

    /// The deck transformation applied `k` times.
    pub fn deck_shift(&self, k: i64) -> Self {
        NullPoint {
            u: self.u + TWO_PI * k as f64,
            v: self.v - TWO_PI * k as f64,
        }
    }

    /// Canonical cylinder representative with `u ∈ [0, 2π)`.
    pub fn canonical_cyl(&self) -> Self {
        let k = (self.u / TWO_PI).floor();
        NullPoint {
            u: self.u - TWO_PI * k,
            v: self.v + TWO_PI * k,
        }
    }
}

fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

// Heaviside function with θ(0) = 1/2, matching sgn(0) = 0 through
// sgn(x) = θ(x) - θ(-x).
fn theta(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        0.0
    } else {
        0.5
    }
}

/// Minkowski retarded propagator `E^R(x; y) = -(1/2)θ(u-u')θ(v-v')`,
/// supported in the causal future of `y`.
pub fn eval_e_retarded_mink(x: NullPoint, y: NullPoint) -> f64 {
    -0.5 * theta(x.u - y.u) * theta(x.v - y.v)
}

/// Minkowski advanced propagator `E^A(x; y) = -(1/2)θ(u'-u)θ(v'-v)`,
/// supported in the causal past of `y`.
pub fn eval_e_advanced_mink(x: NullPoint, y: NullPoint) -> f64 {
    -0.5 * theta(y.u - x.u) * theta(y.v - x.v)
}

/// Minkowski Pauli-Jordan kernel
/// `E(x; y) = E^R - E^A = -(1/4)[sgn(u-u') + sgn(v-v')]`.
pub fn eval_e_mink(x: NullPoint, y: NullPoint) -> f64 {
    -0.25 * (sgn(x.u - y.u) + sgn(x.v - y.v))
}

/// Cylinder Pauli-Jordan kernel
/// `E_cyl(x; y) = -(1/2)(⌊(u-u')/2π⌋ + ⌊(v-v')/2π⌋ + 1)`.
pub fn eval_e_cyl(x: NullPoint, y: NullPoint) -> f64 {
    -0.5 * deck_count(x, y)
}

/// Cylinder retarded propagator: the image sum of the Minkowski retarded
/// kernel closes to `-(1/2)·max(0, F)` with
/// `F = ⌊Δu/2π⌋ + ⌊Δv/2π⌋ + 1` (the number of images whose causal future
/// contains `x`).
pub fn eval_e_retarded_cyl(x: NullPoint, y: NullPoint) -> f64 {
    -0.5 * deck_count(x, y).max(0.0)
}

/// Cylinder advanced propagator, `-(1/2)·max(0, -F)`.
pub fn eval_e_advanced_cyl(x: NullPoint, y: NullPoint) -> f64 {
    -0.5 * (-deck_count(x, y)).max(0.0)
}

fn deck_count(x: NullPoint, y: NullPoint) -> f64 {
    let fu = ((x.u - y.u) / TWO_PI).floor();
    let fv = ((x.v - y.v) / TWO_PI).floor();
    fu + fv + 1.0
}

/// Method-of-images partial sum
/// `Σ_{|k| <= N} E(u, v; u' + 2πk, v' - 2πk)`.
pub fn images_partial_sum(x: NullPoint, y: NullPoint, n: u32) -> f64 {
    let mut acc = 0.0;
    for k in -(n as i64)..=(n as i64) {
        acc += eval_e_mink(x, y.deck_shift(k));
    }
    acc
}

/// Method-of-images partial sum for the retarded propagator.
pub fn images_partial_sum_retarded(x: NullPoint, y: NullPoint, n: u32) -> f64 {
    let mut acc = 0.0;
    for k in -(n as i64)..=(n as i64) {
        acc += eval_e_retarded_mink(x, y.deck_shift(k));
    }
    acc
}

/// Number of images past which [`images_partial_sum`] is exactly stationary
/// and equal to [`eval_e_cyl`].
pub fn images_stabilization_bound(x: NullPoint, y: NullPoint) -> u32 {
    let reach = ((x.u - y.u).abs() + (x.v - y.v).abs()) / TWO_PI;
    reach.ceil() as u32 + 1
}

/// The state-independent singular kernel, parametrised by a length scale
/// `λ > 0`.
#[derive(Clone, Copy, Debug)]
pub struct ParametrixKernel {
    lambda: f64,
}

impl ParametrixKernel {
    pub fn new(lambda: f64) -> Result<Self, KernelError> {
        if lambda <= 0.0 {
            return Err(KernelError::NonPositiveScale(lambda));
        }
        Ok(ParametrixKernel { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// The undifferentiated singular kernel
    /// `-(1/4π) log((u-u')(v-v')/λ²)`.
    pub fn eval(&self, x: NullPoint, y: NullPoint) -> f64 {
        let du = x.u - y.u;
        let dv = x.v - y.v;
        -(du * dv / (self.lambda * self.lambda)).ln() / (4.0 * PI)
    }

    /// The chiral derivative of the singular kernel,
    /// `-(1/4π) (u-u')^{-2}`; independent of λ.
    pub fn chiral_derivative(&self, u: f64, uprime: f64) -> f64 {
        let du = u - uprime;
        -1.0 / (4.0 * PI * du * du)
    }
}

/// Mode-sum evaluation of the chiral vacuum kernel:
/// `(1/4π) Σ_{k=1..N} k e^{-ik(u-u')} e^{-kε}`.
pub fn eval_dw_cyl_mode_sum(u: f64, uprime: f64, eps: f64, n: u32) -> Complex64 {
    assert!(eps > 0.0, "regularisation parameter must be positive");
    let du = u - uprime;
    // Kahan-compensated accumulation: the sum reaches ~1/ε² while the
    // interesting part is O(1).
    let mut acc = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    for k in 1..=n {
        let kf = k as f64;
        // k e^{-ik du} e^{-k eps}
        let term = kf * (-kf * eps).exp() * Complex64::new(0.0, -kf * du).exp();
        let y = term - comp;
        let t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    acc / (4.0 * PI)
}

/// Closed-form evaluation of the same kernel:
/// `(1/4π) q/(1-q)²` with `q = e^{-i z_ε}`, `z_ε = u - u' - iε`.
pub fn eval_dw_cyl_closed(u: f64, uprime: f64, eps: f64) -> Complex64 {
    assert!(eps > 0.0, "regularisation parameter must be positive");
    let q = Complex64::new(-eps, -(u - uprime)).exp(); // e^{-eps - i du}
    let denom = (Complex64::new(1.0, 0.0) - q).powi(2);
    q / denom / (4.0 * PI)
}

/// Analytic bound on the geometric tail dropped by the mode sum:
/// `(1/4π) Σ_{k>N} k e^{-kε}`.
pub fn dw_tail_bound(eps: f64, n: u32) -> f64 {
    let r: f64 = (-eps).exp();
    let nf = n as f64;
    r.powf(nf + 1.0) * ((nf + 1.0) * (1.0 - r) + r) / ((1.0 - r) * (1.0 - r)) / (4.0 * PI)
}

/// Threshold below which the diagonal difference switches to its analytic
/// coincidence value; validated against a high-precision expansion (the next
/// correction is `-s²/(960π)`, which is below f64 cancellation noise here).
pub const DIAG_COINCIDENCE_THRESHOLD: f64 = 1e-4;

/// The smooth difference `w_cyl(s)` between the chiral vacuum kernel and the
/// singular parametrix at chiral separation `s`:
/// `Re[(1/4π) e^{is}/(1-e^{is})²] + 1/(4πs²)`, with the analytic limit
/// `-1/(48π)` at coincidence.
pub fn diag_difference(u_sep: f64) -> Result<f64, KernelError> {
    if u_sep.abs() >= TWO_PI || u_sep.is_nan() {
        return Err(KernelError::OutsideChart(u_sep));
    }
    if u_sep.abs() < DIAG_COINCIDENCE_THRESHOLD {
        return Ok(-1.0 / (48.0 * PI));
    }
    // e^{is}/(1-e^{is})² = -1/(4 sin²(s/2)), exactly real
    let vacuum = -1.0 / (4.0 * (0.5 * u_sep).sin().powi(2)) / (4.0 * PI);
    let sing = 1.0 / (4.0 * PI * u_sep * u_sep);
    Ok(vacuum + sing)
}

/// `Σ_{l=0}^{k} l(k-l) = (k³-k)/6`, exact.
pub fn squared_coeff(k: u64) -> BigRational {
    let k = BigInt::from(k);
    BigRational::new(&k * &k * &k - &k, BigInt::from(6))
}

/// The double-contraction scalar
/// `(1/2)·squared_coeff(n)·[n>0]·[n+m=0] = n(n²-1)/12 θ(n) δ_{n+m,0}`.
pub fn central_term_pairing(n: i64, m: i64, k_trunc: i64) -> BigRational {
    assert!(k_trunc >= n.abs(), "K must be at least |n|");
    if n <= 0 || n + m != 0 {
        return BigRational::from_integer(BigInt::from(0));
    }
    squared_coeff(n as u64) / BigRational::from_integer(BigInt::from(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(u: f64, v: f64) -> NullPoint {
        NullPoint::new(u, v)
    }

    #[test]
    fn mink_kernel_values() {
        let o = pt(0.0, 0.0);
        assert_eq!(eval_e_mink(pt(1.0, 1.0), o), -0.5);
        assert_eq!(eval_e_mink(pt(-1.0, 1.0), o), 0.0);
        assert_eq!(eval_e_mink(pt(0.0, 1.0), o), -0.25);
    }

    #[test]
    fn mink_antisymmetry() {
        let x = pt(0.3, -1.7);
        let y = pt(-2.2, 0.9);
        assert_eq!(eval_e_mink(x, y), -eval_e_mink(y, x));
    }

    #[test]
    fn cyl_kernel_values() {
        let o = pt(0.0, 0.0);
        assert_eq!(eval_e_cyl(pt(PI, PI), o), -0.5);
        assert_eq!(eval_e_cyl(pt(-PI, PI), o), 0.0);
        assert_eq!(eval_e_cyl(pt(3.0 * PI, PI), o), -1.0);
    }

    #[test]
    fn retarded_advanced_structure() {
        let o = pt(0.0, 0.0);
        // E = E^R - E^A on generic points, both spaces
        let samples = [
            pt(1.0, 2.0),
            pt(-1.5, 0.7),
            pt(8.0, 9.0),
            pt(-7.0, -0.3),
            pt(3.0, -9.5),
        ];
        for &x in &samples {
            assert_eq!(
                eval_e_mink(x, o),
                eval_e_retarded_mink(x, o) - eval_e_advanced_mink(x, o)
            );
            assert_eq!(
                eval_e_cyl(x, o),
                eval_e_retarded_cyl(x, o) - eval_e_advanced_cyl(x, o)
            );
            // the two propagators are mutually adjoint: E^R(x,y) = E^A(y,x)
            assert_eq!(eval_e_retarded_mink(x, o), eval_e_advanced_mink(o, x));
            assert_eq!(eval_e_retarded_cyl(x, o), eval_e_advanced_cyl(o, x));
        }
        // support: retarded vanishes off the causal future, advanced off the
        // causal past
        assert_eq!(eval_e_retarded_mink(pt(-1.0, 2.0), o), 0.0);
        assert_eq!(eval_e_retarded_mink(pt(-1.0, -2.0), o), 0.0);
        assert_eq!(eval_e_retarded_mink(pt(1.0, 2.0), o), -0.5);
        assert_eq!(eval_e_advanced_mink(pt(1.0, 2.0), o), 0.0);
        assert_eq!(eval_e_advanced_mink(pt(-1.0, -2.0), o), -0.5);
        // on the cylinder a forward ray wraps and picks up extra images
        assert_eq!(eval_e_retarded_cyl(pt(3.0 * PI, PI), o), -1.0);
        assert_eq!(eval_e_advanced_cyl(pt(3.0 * PI, PI), o), 0.0);
        assert_eq!(eval_e_retarded_cyl(pt(-PI, PI), o), 0.0);
    }

    #[test]
    fn retarded_image_sum_stabilizes() {
        let o = pt(0.1, -0.2);
        for &x in &[pt(3.0 * PI, PI), pt(1.0, 2.0), pt(-5.0, 9.0), pt(-8.0, -3.0)] {
            let n = images_stabilization_bound(x, o);
            assert_eq!(images_partial_sum_retarded(x, o, n), eval_e_retarded_cyl(x, o));
            assert_eq!(
                images_partial_sum_retarded(x, o, n + 3),
                eval_e_retarded_cyl(x, o)
            );
        }
    }

    #[test]
    fn image_sum_matches_cyl() {
        let o = pt(0.0, 0.0);
        assert_eq!(images_partial_sum(pt(PI, PI), o, 2), -0.5);
        assert_eq!(images_partial_sum(pt(3.0 * PI, PI), o, 2), -1.0);
        for n in 0..4 {
            assert_eq!(images_partial_sum(pt(-PI, PI), o, n), 0.0);
        }
    }

    #[test]
    fn dw_closed_form_at_pi() {
        // z = π gives e^{iπ}/(1-e^{iπ})² = -1/4
        let eps = 1e-9;
        let val = eval_dw_cyl_closed(PI, 0.0, eps);
        assert!((val.re - (-1.0 / (16.0 * PI))).abs() < 1e-7);
        assert!(val.im.abs() < 1e-7);
    }

    #[test]
    fn dw_mode_sum_agrees_within_tail_bound() {
        for &(du, eps, n) in &[
            (PI, 1e-3, 100_000u32),
            (1.0, 1e-2, 5_000),
            (0.0, 0.05, 2_000),
        ] {
            let a = eval_dw_cyl_mode_sum(du, 0.0, eps, n);
            let b = eval_dw_cyl_closed(du, 0.0, eps);
            let bound = dw_tail_bound(eps, n) + 1e-9;
            assert!(
                (a - b).norm() <= bound,
                "du={du} eps={eps} n={n}: |{a} - {b}| > {bound}"
            );
        }
        // the regularised mode sum at separation π sits within 1e-3 relative
        // of the ε -> 0 value -1/(16π)
        let target = -1.0 / (16.0 * PI);
        let val = eval_dw_cyl_mode_sum(PI, 0.0, 1e-3, 100_000);
        assert!((val.re - target).abs() / target.abs() < 1e-3);
        assert!(val.im.abs() / target.abs() < 1e-3);
    }

    #[test]
    fn dw_at_zero_separation_is_geometric_series() {
        // Σ k e^{-kε} / 4π = e^{-ε}/(4π (1-e^{-ε})²), real and positive
        let eps: f64 = 0.1;
        let r: f64 = (-eps).exp();
        let expected = r / ((1.0 - r) * (1.0 - r)) / (4.0 * PI);
        let val = eval_dw_cyl_closed(0.0, 0.0, eps);
        assert!((val.re - expected).abs() < 1e-12);
        assert!(val.im.abs() < 1e-15);
        assert!(val.re > 0.0);
    }

    #[test]
    fn diag_difference_values() {
        assert!((diag_difference(0.0).unwrap() - (-1.0 / (48.0 * PI))).abs() < 1e-15);
        let expected_pi = -1.0 / (16.0 * PI) + 1.0 / (4.0 * PI * PI * PI);
        assert!((diag_difference(PI).unwrap() - expected_pi).abs() < 1e-15);
        assert!(diag_difference(TWO_PI).is_err());
        assert!(diag_difference(-7.0).is_err());
    }

    #[test]
    fn canonical_cyl_representative() {
        let p = NullPoint::new(-1.0, 2.0);
        let c = p.canonical_cyl();
        assert!((0.0..TWO_PI).contains(&c.u));
        assert!((c.u + c.v - (p.u + p.v)).abs() < 1e-12);
        // already-canonical points are fixed
        let q = NullPoint::new(1.5, -4.0).canonical_cyl();
        assert_eq!(q.canonical_cyl(), q);
        // the kernel is insensitive to the representative chosen
        let o = NullPoint::new(0.3, 0.4);
        assert_eq!(eval_e_cyl(p, o), eval_e_cyl(c, o));
    }

    #[test]
    fn parametrix_scale_and_chiral_derivative() {
        assert!(ParametrixKernel::new(0.0).is_err());
        assert!(ParametrixKernel::new(-2.0).is_err());
        let p1 = ParametrixKernel::new(1.0).unwrap();
        let p2 = ParametrixKernel::new(3.7).unwrap();
        // undifferentiated kernels differ by the log of the scale ratio
        let x = pt(1.0, 2.0);
        let y = pt(0.2, 0.5);
        let shift = (p2.lambda() / p1.lambda()).ln() / (2.0 * PI);
        assert!((p2.eval(x, y) - p1.eval(x, y) - shift).abs() < 1e-14);
        // the chiral derivative is -1/(4π Δu²), independent of the scale
        for &du in &[0.4, 1.0, 3.0] {
            let expected = -1.0 / (4.0 * PI * du * du);
            assert_eq!(p1.chiral_derivative(du, 0.0), expected);
            assert_eq!(p2.chiral_derivative(du, 0.0), expected);
        }
    }

    #[test]
    fn diag_difference_is_vacuum_minus_parametrix() {
        // w(s) subtracts exactly the parametrix chiral derivative from the
        // closed-form vacuum kernel (at vanishing regularisation)
        let p = ParametrixKernel::new(1.0).unwrap();
        for &s in &[0.3f64, 1.0, 2.0, 5.5] {
            let vacuum = -1.0 / (16.0 * PI * (0.5 * s).sin().powi(2));
            let expected = vacuum - p.chiral_derivative(s, 0.0);
            assert!((diag_difference(s).unwrap() - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn diag_difference_is_even() {
        for &s in &[0.3, 1.0, 2.5, 5.0] {
            let a = diag_difference(s).unwrap();
            let b = diag_difference(-s).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn diag_difference_smooth_across_zero() {
        // second central difference stays bounded: no 1/s² residue survives
        let h = 1e-2;
        let d2 = (diag_difference(h).unwrap() - 2.0 * diag_difference(0.0).unwrap()
            + diag_difference(-h).unwrap())
            / (h * h);
        // analytic value: w''(0) = -1/(480π) · 2 = -(1/4π)(1/120)... small
        assert!(d2.abs() < 1e-2, "second difference {d2}");
    }

    #[test]
    fn squared_coeff_brute_force() {
        for k in 0..=50u64 {
            let mut acc = BigInt::from(0);
            for l in 0..=k {
                acc += BigInt::from(l) * BigInt::from(k - l);
            }
            assert_eq!(squared_coeff(k), BigRational::from_integer(acc), "k = {k}");
        }
        assert_eq!(squared_coeff(2), BigRational::from_integer(BigInt::from(1)));
        assert_eq!(squared_coeff(3), BigRational::from_integer(BigInt::from(4)));
    }

    #[test]
    fn central_pairing_values() {
        use num_traits::Zero;
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(central_term_pairing(2, -2, 16), half);
        assert!(central_term_pairing(-2, 2, 16).is_zero());
        assert!(central_term_pairing(2, 2, 16).is_zero());
    }
}

//! Concrete functionals of band-limited chiral field configurations,
//! evaluated spectrally from Fourier coefficients.
//!
//! All circle integrals reduce to finite coefficient sums, exact for trig
//! polynomials, so the only error budget anywhere in this module is f64
//! roundoff. These computations cross-validate the exact mode-algebra route.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;
use thiserror::Error;

use std::f64::consts::PI;

use crate::kernels::squared_coeff;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FunctionalError {
    #[error("coefficients violate the reality constraint at mode {0}")]
    NonRealConfig(i64),
    #[error("coefficient vector must have odd length 2K+1, got {0}")]
    BadCoefficientCount(usize),
}

/// A band-limited real function on the circle, stored as complex Fourier
/// coefficients `ψ̂_k` for `|k| <= K`, with `ψ̂_{-k} = conj(ψ̂_k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChiralConfig {
    band: i64,
    coeffs: Vec<Complex64>, // index k + band
}

impl ChiralConfig {
    /// Build from coefficients listed for `k = -K ..= K`; the reality
    /// constraint is checked exactly.
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Result<Self, FunctionalError> {
        if coeffs.len().is_multiple_of(2) || coeffs.is_empty() {
            return Err(FunctionalError::BadCoefficientCount(coeffs.len()));
        }
        let band = (coeffs.len() / 2) as i64;
        let cfg = ChiralConfig { band, coeffs };
        for k in 0..=band {
            if cfg.coeff(-k) != cfg.coeff(k).conj() {
                return Err(FunctionalError::NonRealConfig(k));
            }
        }
        Ok(cfg)
    }

    /// The zero configuration.
    pub fn zero(band: i64) -> Self {
        ChiralConfig {
            band,
            coeffs: vec![Complex64::new(0.0, 0.0); (2 * band + 1) as usize],
        }
    }

    /// Build from real harmonic amplitudes:
    /// `ψ(u) = c0 + Σ_k (a_k cos ku + b_k sin ku)`.
    pub fn from_harmonics(c0: f64, cos_amps: &[f64], sin_amps: &[f64]) -> Self {
        let band = cos_amps.len().max(sin_amps.len()) as i64;
        let mut cfg = Self::zero(band);
        cfg.set_mode(0, Complex64::new(c0, 0.0));
        for (i, &a) in cos_amps.iter().enumerate() {
            let k = (i + 1) as i64;
            let cur = cfg.coeff(k);
            cfg.set_mode(k, cur + Complex64::new(a / 2.0, 0.0));
        }
        for (i, &b) in sin_amps.iter().enumerate() {
            let k = (i + 1) as i64;
            let cur = cfg.coeff(k);
            cfg.set_mode(k, cur + Complex64::new(0.0, -b / 2.0));
        }
        cfg
    }

    /// `ψ = cos u`.
    pub fn cos_u() -> Self {
        Self::from_harmonics(0.0, &[1.0], &[])
    }

    /// A seeded random real configuration with harmonics in `[-1, 1]`.
    pub fn random(band: i64, rng: &mut impl Rng) -> Self {
        let c0 = rng.gen_range(-1.0..1.0);
        let cos_amps: Vec<f64> = (0..band).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let sin_amps: Vec<f64> = (0..band).map(|_| rng.gen_range(-1.0..1.0)).collect();
        Self::from_harmonics(c0, &cos_amps, &sin_amps)
    }

    /// Fourier coefficient; zero outside the band.
    pub fn coeff(&self, k: i64) -> Complex64 {
        if k.abs() > self.band {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(k + self.band) as usize]
        }
    }

    /// Sets `ψ̂_k` and `ψ̂_{-k}` jointly to preserve reality.
    pub fn set_mode(&mut self, k: i64, value: Complex64) {
        assert!(k.abs() <= self.band, "mode {k} outside band {}", self.band);
        self.coeffs[(k + self.band) as usize] = value;
        self.coeffs[(-k + self.band) as usize] = value.conj();
        if k == 0 {
            self.coeffs[self.band as usize] = Complex64::new(value.re, 0.0);
        }
    }

    pub fn band(&self) -> i64 {
        self.band
    }

    /// `ψ(u) = Σ ψ̂_k e^{iku}`; real for valid configurations.
    pub fn eval(&self, u: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in -self.band..=self.band {
            acc += self.coeff(k) * Complex64::new(0.0, k as f64 * u).exp();
        }
        acc
    }
}

/// A trig-polynomial smearing function on the circle (finitely supported
/// spectrum), same storage as [`ChiralConfig`].
#[derive(Clone, Debug, PartialEq)]
pub struct TestFnCircle {
    inner: ChiralConfig,
}

impl TestFnCircle {
    pub fn from_harmonics(c0: f64, cos_amps: &[f64], sin_amps: &[f64]) -> Self {
        TestFnCircle {
            inner: ChiralConfig::from_harmonics(c0, cos_amps, sin_amps),
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::from_harmonics(c, &[], &[])
    }

    pub fn coeff(&self, k: i64) -> Complex64 {
        self.inner.coeff(k)
    }

    pub fn band(&self) -> i64 {
        self.inner.band()
    }

    pub fn eval(&self, u: f64) -> f64 {
        self.inner.eval(u).re
    }
}

/// Identifier of a supported chiral functional family.
#[derive(Clone, Debug)]
pub enum ChiralFunctional {
    /// Linear mode functional `A_n`.
    A(i64),
    /// Quadratic mode functional `B_n`.
    B(i64),
    /// Smeared stress tensor `T(f) = (1/2)∫ f ψ²`.
    T(TestFnCircle),
}

/// `A_n[ψ] = (1/√π) ∫_0^{2π} e^{inu} ψ(u) du = 2√π ψ̂_{-n}`.
pub fn eval_a(n: i64, psi: &ChiralConfig) -> Complex64 {
    2.0 * PI.sqrt() * psi.coeff(-n)
}

/// `B_n[ψ] = ∫_0^{2π} e^{inu} ψ²(u) du = 2π Σ_k ψ̂_k ψ̂_{-n-k}`.
pub fn eval_b(n: i64, psi: &ChiralConfig) -> Complex64 {
    let band = psi.band();
    let mut acc = Complex64::new(0.0, 0.0);
    for k in -band..=band {
        acc += psi.coeff(k) * psi.coeff(-n - k);
    }
    2.0 * PI * acc
}

/// Evaluate a functional on a configuration.
pub fn eval_functional(f: &ChiralFunctional, psi: &ChiralConfig) -> Complex64 {
    match f {
        ChiralFunctional::A(n) => eval_a(*n, psi),
        ChiralFunctional::B(n) => eval_b(*n, psi),
        ChiralFunctional::T(test_fn) => {
            // (1/2)∫ f ψ² = π Σ_r f̂_r (ψ²)^_{-r}
            let mut acc = Complex64::new(0.0, 0.0);
            for r in -test_fn.band()..=test_fn.band() {
                acc += test_fn.coeff(r) * psi_sq_mode(psi, -r);
            }
            PI * acc
        }
    }
}

fn psi_sq_mode(psi: &ChiralConfig, s: i64) -> Complex64 {
    let band = psi.band();
    let mut acc = Complex64::new(0.0, 0.0);
    for a in -band..=band {
        acc += psi.coeff(a) * psi.coeff(s - a);
    }
    acc
}

/// Spectrum of the first functional derivative: the coefficients `c_r` with
/// `F^{(1)}[ψ](u) = Σ_r c_r e^{iru}` (the `1/√π` normalisation of the linear
/// family included).
fn first_derivative_spectrum(f: &ChiralFunctional, psi: &ChiralConfig) -> Vec<(i64, Complex64)> {
    match f {
        ChiralFunctional::A(n) => vec![(*n, Complex64::new(1.0 / PI.sqrt(), 0.0))],
        ChiralFunctional::B(n) => {
            let band = psi.band();
            (-band..=band)
                .map(|j| (n + j, 2.0 * psi.coeff(j)))
                .collect()
        }
        ChiralFunctional::T(test_fn) => {
            // (fψ)^_r = Σ_k f̂_k ψ̂_{r-k}
            let lo = -(test_fn.band() + psi.band());
            let hi = test_fn.band() + psi.band();
            (lo..=hi)
                .map(|r| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for k in -test_fn.band()..=test_fn.band() {
                        acc += test_fn.coeff(k) * psi.coeff(r - k);
                    }
                    (r, acc)
                })
                .collect()
        }
    }
}

/// Spectrum `ĥ_s` of the second derivative kernel `F^{(2)}(u,u') = h(u)δ(u-u')`;
/// empty for linear functionals.
fn second_derivative_spectrum(f: &ChiralFunctional) -> Vec<(i64, Complex64)> {
    match f {
        ChiralFunctional::A(_) => Vec::new(),
        ChiralFunctional::B(n) => vec![(*n, Complex64::new(2.0, 0.0))],
        ChiralFunctional::T(test_fn) => (-test_fn.band()..=test_fn.band())
            .map(|k| (k, test_fn.coeff(k)))
            .collect(),
    }
}

/// Numeric chiral bracket: pairs the first derivatives through the kernel
/// `(1/2)δ'(u-u')`, spectrally:
/// `{F, G} = -iπ Σ_r r c^F_r c^G_{-r}`.
pub fn chiral_bracket_numeric(
    f: &ChiralFunctional,
    g: &ChiralFunctional,
    psi: &ChiralConfig,
) -> Complex64 {
    let cf = first_derivative_spectrum(f, psi);
    let cg = first_derivative_spectrum(g, psi);
    let mut acc = Complex64::new(0.0, 0.0);
    for &(r, a) in &cf {
        if r == 0 {
            continue;
        }
        for &(s, b) in &cg {
            if s == -r {
                acc += r as f64 * a * b;
            }
        }
    }
    Complex64::new(0.0, -PI) * acc
}

/// Numeric star product for linear/quadratic functionals:
/// classical term, plus `ħ` times the vacuum pairing of first derivatives
/// (the series `Σ_{k>=1} k A_{n-k} A_{m+k}` in the quadratic case, which
/// truncates exactly on band-limited input), plus `ħ²/2` times the squared
/// pairing of the second derivatives.
pub fn star_numeric(
    f: &ChiralFunctional,
    g: &ChiralFunctional,
    psi: &ChiralConfig,
    hbar: f64,
) -> Complex64 {
    let classical = eval_functional(f, psi) * eval_functional(g, psi);
    classical + hbar * star_hbar1(f, g, psi) + hbar * hbar * star_hbar2(f, g)
}

/// Coefficient of ħ in the star product:
/// `π Σ_{k>=1} k c^F_k c^G_{-k}`.
pub fn star_hbar1(f: &ChiralFunctional, g: &ChiralFunctional, psi: &ChiralConfig) -> Complex64 {
    let cf = first_derivative_spectrum(f, psi);
    let cg = first_derivative_spectrum(g, psi);
    let mut acc = Complex64::new(0.0, 0.0);
    for &(k, a) in &cf {
        if k <= 0 {
            continue;
        }
        for &(s, b) in &cg {
            if s == -k {
                acc += k as f64 * a * b;
            }
        }
    }
    PI * acc
}

/// Coefficient of ħ² in the star product:
/// `(1/8) Σ_{s>=1} squared_coeff(s) ĥ^F_s ĥ^G_{-s}`.
pub fn star_hbar2(f: &ChiralFunctional, g: &ChiralFunctional) -> Complex64 {
    let hf = second_derivative_spectrum(f);
    let hg = second_derivative_spectrum(g);
    let mut acc = Complex64::new(0.0, 0.0);
    for &(s, a) in &hf {
        if s <= 0 {
            continue;
        }
        let sq = squared_coeff(s as u64).to_f64().expect("small rational");
        for &(t, b) in &hg {
            if t == -s {
                acc += sq * a * b;
            }
        }
    }
    acc / 8.0
}

/// The ħⁿ coefficient of the covariantly-ordered vertex transformation under
/// a constant conformal factor: `((a²/4π)·logΩ)ⁿ/n!`, the expansion of
/// `Ω^{ħa²/4π}`.
pub fn vertex_alpha_coeff(a: f64, log_omega: f64, order: usize) -> f64 {
    let base = a * a / (4.0 * PI) * log_omega;
    let mut acc = 1.0;
    for j in 1..=order {
        acc *= base / j as f64;
    }
    acc
}

/// The exact rational part of the same coefficient: with
/// `coeff_n = [a^{2n}/(4ⁿ n!)] · (logΩ/π)ⁿ`, returns `a^{2n}/(4ⁿ n!)` for a
/// rational value of `a²`.
pub fn vertex_alpha_coeff_exact(a_squared: &BigRational, order: usize) -> BigRational {
    let mut acc = BigRational::from_integer(BigInt::from(1));
    for j in 1..=order {
        acc = acc * a_squared / BigRational::from_integer(BigInt::from(4 * j as i64));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn approx(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
    }

    /// Independent quadrature oracle: trapezoid rule on a periodic grid is
    /// spectrally exact for trig polynomials.
    fn quad_oracle(integrand: impl Fn(f64) -> Complex64, n: usize) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..n {
            let u = 2.0 * PI * j as f64 / n as f64;
            acc += integrand(u);
        }
        acc * (2.0 * PI / n as f64)
    }

    #[test]
    fn eval_a_on_cos() {
        let psi = ChiralConfig::cos_u();
        let expected = PI.sqrt();
        assert!(approx(
            eval_a(1, &psi),
            Complex64::new(expected, 0.0),
            1e-14
        ));
        // quadrature oracle for the same value
        let oracle = quad_oracle(|u| Complex64::new(0.0, u).exp() * u.cos() / PI.sqrt(), 256);
        assert!(approx(eval_a(1, &psi), oracle, 1e-12));
    }

    #[test]
    fn eval_a_edge_cases() {
        let zero = ChiralConfig::zero(4);
        assert_eq!(eval_a(3, &zero), Complex64::new(0.0, 0.0));
        let one = ChiralConfig::from_harmonics(1.0, &[], &[]);
        assert!(approx(
            eval_a(0, &one),
            Complex64::new(2.0 * PI.sqrt(), 0.0),
            1e-14
        ));
    }

    #[test]
    fn eval_b_on_cos() {
        let psi = ChiralConfig::cos_u();
        assert!(approx(eval_b(0, &psi), Complex64::new(PI, 0.0), 1e-14));
        assert!(approx(
            eval_b(2, &psi),
            Complex64::new(PI / 2.0, 0.0),
            1e-14
        ));
        assert_eq!(eval_b(1, &ChiralConfig::zero(2)), Complex64::new(0.0, 0.0));
        // quadrature oracle for B_2
        let oracle = quad_oracle(
            |u| Complex64::new(0.0, 2.0 * u).exp() * u.cos() * u.cos(),
            256,
        );
        assert!(approx(eval_b(2, &psi), oracle, 1e-12));
    }

    #[test]
    fn random_configs_are_real_on_grid() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let psi = ChiralConfig::random(8, &mut rng);
            for j in 0..64 {
                let u = 2.0 * PI * j as f64 / 64.0;
                assert!(psi.eval(u).im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn hermiticity() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let psi = ChiralConfig::random(6, &mut rng);
        for n in -6..=6 {
            assert!(approx(eval_a(-n, &psi), eval_a(n, &psi).conj(), 1e-13));
            assert!(approx(eval_b(-n, &psi), eval_b(n, &psi).conj(), 1e-13));
        }
    }

    #[test]
    fn bracket_of_linear_family() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let psi = ChiralConfig::random(5, &mut rng);
        let val = chiral_bracket_numeric(&ChiralFunctional::A(1), &ChiralFunctional::A(-1), &psi);
        assert!(approx(val, Complex64::new(0.0, -1.0), 1e-13));
        let zero = chiral_bracket_numeric(&ChiralFunctional::A(0), &ChiralFunctional::A(0), &psi);
        assert!(zero.norm() < 1e-13);
    }

    #[test]
    fn bracket_witt_relation() {
        let psi = ChiralConfig::from_harmonics(0.0, &[1.0, 1.0], &[]);
        // {B_2, B_1} = -i(2-1) B_3; B_3[ψ] = π for ψ = cos u + cos 2u
        let val = chiral_bracket_numeric(&ChiralFunctional::B(2), &ChiralFunctional::B(1), &psi);
        assert!(approx(val, Complex64::new(0.0, -PI), 1e-13));
        assert!(approx(eval_b(3, &psi), Complex64::new(PI, 0.0), 1e-14));

        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let psi = ChiralConfig::random(8, &mut rng);
        for n in -4..=4i64 {
            for m in -4..=4i64 {
                let lhs =
                    chiral_bracket_numeric(&ChiralFunctional::B(n), &ChiralFunctional::B(m), &psi);
                let rhs = Complex64::new(0.0, -((n - m) as f64)) * eval_b(n + m, &psi);
                assert!(approx(lhs, rhs, 1e-12), "n={n} m={m}: {lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn bracket_matches_smeared_form() {
        // T(2cos u) = (B_1 + B_{-1})/2, so its bracket with A_1 must match
        // the linear combination of B-family brackets
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let psi = ChiralConfig::random(4, &mut rng);
        let t = ChiralFunctional::T(TestFnCircle::from_harmonics(0.0, &[2.0], &[]));
        let lhs = chiral_bracket_numeric(&t, &ChiralFunctional::A(1), &psi);
        let rhs = 0.5
            * (chiral_bracket_numeric(&ChiralFunctional::B(1), &ChiralFunctional::A(1), &psi)
                + chiral_bracket_numeric(&ChiralFunctional::B(-1), &ChiralFunctional::A(1), &psi));
        assert!(approx(lhs, rhs, 1e-12));
        // and the smeared evaluation agrees with the same combination
        let lhs = eval_functional(&t, &psi);
        let rhs = 0.5 * (eval_b(1, &psi) + eval_b(-1, &psi));
        assert!(approx(lhs, rhs, 1e-13));
    }

    #[test]
    fn star_contractions() {
        let zero = ChiralConfig::zero(8);
        // A_1 ⋆ A_{-1} on ψ=0, ħ=1 is 1; opposite order is 0
        let v = star_numeric(
            &ChiralFunctional::A(1),
            &ChiralFunctional::A(-1),
            &zero,
            1.0,
        );
        assert!(approx(v, Complex64::new(1.0, 0.0), 1e-14));
        let w = star_numeric(
            &ChiralFunctional::A(-1),
            &ChiralFunctional::A(1),
            &zero,
            1.0,
        );
        assert!(w.norm() < 1e-14);
        // B_2 ⋆ B_{-2} on ψ=0, ħ=1 has central value 1/2
        let c = star_numeric(
            &ChiralFunctional::B(2),
            &ChiralFunctional::B(-2),
            &zero,
            1.0,
        );
        assert!(approx(c, Complex64::new(0.5, 0.0), 1e-14));
    }

    #[test]
    fn star_classical_limit() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let psi = ChiralConfig::random(6, &mut rng);
        let f = ChiralFunctional::B(2);
        let g = ChiralFunctional::B(-1);
        let v = star_numeric(&f, &g, &psi, 0.0);
        let classical = eval_functional(&f, &psi) * eval_functional(&g, &psi);
        assert!(approx(v, classical, 1e-14));
    }

    #[test]
    fn hbar1_series_truncates_and_matches_a_products() {
        // π Σ k c^F_k c^G_{-k} equals Σ_{k>=1} k A_{n-k} A_{m+k}, and the
        // series dies once indices exceed the band limit.
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let psi = ChiralConfig::random(8, &mut rng);
        for &(n, m) in &[(2i64, -2i64), (3, 1), (0, 0), (-4, 4)] {
            let spectral = star_hbar1(&ChiralFunctional::B(n), &ChiralFunctional::B(m), &psi);
            let mut series = Complex64::new(0.0, 0.0);
            for k in 1..=100 {
                series += k as f64 * eval_a(n - k, &psi) * eval_a(m + k, &psi);
            }
            assert!(approx(spectral, series, 1e-12), "n={n} m={m}");
            // terms beyond the band limit vanish identically
            for k in (8 + n.abs().max(m.abs()) + 1)..=100 {
                let term = eval_a(n - k, &psi) * eval_a(m + k, &psi);
                assert_eq!(term, Complex64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn antisymmetrized_hbar1_identity() {
        // Σ_{k∈Z} k A_{n-k} A_{m+k} = (1/2)(n-m) Σ_k A_k A_{n+m-k}
        let mut rng = ChaCha8Rng::seed_from_u64(18);
        let psi = ChiralConfig::random(8, &mut rng);
        for &(n, m) in &[(2i64, -2i64), (3, 1), (5, -2)] {
            let mut lhs = Complex64::new(0.0, 0.0);
            for k in -60..=60 {
                lhs += k as f64 * eval_a(n - k, &psi) * eval_a(m + k, &psi);
            }
            let mut sum_b = Complex64::new(0.0, 0.0);
            for k in -60..=60 {
                sum_b += eval_a(k, &psi) * eval_a(n + m - k, &psi);
            }
            let rhs = 0.5 * (n - m) as f64 * sum_b;
            assert!(approx(lhs, rhs, 1e-12), "n={n} m={m}");
        }
    }

    #[test]
    fn hbar2_matches_central_pairing() {
        use crate::kernels::central_term_pairing;
        for n in -5i64..=5 {
            for m in -5i64..=5 {
                let spectral = star_hbar2(&ChiralFunctional::B(n), &ChiralFunctional::B(m));
                let exact = central_term_pairing(n, m, 16)
                    .to_f64()
                    .expect("small rational");
                assert!(
                    (spectral.re - exact).abs() < 1e-13 && spectral.im.abs() < 1e-13,
                    "n={n} m={m}"
                );
            }
        }
    }

    #[test]
    fn vertex_coefficients() {
        assert_eq!(vertex_alpha_coeff(0.0, 3.0, 1), 0.0);
        assert_eq!(vertex_alpha_coeff(0.0, 3.0, 4), 0.0);
        assert_eq!(vertex_alpha_coeff(1.5, 0.0, 0), 1.0);
        assert_eq!(vertex_alpha_coeff(1.5, 0.0, 3), 0.0);
        let expected = (1.0 / (4.0 * PI)).powi(2) / 2.0;
        assert!((vertex_alpha_coeff(1.0, 1.0, 2) - expected).abs() < 1e-18);

        let one = BigRational::from_integer(BigInt::from(1));
        assert_eq!(
            vertex_alpha_coeff_exact(&one, 2),
            BigRational::new(BigInt::from(1), BigInt::from(32))
        );
        assert_eq!(
            vertex_alpha_coeff_exact(&one, 3),
            BigRational::new(BigInt::from(1), BigInt::from(384))
        );
    }

    #[test]
    fn reality_constraint_rejected() {
        let bad = vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.5, 0.5),
        ];
        assert!(ChiralConfig::from_coeffs(bad).is_err());
    }
}

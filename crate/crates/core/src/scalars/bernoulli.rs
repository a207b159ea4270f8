use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// The k-th Bernoulli number in the convention `z/(e^z - 1) = Σ B_k z^k/k!`,
/// so `B_1 = -1/2`. Computed exactly from the recurrence
/// `Σ_{j=0}^{m-1} C(m+1, j) B_j = [m = 0] · (m+1)`.
pub fn bernoulli(k: usize) -> BigRational {
    bernoulli_row(k).pop().expect("row is never empty")
}

/// All Bernoulli numbers `B_0 ..= B_k`.
pub fn bernoulli_row(k: usize) -> Vec<BigRational> {
    let mut row: Vec<BigRational> = Vec::with_capacity(k + 1);
    row.push(BigRational::one());
    for m in 1..=k {
        // B_m = -1/(m+1) * Σ_{j<m} C(m+1, j) B_j
        let mut acc = BigRational::zero();
        for (j, b) in row.iter().enumerate() {
            acc += BigRational::from_integer(binomial(m + 1, j)) * b;
        }
        let b_m = -acc / BigRational::from_integer(BigInt::from(m + 1));
        row.push(b_m);
    }
    row
}

/// ζ(-n) = (-1)^n B_{n+1} / (n+1), exact.
pub fn zeta_neg(n: usize) -> BigRational {
    let b = bernoulli(n + 1);
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    BigRational::from_integer(BigInt::from(sign)) * b
        / BigRational::from_integer(BigInt::from(n + 1))
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    /// Reciprocal of an exact power series with nonzero constant term,
    /// truncated to the input length. Independent oracle machinery.
    fn series_recip(s: &[BigRational]) -> Vec<BigRational> {
        assert!(!s[0].is_zero());
        let mut c = vec![BigRational::zero(); s.len()];
        c[0] = s[0].recip();
        for n in 1..s.len() {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                acc += &s[k] * &c[n - k];
            }
            c[n] = -acc / &s[0];
        }
        c
    }

    fn factorial(n: usize) -> BigRational {
        let mut acc = BigInt::one();
        for i in 2..=n {
            acc *= BigInt::from(i);
        }
        BigRational::from_integer(acc)
    }

    #[test]
    fn known_values() {
        assert_eq!(bernoulli(0), q(1, 1));
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(3), q(0, 1));
        assert_eq!(bernoulli(4), q(-1, 30));
        assert_eq!(bernoulli(12), q(-691, 2730));
    }

    #[test]
    fn generating_function_oracle() {
        // z/(e^z - 1) = 1 / Σ_{k>=0} z^k/(k+1)!; invert the series exactly
        // and compare k! times each coefficient against the recurrence.
        let n = 16;
        let s: Vec<BigRational> = (0..=n).map(|k| factorial(k + 1).recip()).collect();
        let inv = series_recip(&s);
        let row = bernoulli_row(n);
        for k in 0..=n {
            assert_eq!(&inv[k] * factorial(k), row[k], "B_{k} mismatch");
        }
    }

    #[test]
    fn zeta_values() {
        assert_eq!(zeta_neg(0), q(-1, 2));
        assert_eq!(zeta_neg(1), q(-1, 12));
        assert_eq!(zeta_neg(3), q(1, 120));
        assert_eq!(zeta_neg(5), q(-1, 252));
    }

    #[test]
    fn zeta_vanishes_at_negative_even_integers() {
        for k in 1..=20 {
            assert!(zeta_neg(2 * k).is_zero(), "zeta(-{}) != 0", 2 * k);
        }
    }

    #[test]
    fn zeta_series_matches_kernel_expansion() {
        // Σ_{k>=0} ζ(-k) z^k / k!  =  1/z - 1/(1 - e^{-z}),  term by term.
        // The right-hand side is computed by exact series inversion:
        // (1 - e^{-z})/z = Σ (-1)^k z^k/(k+1)!.
        let n = 7;
        let s: Vec<BigRational> = (0..=n)
            .map(|k| {
                let sign = if k % 2 == 0 {
                    BigRational::one()
                } else {
                    -BigRational::one()
                };
                sign * factorial(k + 1).recip()
            })
            .collect();
        let inv = series_recip(&s); // 1 / s = z / (1 - e^{-z})
                                    // 1/z - 1/(1 - e^{-z}) = (1 - 1/s)/z; constant term of (1 - 1/s) is 0.
        assert!((BigRational::one() - &inv[0]).is_zero());
        for k in 0..=6 {
            let rhs = -&inv[k + 1];
            let lhs = zeta_neg(k) / factorial(k);
            assert_eq!(lhs, rhs, "order {k}");
        }
    }

    #[test]
    fn zeta_series_matches_kernel_expansion_opposite_argument() {
        // The same chain written with +z: 1/(1 - e^z) + 1/z has Taylor
        // coefficients ζ(-k)/k! for every k >= 1. (The z^0 term is the one
        // spot where the two routes differ; it is killed by d/dz wherever
        // this expansion is used.)
        let n = 7;
        let s: Vec<BigRational> = (0..=n).map(|k| -factorial(k + 1).recip()).collect(); // (1 - e^z)/z
        let inv = series_recip(&s); // z/(1 - e^z)
                                    // The 1/z pole cancels: inv[0] + 1 = 0.
        assert!((BigRational::one() + &inv[0]).is_zero());
        for k in 1..=6 {
            let lhs = zeta_neg(k) / factorial(k);
            assert_eq!(lhs, inv[k + 1], "order {k}");
        }
    }
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::GaussianRational;

/// A formal power series in ħ, truncated at a fixed order.
///
/// `coeffs[k]` is the exact coefficient of ħ^k; the length is always
/// `trunc_order + 1`. Products are Cauchy products truncated back to the
/// common order. Mixing series of different truncation orders is a usage
/// error and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HbarSeries {
    coeffs: Vec<GaussianRational>,
}

impl HbarSeries {
    /// The zero series at the given truncation order.
    pub fn zero(trunc_order: usize) -> Self {
        HbarSeries {
            coeffs: vec![GaussianRational::zero(); trunc_order + 1],
        }
    }

    /// The constant series `c` at the given truncation order.
    pub fn from_scalar(c: GaussianRational, trunc_order: usize) -> Self {
        let mut s = Self::zero(trunc_order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(trunc_order: usize) -> Self {
        Self::from_scalar(GaussianRational::one(), trunc_order)
    }

    /// The monomial `c · ħ^pow`. Panics if `pow` exceeds the truncation order.
    pub fn hbar_monomial(c: GaussianRational, pow: usize, trunc_order: usize) -> Self {
        assert!(
            pow <= trunc_order,
            "hbar power {pow} exceeds truncation order {trunc_order}"
        );
        let mut s = Self::zero(trunc_order);
        s.coeffs[pow] = c;
        s
    }

    pub fn trunc_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of ħ^k; zero above the truncation order.
    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(GaussianRational::is_zero)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        HbarSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by ħ^k, truncating whatever falls past the order.
    pub fn shift_hbar(&self, k: usize) -> Self {
        let n = self.coeffs.len();
        let mut out = Self::zero(n - 1);
        for (j, c) in self.coeffs.iter().enumerate() {
            if j + k < n && !c.is_zero() {
                out.coeffs[j + k] = c.clone();
            }
        }
        out
    }

    fn assert_same_order(&self, other: &Self) {
        assert_eq!(
            self.trunc_order(),
            other.trunc_order(),
            "mismatched hbar-series truncation orders ({} vs {})",
            self.trunc_order(),
            other.trunc_order()
        );
    }
}

impl Add for &HbarSeries {
    type Output = HbarSeries;
    fn add(self, rhs: &HbarSeries) -> HbarSeries {
        self.assert_same_order(rhs);
        HbarSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &HbarSeries {
    type Output = HbarSeries;
    fn sub(self, rhs: &HbarSeries) -> HbarSeries {
        self.assert_same_order(rhs);
        HbarSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &HbarSeries {
    type Output = HbarSeries;
    fn mul(self, rhs: &HbarSeries) -> HbarSeries {
        self.assert_same_order(rhs);
        let n = self.coeffs.len();
        let mut out = HbarSeries::zero(n - 1);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] += &(a * b);
            }
        }
        out
    }
}

impl Neg for &HbarSeries {
    type Output = HbarSeries;
    fn neg(self) -> HbarSeries {
        HbarSeries {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Display for HbarSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*h")?,
                _ => write!(f, "({c})*h^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HbarSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Exact series multiplication; thin wrapper kept for callers that prefer a
/// named operation over the `Mul` impl.
pub fn series_mul(a: &HbarSeries, b: &HbarSeries) -> HbarSeries {
    a * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn difference_of_squares() {
        // (1 + h)(1 - h) at order 2 is 1 - h^2
        let one_plus = &HbarSeries::one(2) + &HbarSeries::hbar_monomial(gr(1), 1, 2);
        let one_minus = &HbarSeries::one(2) - &HbarSeries::hbar_monomial(gr(1), 1, 2);
        let prod = &one_plus * &one_minus;
        let expected = &HbarSeries::one(2) - &HbarSeries::hbar_monomial(gr(1), 2, 2);
        assert_eq!(prod, expected);
    }

    #[test]
    fn multiplicative_identity() {
        let a = HbarSeries::hbar_monomial(GaussianRational::from_ratio(3, 7), 2, 4);
        assert_eq!(&a * &HbarSeries::one(4), a);
    }

    #[test]
    fn i_hbar_squared() {
        // (i*h)(i*h) at order 2 is -h^2
        let ih = HbarSeries::hbar_monomial(GaussianRational::i(), 1, 2);
        let prod = &ih * &ih;
        assert_eq!(prod, HbarSeries::hbar_monomial(gr(-1), 2, 2));
    }

    #[test]
    fn truncation_drops_high_orders() {
        let h = HbarSeries::hbar_monomial(gr(1), 1, 2);
        let h2 = &h * &h;
        let h3 = &h2 * &h;
        assert!(h3.is_zero());
    }

    #[test]
    #[should_panic(expected = "mismatched hbar-series truncation orders")]
    fn mixed_orders_panic() {
        let _ = &HbarSeries::one(2) * &HbarSeries::one(3);
    }
}

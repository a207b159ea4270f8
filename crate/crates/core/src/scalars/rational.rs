use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A complex number with exact rational real and imaginary parts.
///
/// This is the coefficient field of the whole algebra: it houses the scalar
/// `i` of the classical brackets and the rational central-term coefficients.
/// `BigRational` keeps denominators positive and fractions in lowest terms
/// after every operation, so field axioms hold exactly with no rounding.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        GaussianRational {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    /// The real rational `num/den`. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussianRational {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn from_rational(re: BigRational) -> Self {
        GaussianRational {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// True when the imaginary part vanishes.
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// Exact multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero GaussianRational");
        let norm = &self.re * &self.re + &self.im * &self.im;
        GaussianRational {
            re: &self.re / &norm,
            im: -&self.im / &norm,
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self * &other.inv()
    }

    pub fn scale_int(&self, n: i64) -> Self {
        let f = BigRational::from_integer(BigInt::from(n));
        GaussianRational {
            re: &self.re * &f,
            im: &self.im * &f,
        }
    }

    /// Lossy conversion for the numeric evaluation layer.
    pub fn to_complex_f64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(
            self.re.to_f64().expect("rational out of f64 range"),
            self.im.to_f64().expect("rational out of f64 range"),
        )
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut wrote = false;
        if !self.re.is_zero() {
            write!(f, "{}", self.re)?;
            wrote = true;
        }
        if !self.im.is_zero() {
            if wrote && self.im.is_positive() {
                write!(f, "+")?;
            }
            if self.im.is_one() {
                write!(f, "i")?;
            } else if (-self.im.clone()).is_one() {
                write!(f, "-i")?;
            } else {
                write!(f, "{}i", self.im)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

macro_rules! forward_value_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                $trait::$method(&self, &rhs)
            }
        }
    )*};
}
forward_value_ops!(Add::add, Sub::sub, Mul::mul);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        let prod = &*self * rhs;
        *self = prod;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn q(num: i64, den: i64) -> GaussianRational {
        GaussianRational::from_ratio(num, den)
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from_int(-1));
    }

    #[test]
    fn inverse_roundtrip() {
        let z = GaussianRational::new(
            BigRational::new(BigInt::from(3), BigInt::from(7)),
            BigRational::new(BigInt::from(-2), BigInt::from(5)),
        );
        assert_eq!(&z * &z.inv(), GaussianRational::one());
    }

    #[test]
    fn denominators_stay_positive_and_reduced() {
        let z = GaussianRational::new(
            BigRational::new(BigInt::from(4), BigInt::from(-6)),
            BigRational::new(BigInt::from(10), BigInt::from(4)),
        );
        assert!(z.re().denom().is_positive());
        assert_eq!(z.re(), &BigRational::new(BigInt::from(-2), BigInt::from(3)));
        let w = &z * &z;
        assert!(w.re().denom().is_positive());
        assert!(w.im().denom().is_positive());
    }

    #[test]
    fn display_forms() {
        assert_eq!(q(-1, 12).to_string(), "-1/12");
        assert_eq!(GaussianRational::i().to_string(), "i");
        let z = GaussianRational::new(
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::new(BigInt::from(1), BigInt::from(3)),
        );
        assert_eq!(z.to_string(), "1/2+1/3i");
    }
}

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Value and first three derivatives of a function at a point. Arithmetic
/// and composition follow the truncated Taylor rules exactly, so Schwarzian
/// derivatives computed through jets carry only f64 roundoff.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet3 {
    pub f: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

impl Jet3 {
    pub fn new(f: f64, d1: f64, d2: f64, d3: f64) -> Self {
        Jet3 { f, d1, d2, d3 }
    }

    pub fn constant(c: f64) -> Self {
        Jet3::new(c, 0.0, 0.0, 0.0)
    }

    /// The identity map's jet at `x`.
    pub fn variable(x: f64) -> Self {
        Jet3::new(x, 1.0, 0.0, 0.0)
    }

    /// Jet of `F ∘ self` where `derivs = [F, F', F'', F''']` evaluated at
    /// `self.f` (third-order Faà di Bruno).
    pub fn lift(&self, derivs: [f64; 4]) -> Self {
        let [f0, f1, f2, f3] = derivs;
        let g1 = self.d1;
        let g2 = self.d2;
        let g3 = self.d3;
        Jet3 {
            f: f0,
            d1: f1 * g1,
            d2: f2 * g1 * g1 + f1 * g2,
            d3: f3 * g1 * g1 * g1 + 3.0 * f2 * g1 * g2 + f1 * g3,
        }
    }

    /// Jet of `outer ∘ inner` at the inner base point, where `outer` is the
    /// jet of the outer map at `inner.f`.
    pub fn compose(outer: &Jet3, inner: &Jet3) -> Jet3 {
        inner.lift([outer.f, outer.d1, outer.d2, outer.d3])
    }

    pub fn exp(self) -> Self {
        let e = self.f.exp();
        self.lift([e, e, e, e])
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.f.sin_cos();
        self.lift([s, c, -s, -c])
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.f.sin_cos();
        self.lift([c, -s, -c, s])
    }

    pub fn recip(self) -> Self {
        let x = self.f;
        let inv = 1.0 / x;
        self.lift([
            inv,
            -inv * inv,
            2.0 * inv * inv * inv,
            -6.0 * inv * inv * inv * inv,
        ])
    }
}

impl Add for Jet3 {
    type Output = Jet3;
    fn add(self, r: Jet3) -> Jet3 {
        Jet3::new(self.f + r.f, self.d1 + r.d1, self.d2 + r.d2, self.d3 + r.d3)
    }
}

impl Sub for Jet3 {
    type Output = Jet3;
    fn sub(self, r: Jet3) -> Jet3 {
        Jet3::new(self.f - r.f, self.d1 - r.d1, self.d2 - r.d2, self.d3 - r.d3)
    }
}

impl Neg for Jet3 {
    type Output = Jet3;
    fn neg(self) -> Jet3 {
        Jet3::new(-self.f, -self.d1, -self.d2, -self.d3)
    }
}

impl Mul for Jet3 {
    type Output = Jet3;
    fn mul(self, r: Jet3) -> Jet3 {
        Jet3::new(
            self.f * r.f,
            self.d1 * r.f + self.f * r.d1,
            self.d2 * r.f + 2.0 * self.d1 * r.d1 + self.f * r.d2,
            self.d3 * r.f + 3.0 * self.d2 * r.d1 + 3.0 * self.d1 * r.d2 + self.f * r.d3,
        )
    }
}

impl Div for Jet3 {
    type Output = Jet3;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, r: Jet3) -> Jet3 {
        self * r.recip()
    }
}

impl Mul<f64> for Jet3 {
    type Output = Jet3;
    fn mul(self, c: f64) -> Jet3 {
        Jet3::new(self.f * c, self.d1 * c, self.d2 * c, self.d3 * c)
    }
}

impl Add<f64> for Jet3 {
    type Output = Jet3;
    fn add(self, c: f64) -> Jet3 {
        Jet3::new(self.f + c, self.d1, self.d2, self.d3)
    }
}

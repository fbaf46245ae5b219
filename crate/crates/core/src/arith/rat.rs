use super::{BaseField, Field, RatFn, Ring, UPoly, Var};

/// Arbitrary-precision integer.
pub type Int = rug::Integer;

/// Arbitrary-precision rational; always reduced with positive denominator.
pub type Rat = rug::Rational;

/// Shorthand for the rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::from((n, d))
}

impl Ring for Rat {
    const DEPTH: usize = 0;

    fn zero() -> Self {
        Rat::new()
    }
    fn one() -> Self {
        Rat::from(1)
    }
    fn is_zero(&self) -> bool {
        self.cmp0().is_eq()
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
    fn add(&self, other: &Self) -> Self {
        Rat::from(self + other)
    }
    fn sub(&self, other: &Self) -> Self {
        Rat::from(self - other)
    }
    fn mul(&self, other: &Self) -> Self {
        Rat::from(self * other)
    }
    fn neg(&self) -> Self {
        Rat::from(-self)
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn from_int(n: i64) -> Self {
        Rat::from(n)
    }
    fn derive(&self, _var: Var) -> Self {
        Rat::new()
    }
}

impl Field for Rat {
    fn inv(&self) -> Self {
        assert!(!Ring::is_zero(self), "inverse of zero");
        Rat::from(self.recip_ref())
    }
    fn div(&self, other: &Self) -> Self {
        Rat::from(self / other)
    }
    fn poly_gcd(a: &UPoly<Self>, b: &UPoly<Self>) -> UPoly<Self> {
        super::zgcd::rational_gcd(a, b)
    }
    fn poly_mul(a: &UPoly<Self>, b: &UPoly<Self>) -> UPoly<Self> {
        super::zgcd::rational_mul(a, b)
    }
    fn poly_div_rem(a: &UPoly<Self>, b: &UPoly<Self>) -> (UPoly<Self>, UPoly<Self>) {
        super::zgcd::rational_div_rem(a, b)
    }
    fn frac_poly_mul(a: &UPoly<RatFn<Self>>, b: &UPoly<RatFn<Self>>) -> UPoly<RatFn<Self>> {
        super::zgcd::rational_function_mul(a, b)
    }
    fn frac_poly_div_rem(a: &UPoly<RatFn<Self>>, b: &UPoly<RatFn<Self>>) -> (UPoly<RatFn<Self>>, UPoly<RatFn<Self>>) {
        super::zgcd::rational_function_div_rem(a, b)
    }
    fn frac_poly_gcd(a: &UPoly<RatFn<Self>>, b: &UPoly<RatFn<Self>>) -> UPoly<RatFn<Self>> {
        super::zgcd::rational_function_gcd(a, b)
    }
}

impl BaseField for Rat {
    fn specialize(&self, _x0: &Rat) -> Option<Rat> {
        Some(self.clone())
    }
    fn as_integer(&self) -> Option<Int> {
        self.is_integer().then(|| self.numer().clone())
    }
}

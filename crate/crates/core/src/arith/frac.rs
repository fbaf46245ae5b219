use super::{BaseField, Field, Int, Rat, Ring, UPoly, Var};
use std::fmt;

/// Reduced fraction of univariate polynomials over `F`.
///
/// The denominator is monic and coprime with the numerator, so two
/// fractions are equal exactly when their representations are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn<F> {
    num: UPoly<F>,
    den: UPoly<F>,
}

impl<F: Field> RatFn<F> {
    /// Reduced `num/den`; `None` when `den` is zero.
    pub fn try_new(num: UPoly<F>, den: UPoly<F>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        if den.is_constant() {
            let c = den.lc().inv();
            return Some(RatFn { num: num.scale(&c), den: UPoly::one() });
        }
        let g = F::poly_gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        Some(Self::normalize_lc(num, den))
    }

    /// Reduced `num/den`; panics when `den` is zero.
    pub fn new(num: UPoly<F>, den: UPoly<F>) -> Self {
        Self::try_new(num, den).expect("rational function with zero denominator")
    }

    fn normalize_lc(num: UPoly<F>, den: UPoly<F>) -> Self {
        let lc = den.lc();
        if lc.is_one() {
            RatFn { num, den }
        } else {
            let inv = lc.inv();
            RatFn { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    /// Build from parts already known to be coprime.
    fn from_coprime(num: UPoly<F>, den: UPoly<F>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        Self::normalize_lc(num, den)
    }

    pub fn from_poly(p: UPoly<F>) -> Self {
        RatFn { num: p, den: UPoly::one() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(UPoly::constant(c))
    }

    pub fn var() -> Self {
        Self::from_poly(UPoly::var())
    }

    pub fn zero() -> Self {
        RatFn { num: UPoly::zero(), den: UPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(UPoly::one())
    }

    pub fn num(&self) -> &UPoly<F> {
        &self.num
    }

    pub fn den(&self) -> &UPoly<F> {
        &self.den
    }

    pub fn into_parts(self) -> (UPoly<F>, UPoly<F>) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// `Some(p)` if the denominator is one.
    pub fn as_polynomial(&self) -> Option<&UPoly<F>> {
        self.is_polynomial().then_some(&self.num)
    }

    /// `Some(c)` if this is a constant of the coefficient field.
    pub fn as_constant(&self) -> Option<F> {
        (self.is_polynomial() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.add(&other.num));
        }
        if self.den.is_one() {
            return Self::from_coprime(self.num.mul(&other.den).add(&other.num), other.den.clone());
        }
        if other.den.is_one() {
            return Self::from_coprime(self.num.add(&other.num.mul(&self.den)), self.den.clone());
        }
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone());
        }
        let g = F::poly_gcd(&self.den, &other.den);
        if g.is_one() {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            return Self::from_coprime(num, self.den.mul(&other.den));
        }
        let b1 = self.den.exact_div(&g).expect("gcd divides");
        let d1 = other.den.exact_div(&g).expect("gcd divides");
        let num = self.num.mul(&d1).add(&other.num.mul(&b1));
        if num.is_zero() {
            return Self::zero();
        }
        let g2 = F::poly_gcd(&num, &g);
        if g2.is_one() {
            Self::from_coprime(num, b1.mul(&d1).mul(&g))
        } else {
            let num = num.exact_div(&g2).expect("gcd divides");
            let g = g.exact_div(&g2).expect("gcd divides");
            Self::from_coprime(num, b1.mul(&d1).mul(&g))
        }
    }

    pub fn neg(&self) -> Self {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.mul(&other.num));
        }
        let (a, d) = cancel(&self.num, &other.den);
        let (c, b) = cancel(&other.num, &self.den);
        Self::from_coprime(a.mul(&c), b.mul(&d))
    }

    /// Multiply by an element of the coefficient field.
    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Multiply by a polynomial.
    pub fn mul_poly(&self, p: &UPoly<F>) -> Self {
        self.mul(&Self::from_poly(p.clone()))
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero rational function");
        Self::normalize_lc(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFn { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, e: i64) -> Self {
        let p = self.pow(e.unsigned_abs() as u32);
        if e < 0 {
            p.inv()
        } else {
            p
        }
    }

    /// Derivative with respect to the fraction's own variable.
    pub fn deriv(&self) -> Self {
        self.derive(UPoly::<F>::VAR)
    }

    /// Total derivative with respect to `var` (quotient rule).
    pub fn derive(&self, var: Var) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let dn = self.num.derive(var);
        if self.den.is_one() {
            return Self::from_poly(dn);
        }
        let dd = self.den.derive(var);
        if dd.is_zero() {
            return Self::new(dn, self.den.clone());
        }
        // (n/d)' = (n' d - n d') / d^2; only factors of d can cancel
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        Self::new(num, self.den.mul(&self.den))
    }

    /// Evaluate the fraction's variable at a point of `F`; `None` at a pole.
    pub fn eval(&self, at: &F) -> Option<F> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(at).div(&d))
    }
}

/// Divide `a` and `b` by their gcd.
fn cancel<F: Field>(a: &UPoly<F>, b: &UPoly<F>) -> (UPoly<F>, UPoly<F>) {
    if b.is_one() || a.is_one() {
        return (a.clone(), b.clone());
    }
    let g = F::poly_gcd(a, b);
    if g.is_one() {
        (a.clone(), b.clone())
    } else {
        (a.exact_div(&g).expect("gcd divides"), b.exact_div(&g).expect("gcd divides"))
    }
}

impl<F: Field> Ring for RatFn<F> {
    const DEPTH: usize = F::DEPTH + 1;

    fn zero() -> Self {
        RatFn::zero()
    }
    fn one() -> Self {
        RatFn::one()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }
    fn add(&self, other: &Self) -> Self {
        RatFn::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RatFn::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RatFn::mul(self, other)
    }
    fn neg(&self) -> Self {
        RatFn::neg(self)
    }
    fn from_rat(r: &Rat) -> Self {
        RatFn::constant(F::from_rat(r))
    }
    fn derive(&self, var: Var) -> Self {
        RatFn::derive(self, var)
    }
}

impl<F: Field> Field for RatFn<F> {
    fn inv(&self) -> Self {
        RatFn::inv(self)
    }
    fn div(&self, other: &Self) -> Self {
        RatFn::div(self, other)
    }
    fn poly_gcd(a: &UPoly<Self>, b: &UPoly<Self>) -> UPoly<Self> {
        F::frac_poly_gcd(a, b)
    }
    fn poly_mul(a: &UPoly<Self>, b: &UPoly<Self>) -> UPoly<Self> {
        F::frac_poly_mul(a, b)
    }
    fn poly_div_rem(a: &UPoly<Self>, b: &UPoly<Self>) -> (UPoly<Self>, UPoly<Self>) {
        F::frac_poly_div_rem(a, b)
    }
}

impl BaseField for RatFn<Rat> {
    fn specialize(&self, x0: &Rat) -> Option<Rat> {
        self.eval(x0)
    }
    fn as_integer(&self) -> Option<Int> {
        self.as_constant().and_then(|c| c.as_integer())
    }
}

impl<F: Field> From<UPoly<F>> for RatFn<F> {
    fn from(p: UPoly<F>) -> Self {
        RatFn::from_poly(p)
    }
}

impl<F: Field> fmt::Display for RatFn<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<F: Field> fmt::Debug for RatFn<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! frac_binop {
    ($tr:ident, $m:ident) => {
        impl<F: Field> std::ops::$tr<&RatFn<F>> for &RatFn<F> {
            type Output = RatFn<F>;
            fn $m(self, rhs: &RatFn<F>) -> RatFn<F> {
                RatFn::$m(self, rhs)
            }
        }
        impl<F: Field> std::ops::$tr<RatFn<F>> for RatFn<F> {
            type Output = RatFn<F>;
            fn $m(self, rhs: RatFn<F>) -> RatFn<F> {
                RatFn::$m(&self, &rhs)
            }
        }
    };
}
frac_binop!(Add, add);
frac_binop!(Sub, sub);
frac_binop!(Mul, mul);
frac_binop!(Div, div);

impl<F: Field> std::ops::Neg for &RatFn<F> {
    type Output = RatFn<F>;
    fn neg(self) -> RatFn<F> {
        RatFn::neg(self)
    }
}

impl<F: Field> std::ops::Neg for RatFn<F> {
    type Output = RatFn<F>;
    fn neg(self) -> RatFn<F> {
        RatFn::neg(&self)
    }
}

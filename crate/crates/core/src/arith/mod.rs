//! Exact arithmetic over the tower ℚ → ℚ(x) → ℚ(x)[y] → ℚ(x)(y).
//!
//! Every level of the tower implements [`Ring`]; the fields additionally
//! implement [`Field`]. The variable of a [`UPoly<F>`] is fixed by the depth
//! of its coefficient field: polynomials over ℚ are in `x`, polynomials over
//! ℚ(x) are in `y`. Derivations are total: `derive(X)` on an element of
//! ℚ(x)(y) differentiates the ℚ(x) coefficients, `derive(Y)` the y-structure.

mod algo;
mod frac;
mod poly;
mod rat;
mod zgcd;

pub use algo::{
    extended_euclid, integer_residues, integer_roots, integer_roots_rational, partial_fractions_coprime, poly_gcd,
    residue_resultant, resultant, squarefree_decomposition, squarefree_part,
};
pub use frac::RatFn;
pub use poly::UPoly;
pub use rat::{rat, Int, Rat};

use std::fmt::{Debug, Display};

/// Index of a differential variable in the tower.
pub type Var = usize;

/// The inner variable `x`.
pub const X: Var = 0;
/// The outer variable `y`.
pub const Y: Var = 1;

/// ℚ\[x\].
pub type QPoly = UPoly<Rat>;
/// ℚ(x).
pub type Qx = RatFn<Rat>;
/// ℚ(x)\[y\].
pub type QxPoly = UPoly<Qx>;
/// ℚ(x)(y).
pub type Qxy = RatFn<Qx>;

/// Commutative ring with the total derivations of the tower.
pub trait Ring: Clone + PartialEq + Eq + Debug + Display + Send + Sync + 'static {
    /// Number of variables adjoined below and at this level.
    const DEPTH: usize;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rat(r: &Rat) -> Self;
    fn from_int(n: i64) -> Self {
        Self::from_rat(&Rat::from(n))
    }
    /// Derivative with respect to the variable `var`.
    fn derive(&self, var: Var) -> Self;

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// A field of characteristic zero.
pub trait Field: Ring {
    /// Multiplicative inverse; panics on zero.
    fn inv(&self) -> Self;
    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
    /// Monic gcd of two polynomials over this field. `gcd(0, 0) = 0`.
    fn poly_gcd(a: &UPoly<Self>, b: &UPoly<Self>) -> UPoly<Self> {
        algo::euclid_gcd(a, b)
    }
    /// Product of two nonzero polynomials.
    fn poly_mul(a: &UPoly<Self>, b: &UPoly<Self>) -> UPoly<Self> {
        a.mul_generic(b)
    }
    /// Quotient and remainder for `deg b ≥ 1`, `deg a ≥ deg b`.
    fn poly_div_rem(a: &UPoly<Self>, b: &UPoly<Self>) -> (UPoly<Self>, UPoly<Self>) {
        a.div_rem_generic(b)
    }
    /// Product of two nonzero polynomials over the fraction field `Self(v)`.
    fn frac_poly_mul(a: &UPoly<RatFn<Self>>, b: &UPoly<RatFn<Self>>) -> UPoly<RatFn<Self>> {
        a.mul_generic(b)
    }
    /// Division over the fraction field `Self(v)`, for `deg b ≥ 1`, `deg a ≥ deg b`.
    fn frac_poly_div_rem(a: &UPoly<RatFn<Self>>, b: &UPoly<RatFn<Self>>) -> (UPoly<RatFn<Self>>, UPoly<RatFn<Self>>) {
        a.div_rem_generic(b)
    }
    /// Monic gcd of two polynomials over the fraction field `Self(v)`.
    fn frac_poly_gcd(a: &UPoly<RatFn<Self>>, b: &UPoly<RatFn<Self>>) -> UPoly<RatFn<Self>> {
        algo::euclid_gcd(a, b)
    }
}

/// Coefficient fields `E` over which polynomials in `y` are built (ℚ and ℚ(x)).
pub trait BaseField: Field {
    /// Value after substituting a rational for `x`; `None` if a denominator vanishes.
    fn specialize(&self, x0: &Rat) -> Option<Rat>;
    /// `Some(n)` if this element is the constant integer `n`.
    fn as_integer(&self) -> Option<Int>;
}

#[cfg(test)]
mod tests;

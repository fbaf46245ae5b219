//! Shell reduction and kernel reduction.
//!
//! Both rewrite a rational function `R` as `D_y(s) + s·K + R̃` where `R̃` has
//! smaller pole orders, which is the same as `R·T = D_y(s·T) + R̃·T` for
//! `T = exp(∫K dy)`.

use crate::arith::{extended_euclid, poly_gcd, squarefree_decomposition, BaseField, RatFn, UPoly};
use crate::canon::KernelShell;
use crate::error::{Error, Result};

/// Output of [`shell_reduce`]: `S = D_y(s1) + s1·K + a/(b·k2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellReduction<E: BaseField> {
    pub s1: RatFn<E>,
    pub a: UPoly<E>,
    /// Squarefree part of the denominator of `S`.
    pub b: UPoly<E>,
}

/// Removes the multiple poles of `s`, whose denominator must be coprime
/// with `k2`. Works for `K = 0` as well (`k1 = 0`, `k2 = 1`).
pub fn shell_reduce<E: BaseField>(s: &RatFn<E>, ks: &KernelShell<E>) -> Result<ShellReduction<E>> {
    let (k1, k2) = (&ks.k1, &ks.k2);
    if !poly_gcd(s.den(), k2).is_one() {
        return Err(Error::Precondition("shell reduction needs a denominator coprime with k2".into()));
    }
    let mut a = s.num().mul(k2);
    let mut b = s.den().clone();
    let mut s1 = RatFn::zero();
    loop {
        let parts = squarefree_decomposition(&b);
        let k = parts.len();
        if k <= 1 {
            break;
        }
        // b = v·dᵏ with d squarefree and coprime with v
        let d = &parts[k - 1];
        let v = b.exact_div(&d.pow(k as u32)).expect("squarefree decomposition");
        let km1 = E::from_int(k as i64 - 1);
        let dd = d.deriv();
        let c = dd.mul(k2).mul(&v).scale(&km1).rem(d);
        let (g, inv, _) = extended_euclid(&c, d)?;
        if !g.is_one() {
            return Err(Error::Internal("shell reduction: derivative of a squarefree factor is not invertible".into()));
        }
        let w = a.neg().mul(&inv).rem(d);
        let image = w.deriv().mul(d).mul(k2).sub(&w.mul(&dd).mul(k2).scale(&km1)).add(&k1.mul(&w).mul(d));
        a = a
            .sub(&v.mul(&image))
            .exact_div(d)
            .ok_or_else(|| Error::Internal("shell reduction: numerator not divisible".into()))?;
        let dk1 = d.pow(k as u32 - 1);
        b = v.mul(&dk1);
        s1 = s1.add(&RatFn::new(w, dk1));
    }
    Ok(ShellReduction { s1, a, b })
}

/// `p/k2ᵐ = D_y(p1/k2^(m−1)) + (p1/k2^(m−1))·K + p2/k2`.
pub fn kernel_reduce<E: BaseField>(p: &UPoly<E>, m: u32, ks: &KernelShell<E>) -> Result<(UPoly<E>, UPoly<E>)> {
    if m < 1 {
        return Err(Error::Usage("kernel reduction needs a positive power of k2".into()));
    }
    if ks.is_rational() {
        return Err(Error::Usage("kernel reduction needs a nonzero kernel".into()));
    }
    let (k1, k2) = (&ks.k1, &ks.k2);
    let dk2 = k2.deriv();
    let mut p = p.clone();
    let mut p1 = UPoly::zero();
    for j in (2..=m).rev() {
        if p.is_zero() {
            break;
        }
        // p = u·c + t·k2 with c = k1 − (j−1)·D_y(k2)
        let c = k1.sub(&dk2.scale(&E::from_int(j as i64 - 1)));
        let (g, inv, _) = extended_euclid(&c.rem(k2), k2)?;
        if !g.is_one() {
            return Err(Error::Precondition("kernel is not differential-reduced".into()));
        }
        let u = p.mul(&inv).rem(k2);
        let t = p
            .sub(&u.mul(&c))
            .exact_div(k2)
            .ok_or_else(|| Error::Internal("kernel reduction: numerator not divisible".into()))?;
        p1 = p1.add(&u.mul(&k2.pow(m - j)));
        p = t.sub(&u.deriv());
    }
    Ok((p1, p))
}

//! Hermite reduction for hyperexponential functions.
//!
//! For `H = S·T` with `T = exp(∫K dy)`, computes `h` and a residual form
//! `r = q/b + v/k2` with `H = D_y(h·T) + r·T`. The residual form is unique,
//! so `H` is integrable exactly when `r = 0`.

use crate::arith::{partial_fractions_coprime, poly_gcd, BaseField, RatFn, UPoly};
use crate::canon::KernelShell;
use crate::error::{Error, Result};
use crate::polyred::{reduce_poly, PolyRedSpace};
use crate::reductions::{kernel_reduce, shell_reduce};
use std::collections::BTreeSet;

/// `r = q/b + v/k2` with `b` squarefree and coprime with `k2`,
/// `deg q < deg b` and `v` supported on `N_K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualForm<E: BaseField> {
    pub q: UPoly<E>,
    pub b: UPoly<E>,
    pub v: UPoly<E>,
    pub k2: UPoly<E>,
    pub support: BTreeSet<usize>,
}

impl<E: BaseField> ResidualForm<E> {
    pub fn is_zero(&self) -> bool {
        self.q.is_zero() && self.v.is_zero()
    }

    /// `q/b + v/k2` as a single fraction.
    pub fn to_ratfn(&self) -> RatFn<E> {
        RatFn::new(self.q.clone(), self.b.clone()).add(&RatFn::new(self.v.clone(), self.k2.clone()))
    }

    /// Same form with `q/b` in lowest terms (`b = 1` when `q = 0`).
    pub fn normalized(&self) -> Self {
        let qb = RatFn::new(self.q.clone(), self.b.clone());
        let (q, b) = qb.into_parts();
        ResidualForm { q, b, ..self.clone() }
    }

    /// Rewrite `q/b` over a multiple `b_fixed` of `b`.
    pub fn over(&self, b_fixed: &UPoly<E>) -> Option<Self> {
        let cofactor = b_fixed.exact_div(&self.b)?;
        Some(ResidualForm { q: self.q.mul(&cofactor), b: b_fixed.clone(), ..self.clone() })
    }
}

/// Split `den = d1·d2` where `d1` is coprime with `k2` and every
/// irreducible factor of `d2` divides `k2`.
fn split_off_kernel_part<E: BaseField>(den: &UPoly<E>, k2: &UPoly<E>) -> (UPoly<E>, UPoly<E>) {
    let mut d1 = den.clone();
    let mut d2 = UPoly::one();
    loop {
        let g = poly_gcd(&d1, k2);
        if g.is_constant() {
            return (d1, d2);
        }
        d1 = d1.exact_div(&g).expect("gcd divides");
        d2 = d2.mul(&g);
    }
}

/// `s = D_y(h) + h·K + r` for any rational `s`, in the space of `K`.
///
/// Poles of `s` away from `k2` go through shell reduction, poles on the
/// roots of `k2` through kernel reduction. The returned `b` is the
/// squarefree part of the first kind of poles and `q/b` need not be in
/// lowest terms.
pub fn reduce_in_space<E: BaseField>(s: &RatFn<E>, space: &PolyRedSpace<E>) -> Result<(RatFn<E>, ResidualForm<E>)> {
    let ks = &space.ks;
    let k2 = &ks.k2;
    let (d1, d2) = split_off_kernel_part(s.den(), k2);
    let (h_kernel, p2, shell_part) = if d2.is_one() {
        (RatFn::zero(), UPoly::zero(), s.clone())
    } else {
        let (poly, a, bk) = partial_fractions_coprime(s.num(), &d1, &d2)?;
        let mut m = 1u32;
        let mut k2m = k2.clone();
        while !d2.divides(&k2m) {
            m += 1;
            k2m = k2m.mul(k2);
        }
        let num = bk.mul(&k2m.exact_div(&d2).expect("divides"));
        let (p1, p2) = if m == 1 { (UPoly::zero(), num) } else { kernel_reduce(&num, m, ks)? };
        let h = RatFn::new(p1, k2.pow(m - 1));
        (h, p2, RatFn::new(poly.mul(&d1).add(&a), d1))
    };
    let shell = shell_reduce(&shell_part, ks)?;
    let b = shell.b;
    let numer = shell.a.add(&p2.mul(&b));
    let (poly, q, rem) = partial_fractions_coprime(&numer, &b, k2)?;
    let (w, v) = reduce_poly(&k2.mul(&poly).add(&rem), space);
    let h = shell.s1.add(&h_kernel).add(&RatFn::from_poly(w));
    let r = ResidualForm { q, b, v, k2: k2.clone(), support: space.nk_support.clone() };
    Ok((h, r))
}

/// Hermite reduction of `H = S·exp(∫K dy)` for `K ≠ 0`; the residual form
/// is returned normalized.
pub fn hermite_reduce<E: BaseField>(ks: &KernelShell<E>) -> Result<(RatFn<E>, ResidualForm<E>)> {
    if ks.is_rational() {
        return Err(Error::Usage("rational input: use rational_hermite_reduce".into()));
    }
    let space = crate::polyred::build_space(ks)?;
    let (h, r) = reduce_in_space(&ks.shell, &space)?;
    Ok((h, r.normalized()))
}

/// Classical Hermite reduction: `s = D_y(h) + q/b` with `b` squarefree,
/// `deg q < deg b` and `q/b` in lowest terms.
pub fn rational_hermite_reduce<E: BaseField>(s: &RatFn<E>) -> Result<(RatFn<E>, UPoly<E>, UPoly<E>)> {
    let ks = crate::canon::kernel_shell(&RatFn::zero());
    let (h, r) = reduce_in_space(s, &PolyRedSpace::rational(&ks))?;
    let r = r.normalized();
    Ok((h, r.q, r.b))
}

/// True iff `S·exp(∫K dy)` is the y-derivative of a hyperexponential function.
pub fn is_integrable<E: BaseField>(ks: &KernelShell<E>) -> Result<bool> {
    if ks.is_rational() {
        let (_, q, _) = rational_hermite_reduce(&ks.shell)?;
        Ok(q.is_zero())
    } else {
        Ok(hermite_reduce(ks)?.1.is_zero())
    }
}

//! Polynomial reduction modulo `M_K = { k2·D_y(p) + k1·p : p ∈ E[y] }`.
//!
//! `φ(p) = k2·D_y(p) + k1·p` is injective on `E[y]` when `K ≠ 0`, and its
//! image has an echelon basis whose degrees miss only finitely many
//! exponents. The monomials at those exponents span the standard
//! complement `N_K`; reduction maps `p` to its unique component in `N_K`.

use crate::arith::{BaseField, UPoly};
use crate::canon::KernelShell;
use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// Shape of the echelon basis of `M_K`, from `d1 = deg k1`, `d2 = deg k2`
/// and `τ = −lc(k1)/lc(k2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    /// `d1 ≥ d2`
    C1,
    /// `d1 = d2 − 1` and `τ` is not a positive integer
    C2,
    /// `d1 < d2 − 1`
    C3,
    /// `d1 = d2 − 1` and `τ` is a positive integer
    C4,
    /// `K = 0`: `φ = D_y`, every polynomial lies in `M_K`.
    Rational,
}

/// Echelon data for reducing polynomials modulo `M_K`.
#[derive(Clone, Debug)]
pub struct PolyRedSpace<E: BaseField> {
    pub ks: KernelShell<E>,
    pub d1: usize,
    pub d2: usize,
    pub tau: E,
    pub case: Case,
    /// Case 4 only: the basis element `r` of degree `< d1` replacing `φ(y^τ)`.
    pub special: Option<UPoly<E>>,
    /// Preimage of `special` under `φ`.
    special_pre: Option<UPoly<E>>,
    pub nk_support: BTreeSet<usize>,
}

/// `k2·D_y(p) + k1·p`.
pub fn phi<E: BaseField>(p: &UPoly<E>, ks: &KernelShell<E>) -> UPoly<E> {
    ks.k2.mul(&p.deriv()).add(&ks.k1.mul(p))
}

fn phi_monomial<E: BaseField>(n: usize, ks: &KernelShell<E>) -> UPoly<E> {
    let lower = if n == 0 { UPoly::zero() } else { ks.k2.shift(n - 1).scale(&E::from_int(n as i64)) };
    lower.add(&ks.k1.shift(n))
}

/// Classify `K` and compute the support of `N_K`.
pub fn build_space<E: BaseField>(ks: &KernelShell<E>) -> Result<PolyRedSpace<E>> {
    if ks.is_rational() {
        return Err(Error::Usage("polynomial reduction needs a nonzero kernel".into()));
    }
    let d1 = ks.k1.degree().expect("nonzero kernel");
    let d2 = ks.k2.degree().expect("nonzero denominator");
    let tau = ks.k1.lc().div(&ks.k2.lc()).neg();
    let positive_tau = tau.as_integer().and_then(|t| usize::try_from(t).ok()).filter(|&t| t > 0);
    let case = if d1 >= d2 {
        Case::C1
    } else if d1 + 1 == d2 {
        if positive_tau.is_some() {
            Case::C4
        } else {
            Case::C2
        }
    } else {
        Case::C3
    };
    let mut space = PolyRedSpace {
        ks: ks.clone(),
        d1,
        d2,
        tau,
        case,
        special: None,
        special_pre: None,
        nk_support: BTreeSet::new(),
    };
    match case {
        Case::C1 | Case::C2 => space.nk_support = (0..d1).collect(),
        Case::C3 => space.nk_support = (0..d1).chain(d1 + 1..d2).collect(),
        Case::C4 => {
            let t = positive_tau.expect("case 4");
            // reduce φ(y^τ) by φ(yⁿ), n < τ, whose degrees are d1 + n
            let mut r = phi_monomial(t, ks);
            let mut pre = UPoly::monomial(E::one(), t);
            while let Some(deg) = r.degree() {
                if deg < d1 {
                    break;
                }
                let n = deg - d1;
                debug_assert!(n < t);
                let basis = phi_monomial(n, ks);
                let c = r.lc().div(&basis.coeff(deg));
                r = r.sub(&basis.scale(&c));
                pre = pre.sub(&UPoly::monomial(c, n));
            }
            let dr = r.degree().ok_or_else(|| Error::Internal("case 4 residual polynomial vanished".into()))?;
            space.nk_support = (0..d1).filter(|&i| i != dr).chain([d1 + t]).collect();
            space.special = Some(r);
            space.special_pre = Some(pre);
        }
        Case::Rational => unreachable!(),
    }
    Ok(space)
}

impl<E: BaseField> PolyRedSpace<E> {
    /// The space for `K = 0`: `φ = D_y` is onto `E[y]`, so `N_K = {0}`.
    pub fn rational(ks: &KernelShell<E>) -> Self {
        assert!(ks.is_rational(), "rational space needs K = 0");
        PolyRedSpace {
            ks: ks.clone(),
            d1: 0,
            d2: 0,
            tau: E::zero(),
            case: Case::Rational,
            special: None,
            special_pre: None,
            nk_support: BTreeSet::new(),
        }
    }

    /// [`build_space`], or [`PolyRedSpace::rational`] when `K = 0`.
    pub fn for_kernel(ks: &KernelShell<E>) -> Result<Self> {
        if ks.is_rational() {
            Ok(Self::rational(ks))
        } else {
            build_space(ks)
        }
    }

    /// Basis element of `M_K` with leading exponent `deg`, with its
    /// preimage under `φ`; `None` when `y^deg` belongs to `N_K`.
    fn basis_at(&self, deg: usize) -> Option<(UPoly<E>, UPoly<E>)> {
        let (d1, d2) = (self.d1, self.d2);
        let n = match self.case {
            Case::Rational => unreachable!(),
            Case::C1 | Case::C2 => deg.checked_sub(d1)?,
            Case::C3 => {
                if deg == d1 {
                    0
                } else {
                    deg.checked_sub(d2)? + 1
                }
            }
            Case::C4 => {
                if deg < d1 {
                    let r = self.special.as_ref().expect("case 4");
                    if r.degree() == Some(deg) {
                        return Some((r.clone(), self.special_pre.clone().expect("case 4")));
                    }
                    return None;
                }
                if self.nk_support.contains(&deg) {
                    return None;
                }
                deg - d1
            }
        };
        let basis = phi_monomial(n, &self.ks);
        debug_assert_eq!(basis.degree(), Some(deg));
        Some((basis, UPoly::monomial(E::one(), n)))
    }
}

/// `p = φ(w) + v` with `v` supported on `N_K`; returns `(w, v)`.
pub fn reduce_poly<E: BaseField>(p: &UPoly<E>, space: &PolyRedSpace<E>) -> (UPoly<E>, UPoly<E>) {
    if space.case == Case::Rational {
        return (p.integrate(), UPoly::zero());
    }
    let mut rest = p.clone();
    let mut w = UPoly::zero();
    let mut v_coeffs: Vec<E> = Vec::new();
    while let Some(deg) = rest.degree() {
        match space.basis_at(deg) {
            Some((basis, pre)) => {
                let c = rest.lc().div(&basis.lc());
                rest = rest.sub(&basis.scale(&c));
                w = w.add(&pre.scale(&c));
            }
            None => {
                if v_coeffs.len() <= deg {
                    v_coeffs.resize(deg + 1, E::zero());
                }
                v_coeffs[deg] = rest.lc();
                rest = rest.sub(&UPoly::monomial(rest.lc(), deg));
            }
        }
    }
    (w, UPoly::new(v_coeffs))
}

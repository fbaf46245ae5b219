//! Reduction-based creative telescoping with respect to `x`.
//!
//! Writing `H = S·T`, every derivative decomposes as
//! `D_x^i(H) = D_y(u_i·T) + r_i·T` with residual forms `r_i` sharing `b`,
//! `k2` and the support of `N_K`. The first `ℚ(x)`-linear dependency
//! `Σ e_i·r_i = 0` gives a minimal telescoper `L = Σ e_i·D_x^i` with
//! certificate `G = (Σ e_i·u_i)·T`.

use crate::arith::{partial_fractions_coprime, poly_gcd, Int, QPoly, Qx, Qxy, Rat, RatFn, Ring, UPoly, X, Y};
use crate::canon::{validate_descriptor, HyperexpDescriptor, KernelShell};
use crate::error::{Error, Result};
use crate::hermite::{reduce_in_space, ResidualForm};
use crate::polyred::{reduce_poly, PolyRedSpace};
use crate::reductions::{kernel_reduce, shell_reduce};

/// `D_x^i(H) = D_y(u_i·T) + r_i·T`; `u` is tracked only when certifying.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionState {
    pub i: usize,
    pub r: ResidualForm<Qx>,
    pub u: Option<Qxy>,
}

/// A minimal telescoper `L = Σ e_i·D_x^i` with coefficients in ℤ\[x\],
/// jointly primitive, `lc(e_ρ) > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TelescoperResult {
    pub coeffs: Vec<QPoly>,
    pub order: usize,
    /// `u` with `L(H) = D_y(u·T)`, where `T = H/S`.
    pub certificate: Option<Qxy>,
    pub bound_used: usize,
}

/// `deg b + max(deg k1, deg k2 − 1)` with `b` the squarefree part of the
/// shell's denominator; `deg b` alone when `K = 0`.
pub fn order_bound(ks: &KernelShell<Qx>) -> usize {
    let b = crate::arith::squarefree_part(ks.shell.den()).expect("nonzero denominator");
    let deg_b = b.deg() as usize;
    if ks.is_rational() {
        return deg_b;
    }
    let extra = (ks.k1.deg()).max(ks.k2.deg() - 1).max(0) as usize;
    deg_b + extra
}

/// Apagodu–Zeilberger order bound `deg r2 + max(deg r1, deg r2) + Σ deg p_i − 1`
/// for `H = ∏ p_i^(c_i) · exp(r1/r2)` (degrees in `y`).
pub fn az_bound(deg_r1: usize, deg_r2: usize, deg_ps: &[usize]) -> i64 {
    (deg_r2 + deg_r1.max(deg_r2) + deg_ps.iter().sum::<usize>()) as i64 - 1
}

/// Coefficients of `q` below `deg b`, then those of `v` on the support.
pub fn residual_vector(r: &ResidualForm<Qx>) -> Vec<Qx> {
    let deg_b = r.b.deg().max(0) as usize;
    (0..deg_b).map(|i| r.q.coeff(i)).chain(r.support.iter().map(|&i| r.v.coeff(i))).collect()
}

/// State for `i = 0`: the Hermite reduction of the shell.
pub fn initial_state(desc: &HyperexpDescriptor, space: &PolyRedSpace<Qx>, certify: bool) -> Result<ReductionState> {
    let (h, r) = reduce_in_space(&desc.ks.shell, space)?;
    Ok(ReductionState { i: 0, r, u: certify.then_some(h) })
}

/// From `D_x^i(H)` to `D_x^(i+1)(H)`: differentiate `r_i·T` and reduce the
/// pieces with the poles they can carry, keeping `b` fixed.
pub fn derivative_step(
    state: &ReductionState,
    desc: &HyperexpDescriptor,
    space: &PolyRedSpace<Qx>,
    certify: bool,
) -> Result<ReductionState> {
    let ks = &desc.ks;
    let k2 = &ks.k2;
    let a = desc.ft_numerator();
    let ResidualForm { q, b, v, .. } = &state.r;

    // −q·D_x(b)/b², poles only at roots of b
    let shell_piece = RatFn::new(q.mul(&b.derive(X)).neg(), b.mul(b));
    let shell = shell_reduce(&shell_piece, ks)?;
    let shell_num = shell.a.mul(
        &b.exact_div(&shell.b)
            .ok_or_else(|| Error::Internal("shell remainder denominator does not divide b".into()))?,
    );

    // (a − D_x(k2))·v/k2²
    let (p1, p2) =
        if v.is_zero() { (UPoly::zero(), UPoly::zero()) } else { kernel_reduce(&a.sub(&k2.derive(X)).mul(v), 2, ks)? };

    // everything over b·k2
    let numer = shell_num.add(&a.mul(q)).add(&q.derive(X).mul(k2)).add(&v.derive(X).add(&p2).mul(b));
    let (poly, q_next, rem) = partial_fractions_coprime(&numer, b, k2)?;
    let (w, v_next) = reduce_poly(&k2.mul(&poly).add(&rem), space);

    let u = match (&state.u, certify) {
        (Some(u), true) => Some(
            u.derive(X).add(&u.mul(&desc.ft)).add(&shell.s1).add(&RatFn::new(p1, k2.clone())).add(&RatFn::from_poly(w)),
        ),
        _ => None,
    };
    let r = ResidualForm { q: q_next, b: b.clone(), v: v_next, k2: k2.clone(), support: state.r.support.clone() };
    Ok(ReductionState { i: state.i + 1, r, u })
}

/// Divide by the polynomial gcd and the integer content; returns false if
/// all entries are zero.
fn make_primitive(polys: &mut [QPoly]) -> bool {
    let mut g = QPoly::zero();
    for p in polys.iter() {
        g = poly_gcd(&g, p);
    }
    if g.is_zero() {
        return false;
    }
    let mut den_lcm = Int::from(1);
    let mut num_gcd = Int::new();
    for p in polys.iter_mut() {
        *p = p.exact_div(&g).expect("gcd divides");
        for c in p.coeffs() {
            den_lcm.lcm_mut(c.denom());
            num_gcd.gcd_mut(c.numer());
        }
    }
    let scale = Rat::from((den_lcm, num_gcd));
    for p in polys.iter_mut() {
        *p = p.scale(&scale);
    }
    true
}

fn lcm_den(entries: &[Qx]) -> QPoly {
    let mut l = QPoly::one();
    for c in entries {
        let g = poly_gcd(&l, c.den());
        l = l.mul(&c.den().exact_div(&g).expect("gcd divides"));
    }
    l
}

#[derive(Clone, Debug)]
struct Row {
    entries: Vec<QPoly>,
    aug: Vec<QPoly>,
    pivot: usize,
}

/// Incremental fraction-free elimination over ℚ\[x\]; reports the first
/// vector that is a ℚ(x)-combination of its predecessors.
#[derive(Clone, Debug, Default)]
pub struct Eliminator {
    rows: Vec<Row>,
    count: usize,
}

impl Eliminator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add the next vector; on dependency returns `η` with
    /// `Σ η_j·vector_j = 0` and `η_last ≠ 0`.
    pub fn push(&mut self, vector: &[Qx]) -> Option<Vec<QPoly>> {
        let n = self.count;
        self.count += 1;
        let delta = lcm_den(vector);
        let mut entries: Vec<QPoly> =
            vector.iter().map(|c| c.num().mul(&delta.exact_div(c.den()).expect("lcm"))).collect();
        let mut aug = vec![QPoly::zero(); n + 1];
        aug[n] = delta;
        for row in &self.rows {
            let c = entries[row.pivot].clone();
            if c.is_zero() {
                continue;
            }
            let pi = &row.entries[row.pivot];
            for (e, re) in entries.iter_mut().zip(&row.entries) {
                *e = e.mul(pi).sub(&c.mul(re));
            }
            for (j, e) in aug.iter_mut().enumerate() {
                let re = row.aug.get(j).cloned().unwrap_or_else(QPoly::zero);
                *e = e.mul(pi).sub(&c.mul(&re));
            }
            let mut all: Vec<QPoly> = entries.iter().chain(&aug).cloned().collect();
            make_primitive(&mut all);
            let (e2, a2) = all.split_at(entries.len());
            entries = e2.to_vec();
            aug = a2.to_vec();
        }
        let pivot =
            entries.iter().enumerate().filter(|(_, e)| !e.is_zero()).min_by_key(|(_, e)| e.deg()).map(|(i, _)| i);
        match pivot {
            Some(pivot) => {
                self.rows.push(Row { entries, aug, pivot });
                None
            }
            None => {
                assert!(!aug[n].is_zero(), "earlier vectors must be independent");
                Some(aug)
            }
        }
    }
}

/// First dependency of the sequence, if any, over ℚ(x).
pub fn find_dependency(vectors: &[Vec<Qx>]) -> Option<Vec<Qx>> {
    let mut elim = Eliminator::new();
    for v in vectors {
        if let Some(eta) = elim.push(v) {
            return Some(eta.into_iter().map(RatFn::from_poly).collect());
        }
    }
    None
}

/// Primitive integer coefficients with positive leading coefficient of the last one.
pub fn normalize_operator(mut coeffs: Vec<QPoly>) -> Vec<QPoly> {
    if !make_primitive(&mut coeffs) {
        return coeffs;
    }
    let last = coeffs.iter().rev().find(|c| !c.is_zero()).expect("nonzero");
    if last.lc() < 0 {
        coeffs = coeffs.iter().map(|c| c.neg()).collect();
    }
    coeffs
}

/// Minimal telescoper of the hyperexponential function described by `desc`,
/// with its certificate when `certify` is set.
pub fn hermite_telescoping(desc: &HyperexpDescriptor, certify: bool) -> Result<TelescoperResult> {
    let space = PolyRedSpace::for_kernel(&desc.ks)?;
    let bound = order_bound(&desc.ks);
    let mut state = initial_state(desc, &space, certify)?;
    let mut certs = Vec::new();
    let mut elim = Eliminator::new();
    loop {
        certs.extend(state.u.clone());
        if let Some(eta) = elim.push(&residual_vector(&state.r)) {
            let coeffs = normalize_operator(eta);
            let certificate = certify.then(|| {
                coeffs
                    .iter()
                    .zip(&certs)
                    .fold(Qxy::zero(), |acc, (e, u)| acc.add(&u.mul(&Qxy::constant(RatFn::from_poly(e.clone())))))
            });
            return Ok(TelescoperResult { order: coeffs.len() - 1, coeffs, certificate, bound_used: bound });
        }
        if state.i >= bound {
            return Err(Error::Internal(format!("no telescoper found up to the order bound {bound}")));
        }
        state = derivative_step(&state, desc, &space, certify)?;
    }
}

/// Telescoper of a rational function `r ∈ ℚ(x, y)`.
pub fn rational_telescope(r: &Qxy, certify: bool) -> Result<TelescoperResult> {
    if r.is_zero() {
        return Err(Error::Input("the zero function has no minimal telescoper".into()));
    }
    let desc = validate_descriptor(&r.derive(X).div(r), &r.derive(Y).div(r))?;
    debug_assert!(desc.ks.is_rational());
    hermite_telescoping(&desc, certify)
}

/// The coefficients as elements of ℚ(x).
pub fn coeffs_qx(result: &TelescoperResult) -> Vec<Qx> {
    result.coeffs.iter().cloned().map(RatFn::from_poly).collect()
}

/// Rational shell multiplier `G/H = u/S` of the certificate.
pub fn certificate_over_h(desc: &HyperexpDescriptor, u: &Qxy) -> Qxy {
    u.div(&desc.ks.shell)
}

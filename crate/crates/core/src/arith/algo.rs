//! Gcd, Bézout, squarefree, resultant, partial fractions and integer roots.

use super::{BaseField, Field, Int, Rat, Ring, UPoly};
use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// Euclid's algorithm with monic remainders.
pub(crate) fn euclid_gcd<F: Field>(a: &UPoly<F>, b: &UPoly<F>) -> UPoly<F> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let (mut r0, mut r1) = if a.deg() >= b.deg() { (a.monic(), b.monic()) } else { (b.monic(), a.monic()) };
    while !r1.is_zero() {
        if r1.is_constant() {
            return UPoly::one();
        }
        let r = r0.rem(&r1).monic();
        r0 = r1;
        r1 = r;
    }
    r0
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn poly_gcd<F: Field>(p: &UPoly<F>, q: &UPoly<F>) -> UPoly<F> {
    F::poly_gcd(p, q)
}

/// Extended Euclid: `(g, s, t)` with `s·p + t·q = g = gcd(p, q)`,
/// `deg s < deg(q/g)` and `deg t < deg(p/g)`.
pub fn extended_euclid<F: Field>(p: &UPoly<F>, q: &UPoly<F>) -> Result<(UPoly<F>, UPoly<F>, UPoly<F>)> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::Usage("extended_euclid of two zero polynomials".into()));
    }
    if q.is_zero() {
        let inv = p.lc().inv();
        return Ok((p.scale(&inv), UPoly::constant(inv), UPoly::zero()));
    }
    if p.is_zero() {
        let inv = q.lc().inv();
        return Ok((q.scale(&inv), UPoly::zero(), UPoly::constant(inv)));
    }
    let (mut r0, mut r1) = (p.clone(), q.clone());
    let (mut s0, mut s1) = (UPoly::one(), UPoly::zero());
    while !r1.is_zero() {
        let (quo, rem) = r0.div_rem(&r1);
        let s2 = s0.sub(&quo.mul(&s1));
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
    }
    let inv = r0.lc().inv();
    let g = r0.scale(&inv);
    let q_red = q.exact_div(&g).expect("gcd divides q");
    let s = s0.scale(&inv).rem(&q_red);
    let t = g.sub(&s.mul(p)).exact_div(q).expect("Bezout identity");
    Ok((g, s, t))
}

/// `p / gcd(p, p')` made monic.
pub fn squarefree_part<F: Field>(p: &UPoly<F>) -> Result<UPoly<F>> {
    if p.is_zero() {
        return Err(Error::Usage("squarefree part of the zero polynomial".into()));
    }
    let g = poly_gcd(p, &p.deriv());
    Ok(p.exact_div(&g).expect("gcd divides").monic())
}

/// Yun's algorithm: monic `a_1, …, a_k`, pairwise coprime and squarefree,
/// with `monic(p) = a_1 · a_2² ⋯ a_k^k`. Empty for constants.
pub fn squarefree_decomposition<F: Field>(p: &UPoly<F>) -> Vec<UPoly<F>> {
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let p = p.monic();
    let dp = p.deriv();
    let a0 = poly_gcd(&p, &dp);
    let mut b = p.exact_div(&a0).expect("gcd divides");
    let c = dp.exact_div(&a0).expect("gcd divides");
    let mut d = c.sub(&b.deriv());
    while !b.is_constant() {
        let a = poly_gcd(&b, &d);
        b = b.exact_div(&a).expect("gcd divides");
        let c = d.exact_div(&a).expect("gcd divides");
        d = c.sub(&b.deriv());
        out.push(a.monic());
    }
    out
}

/// `a/(b·c) = p + q/b + r/c` with `deg q < deg b`, `deg r < deg c`.
pub fn partial_fractions_coprime<F: Field>(
    a: &UPoly<F>,
    b: &UPoly<F>,
    c: &UPoly<F>,
) -> Result<(UPoly<F>, UPoly<F>, UPoly<F>)> {
    if b.is_zero() || c.is_zero() {
        return Err(Error::Precondition("partial fractions with a zero denominator".into()));
    }
    let (g, s, _) = extended_euclid(c, b)?;
    if !g.is_one() {
        return Err(Error::Precondition("partial fractions with non-coprime denominators".into()));
    }
    let (p, rem) = a.div_rem(&b.mul(c));
    // s·c ≡ 1 (mod b)
    let q = rem.mul(&s).rem(b);
    let r = rem.sub(&q.mul(c)).exact_div(b).expect("partial fraction split");
    Ok((p, q, r))
}

fn resultant_nonzero<F: Field>(p: &UPoly<F>, q: &UPoly<F>) -> F {
    let mut a = p.clone();
    let mut b = q.clone();
    let mut acc = F::one();
    loop {
        let m = a.degree().expect("nonzero");
        let n = b.degree().expect("nonzero");
        if n == 0 {
            return acc.mul(&b.lc().pow(m as u32));
        }
        if m == 0 {
            return acc.mul(&a.lc().pow(n as u32));
        }
        let r = a.rem(&b);
        if r.is_zero() {
            return F::zero();
        }
        let k = r.degree().expect("nonzero");
        let mut factor = b.lc().pow((m - k) as u32);
        if (m * n) % 2 == 1 {
            factor = factor.neg();
        }
        acc = acc.mul(&factor);
        a = b;
        b = r;
    }
}

/// Determinant of the Sylvester matrix of `p` and `q` with the rows of `p`
/// first, i.e. `lc(p)^deg(q) · ∏ q(α)` over the roots `α` of `p`.
pub fn resultant<F: Field>(p: &UPoly<F>, q: &UPoly<F>) -> Result<F> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::Usage("resultant of a zero polynomial".into()));
    }
    Ok(resultant_nonzero(p, q))
}

/// `P(z) = res_y(b, a − z·b')` as a polynomial in the auxiliary variable `z`,
/// taking `a − z·b'` at its formal degree `max(deg a, deg b − 1)`.
///
/// The integer roots of `P` are the integers `i` with `gcd(b, a − i·b') ≠ 1`.
pub fn residue_resultant<F: Field>(a: &UPoly<F>, b: &UPoly<F>) -> UPoly<F> {
    let nb = match b.degree() {
        Some(n) if n > 0 => n,
        _ => return UPoly::one(),
    };
    let db = b.deriv();
    let formal = a.deg().max(db.deg()).max(0) as u32;
    let points: Vec<F> = (0..=nb as i64).map(F::from_int).collect();
    let values: Vec<F> = points
        .iter()
        .map(|z| {
            let az = a.sub(&db.scale(z));
            if az.is_zero() {
                return F::zero();
            }
            let drop = formal - az.deg() as u32;
            resultant_nonzero(b, &az).mul(&b.lc().pow(drop))
        })
        .collect();
    interpolate(&points, &values)
}

/// Newton interpolation through `(points[i], values[i])`.
fn interpolate<F: Field>(points: &[F], values: &[F]) -> UPoly<F> {
    let n = points.len();
    let mut dd = values.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = dd[i].sub(&dd[i - 1]);
            let den = points[i].sub(&points[i - j]);
            dd[i] = num.div(&den);
        }
    }
    let mut out = UPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = UPoly::new(vec![points[i].neg(), F::one()]);
        out = out.mul(&lin).add(&UPoly::constant(dd[i].clone()));
    }
    out
}

/// Integer roots of a nonzero polynomial over ℚ, by Sturm-sequence bisection.
pub fn integer_roots_rational(p: &UPoly<Rat>) -> Result<BTreeSet<Int>> {
    if p.is_zero() {
        return Err(Error::Usage("integer roots of the zero polynomial".into()));
    }
    let mut roots = BTreeSet::new();
    if p.is_constant() {
        return Ok(roots);
    }
    let mut sq = integer_primitive(&squarefree_part(p)?);
    if sq[0] == 0 {
        roots.insert(Int::new());
        sq.remove(0);
    }
    if sq.len() <= 1 {
        return Ok(roots);
    }
    let sturm = sturm_sequence(&sq);
    // Cauchy bound on |root|
    let lc = Int::from(sq.last().unwrap().abs_ref());
    let mut bound = Int::new();
    for c in &sq[..sq.len() - 1] {
        let q = Int::from(c.abs_ref()).div_rem_ceil(lc.clone()).0;
        bound = bound.max(q);
    }
    bound += 1;
    let lo = Int::from(-&bound) - 1;
    let hi = bound;
    let v_lo = sign_changes(&sturm, &lo);
    let v_hi = sign_changes(&sturm, &hi);
    isolate(&sturm, &sq, lo, v_lo, hi, v_hi, &mut roots);
    Ok(roots)
}

/// Collect integer roots in `(lo, hi]` given the Sturm counts at both ends.
fn isolate(sturm: &[Vec<Int>], p: &[Int], lo: Int, v_lo: usize, hi: Int, v_hi: usize, out: &mut BTreeSet<Int>) {
    if v_lo <= v_hi {
        return;
    }
    if Int::from(&hi - &lo) == 1 {
        if eval_int(p, &hi) == 0 {
            out.insert(hi);
        }
        return;
    }
    let mid = Int::from(&lo + &hi) >> 1u32;
    let v_mid = sign_changes(sturm, &mid);
    isolate(sturm, p, lo, v_lo, mid.clone(), v_mid, out);
    isolate(sturm, p, mid, v_mid, hi, v_hi, out);
}

fn integer_primitive(p: &UPoly<Rat>) -> Vec<Int> {
    let ints = integer_multiple(p);
    let g = ints.iter().fold(Int::new(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c.div_exact(&g)).collect()
}

/// `lcm(denominators)·p`, coefficients over ℤ.
fn integer_multiple(p: &UPoly<Rat>) -> Vec<Int> {
    let lcm = p.coeffs().iter().fold(Int::from(1), |acc, c| acc.lcm(c.denom()));
    p.coeffs().iter().map(|c| Int::from(&lcm / c.denom()) * c.numer()).collect()
}

fn eval_int(p: &[Int], t: &Int) -> Int {
    p.iter().rev().fold(Int::new(), |acc, c| acc * t + c)
}

/// Sturm sequence with integer coefficients (scaled by positive constants).
fn sturm_sequence(p: &[Int]) -> Vec<Vec<Int>> {
    let to_poly = |v: &[Int]| UPoly::new(v.iter().map(|c| Rat::from(c.clone())).collect());
    let mut seq = vec![to_poly(p)];
    seq.push(seq[0].deriv());
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(r.neg());
    }
    // positive scaling keeps the signs
    seq.iter().map(integer_multiple).collect()
}

fn sign_changes(seq: &[Vec<Int>], t: &Int) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for s in seq {
        let v = eval_int(s, t);
        if v == 0 {
            continue;
        }
        let pos = v > 0;
        if last.is_some_and(|l| l != pos) {
            count += 1;
        }
        last = Some(pos);
    }
    count
}

/// Specialize `x` at `1, 2, …` until every coefficient is defined, every
/// leading coefficient survives and `accept` returns a value.
fn specialize_poly<F: BaseField, T>(
    ps: &[&UPoly<F>],
    mut accept: impl FnMut(Vec<UPoly<Rat>>) -> Option<T>,
) -> Option<T> {
    'points: for k in 1..=10_000i64 {
        let x0 = Rat::from(k);
        let mut out = Vec::with_capacity(ps.len());
        for p in ps {
            let mut cs = Vec::with_capacity(p.coeffs().len());
            for c in p.coeffs() {
                match c.specialize(&x0) {
                    Some(v) => cs.push(v),
                    None => continue 'points,
                }
            }
            if cs.last().is_some_and(Ring::is_zero) {
                continue 'points;
            }
            out.push(UPoly::new(cs));
        }
        if let Some(t) = accept(out) {
            return Some(t);
        }
    }
    None
}

/// All integers `i` with `P(i) = 0` identically.
///
/// Over ℚ(x) the candidates come from the polynomial specialized at the first
/// sample point `x₀ = 1, 2, …` where no coefficient denominator and not the
/// leading coefficient vanishes; each candidate is then checked exactly.
pub fn integer_roots<F: BaseField>(p: &UPoly<F>) -> Result<BTreeSet<Int>> {
    if p.is_zero() {
        return Err(Error::Usage("integer roots of the zero polynomial".into()));
    }
    let spec = specialize_poly(&[p], |mut s| s.pop())
        .ok_or_else(|| Error::Internal("no usable specialization point".into()))?;
    let candidates = integer_roots_rational(&spec)?;
    Ok(candidates.into_iter().filter(|i| p.eval(&F::from_rat(&Rat::from(i.clone()))).is_zero()).collect())
}

/// Integers `i` for which `gcd(b, a − i·b')` is nontrivial.
///
/// Candidates are the integer roots of `res_y(b, a − z·b')` after
/// specializing `x`; each is confirmed with an exact gcd over `F`.
pub fn integer_residues<F: BaseField>(a: &UPoly<F>, b: &UPoly<F>) -> BTreeSet<Int> {
    if b.is_constant() || a.is_zero() {
        return BTreeSet::new();
    }
    let db = b.deriv();
    // a point where a and b acquire a common root makes the resultant vanish
    let p = specialize_poly(&[a, b, &db], |s| Some(residue_resultant(&s[0], &s[1])).filter(|p| !p.is_zero()))
        .expect("no usable specialization point");
    let candidates = integer_roots_rational(&p).expect("nonzero");
    candidates
        .into_iter()
        .filter(|i| {
            let z = F::from_rat(&Rat::from(i.clone()));
            !poly_gcd(b, &a.sub(&db.scale(&z))).is_constant()
        })
        .collect()
}

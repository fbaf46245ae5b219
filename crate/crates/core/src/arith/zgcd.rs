//! Arithmetic over ℚ\[x\] and gcds over ℚ(x)\[y\] computed on integer images.
//!
//! Products and divisions in ℚ\[x\] run over a common denominator. For
//! gcds, inputs are cleared of denominators and handed to the heuristic gcd
//! (evaluate at a large integer, take an integer gcd, read the result back
//! in balanced base ξ, confirm by trial division). When the heuristic gives
//! up, a primitive pseudo-remainder sequence takes over.

use super::{Int, QPoly, Qx, QxPoly, Rat, UPoly};

/// Dense polynomial over ℤ, lowest degree first, no trailing zeros.
type ZPoly = Vec<Int>;
/// Polynomial in `y` with [`ZPoly`] coefficients in `x`.
type ZPoly2 = Vec<ZPoly>;

const HEURISTIC_ATTEMPTS: usize = 6;
/// Give up on the heuristic once evaluations would exceed this many bits.
const MAX_EVAL_BITS: u64 = 4_000_000;

fn trim(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(|c| *c == 0) {
        p.pop();
    }
    p
}

fn trim2(mut p: ZPoly2) -> ZPoly2 {
    while p.last().is_some_and(|c| c.is_empty()) {
        p.pop();
    }
    p
}

fn is_one(p: &[Int]) -> bool {
    p.len() == 1 && p[0] == 1
}

fn content(p: &[Int]) -> Int {
    let mut g = Int::new();
    for c in p {
        g.gcd_mut(c);
        if g == 1 {
            break;
        }
    }
    g
}

fn max_norm(p: &[Int]) -> Int {
    p.iter().map(|c| Int::from(c.abs_ref())).max().unwrap_or_default()
}

fn div_exact_scalar(p: &[Int], c: &Int) -> ZPoly {
    p.iter().map(|a| Int::from(a.div_exact_ref(c))).collect()
}

/// Primitive part with a positive leading coefficient.
fn primitive(p: &[Int]) -> ZPoly {
    let Some(lc) = p.last() else {
        return Vec::new();
    };
    let mut c = content(p);
    if *lc < 0 {
        c = -c;
    }
    if c == 1 {
        return p.to_vec();
    }
    div_exact_scalar(p, &c)
}

fn zmul(a: &[Int], b: &[Int]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Int::new(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// `a −= b·c`.
fn zsub_mul(a: &mut ZPoly, b: &[Int], c: &[Int]) {
    if b.is_empty() || c.is_empty() {
        return;
    }
    let n = b.len() + c.len() - 1;
    if a.len() < n {
        a.resize(n, Int::new());
    }
    for (i, x) in b.iter().enumerate() {
        for (j, y) in c.iter().enumerate() {
            a[i + j] -= x * y;
        }
    }
    *a = trim(std::mem::take(a));
}

fn zscale(a: &[Int], c: &Int) -> ZPoly {
    if *c == 0 {
        return Vec::new();
    }
    a.iter().map(|x| Int::from(x * c)).collect()
}

/// `a / b` over ℤ if `b` divides `a` exactly.
fn zexact_div(a: &[Int], b: &[Int]) -> Option<ZPoly> {
    let lb = b.len();
    let lc = b.last().expect("nonzero divisor");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < lb {
        return None;
    }
    let mut r: ZPoly = a.to_vec();
    let mut q = vec![Int::new(); a.len() - lb + 1];
    for i in (0..q.len()).rev() {
        let top = &r[i + lb - 1];
        if *top == 0 {
            continue;
        }
        if !top.is_divisible(lc) {
            return None;
        }
        let qi = Int::from(top.div_exact_ref(lc));
        for (j, c) in b.iter().enumerate() {
            r[i + j] -= &qi * c;
        }
        q[i] = qi;
    }
    r.iter().all(|c| *c == 0).then(|| trim(q))
}

fn eval(p: &[Int], xi: &Int) -> Int {
    let mut acc = Int::new();
    for c in p.iter().rev() {
        acc *= xi;
        acc += c;
    }
    acc
}

/// Digits of `gamma` in balanced base `xi`, each of absolute value at most `xi/2`.
fn balanced_digits(mut gamma: Int, xi: &Int) -> ZPoly {
    let mut out = Vec::new();
    while gamma != 0 {
        let (q, r) = gamma.div_rem_round(xi.clone());
        out.push(r);
        gamma = q;
    }
    out
}

fn next_point(xi: &Int) -> Int {
    Int::from(xi * 73794u32) / 27011u32
}

/// Pseudo-remainder of `a` by `b`.
fn prem(a: &[Int], b: &[Int]) -> ZPoly {
    let lb = b.len();
    let lc = b.last().expect("nonzero divisor");
    let mut r: ZPoly = a.to_vec();
    while r.len() >= lb {
        let top = r.last().expect("nonempty").clone();
        let shift = r.len() - lb;
        for c in r.iter_mut() {
            *c *= lc;
        }
        for (j, c) in b.iter().enumerate() {
            r[shift + j] -= &top * c;
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn prs_gcd(a: &[Int], b: &[Int]) -> ZPoly {
    let (mut r0, mut r1) = if a.len() >= b.len() { (primitive(a), primitive(b)) } else { (primitive(b), primitive(a)) };
    while !r1.is_empty() {
        if r1.len() == 1 {
            return vec![Int::from(1)];
        }
        let r = primitive(&prem(&r0, &r1));
        r0 = r1;
        r1 = r;
    }
    r0
}

/// Gcd of two primitive nonzero polynomials, primitive with positive leading coefficient.
fn gcd_primitive(a: &[Int], b: &[Int]) -> ZPoly {
    if a.len() == 1 || b.len() == 1 {
        return vec![Int::from(1)];
    }
    if a == b {
        return primitive(a);
    }
    let mut xi: Int = max_norm(a).min(max_norm(b)) * 2u32 + 29u32;
    let len = a.len().max(b.len()) as u64;
    for _ in 0..HEURISTIC_ATTEMPTS {
        if u64::from(xi.significant_bits()) * len > MAX_EVAL_BITS {
            break;
        }
        let gamma = eval(a, &xi).gcd(&eval(b, &xi));
        let g = primitive(&balanced_digits(gamma, &xi));
        if !g.is_empty() && zexact_div(a, &g).is_some() && zexact_div(b, &g).is_some() {
            return g;
        }
        xi = next_point(&xi);
    }
    prs_gcd(a, b)
}

/// Full gcd over ℤ\[x\] (content included), positive leading coefficient.
fn gcd_full(a: &[Int], b: &[Int]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        let p = if a.is_empty() { b } else { a };
        return if p.last().is_some_and(|c| *c < 0) { p.iter().map(|c| Int::from(-c)).collect() } else { p.to_vec() };
    }
    let (ca, cb) = (content(a), content(b));
    let c = Int::from(ca.gcd_ref(&cb));
    let g = gcd_primitive(&div_exact_scalar(a, &ca), &div_exact_scalar(b, &cb));
    zscale(&g, &c)
}

/// `(P, d)` with `p = P/d`, `P` over ℤ and `d > 0`.
fn integer_image_with_den(p: &QPoly) -> (ZPoly, Int) {
    let mut l = Int::from(1);
    for c in p.coeffs() {
        if *c.denom() != 1 {
            l.lcm_mut(c.denom());
        }
    }
    let image = p
        .coeffs()
        .iter()
        .map(|c| if l == 1 { c.numer().clone() } else { Int::from(l.div_exact_ref(c.denom())) * c.numer() })
        .collect();
    (image, l)
}

fn integer_image(p: &QPoly) -> ZPoly {
    integer_image_with_den(p).0
}

fn from_integer_image(p: &[Int]) -> QPoly {
    UPoly::new(p.iter().map(|c| Rat::from(c.clone())).collect())
}

fn over_denominator(p: &[Int], d: &Int) -> QPoly {
    if *d == 1 {
        return from_integer_image(p);
    }
    UPoly::new(p.iter().map(|c| Rat::from((c.clone(), d.clone()))).collect())
}

/// Product in ℚ\[x\] over a common denominator.
pub(crate) fn rational_mul(a: &QPoly, b: &QPoly) -> QPoly {
    let (ia, da) = integer_image_with_den(a);
    let (ib, db) = integer_image_with_den(b);
    over_denominator(&zmul(&ia, &ib), &(da * db))
}

/// Division in ℚ\[x\] by pseudo-division over ℤ, scaling only when needed.
pub(crate) fn rational_div_rem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let (ia, da) = integer_image_with_den(a);
    let (ib, db) = integer_image_with_den(b);
    let n = ib.len() - 1;
    let lc = &ib[n];
    let mut rem = ia;
    let mut quot = vec![Int::new(); rem.len() - n];
    // s·A = Q·B + R
    let mut s = Int::from(1);
    for k in (0..quot.len()).rev() {
        if rem[k + n] == 0 {
            continue;
        }
        if !rem[k + n].is_divisible(lc) {
            let g = Int::from(rem[k + n].gcd_ref(lc));
            let mult = Int::from(lc.div_exact_ref(&g));
            for c in rem.iter_mut().chain(quot.iter_mut()) {
                *c *= &mult;
            }
            s *= &mult;
        }
        let qk = Int::from(rem[k + n].div_exact_ref(lc));
        for (j, c) in ib.iter().enumerate() {
            rem[k + j] -= &qk * c;
        }
        quot[k] = qk;
    }
    rem.truncate(n);
    let den = da * &s;
    let quot: ZPoly = quot.iter().map(|c| Int::from(c * &db)).collect();
    (over_denominator(&quot, &den), over_denominator(&trim(rem), &den))
}

/// Monic gcd in ℚ\[x\].
pub(crate) fn rational_gcd(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return UPoly::one();
    }
    let g = gcd_primitive(&primitive(&integer_image(a)), &primitive(&integer_image(b)));
    from_integer_image(&g).monic()
}

fn norm2(p: &[ZPoly]) -> Int {
    p.iter().map(|c| max_norm(c)).max().unwrap_or_default()
}

/// Gcd over ℤ\[x\] of all coefficients, with positive leading coefficient.
fn content2(p: &[ZPoly]) -> ZPoly {
    let mut g: ZPoly = Vec::new();
    for c in p {
        g = gcd_full(&g, c);
        if is_one(&g) {
            break;
        }
    }
    g
}

/// Divide out the ℤ\[x\]-content and make the leading coefficient's leading coefficient positive.
fn primitive2(p: &[ZPoly]) -> ZPoly2 {
    let Some(lc) = p.last() else {
        return Vec::new();
    };
    let mut c = content2(p);
    if *lc.last().expect("trimmed") < 0 {
        c = c.into_iter().map(|x| -x).collect();
    }
    if is_one(&c) {
        return p.to_vec();
    }
    p.iter().map(|a| zexact_div(a, &c).expect("content divides")).collect()
}

fn exact_div2(a: &[ZPoly], b: &[ZPoly]) -> Option<ZPoly2> {
    let lb = b.len();
    let lc = b.last().expect("nonzero divisor");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < lb {
        return None;
    }
    let mut r: ZPoly2 = a.to_vec();
    let mut q = vec![Vec::new(); a.len() - lb + 1];
    for i in (0..q.len()).rev() {
        if r[i + lb - 1].is_empty() {
            continue;
        }
        let qi = zexact_div(&r[i + lb - 1], lc)?;
        for (j, c) in b.iter().enumerate() {
            zsub_mul(&mut r[i + j], &qi, c);
        }
        q[i] = qi;
    }
    r.iter().all(|c| c.is_empty()).then(|| trim2(q))
}

fn prem2(a: &[ZPoly], b: &[ZPoly]) -> ZPoly2 {
    let lb = b.len();
    let lc = b.last().expect("nonzero divisor");
    let mut r: ZPoly2 = a.to_vec();
    while r.len() >= lb {
        let top = r.last().expect("nonempty").clone();
        let shift = r.len() - lb;
        r = r.iter().map(|c| zmul(c, lc)).collect();
        for (j, c) in b.iter().enumerate() {
            zsub_mul(&mut r[shift + j], &top, c);
        }
        r.pop();
        r = trim2(r);
    }
    r
}

fn prs_gcd2(a: &[ZPoly], b: &[ZPoly]) -> ZPoly2 {
    let (mut r0, mut r1) = if a.len() >= b.len() { (a.to_vec(), b.to_vec()) } else { (b.to_vec(), a.to_vec()) };
    while !r1.is_empty() {
        if r1.len() == 1 {
            return vec![vec![Int::from(1)]];
        }
        let r = primitive2(&prem2(&r0, &r1));
        r0 = r1;
        r1 = r;
    }
    primitive2(&r0)
}

/// Gcd of two nonzero polynomials in `y` that are primitive over ℤ\[x\].
fn gcd_primitive2(a: &[ZPoly], b: &[ZPoly]) -> ZPoly2 {
    if a.len() == 1 || b.len() == 1 {
        return vec![vec![Int::from(1)]];
    }
    if a == b {
        return a.to_vec();
    }
    let mut xi: Int = norm2(a).min(norm2(b)) * 2u32 + 29u32;
    let xdeg = a.iter().chain(b).map(|c| c.len()).max().unwrap_or(1) as u64;
    let ydeg = a.len().max(b.len()) as u64;
    for _ in 0..HEURISTIC_ATTEMPTS {
        if u64::from(xi.significant_bits()) * xdeg * ydeg > MAX_EVAL_BITS {
            break;
        }
        let ea: ZPoly = trim(a.iter().map(|c| eval(c, &xi)).collect());
        let eb: ZPoly = trim(b.iter().map(|c| eval(c, &xi)).collect());
        let gamma = gcd_full(&ea, &eb);
        let g = primitive2(&trim2(gamma.into_iter().map(|c| balanced_digits(c, &xi)).collect()));
        if !g.is_empty() && exact_div2(a, &g).is_some() && exact_div2(b, &g).is_some() {
            return g;
        }
        xi = next_point(&xi);
    }
    prs_gcd2(a, b)
}

/// `(P, l)` with `p = P/l`, `P` over ℚ\[x\] and `l` the monic lcm of the denominators.
fn polynomial_image(p: &QxPoly) -> (Vec<QPoly>, QPoly) {
    let mut l = QPoly::one();
    for c in p.coeffs() {
        if !c.den().is_one() && !c.den().divides(&l) {
            l = l.mul(&c.den().exact_div(&rational_gcd(&l, c.den())).expect("gcd divides"));
        }
    }
    let polys = p
        .coeffs()
        .iter()
        .map(|c| if c.den() == &l { c.num().clone() } else { c.num().mul(&l.exact_div(c.den()).expect("lcm")) })
        .collect();
    (polys, l)
}

fn over_polynomial(p: Vec<QPoly>, l: &QPoly) -> QxPoly {
    UPoly::new(p.into_iter().map(|c| Qx::new(c, l.clone())).collect())
}

/// Product in ℚ(x)\[y\] over a common denominator.
pub(crate) fn rational_function_mul(a: &QxPoly, b: &QxPoly) -> QxPoly {
    let (pa, la) = polynomial_image(a);
    let (pb, lb) = polynomial_image(b);
    let mut out = vec![QPoly::zero(); pa.len() + pb.len() - 1];
    for (i, x) in pa.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in pb.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    over_polynomial(out, &la.mul(&lb))
}

/// Division in ℚ(x)\[y\] by pseudo-division over ℚ\[x\], scaling only when needed.
pub(crate) fn rational_function_div_rem(a: &QxPoly, b: &QxPoly) -> (QxPoly, QxPoly) {
    let (mut rem, la) = polynomial_image(a);
    let (pb, lb) = polynomial_image(b);
    let n = pb.len() - 1;
    let lc = &pb[n];
    let mut quot = vec![QPoly::zero(); rem.len() - n];
    // s·A = Q·B + R
    let mut s = QPoly::one();
    for k in (0..quot.len()).rev() {
        if rem[k + n].is_zero() {
            continue;
        }
        let qk = match rem[k + n].exact_div(lc) {
            Some(q) => q,
            None => {
                let g = rational_gcd(&rem[k + n], lc);
                let mult = lc.exact_div(&g).expect("gcd divides");
                for c in rem.iter_mut().chain(quot.iter_mut()) {
                    *c = c.mul(&mult);
                }
                s = s.mul(&mult);
                rem[k + n].exact_div(lc).expect("scaled to a multiple")
            }
        };
        for (j, c) in pb.iter().enumerate() {
            if !c.is_zero() {
                rem[k + j] = rem[k + j].sub(&qk.mul(c));
            }
        }
        quot[k] = qk;
    }
    rem.truncate(n);
    let den = la.mul(&s);
    let quot = quot.into_iter().map(|c| c.mul(&lb)).collect();
    (over_polynomial(quot, &den), over_polynomial(rem, &den))
}

fn integer_image2(p: &QxPoly) -> ZPoly2 {
    let polys = polynomial_image(p).0;
    let mut d = Int::from(1);
    for c in polys.iter().flat_map(|q| q.coeffs()) {
        if *c.denom() != 1 {
            d.lcm_mut(c.denom());
        }
    }
    polys
        .iter()
        .map(|q| trim(q.coeffs().iter().map(|c| Int::from(d.div_exact_ref(c.denom())) * c.numer()).collect()))
        .collect()
}

/// Monic gcd in ℚ(x)\[y\].
pub(crate) fn rational_function_gcd(a: &QxPoly, b: &QxPoly) -> QxPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return UPoly::one();
    }
    let g = gcd_primitive2(&primitive2(&integer_image2(a)), &primitive2(&integer_image2(b)));
    UPoly::new(g.iter().map(|c| Qx::from_poly(from_integer_image(c))).collect()).monic()
}

//! Text form of rational functions in `x` and `y` and JSON encodings.
//!
//! Grammar:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' uint)?
//! base   := 'x' | 'y' | integer | '(' expr ')'
//! ```
//!
//! Printing writes `N/D` with `N, D ∈ ℤ[x, y]` coprime and jointly
//! primitive, the leading term of `D` positive, terms ordered by decreasing
//! y-degree and then decreasing x-degree.

use crate::arith::{Int, QPoly, Qx, QxPoly, Qxy, Rat, RatFn, UPoly};
use crate::error::{Error, Result};
use crate::hermite::ResidualForm;
use crate::telescope::TelescoperResult;
use serde::Serialize;
use std::collections::BTreeMap;

const MAX_EXPONENT: u32 = 1000;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Qxy> {
        let negate = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Qxy> {
        let mut acc = self.factor()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let f = self.factor()?;
            if c == b'*' {
                acc = acc.mul(&f);
            } else {
                if f.is_zero() {
                    return Err(Error::Parse { pos: at, msg: "division by zero".into() });
                }
                acc = acc.div(&f);
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Qxy> {
        let base = self.base()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return self.error("expected an unsigned integer exponent");
        }
        match digits.parse::<u32>() {
            Ok(e) if e <= MAX_EXPONENT => Ok(base.pow(e)),
            _ => Err(Error::Parse { pos: at, msg: format!("exponent exceeds {MAX_EXPONENT}") }),
        }
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn base(&mut self) -> Result<Qxy> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(Qxy::constant(Qx::var()))
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(Qxy::var())
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.error("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n: Int = self.digits().parse().expect("digits");
                Ok(Qxy::constant(Qx::constant(Rat::from(n))))
            }
            Some(_) => self.error("expected 'x', 'y', an integer or '('"),
            None => self.error("unexpected end of input"),
        }
    }
}

/// Parse a rational function of `x` and `y` with integer coefficients.
pub fn parse_ratfn(text: &str) -> Result<Qxy> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}

/// Sparse polynomial in ℤ\[x, y\], keyed by `(deg_y, deg_x)`.
type IntPoly2 = BTreeMap<(usize, usize), Int>;

fn lcm_poly(a: &QPoly, b: &QPoly) -> QPoly {
    let g = crate::arith::poly_gcd(a, b);
    a.mul(&b.exact_div(&g).expect("gcd divides")).monic()
}

/// `(N, D)` in ℤ\[x, y\] with `N/D = r`, coprime, jointly primitive,
/// leading term of `D` positive.
pub fn integer_parts(r: &Qxy) -> (IntPoly2, IntPoly2) {
    let all: Vec<&Qx> = r.num().coeffs().iter().chain(r.den().coeffs()).collect();
    let mut l = QPoly::one();
    for c in &all {
        l = lcm_poly(&l, c.den());
    }
    let clear = |p: &QxPoly| -> Vec<QPoly> {
        p.coeffs().iter().map(|c| c.num().mul(&l.exact_div(c.den()).expect("lcm"))).collect()
    };
    let (mut n, mut d) = (clear(r.num()), clear(r.den()));
    let mut g = QPoly::zero();
    for c in n.iter().chain(&d) {
        g = crate::arith::poly_gcd(&g, c);
    }
    for c in n.iter_mut().chain(d.iter_mut()) {
        *c = c.exact_div(&g).expect("content divides");
    }
    let mut den_lcm = Int::from(1);
    let mut num_gcd = Int::new();
    for c in n.iter().chain(&d).flat_map(|p| p.coeffs()) {
        den_lcm.lcm_mut(c.denom());
        num_gcd.gcd_mut(c.numer());
    }
    let to_int = |ps: &[QPoly]| -> IntPoly2 {
        let mut out = IntPoly2::new();
        for (j, p) in ps.iter().enumerate() {
            for (i, c) in p.coeffs().iter().enumerate() {
                if *c != 0 {
                    let v = (Int::from(den_lcm.div_exact_ref(c.denom())) * c.numer()).div_exact(&num_gcd);
                    out.insert((j, i), v);
                }
            }
        }
        out
    };
    let (mut ni, mut di) = (to_int(&n), to_int(&d));
    if di.values().next_back().is_some_and(|c| *c < 0) {
        for c in ni.values_mut().chain(di.values_mut()) {
            *c = Int::from(-&*c);
        }
    }
    (ni, di)
}

fn monomial_text(i: usize, j: usize) -> String {
    let mut parts = Vec::new();
    for (var, e) in [("x", i), ("y", j)] {
        match e {
            0 => {}
            1 => parts.push(var.to_string()),
            _ => parts.push(format!("{var}^{e}")),
        }
    }
    parts.join("*")
}

fn poly2_text(p: &IntPoly2) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (&(j, i), c) in p.iter().rev() {
        let mono = monomial_text(i, j);
        let mag = Int::from(c.abs_ref());
        let body = if mono.is_empty() {
            mag.to_string()
        } else if mag == 1 {
            mono
        } else {
            format!("{mag}*{mono}")
        };
        if *c < 0 {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        out.push_str(&body);
    }
    out
}

/// `D` can follow `/` unparenthesized: a positive integer or a single
/// variable power.
fn is_single_factor(p: &IntPoly2) -> bool {
    match p.iter().next() {
        Some((&(j, i), c)) if p.len() == 1 && *c > 0 => (i == 0 && j == 0) || (*c == 1 && (i == 0 || j == 0)),
        _ => false,
    }
}

/// Canonical text of `r`; [`parse_ratfn`] inverts it.
pub fn print_ratfn(r: &Qxy) -> String {
    let (n, d) = integer_parts(r);
    let num = poly2_text(&n);
    if d.len() == 1 && d.get(&(0, 0)).is_some_and(|c| *c == 1) {
        return num;
    }
    let num = if n.len() > 1 { format!("({num})") } else { num };
    let den = poly2_text(&d);
    if is_single_factor(&d) {
        format!("{num}/{den}")
    } else {
        format!("{num}/({den})")
    }
}

/// Text of an element of ℚ(x).
pub fn print_qx(c: &Qx) -> String {
    print_ratfn(&Qxy::constant(c.clone()))
}

/// Text of an element of ℚ(x)\[y\].
pub fn print_poly(p: &QxPoly) -> String {
    print_ratfn(&Qxy::from_poly(p.clone()))
}

/// Rational function as a pair of polynomial texts over ℤ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RatFnJson {
    pub num: String,
    pub den: String,
}

impl From<&Qxy> for RatFnJson {
    fn from(r: &Qxy) -> Self {
        let (n, d) = integer_parts(r);
        RatFnJson { num: poly2_text(&n), den: poly2_text(&d) }
    }
}

/// Residual form `q/b + v/k2` as polynomial texts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualFormJson {
    pub q: String,
    pub b: String,
    pub v: String,
    pub k2: String,
    pub support: Vec<usize>,
}

impl From<&ResidualForm<Qx>> for ResidualFormJson {
    fn from(r: &ResidualForm<Qx>) -> Self {
        ResidualFormJson {
            q: print_poly(&r.q),
            b: print_poly(&r.b),
            v: print_poly(&r.v),
            k2: print_poly(&r.k2),
            support: r.support.iter().copied().collect(),
        }
    }
}

/// Telescoper coefficients in ℚ\[x\], lowest order first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TelescoperJson {
    pub order: usize,
    pub coeffs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<RatFnJson>,
}

impl From<&TelescoperResult> for TelescoperJson {
    fn from(t: &TelescoperResult) -> Self {
        TelescoperJson {
            order: t.order,
            coeffs: t.coeffs.iter().map(|c| print_poly(&qx_poly(c))).collect(),
            certificate: t.certificate.as_ref().map(RatFnJson::from),
        }
    }
}

/// Embed ℚ\[x\] into ℚ(x)\[y\] as constants in `y`.
pub fn qx_poly(p: &QPoly) -> QxPoly {
    UPoly::constant(RatFn::from_poly(p.clone()))
}

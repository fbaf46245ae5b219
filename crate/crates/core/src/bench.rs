//! Random instances `p/qᵐ·√(a/b)·exp(u/v)` and single-instance runs.
//!
//! Each polynomial of y-degree `d` has total degree `d` in `x, y`, with
//! nonzero `x^d` and `y^d` terms and integer coefficients drawn uniformly
//! from `[−coeff_bound, coeff_bound]`. Instance `i` of a run uses its own
//! ChaCha stream, so instances can be generated in any order.

use crate::arith::{poly_gcd, squarefree_part, Qx, QxPoly, Qxy, Rat, RatFn, UPoly, X, Y};
use crate::canon::{validate_descriptor, HyperexpDescriptor};
use crate::error::{Error, Result};
use crate::telescope::{az_bound, coeffs_qx, hermite_telescoping, order_bound, TelescoperResult};
use crate::verify::{apply_operator, check_certificate, integrable_at};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::time::Instant;

const MAX_DRAWS: usize = 1000;
pub const CHECK_POINTS: usize = 2;
const FIRST_CHECK_POINT: i64 = 1009;

/// Shape of a benchmark class and the run parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BenchSpec {
    /// y-degree of `p` and `q`.
    pub lambda: usize,
    /// y-degree of `a` and `b`.
    pub mu: usize,
    /// y-degree of `u` and `v`.
    pub nu: usize,
    /// Multiplicity of `q` in the denominator.
    pub m: u32,
    pub coeff_bound: i64,
    pub seed: u64,
    pub count: usize,
}

impl BenchSpec {
    pub fn new(lambda: usize, mu: usize, nu: usize, m: u32) -> Self {
        BenchSpec { lambda, mu, nu, m, coeff_bound: 5, seed: 0, count: 1 }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 1 {
            return Err(Error::Input("multiplicity m must be at least 1".into()));
        }
        if self.count < 1 {
            return Err(Error::Input("count must be at least 1".into()));
        }
        if self.coeff_bound < 1 {
            return Err(Error::Input("coefficient bound must be at least 1".into()));
        }
        Ok(())
    }
}

/// Degree data of `H = (polynomial)·exp(r1/r2)·∏ p_i^(c_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicativeDegrees {
    pub deg_r1: usize,
    pub deg_r2: usize,
    pub deg_ps: Vec<usize>,
}

impl MultiplicativeDegrees {
    pub fn az_bound(&self) -> i64 {
        az_bound(self.deg_r1, self.deg_r2, &self.deg_ps)
    }
}

/// A generated instance with the polynomials it was built from.
#[derive(Clone, Debug)]
pub struct BenchInstance {
    pub index: usize,
    /// `p, q, a, b, u, v`.
    pub polys: [QxPoly; 6],
    pub desc: HyperexpDescriptor,
    pub degrees: MultiplicativeDegrees,
}

fn random_poly(d: usize, bound: i64, rng: &mut ChaCha8Rng) -> QxPoly {
    let draw_nonzero = |rng: &mut ChaCha8Rng| loop {
        let c = rng.gen_range(-bound..=bound);
        if c != 0 {
            return c;
        }
    };
    // coefficient of yʲ is a polynomial in x of degree ≤ d − j
    let mut coeffs = Vec::with_capacity(d + 1);
    for j in 0..=d {
        let xs: Vec<i64> = (0..=d - j)
            .map(|i| {
                let forced = (i == d && j == 0) || (j == d && i == 0);
                if forced {
                    draw_nonzero(rng)
                } else {
                    rng.gen_range(-bound..=bound)
                }
            })
            .collect();
        coeffs.push(Qx::from_poly(crate::arith::QPoly::from_ints(&xs)));
    }
    UPoly::new(coeffs)
}

fn is_squarefree(p: &QxPoly) -> bool {
    p.is_constant() || squarefree_part(p).expect("nonzero").deg() == p.deg()
}

fn coprime(p: &QxPoly, q: &QxPoly) -> bool {
    p.is_constant() || q.is_constant() || poly_gcd(p, q).is_one()
}

fn log_derivatives(polys: &[QxPoly; 6], m: u32) -> (Qxy, Qxy) {
    let [p, q, a, b, u, v] = polys.clone().map(RatFn::from_poly);
    let half = Qx::constant(crate::arith::rat(1, 2));
    let dlog = |var| {
        let ld = |r: &Qxy| r.derive(var).div(r);
        ld(&p)
            .sub(&ld(&q).scale(&Qx::constant(Rat::from(m))))
            .add(&ld(&a).sub(&ld(&b)).scale(&half))
            .add(&u.div(&v).derive(var))
    };
    (dlog(X), dlog(Y))
}

/// Instance `index` of the class described by `spec`.
pub fn generate_instance(spec: &BenchSpec, index: usize) -> Result<BenchInstance> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(index as u64);
    let bound = spec.coeff_bound;
    for _ in 0..MAX_DRAWS {
        let degs = [spec.lambda, spec.lambda, spec.mu, spec.mu, spec.nu, spec.nu];
        let polys = degs.map(|d| random_poly(d, bound, &mut rng));
        let [p, q, a, b, u, v] = &polys;
        if ![q, b, v].iter().all(|f| is_squarefree(f)) {
            continue;
        }
        let distinct = [p, q, a, b, v];
        let pairwise = (0..distinct.len()).all(|i| (i + 1..distinct.len()).all(|j| coprime(distinct[i], distinct[j])));
        if !pairwise || !coprime(u, v) {
            continue;
        }
        let (f, g) = log_derivatives(&polys, spec.m);
        let desc = validate_descriptor(&f, &g)?;
        let degrees =
            MultiplicativeDegrees { deg_r1: spec.nu, deg_r2: spec.nu, deg_ps: vec![spec.lambda, spec.mu, spec.mu] };
        return Ok(BenchInstance { index, polys, desc, degrees });
    }
    Err(Error::Generation(format!("no admissible draw after {MAX_DRAWS} attempts")))
}

/// Outcome of telescoping one instance.
#[derive(Clone, Debug, Serialize)]
pub struct BenchRecord {
    pub index: usize,
    pub order: usize,
    pub order_bound: usize,
    pub az_bound: i64,
    pub seconds: f64,
    pub verified: bool,
}

/// Telescope one instance. Verification uses the certificate when
/// `certify` is set, and otherwise checks that `L(H)` reduces to zero.
pub fn run_instance(instance: &BenchInstance, certify: bool) -> Result<(BenchRecord, TelescoperResult)> {
    let start = Instant::now();
    let t = hermite_telescoping(&instance.desc, certify)?;
    let seconds = start.elapsed().as_secs_f64();
    let verified =
        if certify { check_certificate(&instance.desc, &t)? } else { telescoper_annihilates(&instance.desc, &t)? };
    let record = BenchRecord {
        index: instance.index,
        order: t.order,
        order_bound: order_bound(&instance.desc.ks),
        az_bound: instance.degrees.az_bound(),
        seconds,
        verified,
    };
    Ok((record, t))
}

/// `L(H)` is `D_y` of a hyperexponential function, checked by Hermite
/// reduction over ℚ after substituting `x` at [`CHECK_POINTS`] points.
pub fn telescoper_annihilates(desc: &HyperexpDescriptor, t: &TelescoperResult) -> Result<bool> {
    let c = apply_operator(desc, &coeffs_qx(t));
    let mut checked = 0;
    for k in FIRST_CHECK_POINT.. {
        match integrable_at(&c, &desc.ks.kernel, &Rat::from(k))? {
            Some(false) => return Ok(false),
            Some(true) => checked += 1,
            None => {}
        }
        if checked == CHECK_POINTS {
            break;
        }
    }
    Ok(true)
}

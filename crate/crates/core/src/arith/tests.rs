use super::*;
use proptest::prelude::*;

fn p(cs: &[i64]) -> QPoly {
    QPoly::from_ints(cs)
}

fn qx(num: &[i64], den: &[i64]) -> Qx {
    Qx::new(p(num), p(den))
}

/// Polynomial in y whose coefficients are polynomials in x, rows lowest degree first.
fn py(rows: &[&[i64]]) -> QxPoly {
    QxPoly::new(rows.iter().map(|r| Qx::from_poly(p(r))).collect())
}

fn fy(num: QxPoly, den: QxPoly) -> Qxy {
    Qxy::new(num, den)
}

/// Sylvester determinant with the rows of `a` first, by Gaussian elimination.
fn sylvester_det(a: &QPoly, b: &QPoly) -> Rat {
    let m = a.degree().unwrap();
    let n = b.degree().unwrap();
    let size = m + n;
    if size == 0 {
        return Rat::one();
    }
    let mut mat = vec![vec![Rat::zero(); size]; size];
    for r in 0..n {
        for (j, c) in a.coeffs().iter().rev().enumerate() {
            mat[r][r + j] = c.clone();
        }
    }
    for r in 0..m {
        for (j, c) in b.coeffs().iter().rev().enumerate() {
            mat[n + r][r + j] = c.clone();
        }
    }
    let mut det = Rat::one();
    for col in 0..size {
        let Some(piv) = (col..size).find(|&r| !Ring::is_zero(&mat[r][col])) else {
            return Rat::zero();
        };
        if piv != col {
            mat.swap(piv, col);
            det = -det;
        }
        let pv = mat[col][col].clone();
        det *= &pv;
        for r in col + 1..size {
            let f = Rat::from(&mat[r][col] / &pv);
            for c in col..size {
                let t = Rat::from(&f * &mat[col][c]);
                mat[r][c] -= t;
            }
        }
    }
    det
}

#[test]
fn gcd_examples() {
    assert_eq!(poly_gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])), p(&[-1, 1]));
    assert_eq!(poly_gcd(&p(&[2, 4]), &QPoly::zero()), p(&[1, 2]).monic());
    assert_eq!(poly_gcd(&p(&[1, 0, 1]), &p(&[-1, 1])), QPoly::one());
    assert!(poly_gcd(&QPoly::zero(), &QPoly::zero()).is_zero());
    // over ℚ(x): gcd(y² − x², y − x) = y − x
    let a = py(&[&[0, 0, -1], &[], &[1]]);
    let b = py(&[&[0, -1], &[1]]);
    assert_eq!(poly_gcd(&a, &b), b);
}

#[test]
fn squarefree_examples() {
    assert_eq!(squarefree_part(&p(&[1, -2, 1])).unwrap(), p(&[-1, 1]));
    assert_eq!(squarefree_part(&p(&[1, 0, 1])).unwrap(), p(&[1, 0, 1]));
    // y³(y+2)² → y(y+2)
    let f = p(&[0, 1]).pow(3).mul(&p(&[2, 1]).pow(2));
    assert_eq!(squarefree_part(&f).unwrap(), p(&[0, 2, 1]));
    assert!(matches!(squarefree_part(&QPoly::zero()), Err(crate::Error::Usage(_))));
}

#[test]
fn squarefree_decomposition_recombines() {
    let f = p(&[0, 1]).pow(3).mul(&p(&[2, 1]).pow(2)).mul(&p(&[1, 0, 1]));
    let parts = squarefree_decomposition(&f);
    assert_eq!(parts, vec![p(&[1, 0, 1]), p(&[2, 1]), p(&[0, 1])]);
}

#[test]
fn extended_euclid_examples() {
    let (a, b) = (p(&[-1, 1]), p(&[1, 0, 1]));
    let (g, s, t) = extended_euclid(&a, &b).unwrap();
    assert!(g.is_one());
    assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    assert!(s.deg() < 2 && t.deg() < 1);

    let q = p(&[3, 1, 4]);
    assert_eq!(extended_euclid(&q, &QPoly::one()).unwrap(), (QPoly::one(), QPoly::zero(), QPoly::one()));
    let y = p(&[0, 1]);
    assert_eq!(extended_euclid(&y, &y).unwrap(), (y.clone(), QPoly::zero(), QPoly::one()));
    assert!(extended_euclid(&QPoly::zero(), &QPoly::zero()).is_err());
}

#[test]
fn partial_fraction_examples() {
    let (b, c) = (p(&[-1, 1]), p(&[1, 0, 1]));
    let (pp, q, r) = partial_fractions_coprime(&p(&[0, 1]), &b, &c).unwrap();
    assert!(pp.is_zero());
    assert_eq!(q, QPoly::constant(rat(1, 2)));
    assert_eq!(r, QPoly::new(vec![rat(1, 2), rat(-1, 2)]));

    let zero = partial_fractions_coprime(&QPoly::zero(), &b, &c).unwrap();
    assert_eq!(zero, (QPoly::zero(), QPoly::zero(), QPoly::zero()));
    let exact = partial_fractions_coprime(&b.mul(&c), &b, &c).unwrap();
    assert_eq!(exact, (QPoly::one(), QPoly::zero(), QPoly::zero()));
    assert!(matches!(partial_fractions_coprime(&p(&[1]), &b, &b), Err(crate::Error::Precondition(_))));
}

#[test]
fn resultant_examples() {
    assert_eq!(resultant(&p(&[-1, 1]), &p(&[-2, 1])).unwrap(), rat(-1, 1));
    let f = p(&[2, -3, 1]);
    assert!(Ring::is_zero(&resultant(&f, &f).unwrap()));
    assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[0, 1])).unwrap(), rat(1, 1));
    assert!(resultant(&QPoly::zero(), &f).is_err());
    // frozen from the Sylvester oracle
    assert_eq!(sylvester_det(&p(&[-1, 1]), &p(&[-2, 1])), rat(-1, 1));
    assert_eq!(sylvester_det(&p(&[1, 0, 1]), &p(&[0, 1])), rat(1, 1));
}

#[test]
fn derivative_examples() {
    let s = Qx::new(QPoly::one(), p(&[-1, 1]).pow(2));
    assert_eq!(s.deriv(), Qx::new(p(&[-2]), p(&[-1, 1]).pow(3)));
    let k = Qx::new(p(&[0, 1]), p(&[1, 0, 1]));
    assert_eq!(k.deriv(), Qx::new(p(&[1, 0, -1]), p(&[1, 0, 1]).pow(2)));
    // D_x of an element of ℚ(x)(y) without x
    let g = fy(py(&[&[1], &[2]]), py(&[&[3], &[0], &[1]]));
    assert!(g.derive(X).is_zero());
    // D_x kills rationals
    assert!(Ring::is_zero(&Ring::derive(&rat(3, 7), X)));
}

#[test]
fn integer_root_examples() {
    let roots = integer_roots(&p(&[0, -3, 1])).unwrap();
    assert_eq!(roots.into_iter().collect::<Vec<_>>(), vec![Int::from(0), Int::from(3)]);
    assert!(integer_roots(&p(&[1, 0, 1])).unwrap().is_empty());
    // (z − 2)(x z − 1) over ℚ(x)
    let lin = QxPoly::new(vec![qx(&[-2], &[1]), Qx::one()]).mul(&QxPoly::new(vec![qx(&[-1], &[1]), qx(&[0, 1], &[1])]));
    let roots = integer_roots(&lin).unwrap();
    assert_eq!(roots.into_iter().collect::<Vec<_>>(), vec![Int::from(2)]);
    assert!(integer_roots(&QPoly::zero()).is_err());
}

#[test]
fn integer_roots_large_and_negative() {
    // (z + 1000)(z − 7)(2z − 1)
    let f = p(&[1000, 1]).mul(&p(&[-7, 1])).mul(&p(&[-1, 2]));
    let roots: Vec<_> = integer_roots(&f).unwrap().into_iter().collect();
    assert_eq!(roots, vec![Int::from(-1000), Int::from(7)]);
}

#[test]
fn residues_via_resultant() {
    // −2/(y−1) + y/(y²+1): integer residue −2 at y = 1
    let k = Qx::new(p(&[0, 1]), p(&[1, 0, 1])).add(&Qx::new(p(&[-2]), p(&[-1, 1])));
    let res = integer_residues(k.num(), k.den());
    assert_eq!(res.into_iter().collect::<Vec<_>>(), vec![Int::from(-2)]);
    let pz = residue_resultant(k.num(), k.den());
    assert!(Ring::is_zero(&pz.eval(&rat(-2, 1))));
}

#[test]
fn integer_residues_skip_degenerate_points() {
    // 1/(y−1) + 2/(y−x): numerator and denominator share a root at x = 1
    let (one, x) = (Qx::one(), Qx::var());
    let f = Qxy::new(UPoly::constant(one.clone()), UPoly::new(vec![one.neg(), one.clone()]))
        .add(&Qxy::new(UPoly::constant(Qx::from_int(2)), UPoly::new(vec![x.neg(), one])));
    let res = integer_residues(f.num(), f.den());
    assert_eq!(res.into_iter().collect::<Vec<_>>(), vec![Int::from(1), Int::from(2)]);
}

#[test]
fn fractions_are_canonical() {
    let a = Qx::new(p(&[2, 2]), p(&[4, 4, 0]));
    assert_eq!(a, Qx::constant(rat(1, 2)));
    let b = Qx::new(p(&[1]), p(&[2, 4]));
    assert_eq!(b.den(), &p(&[1, 2]).monic());
    assert!(Qx::try_new(p(&[1]), QPoly::zero()).is_none());
}

fn small_poly(max_deg: usize) -> impl Strategy<Value = QPoly> {
    prop::collection::vec(-5i64..=5, 0..=max_deg + 1).prop_map(|cs| QPoly::from_ints(&cs))
}

fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = QPoly> {
    small_poly(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

fn small_qxy() -> impl Strategy<Value = Qxy> {
    let biv = || prop::collection::vec(prop::collection::vec(-3i64..=3, 0..3), 1..4);
    (biv(), biv()).prop_filter_map("nonzero denominator", |(n, d)| {
        let to = |rows: Vec<Vec<i64>>| QxPoly::new(rows.iter().map(|r| Qx::from_poly(QPoly::from_ints(r))).collect());
        Qxy::try_new(to(n), to(d))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gcd_divides_and_bezout_holds(a in nonzero_poly(5), b in nonzero_poly(5)) {
        let g = poly_gcd(&a, &b);
        prop_assert!(g.divides(&a) && g.divides(&b));
        let (g2, s, t) = extended_euclid(&a, &b).unwrap();
        prop_assert_eq!(&g2, &g);
        prop_assert_eq!(s.mul(&a).add(&t.mul(&b)), g.clone());
        prop_assert!(s.deg() < b.exact_div(&g).unwrap().deg().max(1));
    }

    #[test]
    fn resultant_matches_sylvester(a in nonzero_poly(4), b in nonzero_poly(4)) {
        prop_assert_eq!(resultant(&a, &b).unwrap(), sylvester_det(&a, &b));
    }

    #[test]
    fn partial_fractions_recombine(a in small_poly(6), b in nonzero_poly(3), c in nonzero_poly(3)) {
        prop_assume!(poly_gcd(&b, &c).is_one());
        let (pp, q, r) = partial_fractions_coprime(&a, &b, &c).unwrap();
        prop_assert!(q.deg() < b.deg() && r.deg() < c.deg());
        prop_assert_eq!(pp.mul(&b).mul(&c).add(&q.mul(&c)).add(&r.mul(&b)), a);
    }

    #[test]
    fn leibniz_rule(f in small_qxy(), g in small_qxy()) {
        for v in [X, Y] {
            let lhs = f.mul(&g).derive(v);
            let rhs = f.derive(v).mul(&g).add(&f.mul(&g.derive(v)));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn mixed_partials_commute(f in small_qxy()) {
        prop_assert_eq!(f.derive(X).derive(Y), f.derive(Y).derive(X));
    }

    #[test]
    fn fraction_field_axioms(f in small_qxy(), g in small_qxy()) {
        let s = f.add(&g);
        prop_assert_eq!(s.sub(&g), f.clone());
        if !g.is_zero() {
            prop_assert_eq!(f.mul(&g).div(&g), f.clone());
        }
        prop_assert!(s.den().lc().is_one());
    }

    #[test]
    fn integer_roots_found(roots in prop::collection::btree_set(-40i64..40, 0..4), extra in nonzero_poly(2)) {
        let mut f = extra.clone();
        for r in &roots {
            f = f.mul(&QPoly::from_ints(&[-r, 1]));
        }
        let found = integer_roots(&f).unwrap();
        for r in &roots {
            prop_assert!(found.contains(&(*r).into()));
        }
        for r in &found {
            prop_assert!(Ring::is_zero(&f.eval(&Rat::from(r.clone()))));
        }
    }
}

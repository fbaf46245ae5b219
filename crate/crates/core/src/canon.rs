//! Differential rational canonical form `f = K + D_y(S)/S`.
//!
//! `K` (the kernel) has no integer residue at any simple pole; `S` (the
//! shell) collects the integer-residue part of `f` as a product of powers.

use crate::arith::{integer_residues, BaseField, Qx, Qxy, RatFn, UPoly, X, Y};
use crate::error::{Error, Result};
use serde::Serialize;

/// Kernel and shell of a logarithmic derivative with respect to `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelShell<E: BaseField> {
    pub kernel: RatFn<E>,
    pub shell: RatFn<E>,
    /// Numerator of the kernel.
    pub k1: UPoly<E>,
    /// Monic denominator of the kernel.
    pub k2: UPoly<E>,
}

impl<E: BaseField> KernelShell<E> {
    fn from_parts(kernel: RatFn<E>, shell: RatFn<E>) -> Self {
        let (k1, k2) = kernel.clone().into_parts();
        KernelShell { kernel, shell, k1, k2 }
    }

    /// Same kernel with another shell.
    pub fn with_shell(&self, shell: RatFn<E>) -> Self {
        KernelShell { shell, ..self.clone() }
    }

    /// `K = 0`, i.e. the function is rational.
    pub fn is_rational(&self) -> bool {
        self.kernel.is_zero()
    }

    /// `K + D_y(S)/S`, which reproduces the input of [`kernel_shell`].
    pub fn recombine(&self) -> RatFn<E> {
        self.kernel.add(&self.shell.deriv().div(&self.shell))
    }
}

/// True iff `gcd(b, a − i·D_y(b)) = 1` for every integer `i`, where `r = a/b`.
pub fn is_differential_reduced<E: BaseField>(r: &RatFn<E>) -> bool {
    integer_residues(r.num(), r.den()).is_empty()
}

/// Canonical form of `f`: peels off every simple pole with an integer
/// residue `i` as a factor `gⁱ` of the shell. The shell is scaled so that
/// its numerator is monic.
pub fn kernel_shell<E: BaseField>(f: &RatFn<E>) -> KernelShell<E> {
    let mut kernel = f.clone();
    let mut shell_num = UPoly::<E>::one();
    let mut shell_den = UPoly::<E>::one();
    // every pass removes at least one pole, so deg(den f) passes suffice
    for _ in 0..=f.den().deg().max(0) {
        let residues = integer_residues(kernel.num(), kernel.den());
        if residues.is_empty() {
            break;
        }
        let (a, b) = (kernel.num().clone(), kernel.den().clone());
        let db = b.deriv();
        for i in residues {
            let iz = E::from_int(i.to_i64().expect("residue fits in i64"));
            let g = crate::arith::poly_gcd(&b, &a.sub(&db.scale(&iz)));
            let e = i.clone().abs().to_u32().expect("residue fits in u32");
            if i < 0 {
                shell_den = shell_den.mul(&g.pow(e));
            } else {
                shell_num = shell_num.mul(&g.pow(e));
            }
            let log_deriv = RatFn::new(g.deriv(), g.clone());
            kernel = kernel.sub(&log_deriv.scale(&iz));
        }
    }
    let shell = RatFn::new(shell_num, shell_den);
    let shell = shell.scale(&shell.num().lc().inv());
    KernelShell::from_parts(kernel, shell)
}

/// A bivariate hyperexponential function `H = exp(∫ f dx + g dy)` given by
/// its two logarithmic derivatives, with the canonical form of `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperexpDescriptor {
    /// `D_x(H)/H`.
    pub f: Qxy,
    /// `D_y(H)/H`.
    pub g: Qxy,
    pub ks: KernelShell<Qx>,
    /// `f − D_x(S)/S`, the x-logarithmic derivative of `T = H/S`.
    pub ft: Qxy,
}

impl HyperexpDescriptor {
    /// `ft = a/k2`; returns the polynomial `a`.
    pub fn ft_numerator(&self) -> UPoly<Qx> {
        let k2 = &self.ks.k2;
        self.ft.num().mul(&k2.exact_div(self.ft.den()).expect("den(ft) divides k2"))
    }
}

/// Check `D_y(f) = D_x(g)`, compute the canonical form of `g` and the
/// x-logarithmic derivative of `T = exp(∫ ft dx + K dy)`.
pub fn validate_descriptor(f: &Qxy, g: &Qxy) -> Result<HyperexpDescriptor> {
    if f.derive(Y) != g.derive(X) {
        return Err(Error::Input("incompatible logarithmic derivatives: D_y(f) != D_x(g)".into()));
    }
    let ks = kernel_shell(g);
    let ft = f.sub(&ks.shell.derive(X).div(&ks.shell));
    if !ft.den().divides(&ks.k2) {
        return Err(Error::Internal("denominator of f - D_x(S)/S does not divide k2".into()));
    }
    Ok(HyperexpDescriptor { f: f.clone(), g: g.clone(), ks, ft })
}

/// Logarithmic derivatives of `r·H` from those of `H`.
pub fn multiply_by_rational(f: &Qxy, g: &Qxy, r: &Qxy) -> Result<(Qxy, Qxy)> {
    if r.is_zero() {
        return Err(Error::Input("hyperexponential functions are nonzero".into()));
    }
    Ok((f.add(&r.derive(X).div(r)), g.add(&r.derive(Y).div(r))))
}

/// Summary of a canonical form for reporting.
#[derive(Clone, Debug, Serialize)]
pub struct CanonSummary {
    pub kernel: crate::expr::RatFnJson,
    pub shell: crate::expr::RatFnJson,
    pub rational: bool,
}

impl From<&KernelShell<Qx>> for CanonSummary {
    fn from(ks: &KernelShell<Qx>) -> Self {
        CanonSummary { kernel: (&ks.kernel).into(), shell: (&ks.shell).into(), rational: ks.is_rational() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Field, Ring};
    use crate::arith::{QPoly, Rat};
    use crate::expr::parse_ratfn;
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> QPoly {
        QPoly::from_ints(cs)
    }

    fn r(num: &[i64], den: &[i64]) -> RatFn<Rat> {
        RatFn::new(p(num), p(den))
    }

    #[test]
    fn differential_reduced_examples() {
        assert!(is_differential_reduced(&r(&[0, 1], &[1, 0, 1])));
        assert!(!is_differential_reduced(&r(&[-2], &[-1, 1])));
        assert!(is_differential_reduced(&r(&[0, 0, 0, -6], &[1, 0, 0, 0, 1])));
        assert!(is_differential_reduced(&RatFn::<Rat>::zero()));
    }

    #[test]
    fn kernel_shell_examples() {
        let f = r(&[-2], &[-1, 1]).add(&r(&[0, 1], &[1, 0, 1]));
        let ks = kernel_shell(&f);
        assert_eq!(ks.kernel, r(&[0, 1], &[1, 0, 1]));
        assert_eq!(ks.shell, r(&[1], &[1, -2, 1]));
        assert_eq!(ks.k1, p(&[0, 1]));
        assert_eq!(ks.k2, p(&[1, 0, 1]));

        let ks = kernel_shell(&RatFn::<Rat>::zero());
        assert!(ks.is_rational());
        assert!(ks.shell.is_one());

        let ks = kernel_shell(&r(&[1, 1], &[0, 1]));
        assert_eq!(ks.kernel, RatFn::one());
        assert_eq!(ks.shell, r(&[0, 1], &[1]));
    }

    #[test]
    fn kernel_shell_over_qx() {
        // g = D_y(H)/H for H = (y − x)³ / (y + x) · exp(x·y)
        let g = parse_ratfn("3/(y-x) - 1/(y+x) + x").unwrap();
        let ks = kernel_shell(&g);
        assert_eq!(ks.kernel, parse_ratfn("x").unwrap());
        assert_eq!(ks.shell, parse_ratfn("(y-x)^3/(y+x)").unwrap());
        assert_eq!(ks.recombine(), g);
    }

    #[test]
    fn descriptor_examples() {
        let f = parse_ratfn("(1+4*x^2*y-8*x*y^2)/(2*(x-2*y))").unwrap();
        let g = parse_ratfn("(-1+x^3-2*x^2*y)/(x-2*y)").unwrap();
        let d = validate_descriptor(&f, &g).unwrap();
        assert_eq!(d.ks.kernel, g);
        assert!(d.ks.shell.is_one());

        let d = validate_descriptor(&parse_ratfn("y").unwrap(), &parse_ratfn("x").unwrap()).unwrap();
        assert_eq!(d.ks.kernel, parse_ratfn("x").unwrap());
        assert!(d.ks.shell.is_one());

        let e = validate_descriptor(&parse_ratfn("y").unwrap(), &parse_ratfn("y").unwrap());
        assert!(matches!(e, Err(Error::Input(_))));
    }

    #[test]
    fn rational_descriptor_has_y_free_ft() {
        // H = (x + y)² · exp(x)
        let (f, g) =
            multiply_by_rational(&parse_ratfn("1").unwrap(), &Qxy::zero(), &parse_ratfn("(x+y)^2").unwrap()).unwrap();
        let d = validate_descriptor(&f, &g).unwrap();
        assert!(d.ks.is_rational());
        assert!(d.ft.is_polynomial() && d.ft.num().is_constant());
    }

    fn kernel_strategy() -> impl Strategy<Value = RatFn<Rat>> {
        // K = c/(y − α) + polynomial, with c a non-integer so K stays differential-reduced
        (1i64..5, -3i64..4, prop::collection::vec(-3i64..=3, 0..3))
            .prop_map(|(c, alpha, poly)| r(&[2 * c - 1], &[-2 * alpha, 2]).add(&RatFn::from_poly(p(&poly))))
    }

    fn shell_strategy() -> impl Strategy<Value = RatFn<Rat>> {
        // products of (y − β)^e with distinct β away from the kernel pole
        prop::collection::btree_map(10i64..20, -3i32..=3, 0..3).prop_map(|m| {
            let mut s = RatFn::<Rat>::one();
            for (beta, e) in m {
                s = s.mul(&RatFn::from_poly(p(&[-beta, 1])).powi(e as i64));
            }
            s
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn canonical_form_recovers_construction(k0 in kernel_strategy(), s0 in shell_strategy()) {
            let f = k0.add(&s0.deriv().div(&s0));
            let ks = kernel_shell(&f);
            prop_assert_eq!(&ks.kernel, &k0);
            prop_assert_eq!(&ks.shell, &s0.scale(&s0.num().lc().inv()));
            prop_assert_eq!(ks.recombine(), f);
            prop_assert!(is_differential_reduced(&ks.kernel));
            prop_assert!(crate::arith::poly_gcd(ks.shell.den(), &ks.k2).is_one());
            let again = kernel_shell(&ks.kernel);
            prop_assert_eq!(again.kernel, ks.kernel.clone());
            prop_assert!(again.shell.is_one());
        }
    }
}

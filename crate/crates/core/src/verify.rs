//! Independent checks: applying an operator to `H`, validating a
//! certificate, and a bounded ansatz for `S = D_y(s) + s·K`.

use crate::arith::{squarefree_part, BaseField, Field, QPoly, Qx, Qxy, Rat, RatFn, UPoly, X};
use crate::canon::{kernel_shell, HyperexpDescriptor, KernelShell};
use crate::error::{Error, Result};
use crate::hermite::is_integrable;
use crate::telescope::TelescoperResult;

/// `c_L` with `L(H) = c_L·T`, via `c_0 = S`, `c_(i+1) = D_x(c_i) + c_i·ft`.
pub fn apply_operator(desc: &HyperexpDescriptor, coeffs: &[Qx]) -> Qxy {
    let mut c = desc.ks.shell.clone();
    let mut acc = Qxy::zero();
    for (i, e) in coeffs.iter().enumerate() {
        if i > 0 {
            c = c.derive(X).add(&c.mul(&desc.ft));
        }
        acc = acc.add(&c.mul(&Qxy::constant(e.clone())));
    }
    acc
}

/// `L(H) = D_y(u·T)`, i.e. `c_L = D_y(u) + u·K`.
pub fn check_certificate(desc: &HyperexpDescriptor, result: &TelescoperResult) -> Result<bool> {
    let u = result.certificate.as_ref().ok_or_else(|| Error::Usage("telescoper carries no certificate".into()))?;
    let coeffs: Vec<Qx> = result.coeffs.iter().map(|c: &QPoly| RatFn::from_poly(c.clone())).collect();
    let lhs = apply_operator(desc, &coeffs);
    Ok(lhs == u.deriv().add(&u.mul(&desc.ks.kernel)))
}

/// `r(x0, y)`, or `None` if a coefficient has a pole at `x0` or the
/// denominator drops degree.
pub fn specialize_x(r: &Qxy, x0: &Rat) -> Option<RatFn<Rat>> {
    let at = |p: &UPoly<Qx>| -> Option<QPoly> {
        p.coeffs().iter().map(|c| c.specialize(x0)).collect::<Option<Vec<_>>>().map(UPoly::new)
    };
    let (num, den) = (at(r.num())?, at(r.den())?);
    (den.deg() == r.den().deg()).then(|| RatFn::new(num, den))
}

/// Whether `c·exp(∫K dy)` is integrable in `y` after substituting `x = x0`.
/// Necessary for `c·T = D_y(u·T)` whenever `x0` is not a pole of `u`;
/// `None` if `x0` is a pole of the data.
pub fn integrable_at(c: &Qxy, kernel: &Qxy, x0: &Rat) -> Result<Option<bool>> {
    let (Some(c0), Some(k0)) = (specialize_x(c, x0), specialize_x(kernel, x0)) else {
        return Ok(None);
    };
    if c0.is_zero() {
        return Ok(Some(true));
    }
    let ks = kernel_shell(&k0);
    let shell = ks.shell.mul(&c0);
    Ok(Some(is_integrable(&ks.with_shell(shell))?))
}

/// Solve `Σ x_j·cols_j = rhs` coefficientwise; `None` if inconsistent.
fn solve_columns<E: Field>(cols: &[UPoly<E>], rhs: &UPoly<E>) -> Option<Vec<E>> {
    let nrows = cols.iter().chain([rhs]).map(|p| p.deg() + 1).max().unwrap_or(0).max(0) as usize;
    let ncols = cols.len();
    let mut m: Vec<Vec<E>> =
        (0..nrows).map(|i| cols.iter().map(|c| c.coeff(i)).chain([rhs.coeff(i)]).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv();
        for x in m[row].iter_mut() {
            *x = x.mul(&inv);
        }
        for r in 0..nrows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..=ncols {
                    let v = m[r][c].sub(&f.mul(&m[row][c]));
                    m[r][c] = v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if (row..nrows).any(|r| !m[r][ncols].is_zero()) {
        return None;
    }
    let mut x = vec![E::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][ncols].clone();
    }
    Some(x)
}

/// Search `s = N/Dn` with `Dn = (squarefree part of den(S)·k2)^deg_cap` and
/// `deg N ≤ num_cap` solving `S = D_y(s) + s·K`. A test oracle, not a
/// decision procedure: `None` only means no solution within the bounds.
pub fn ansatz_integrability_oracle<E: BaseField>(
    ks: &KernelShell<E>,
    deg_cap: u32,
    num_cap: usize,
) -> Option<RatFn<E>> {
    let (k1, k2) = (&ks.k1, &ks.k2);
    let (num_s, den_s) = (ks.shell.num(), ks.shell.den());
    let dn = squarefree_part(&den_s.mul(k2)).expect("nonzero").pow(deg_cap);
    let ddn = dn.deriv();
    // den_S·[(N'·Dn − N·Dn')·k2 + k1·N·Dn] = num_S·Dn²·k2
    let cols: Vec<UPoly<E>> = (0..=num_cap)
        .map(|j| {
            let yj = UPoly::monomial(E::one(), j);
            let lhs = yj.deriv().mul(&dn).sub(&yj.mul(&ddn)).mul(k2).add(&k1.mul(&yj).mul(&dn));
            den_s.mul(&lhs)
        })
        .collect();
    let rhs = num_s.mul(&dn).mul(&dn).mul(k2);
    let x = solve_columns(&cols, &rhs)?;
    Some(RatFn::new(UPoly::new(x), dn))
}

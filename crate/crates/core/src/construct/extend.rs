//! Passing between `C^⊥ = C ⊕ span(e)` on `X` and a self-dual code on `X`
//! plus one point.

use super::report::{ConstructionReport, Node};
use super::transitive::has_hull_relation;
use crate::error::{Error, Result};
use crate::gf::Fel;
use crate::linalg::Subspace;

#[derive(Debug, Clone)]
pub struct ExtendedCode {
    pub code: Subspace,
    pub lambda: Fel,
    pub report: ConstructionReport,
}

/// `Ĉ = [C | 0] ⊕ span(e, λ)` with `λ² = -n`, the new point last.
pub fn extend_code(c: &Subspace, seed: u64) -> Result<ExtendedCode> {
    let f = c.field().clone();
    let n = c.ambient();
    if !has_hull_relation(c)? {
        return Err(Error::HullMismatch(format!(
            "dual of the [{n}, {}] code is not the code plus the all-ones vector",
            c.dim()
        )));
    }
    let minus_n = f.neg(f.from_int(n as i64));
    let lambda = f.sqrt(minus_n).ok_or(Error::NoSquareRoot(n as u32))?;
    let mut rows: Vec<Vec<Fel>> = (0..c.dim())
        .map(|i| {
            let mut r = c.basis().row(i).to_vec();
            r.push(Fel::ZERO);
            r
        })
        .collect();
    let mut last = vec![Fel::ONE; n];
    last.push(lambda);
    rows.push(last);
    let code = Subspace::from_rows(&f, n + 1, &rows);
    if code.perp_standard() != code {
        return Err(Error::InternalCaseError("extended code is not self-dual".into()));
    }
    let trail = vec![Node::new("extend", "")
        .leaf("length", n)
        .leaf("minus_n", minus_n)
        .leaf("lambda", lambda)
        .leaf("dimension", code.dim())];
    let report = ConstructionReport::new("extend", vec![seed], trail, code.clone());
    Ok(ExtendedCode { code, lambda, report })
}

/// Deletes the last coordinate of a self-dual `Ĉ` and intersects with
/// `e^⊥`; the result satisfies `C^⊥ = C ⊕ span(e)`.
pub fn puncture_hull(c_hat: &Subspace) -> Result<Subspace> {
    let f = c_hat.field().clone();
    let m = c_hat.ambient();
    if m == 0 {
        return Err(Error::HullMismatch("cannot puncture a code of length 0".into()));
    }
    if c_hat.perp_standard() != *c_hat {
        return Err(Error::HullMismatch("code is not self-dual".into()));
    }
    let n = m - 1;
    let rows: Vec<Vec<Fel>> = (0..c_hat.dim()).map(|i| c_hat.basis().row(i)[..n].to_vec()).collect();
    let punctured = Subspace::from_rows(&f, n, &rows);
    let e_perp = Subspace::from_rows(&f, n, &[vec![Fel::ONE; n]]).perp_standard();
    let c = punctured.intersection(&e_perp)?;
    if !has_hull_relation(&c)? {
        return Err(Error::HullMismatch("punctured code lacks the hull relation".into()));
    }
    Ok(c)
}

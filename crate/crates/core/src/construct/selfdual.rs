//! Self-dual submodules of a module with a non-degenerate invariant form.
//!
//! Each step peels off an isotropic irreducible `W` together with a
//! complement `W'` pairing with it, and recurses on `(W + W')^⊥`. A
//! non-degenerate irreducible is first paired with an isomorphic copy in its
//! perp; in characteristic 2 the graph of a form-compatible isomorphism is
//! then isotropic.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::report::{ConstructionReport, Node};
use super::FailureCertificate;
use crate::error::{Error, Result};
use crate::linalg::{FormKind, Mat, Subspace, SymForm};
use crate::modrep::{hom_space, homogeneous_decomposition, iso_test, FGModule};

#[derive(Debug, Clone)]
pub struct SelfDualCode {
    pub code: Subspace,
    pub report: ConstructionReport,
}

/// A submodule `U` of `v` with `U^⊥ ∩ v = U`, or an obstruction.
///
/// Runs in characteristic 2 with odd `|G|`, or in any characteristic when
/// no self-dual composition factor turns up. In odd characteristic a
/// non-degenerate irreducible is refused with `PreconditionViolated`.
pub fn selfdual_code(v: &FGModule, seed: u64) -> Result<SelfDualCode> {
    let f = v.field().clone();
    let form = v
        .form()
        .cloned()
        .ok_or_else(|| Error::PreconditionViolated("module carries no bilinear form".into()))?;
    let char2 = f.characteristic() == 2;
    if char2 && v.group_order() % 2 == 0 {
        return Err(Error::PreconditionViolated("characteristic 2 needs a group of odd order".into()));
    }
    if !v.carrier().restrict_form(&form)?.radical.is_zero() {
        return Err(Error::PreconditionViolated("form is degenerate on the module".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut code = Subspace::zero(&f, v.ambient_dim());
    let mut cur = v.clone();
    let mut trail = Vec::new();
    let limit = v.dim() / 2 + 1;
    while cur.dim() > 0 {
        if trail.len() > limit {
            return Err(Error::InternalCaseError("self-dual recursion did not shrink".into()));
        }
        let mut node = Node::new("step", trail.len()).leaf("module_dim", cur.dim());
        let w = cur.find_irreducible(&mut rng)?;
        node = node.leaf("irreducible_dim", w.dim());
        let kind = w.carrier().restrict_form(&form)?.kind;
        let iso = match kind {
            FormKind::Isotropic => {
                node = node.leaf("case", "isotropic");
                w
            }
            FormKind::Mixed => {
                return Err(Error::InternalCaseError(
                    "restricted form on an irreducible is neither zero nor non-degenerate".into(),
                ))
            }
            FormKind::NonDegenerate => {
                if !char2 {
                    return Err(Error::PreconditionViolated(
                        "non-degenerate irreducible in odd characteristic; no construction is known".into(),
                    ));
                }
                let (iso, sub) = pair_nondegenerate(&cur, &w, &form, v, seed, &mut rng)?;
                node = node.child(sub);
                iso
            }
        };
        let (next, sub) = isotropic_step(&cur, &iso)?;
        node = node.child(sub);
        code = code.sum(iso.carrier())?;
        cur = next;
        trail.push(node);
    }
    // U is isotropic of half dimension
    let perp = v.perp_within(&code)?;
    if perp != code || !v.is_stable(&code) {
        return Err(Error::InternalCaseError("constructed code is not self-dual".into()));
    }
    let report = ConstructionReport::new("selfdual", vec![seed], trail, code.clone());
    Ok(SelfDualCode { code, report })
}

/// Splits `cur = W^⊥ ⊕ W'` for isotropic `W` and returns `(W + W')^⊥`.
fn isotropic_step(cur: &FGModule, w: &FGModule) -> Result<(FGModule, Node)> {
    let wp = cur.submodule(cur.perp_within(w.carrier())?)?;
    let comp = cur.invariant_complement(&wp)?;
    let pair = comp.carrier().sum(w.carrier())?;
    let rest = cur.submodule(cur.perp_within(&pair)?)?;
    if rest.dim() + 2 * w.dim() != cur.dim() {
        return Err(Error::InternalCaseError("hyperbolic split has the wrong dimension".into()));
    }
    let node = Node::new("split", "")
        .leaf("perp_dim", wp.dim())
        .leaf("complement_dim", comp.dim())
        .leaf("remaining_dim", rest.dim());
    Ok((rest, node))
}

/// Finds an isotropic submodule isomorphic to the non-degenerate
/// irreducible `w` inside `w ⊕ (cur ∩ w^⊥)`.
fn pair_nondegenerate(
    cur: &FGModule,
    w: &FGModule,
    form: &SymForm,
    top: &FGModule,
    seed: u64,
    rng: &mut ChaCha8Rng,
) -> Result<(FGModule, Node)> {
    let p = cur.submodule(cur.perp_within(w.carrier())?)?;
    let homs = hom_space(w, &p)?;
    if homs.is_empty() {
        return Err(obstruction(top, seed));
    }
    let mut copies = Vec::with_capacity(homs.len());
    for t in &homs {
        let img = Subspace::span(&t.mul(p.carrier().basis()));
        copies.push(p.submodule(img)?.certified());
    }
    if let Some(c) = copies
        .iter()
        .find(|c| c.carrier().restrict_form(form).is_ok_and(|r| r.kind == FormKind::Isotropic))
    {
        let node = Node::new("case", "nondegenerate")
            .leaf("copy", "isotropic")
            .leaf("copies", homs.len());
        return Ok((c.clone(), node));
    }
    // image of a random nonzero hom
    let f = w.field().clone();
    let t_rand = loop {
        let mut acc = Mat::zeros(&f, w.dim(), p.dim());
        for h in &homs {
            acc = acc.add(&h.scale(f.random(rng)));
        }
        if !acc.is_zero() {
            break acc;
        }
    };
    let img = Subspace::span(&t_rand.mul(p.carrier().basis()));
    let wt = &p.submodule(img)?.certified();
    let alpha = iso_test(w, wt)?
        .ok_or_else(|| Error::InternalCaseError("hom image is not isomorphic to its source".into()))?;
    let t = &alpha.matrix;
    let fm = w.gram().expect("form");
    let ft = wt.gram().expect("form");
    let fprime = t.mul(&ft).mul(&t.transpose());
    let a0 = fprime.mul(&fm.inverse()?);
    let internal = |what: &str| Error::InternalCaseError(format!("square-root step: {what}"));
    let act = w.action();
    if !act.iter().all(|r| r.mul(&a0) == a0.mul(r)) {
        return Err(internal("pulled-back form does not give an endomorphism"));
    }
    if a0.mul(&fm) != fm.mul(&a0.transpose()) {
        return Err(internal("endomorphism is not symmetric for the form"));
    }
    let minpoly = a0.min_poly();
    let d0 = minpoly.degree().expect("nonzero") as u32;
    let t_exp = w.field().degree() * d0;
    let a0_inv = a0.inverse()?;
    // in a field of order 2^t, x -> x^(2^(t-1)) is the square root
    let mut beta = a0_inv.clone();
    for _ in 1..t_exp {
        beta = beta.mul(&beta);
    }
    if beta.mul(&beta) != a0_inv || beta.mul(&a0) != a0.mul(&beta) {
        return Err(internal("beta is not a commuting square root"));
    }
    if beta.mul(&fprime).mul(&beta.transpose()) != fm {
        return Err(internal("beta does not carry the pulled-back form to the original"));
    }
    let gamma = beta.mul(t);
    if gamma.mul(&ft).mul(&gamma.transpose()) != fm {
        return Err(internal("gamma is not compatible with the two forms"));
    }
    // graph {w + gamma(w)}
    let rows = w.carrier().basis().add(&gamma.mul(wt.carrier().basis()));
    let diag = cur.submodule(Subspace::span(&rows))?.certified();
    let r = diag.carrier().restrict_form(form)?;
    if r.kind != FormKind::Isotropic || diag.dim() != w.dim() {
        return Err(internal("diagonal is not isotropic"));
    }
    let coeffs: Vec<String> = minpoly.coeffs().iter().map(|c| c.0.to_string()).collect();
    let node = Node::new("case", "nondegenerate")
        .leaf("copy", "diagonal")
        .leaf("copies", homs.len())
        .leaf("alpha0_minpoly", coeffs.join(" "))
        .leaf("alpha0_degree", d0)
        .leaf("field_exponent", t_exp)
        .child(Node::new("alpha", "").text_block(&mat_text(t)))
        .child(Node::new("beta", "").text_block(&mat_text(&beta)));
    Ok((diag, node))
}

fn mat_text(m: &Mat) -> String {
    (0..m.rows())
        .map(|i| {
            let r: Vec<String> = m.row(i).iter().map(|x| x.0.to_string()).collect();
            r.join(" ") + "\n"
        })
        .collect()
}

fn obstruction(top: &FGModule, seed: u64) -> Error {
    match homogeneous_decomposition(top, seed) {
        Err(e) => e,
        Ok(h) => match FailureCertificate::from_decomposition(&h) {
            Some(c) => Error::Obstruction(Box::new(c)),
            None => Error::InternalCaseError(
                "no isomorphic copy found although every self-dual class has even multiplicity".into(),
            ),
        },
    }
}

//! Codes `C` with `C^⊥ = C ⊕ span(e)` in transitive permutation modules of
//! odd-order groups, by recursion on a minimal normal subgroup.

use std::sync::Arc;

use super::abelian::{abelian_code, AbelianAction};
use super::report::{ConstructionReport, Node};
use crate::error::{Error, Result};
use crate::gf::{Fel, FiniteField};
use crate::group::{induced_gset, GSet, InducedGSet, PermGroup};
use crate::linalg::{Mat, Subspace};
use crate::numtheory::{gcd, odd_order_check};

#[derive(Debug, Clone)]
pub struct InducedCode {
    pub code: Subspace,
    pub induced: InducedGSet,
}

#[derive(Debug, Clone)]
pub struct TransitiveCode {
    pub code: Subspace,
    pub report: ConstructionReport,
}

pub(crate) fn stable_under_gset(s: &Subspace, x: &GSet) -> bool {
    let f = s.field();
    x.generator_actions()
        .iter()
        .all(|a| s.is_stable_under(&Mat::permutation(f, a.images())))
}

/// Moves coordinate `i` to `map[i]`.
fn relabel(s: &Subspace, map: &[usize]) -> Subspace {
    let n = map.len();
    let rows: Vec<Vec<Fel>> = (0..s.dim())
        .map(|i| {
            let r = s.basis().row(i);
            let mut out = vec![Fel::ZERO; n];
            for (j, &m) in map.iter().enumerate() {
                out[m] = r[j];
            }
            out
        })
        .collect();
    Subspace::from_rows(s.field(), n, &rows)
}

fn block_diagonal(d: &Subspace, blocks: usize) -> Subspace {
    let k = d.ambient();
    let mut rows = Vec::with_capacity(d.dim() * blocks);
    for b in 0..blocks {
        for i in 0..d.dim() {
            let mut out = vec![Fel::ZERO; k * blocks];
            out[b * k..(b + 1) * k].copy_from_slice(d.basis().row(i));
            rows.push(out);
        }
    }
    Subspace::from_rows(d.field(), k * blocks, &rows)
}

/// `Ind_H^G(D)` for an `H`-stable `D ≤ F^Y`: one copy of `D` per block of
/// the induced G-set.
pub fn induce_code(g: Arc<PermGroup>, y: &GSet, d: &Subspace) -> Result<InducedCode> {
    if d.ambient() != y.points() {
        return Err(Error::DimensionMismatch {
            expected: y.points(),
            got: d.ambient(),
        });
    }
    if !stable_under_gset(d, y) {
        return Err(Error::NotSubmodule);
    }
    let induced = induced_gset(g, y)?;
    let blocks = induced.transversal.len();
    let code = block_diagonal(d, blocks);
    if !stable_under_gset(&code, &induced.gset) {
        return Err(Error::InternalCaseError("induced code is not G-stable".into()));
    }
    if code.perp_standard() != block_diagonal(&d.perp_standard(), blocks) {
        return Err(Error::InternalCaseError("induction does not commute with duality".into()));
    }
    Ok(InducedCode { code, induced })
}

fn all_ones(field: &Arc<FiniteField>, n: usize) -> Subspace {
    Subspace::from_rows(field, n, &[vec![Fel::ONE; n]])
}

/// True when `C^⊥ = C ⊕ span(e)`.
pub(crate) fn has_hull_relation(c: &Subspace) -> Result<bool> {
    let e = all_ones(c.field(), c.ambient());
    let e_vec = e.basis().row(0).to_vec();
    Ok(!c.contains(&e_vec) && c.perp_standard() == c.sum(&e)?)
}

/// `C ≤ F X` with `C^⊥ = C ⊕ span(e)` for a transitive G-set `X` of an
/// odd-order group, `gcd(q, |X|) = 1`, and odd order of `q` mod every
/// prime dividing `|X|`.
pub fn transitive_code(x: &GSet, field: &Arc<FiniteField>, seed: u64) -> Result<TransitiveCode> {
    let order = x.group().order();
    let n = x.points();
    let q = field.order() as u64;
    if order % 2 == 0 {
        return Err(Error::PreconditionViolated(format!("|G| = {order} is even")));
    }
    if n == 0 || !x.is_transitive() {
        return Err(Error::PreconditionViolated("the G-set is not transitive".into()));
    }
    if gcd(q, n as u64) != 1 {
        return Err(Error::PreconditionViolated(format!("gcd({q}, {n}) != 1")));
    }
    let w = odd_order_check(q as i64, n as u64)?;
    if !w.pass {
        return Err(Error::PreconditionViolated(format!(
            "order of {q} mod {n} is {}, which is even",
            w.order
        )));
    }
    let limit = (usize::BITS - order.leading_zeros()) as usize + 1;
    let (code, node) = level(x, field, 0, limit)?;
    let report = ConstructionReport::new("transitive", vec![seed], vec![node], code.clone());
    Ok(TransitiveCode { code, report })
}

fn gens_text(g: &PermGroup) -> String {
    g.generators().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
}

fn level(x: &GSet, field: &Arc<FiniteField>, depth: usize, limit: usize) -> Result<(Subspace, Node)> {
    if depth > limit {
        return Err(Error::InternalCaseError(format!("recursion depth {depth} exceeds {limit}")));
    }
    let n = x.points();
    let g = Arc::new(x.image_group());
    let mut node = Node::new("level", depth)
        .leaf("degree", n)
        .leaf("group_order", g.order());
    if n == 1 {
        node.push(Node::new("case", "base"));
        return Ok((Subspace::zero(field, 1), node));
    }
    let natural = GSet::natural(g.clone());
    let g1 = g.point_stabilizer(0);
    let a = g.minimal_normal_subgroup()?;
    let ag1 = g.product_subgroup(&a, &g1)?;
    node = node
        .leaf("stabilizer_order", g1.order())
        .child(
            Node::new("minimal_normal", a.order())
                .leaf("generators", gens_text(&a)),
        )
        .leaf("product_order", ag1.order());
    let code = if ag1.order() == g1.order() {
        return Err(Error::InternalCaseError(
            "minimal normal subgroup lies in the point stabilizer".into(),
        ));
    } else if ag1.order() == g.order() {
        if a.order() != n {
            return Err(Error::InternalCaseError("minimal normal subgroup is not regular".into()));
        }
        node.push(Node::new("case", "regular"));
        let h = AbelianAction::conjugation(&a, &g1)?;
        let ab = abelian_code(&a, &h, field)?;
        node.push(ab.trail.clone());
        let map: Vec<usize> = a.elements().iter().map(|p| p.apply(0)).collect();
        relabel(&ab.code, &map)
    } else {
        node.push(Node::new("case", "induced"));
        let ag1 = Arc::new(ag1);
        let orbit = ag1.orbit(0);
        let (y, labels) = natural.restrict(ag1.clone())?.sub_gset(&orbit)?;
        let (d, sub) = level(&y, field, depth + 1, limit)?;
        node.push(Node::new("orbit", "").leaf("size", y.points()).child(sub));
        let ind = induce_code(g.clone(), &y, &d)?;
        let k = y.points();
        let mut point_of = vec![0usize; n];
        for (i, t) in ind.induced.transversal.iter().enumerate() {
            for (j, &p) in labels.iter().enumerate() {
                point_of[i * k + j] = t.apply(p);
            }
        }
        let ind_code = relabel(&ind.code, &point_of);
        let blocks = GSet::cosets(g.clone(), &ag1)?;
        let m = blocks.points();
        let (e0, sub) = level(&blocks, field, depth + 1, limit)?;
        node.push(Node::new("blocks", "").leaf("count", m).child(sub));
        let mut block_of = vec![0usize; n];
        for i in 0..n {
            block_of[point_of[i]] = i / k;
        }
        let rows: Vec<Vec<Fel>> = (0..e0.dim())
            .map(|i| {
                let r = e0.basis().row(i);
                (0..n).map(|x| r[block_of[x]]).collect()
            })
            .collect();
        let e = Subspace::from_rows(field, n, &rows);
        ind_code.sum(&e)?
    };
    if 2 * code.dim() + 1 != n || !has_hull_relation(&code)? || !stable_under_gset(&code, &natural) {
        return Err(Error::InternalCaseError(format!("level {depth} output fails its checks")));
    }
    node.push(Node::new("dimension", code.dim()));
    Ok((code, node))
}

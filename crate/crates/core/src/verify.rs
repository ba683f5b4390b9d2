//! Independent checks on codes: duals, hull shape, invariance, and an
//! exhaustive search over small submodule lattices.

use std::collections::BTreeSet;
use std::fmt;

use crate::construct::Node;
use crate::error::{Error, Result};
use crate::gf::Fel;
use crate::group::PermGroup;
use crate::linalg::{Mat, Subspace, SymForm};
use crate::modrep::FGModule;
use crate::par::Execution;

/// `perp(C)` under `form`. When `C` is stable under every matrix in
/// `gens`, the dual is checked to be stable too.
pub fn dual_code(c: &Subspace, form: &SymForm, gens: &[Mat]) -> Result<Subspace> {
    let d = c.perp(form)?;
    if gens.iter().all(|g| c.is_stable_under(g)) && !gens.iter().all(|g| d.is_stable_under(g)) {
        return Err(Error::VerificationFailed("dual of an invariant code is not invariant".into()));
    }
    Ok(d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HullRelation {
    SelfDual,
    /// `perp(C) = C ⊕ span(e)`.
    HullPlusE,
    SelfOrthogonalOther,
    None,
}

impl fmt::Display for HullRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HullRelation::SelfDual => "self_dual",
            HullRelation::HullPlusE => "hull_plus_e",
            HullRelation::SelfOrthogonalOther => "self_orthogonal_other",
            HullRelation::None => "none",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullReport {
    pub code: Subspace,
    pub dual: Subspace,
    pub relation: HullRelation,
    pub dim: usize,
    pub dual_dim: usize,
    pub hull_dim: usize,
}

impl HullReport {
    pub fn to_node(&self) -> Node {
        Node::new("hull", "")
            .leaf("relation", self.relation)
            .leaf("length", self.code.ambient())
            .leaf("dimension", self.dim)
            .leaf("dual_dimension", self.dual_dim)
            .leaf("hull_dimension", self.hull_dim)
    }
}

pub fn classify_hull(c: &Subspace, form: &SymForm, e: &[Fel]) -> Result<HullReport> {
    if e.iter().all(|x| x.is_zero()) {
        return Err(Error::PreconditionViolated("reference vector is zero".into()));
    }
    let dual = c.perp(form)?;
    let span_e = Subspace::from_rows(c.field(), c.ambient(), &[e.to_vec()]);
    let (hull, _) = c.meet_join(&dual)?;
    let relation = if dual == *c {
        HullRelation::SelfDual
    } else if !c.contains(e) && dual == c.sum(&span_e)? {
        HullRelation::HullPlusE
    } else if hull == *c {
        HullRelation::SelfOrthogonalOther
    } else {
        HullRelation::None
    };
    Ok(HullReport {
        dim: c.dim(),
        dual_dim: dual.dim(),
        hull_dim: hull.dim(),
        code: c.clone(),
        dual,
        relation,
    })
}

/// True iff every generator of `g`, as a permutation matrix, maps `C` onto
/// itself.
pub fn invariance_check(c: &Subspace, g: &PermGroup) -> Result<bool> {
    if g.degree() != c.ambient() {
        return Err(Error::DegreeMismatch {
            expected: c.ambient(),
            got: g.degree(),
        });
    }
    let f = c.field();
    Ok(g.generators()
        .iter()
        .all(|p| c.is_stable_under(&Mat::permutation(f, p.images()))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    SelfDual,
    HullPlusE,
}

/// Limits for [`brute_force_search`]: the module may have at most
/// `max_vectors` vectors, and at most `max_lattice` self-orthogonal
/// submodules are kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_vectors: u64,
    pub max_lattice: usize,
}

impl Default for Budget {
    /// Covers GF(2) up to dimension 16 and GF(4) up to dimension 8.
    fn default() -> Budget {
        Budget {
            max_vectors: 1 << 16,
            max_lattice: 200_000,
        }
    }
}

impl Budget {
    pub fn allows(&self, q: u64, dim: usize) -> bool {
        (q as f64).powi(dim as i32) <= self.max_vectors as f64
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    /// The least witness by the canonical subspace order.
    pub witness: Option<Subspace>,
    pub cyclic_submodules: usize,
    pub lattice_size: usize,
}

fn self_orthogonal(form: &SymForm, s: &Subspace) -> bool {
    s.is_zero() || form.gram_of(s.basis()).is_zero()
}

/// Enumerates the self-orthogonal submodules of `v` of dimension at most
/// the target's and returns one meeting the target relation. `None` only
/// means that no such submodule exists at all.
///
/// Every submodule is a sum of cyclic ones, so the lattice is generated
/// from the spins of all isotropic vectors, closing under sums while
/// staying self-orthogonal.
pub fn brute_force_search(v: &FGModule, target: Target, budget: &Budget, exec: Execution) -> Result<SearchOutcome> {
    let f = v.field().clone();
    let q = f.order() as u64;
    let form = v
        .form()
        .cloned()
        .ok_or_else(|| Error::PreconditionViolated("module carries no bilinear form".into()))?;
    if !budget.allows(q, v.dim()) {
        return Err(Error::BudgetExceeded(format!(
            "{q}^{} vectors exceed the budget of {}",
            v.dim(),
            budget.max_vectors
        )));
    }
    let n = v.ambient_dim();
    let e = vec![Fel::ONE; n];
    let want = match target {
        Target::SelfDual if v.dim() % 2 == 0 => Some(v.dim() / 2),
        Target::HullPlusE if v.dim() % 2 == 1 && v.carrier().contains(&e) => Some(v.dim() / 2),
        _ => None,
    };
    let Some(want) = want else {
        return Ok(SearchOutcome {
            witness: None,
            cyclic_submodules: 0,
            lattice_size: 0,
        });
    };
    // normalized isotropic vectors
    let vectors: Vec<Vec<Fel>> = v
        .carrier()
        .vectors()
        .filter(|x| x.iter().find(|c| !c.is_zero()) == Some(&Fel::ONE))
        .filter(|x| form.eval(&f, x, x).is_zero())
        .collect();
    let spins = exec.map_collect(&vectors, |x| {
        v.spin(x).ok().map(|m| m.carrier().clone()).filter(|s| s.dim() <= want && self_orthogonal(&form, s))
    });
    let cyclic: Vec<Subspace> = spins.into_iter().flatten().collect::<BTreeSet<_>>().into_iter().collect();
    let mut lattice: BTreeSet<Subspace> = cyclic.iter().cloned().collect();
    lattice.insert(Subspace::zero(&f, n));
    let mut frontier: Vec<Subspace> = lattice.iter().cloned().collect();
    while !frontier.is_empty() {
        let sums = exec.map_collect(&frontier, |x| {
            cyclic
                .iter()
                .filter(|c| !x.contains_subspace(c))
                .filter_map(|c| x.sum(c).ok())
                .filter(|s| s.dim() <= want && self_orthogonal(&form, s))
                .collect::<Vec<_>>()
        });
        frontier = Vec::new();
        for s in sums.into_iter().flatten() {
            if lattice.insert(s.clone()) {
                frontier.push(s);
            }
        }
        if lattice.len() > budget.max_lattice {
            return Err(Error::BudgetExceeded(format!(
                "more than {} self-orthogonal submodules",
                budget.max_lattice
            )));
        }
    }
    let candidates: Vec<&Subspace> = lattice.iter().filter(|s| s.dim() == want).collect();
    let witness = candidates
        .into_iter()
        .find(|s| match (target, v.perp_within(s)) {
            (Target::SelfDual, Ok(p)) => p == **s,
            (Target::HullPlusE, Ok(p)) => {
                let span_e = Subspace::from_rows(&f, n, &[e.clone()]);
                s.sum(&span_e).is_ok_and(|t| t == p)
            }
            _ => false,
        })
        .cloned();
    Ok(SearchOutcome {
        witness,
        cyclic_submodules: cyclic.len(),
        lattice_size: lattice.len(),
    })
}

//! Constructions of self-dual and near-self-dual permutation codes, with
//! an audit trail for every run.

mod abelian;
mod extend;
mod report;
mod selfdual;
mod transitive;

pub use abelian::{abelian_code, character_table, AbelianAction, AbelianCode, CharacterTable, OrbitPartition};
pub use extend::{extend_code, puncture_hull, ExtendedCode};
pub use report::{ConstructionReport, Node};
pub use selfdual::{selfdual_code, SelfDualCode};
pub use transitive::{induce_code, transitive_code, InducedCode, TransitiveCode};

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::FiniteField;
use crate::group::GSet;
use crate::linalg::Subspace;
use crate::modrep::{homogeneous_decomposition, FGModule, HomogeneousDecomposition};
use crate::numtheory::{gcd, odd_order_check};

/// Evidence that no self-dual submodule exists: a self-dual composition
/// factor occurring an odd number of times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailureCertificate {
    pub class_index: usize,
    pub factor_dim: usize,
    pub multiplicity: usize,
    pub sample: Subspace,
    pub seed: u64,
    /// `(dim, multiplicity, self_dual)` for every class.
    pub classes: Vec<(usize, usize, bool)>,
}

impl FailureCertificate {
    pub fn from_decomposition(h: &HomogeneousDecomposition) -> Option<FailureCertificate> {
        let (i, c) = h.odd_self_dual().next()?;
        Some(FailureCertificate {
            class_index: i,
            factor_dim: c.sample.dim(),
            multiplicity: c.multiplicity,
            sample: c.sample.carrier().clone(),
            seed: h.seed,
            classes: summarize(h),
        })
    }

    pub fn to_node(&self) -> Node {
        let mut n = Node::new("certificate", "odd multiplicity")
            .leaf("class", self.class_index)
            .leaf("factor_dim", self.factor_dim)
            .leaf("multiplicity", self.multiplicity)
            .leaf("seed", self.seed);
        n.push(Node::new("sample", "").text_block(&self.sample.to_text()));
        n.push(classes_node(&self.classes));
        n
    }
}

impl fmt::Display for FailureCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "self-dual composition factor #{} of dimension {} has odd multiplicity {}",
            self.class_index, self.factor_dim, self.multiplicity
        )
    }
}

pub(crate) fn summarize(h: &HomogeneousDecomposition) -> Vec<(usize, usize, bool)> {
    h.classes
        .iter()
        .map(|c| (c.sample.dim(), c.multiplicity, c.self_dual))
        .collect()
}

pub(crate) fn classes_node(classes: &[(usize, usize, bool)]) -> Node {
    let mut n = Node::new("classes", classes.len());
    for (i, (d, m, s)) in classes.iter().enumerate() {
        n.push(
            Node::new("class", i)
                .leaf("dim", d)
                .leaf("multiplicity", m)
                .leaf("self_dual", s),
        );
    }
    n
}

/// Outcome of one existence criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Criterion {
    pub name: &'static str,
    pub applicable: bool,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub degree: usize,
    pub group_order: usize,
    pub transitive: bool,
    pub classes: Vec<(usize, usize, bool)>,
    pub criteria: Vec<Criterion>,
}

impl Verdict {
    pub fn criterion(&self, name: &str) -> Option<&Criterion> {
        self.criteria.iter().find(|c| c.name == name)
    }

    pub fn to_node(&self) -> Node {
        let mut n = Node::new("verdict", "")
            .leaf("degree", self.degree)
            .leaf("group_order", self.group_order)
            .leaf("transitive", self.transitive);
        n.push(classes_node(&self.classes));
        for c in &self.criteria {
            n.push(
                Node::new("criterion", c.name)
                    .leaf("applicable", c.applicable)
                    .leaf("pass", c.pass)
                    .leaf("detail", &c.detail),
            );
        }
        n
    }
}

/// Criterion names used by [`decide_existence`].
pub const EVEN_MULTIPLICITY: &str = "even-multiplicity";
pub const NO_SELF_DUAL_FACTOR: &str = "no-self-dual-factor";
pub const EXTENDED_EVEN_Q: &str = "extended-even-q";
pub const EXTENDED_ODD_Q: &str = "extended-odd-q";

/// Evaluates every existence criterion that applies to `F X`.
///
/// * even-multiplicity: characteristic 2, odd `|G|`; exact criterion for a
///   self-dual permutation code.
/// * no-self-dual-factor: any characteristic; sufficient only.
/// * extended-even-q / extended-odd-q: transitive `X`, odd `|G|`; sufficient
///   for a self-dual extended code.
pub fn decide_existence(x: &GSet, field: &Arc<FiniteField>, seed: u64) -> Result<Verdict> {
    let q = field.order() as u64;
    let order = x.group().order();
    if gcd(order as u64, q) != 1 {
        return Err(Error::NotCoprime { a: order as u64, n: q });
    }
    let v = FGModule::permutation_module(x, field)?;
    let h = homogeneous_decomposition(&v, seed)?;
    let classes = summarize(&h);
    let char2 = field.characteristic() == 2;
    let odd: Vec<String> = h
        .odd_self_dual()
        .map(|(i, c)| format!("class {i} (dim {}) multiplicity {}", c.sample.dim(), c.multiplicity))
        .collect();
    let mut criteria = vec![Criterion {
        name: EVEN_MULTIPLICITY,
        applicable: char2 && order % 2 == 1,
        pass: odd.is_empty(),
        detail: if odd.is_empty() {
            "every self-dual class has even multiplicity".into()
        } else {
            odd.join("; ")
        },
    }];
    let self_dual_classes = h.classes.iter().filter(|c| c.self_dual).count();
    criteria.push(Criterion {
        name: NO_SELF_DUAL_FACTOR,
        applicable: true,
        pass: self_dual_classes == 0,
        detail: format!("{self_dual_classes} self-dual classes"),
    });
    let n = x.points() as u64;
    let transitive = x.is_transitive();
    let ext_applicable = transitive && order % 2 == 1 && n > 0;
    let order_info = if gcd(q, n.max(1)) == 1 && n > 0 {
        Some(odd_order_check(q as i64, n)?)
    } else {
        None
    };
    let order_pass = order_info.as_ref().is_some_and(|w| w.pass);
    let order_detail = match &order_info {
        Some(w) => format!("order of {q} mod {n} is {}", w.order),
        None => format!("{q} and {n} are not coprime"),
    };
    criteria.push(Criterion {
        name: EXTENDED_EVEN_Q,
        applicable: ext_applicable && char2,
        pass: order_pass,
        detail: order_detail.clone(),
    });
    let minus_n = field.neg(field.from_int(n as i64));
    let root = field.sqrt(minus_n);
    criteria.push(Criterion {
        name: EXTENDED_ODD_Q,
        applicable: ext_applicable && !char2,
        pass: order_pass && root.is_some(),
        detail: match root {
            Some(r) => format!("{order_detail}; sqrt(-{n}) = {r}"),
            None => format!("{order_detail}; -{n} is not a square"),
        },
    });
    Ok(Verdict {
        degree: x.points(),
        group_order: order,
        transitive,
        classes,
        criteria,
    })
}

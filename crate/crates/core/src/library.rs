//! Small odd-order permutation groups and their transitive actions.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::Result;
use crate::group::{GSet, Perm, PermGroup};

#[derive(Debug, Clone)]
pub struct LibraryGroup {
    pub name: String,
    pub group: Arc<PermGroup>,
}

fn perm(images: Vec<u32>) -> Perm {
    Perm::new(images).expect("library permutation")
}

pub fn cyclic(m: usize) -> PermGroup {
    PermGroup::cyclic(m)
}

/// `Z3 x Z3` generated by `(0 1 2)` and `(3 4 5)`.
pub fn z3xz3() -> PermGroup {
    PermGroup::new(6, vec![perm(vec![1, 2, 0, 3, 4, 5]), perm(vec![0, 1, 2, 4, 5, 3])]).expect("group")
}

/// The Frobenius group of order 21: `x -> x + 1` and `x -> 2x` on `Z7`.
pub fn frobenius21() -> PermGroup {
    let t = perm((0..7).map(|x| (x + 1) % 7).collect());
    let s = perm((0..7).map(|x| (2 * x) % 7).collect());
    PermGroup::new(7, vec![t, s]).expect("group")
}

/// Non-abelian group of order 27 and exponent 3, as affine maps of
/// `GF(3)^2` generated by the two translations and `(x, y) -> (x + y, y)`.
/// The point `(x, y)` is labelled `3y + x`.
pub fn extraspecial27() -> PermGroup {
    let map = |f: &dyn Fn(u32, u32) -> (u32, u32)| {
        perm(
            (0..9)
                .map(|p| {
                    let (x, y) = f(p % 3, p / 3);
                    3 * (y % 3) + x % 3
                })
                .collect(),
        )
    };
    let t1 = map(&|x, y| (x + 1, y));
    let t2 = map(&|x, y| (x, y + 1));
    let s = map(&|x, y| (x + y, y));
    PermGroup::new(9, vec![t1, t2, s]).expect("group")
}

/// Cyclic groups of every odd order up to 27, then `Z3 x Z3`, the
/// Frobenius group of order 21 and the order-27 group of exponent 3.
pub fn library() -> Vec<LibraryGroup> {
    let mut out: Vec<LibraryGroup> = (1..=27)
        .step_by(2)
        .map(|m| LibraryGroup {
            name: format!("Z{m}"),
            group: Arc::new(cyclic(m)),
        })
        .collect();
    out.push(LibraryGroup {
        name: "Z3xZ3".into(),
        group: Arc::new(z3xz3()),
    });
    out.push(LibraryGroup {
        name: "F21".into(),
        group: Arc::new(frobenius21()),
    });
    out.push(LibraryGroup {
        name: "E27".into(),
        group: Arc::new(extraspecial27()),
    });
    out
}

/// One representative per conjugacy class of subgroups generated by at
/// most two elements, ordered by decreasing order then by element list.
pub fn subgroup_classes(g: &PermGroup) -> Result<Vec<PermGroup>> {
    let elems = g.elements();
    let mut seen: BTreeSet<Vec<Perm>> = BTreeSet::new();
    let mut subs = Vec::new();
    for i in 0..elems.len() {
        for j in i..elems.len() {
            let h = g.subgroup(vec![elems[i].clone(), elems[j].clone()])?;
            if seen.insert(h.elements().to_vec()) {
                subs.push(h);
            }
        }
    }
    subs.sort_by(|a, b| b.order().cmp(&a.order()).then_with(|| a.elements().cmp(b.elements())));
    let mut reps: Vec<PermGroup> = Vec::new();
    let mut covered: BTreeSet<Vec<Perm>> = BTreeSet::new();
    for h in subs {
        if covered.contains(h.elements()) {
            continue;
        }
        for x in elems {
            let conj: Vec<Perm> = h.elements().iter().map(|y| x.conjugate(y)).collect();
            covered.insert(PermGroup::from_elements(g.degree(), conj)?.elements().to_vec());
        }
        reps.push(h);
    }
    Ok(reps)
}

/// Transitive actions `G/H` of degree at most `max_degree`, one per
/// conjugacy class of `H`, in increasing degree.
pub fn transitive_actions(g: &Arc<PermGroup>, max_degree: usize) -> Result<Vec<GSet>> {
    subgroup_classes(g)?
        .iter()
        .filter(|h| g.order() / h.order() <= max_degree)
        .map(|h| GSet::cosets(g.clone(), h))
        .collect()
}

/// Every transitive action and every disjoint union of two of them (with
/// repetition) of total degree at most `max_degree`. Labels give the
/// degrees of the parts, e.g. `"3+3"`.
pub fn action_unions(g: &Arc<PermGroup>, max_degree: usize) -> Result<Vec<(String, GSet)>> {
    let acts = transitive_actions(g, max_degree)?;
    let mut out = Vec::new();
    for (i, x) in acts.iter().enumerate() {
        out.push((format!("{}[{i}]", x.points()), x.clone()));
        for (j, y) in acts.iter().enumerate().skip(i) {
            if x.points() + y.points() <= max_degree {
                out.push((format!("{}[{i}]+{}[{j}]", x.points(), y.points()), x.disjoint_union(y)?));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        let orders: Vec<usize> = library().iter().map(|g| g.group.order()).collect();
        let mut expected: Vec<usize> = (1..=27).step_by(2).collect();
        expected.extend([9, 21, 27]);
        assert_eq!(orders, expected);
        assert!(!extraspecial27().is_abelian());
        assert!(!frobenius21().is_abelian());
        let e = extraspecial27();
        assert!(e.elements().iter().all(|x| x.pow(3).is_identity()));
    }

    #[test]
    fn subgroup_class_counts() {
        // Z9: 1, Z3, Z9; F21: 1, Z3, Z7, F21; Z3xZ3: 1, four Z3, whole
        assert_eq!(subgroup_classes(&cyclic(9)).unwrap().len(), 3);
        assert_eq!(subgroup_classes(&frobenius21()).unwrap().len(), 4);
        assert_eq!(subgroup_classes(&z3xz3()).unwrap().len(), 6);
        let f = Arc::new(frobenius21());
        let degs: Vec<usize> = transitive_actions(&f, 100).unwrap().iter().map(|x| x.points()).collect();
        assert_eq!(degs, vec![1, 3, 7, 21]);
        assert!(transitive_actions(&f, 100).unwrap().iter().all(|x| x.is_transitive()));
    }

    #[test]
    fn unions_respect_degree() {
        let g = Arc::new(cyclic(3));
        let u = action_unions(&g, 6).unwrap();
        let degs: Vec<usize> = u.iter().map(|(_, x)| x.points()).collect();
        assert_eq!(degs, vec![1, 2, 4, 3, 6]);
    }
}

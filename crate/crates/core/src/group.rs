//! Permutation groups, fully enumerated, and finite G-sets.
//!
//! Products compose right to left: `a.mul(&b)` maps `x` to `a(b(x))`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numtheory::{factorize, gcd};

/// Default cap on enumerated group orders.
pub const ORDER_CAP: usize = 20000;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn new(images: Vec<u32>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &y) in images.iter().enumerate() {
            let y = y as usize;
            if y >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {y} of point {i} is out of range for degree {n}"
                )));
            }
            if seen[y] {
                return Err(Error::InvalidPermutation(format!(
                    "point {y} is hit twice, not a bijection"
                )));
            }
            seen[y] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (0..n as u32).collect(),
        }
    }

    /// The n-cycle 0 -> 1 -> ... -> n-1 -> 0.
    pub fn cycle(n: usize) -> Perm {
        Perm {
            images: (0..n as u32).map(|i| (i + 1) % n as u32).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &y)| i as u32 == y)
    }

    /// `self ∘ other`.
    pub fn mul(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm {
            images: other.images.iter().map(|&y| self.images[y as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.degree()];
        for (i, &y) in self.images.iter().enumerate() {
            inv[y as usize] = i as u32;
        }
        Perm { images: inv }
    }

    /// `self ∘ h ∘ self⁻¹`.
    pub fn conjugate(&self, h: &Perm) -> Perm {
        self.mul(h).mul(&self.inverse())
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut acc = Perm::identity(self.degree());
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    pub fn order(&self) -> u64 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut l = 1u64;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0u64;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            l = l / gcd(l, len) * len;
        }
        l
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", s.join(" "))
    }
}

/// A permutation group with every element listed in ascending order.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<PermGroup> {
        PermGroup::with_cap(degree, gens, ORDER_CAP)
    }

    pub fn with_cap(degree: usize, gens: Vec<Perm>, cap: usize) -> Result<PermGroup> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {g} has degree {}, expected {degree}",
                    g.degree()
                )));
            }
        }
        let gens: Vec<Perm> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        let id = Perm::identity(degree);
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = g.mul(&x);
                if !seen.contains_key(&y) {
                    if seen.len() >= cap {
                        return Err(Error::OrderCapExceeded { cap });
                    }
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Perm> = seen.into_keys().collect();
        elements.sort();
        Ok(PermGroup::assemble(degree, gens, elements))
    }

    fn assemble(degree: usize, gens: Vec<Perm>, elements: Vec<Perm>) -> PermGroup {
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        PermGroup {
            degree,
            gens,
            elements,
            index,
        }
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::assemble(degree, Vec::new(), vec![Perm::identity(degree)])
    }

    /// Cyclic group generated by the n-cycle on n points.
    pub fn cyclic(n: usize) -> PermGroup {
        PermGroup::new(n, vec![Perm::cycle(n)]).expect("cyclic group")
    }

    /// Builds the group from a closed element set, choosing generators greedily.
    pub fn from_elements(degree: usize, mut elements: Vec<Perm>) -> Result<PermGroup> {
        elements.sort();
        elements.dedup();
        let mut gens: Vec<Perm> = Vec::new();
        let mut current = PermGroup::trivial(degree);
        for e in &elements {
            if !current.contains(e) {
                gens.push(e.clone());
                current = PermGroup::new(degree, gens.clone())?;
            }
        }
        if current.elements != elements {
            return Err(Error::NotSubgroup);
        }
        Ok(current)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|e| other.contains(e))
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .all(|a| self.gens.iter().all(|b| a.mul(b) == b.mul(a)))
    }

    /// Subgroup generated by `gens`.
    pub fn subgroup(&self, gens: Vec<Perm>) -> Result<PermGroup> {
        if gens.iter().any(|g| !self.contains(g)) {
            return Err(Error::NotSubgroup);
        }
        PermGroup::new(self.degree, gens)
    }

    /// True when every generator of `self` conjugates `sub` into itself.
    pub fn normalizes(&self, sub: &PermGroup) -> bool {
        self.gens
            .iter()
            .all(|g| sub.gens.iter().all(|s| sub.contains(&g.conjugate(s))))
    }

    pub fn is_normal_subgroup(&self, sub: &PermGroup) -> bool {
        sub.is_subgroup_of(self) && self.normalizes(sub)
    }

    /// Smallest normal subgroup containing `xs`.
    pub fn normal_closure(&self, xs: &[Perm]) -> Result<PermGroup> {
        let mut gens: Vec<Perm> = xs.to_vec();
        let mut n = self.subgroup(gens.clone())?;
        loop {
            let extra = self
                .gens
                .iter()
                .flat_map(|g| n.gens.iter().map(move |s| g.conjugate(s)))
                .find(|c| !n.contains(c));
            match extra {
                None => return Ok(n),
                Some(c) => {
                    gens.push(c);
                    n = PermGroup::new(self.degree, gens.clone())?;
                }
            }
        }
    }

    pub fn conjugacy_class(&self, x: &Perm) -> BTreeSet<Perm> {
        let mut class = BTreeSet::from([x.clone()]);
        let mut queue = VecDeque::from([x.clone()]);
        while let Some(y) = queue.pop_front() {
            for g in &self.gens {
                let c = g.conjugate(&y);
                if class.insert(c.clone()) {
                    queue.push_back(c);
                }
            }
        }
        class
    }

    /// A minimal normal subgroup, checked to be elementary abelian.
    ///
    /// Candidates are normal closures of prime-order elements, one per
    /// conjugacy class. Among the inclusion-minimal ones the smallest prime
    /// wins, then the lexicographically least element list.
    pub fn minimal_normal_subgroup(&self) -> Result<PermGroup> {
        if self.order() % 2 == 0 || self.order() == 1 {
            return Err(Error::NotOddOrder(self.order()));
        }
        let mut done: BTreeSet<Perm> = BTreeSet::new();
        let mut candidates: Vec<(u64, PermGroup)> = Vec::new();
        for x in &self.elements {
            let o = x.order();
            if x.is_identity() || done.contains(x) || factorize(o).0.len() != 1 || factorize(o).0[0].1 != 1 {
                continue;
            }
            done.extend(self.conjugacy_class(x));
            let n = self.normal_closure(std::slice::from_ref(x))?;
            if !candidates.iter().any(|(_, c)| *c == n) {
                candidates.push((o, n));
            }
        }
        let minimal: Vec<&(u64, PermGroup)> = candidates
            .iter()
            .filter(|(_, n)| {
                !candidates
                    .iter()
                    .any(|(_, m)| m.order() < n.order() && m.is_subgroup_of(n))
            })
            .collect();
        let (p, a) = minimal
            .into_iter()
            .min_by(|(p1, a1), (p2, a2)| (p1, &a1.elements).cmp(&(p2, &a2.elements)))
            .expect("a nontrivial group has a prime-order element");
        let elementary = a.is_abelian() && a.elements.iter().all(|e| e.is_identity() || e.order() == *p);
        if !elementary {
            return Err(Error::NotElementaryAbelian);
        }
        Ok(a.clone())
    }

    /// `A H` for `A` normalized by `H`, both inside `self`.
    pub fn product_subgroup(&self, a: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
        if a.degree != h.degree || a.degree != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: a.degree.max(h.degree),
            });
        }
        if !a.is_subgroup_of(self) || !h.is_subgroup_of(self) {
            return Err(Error::NotSubgroup);
        }
        if !h.normalizes(a) {
            return Err(Error::NotNormal);
        }
        let mut gens = a.gens.clone();
        gens.extend(h.gens.iter().cloned());
        PermGroup::new(self.degree, gens)
    }

    /// Left cosets `tH`, each represented by its least element, in ascending
    /// order of representative. The first representative is the identity.
    pub fn left_transversal(&self, h: &PermGroup) -> Result<Vec<Perm>> {
        if !h.is_subgroup_of(self) {
            return Err(Error::NotSubgroup);
        }
        let mut assigned = vec![false; self.order()];
        let mut reps = Vec::new();
        for (i, g) in self.elements.iter().enumerate() {
            if assigned[i] {
                continue;
            }
            for x in &h.elements {
                assigned[self.index[&g.mul(x)]] = true;
            }
            reps.push(g.clone());
        }
        Ok(reps)
    }

    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut seen = BTreeSet::from([x]);
        let mut queue = VecDeque::from([x]);
        while let Some(y) = queue.pop_front() {
            for g in &self.gens {
                let z = g.apply(y);
                if seen.insert(z) {
                    queue.push_back(z);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn point_stabilizer(&self, x: usize) -> PermGroup {
        let elems = self.elements.iter().filter(|g| g.apply(x) == x).cloned().collect();
        PermGroup::from_elements(self.degree, elems).expect("stabilizer is a subgroup")
    }
}

impl fmt::Display for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "group of order {} on {} points", self.order(), self.degree)
    }
}

/// A finite set with an action of a permutation group. The action of every
/// group element is stored, indexed like `group.elements()`.
#[derive(Debug, Clone)]
pub struct GSet {
    group: Arc<PermGroup>,
    points: usize,
    action: Vec<Perm>,
    gen_action: Vec<Perm>,
}

impl GSet {
    /// Action given by images of the group's generators. Fails when the
    /// assignment does not extend to a homomorphism.
    pub fn new(group: Arc<PermGroup>, points: usize, gen_images: Vec<Perm>) -> Result<GSet> {
        if gen_images.len() != group.gens.len() {
            return Err(Error::InvalidAction(format!(
                "{} generator images for {} generators",
                gen_images.len(),
                group.gens.len()
            )));
        }
        if let Some(p) = gen_images.iter().find(|p| p.degree() != points) {
            return Err(Error::InvalidAction(format!(
                "generator image {p} does not act on {points} points"
            )));
        }
        let mut action: Vec<Option<Perm>> = vec![None; group.order()];
        action[0] = Some(Perm::identity(points));
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let x = group.elements[i].clone();
            let ax = action[i].clone().expect("visited");
            for (g, ag) in group.gens.iter().zip(&gen_images) {
                let j = group.index[&g.mul(&x)];
                let img = ag.mul(&ax);
                match &action[j] {
                    None => {
                        action[j] = Some(img);
                        queue.push_back(j);
                    }
                    Some(prev) if *prev != img => {
                        return Err(Error::InvalidAction(format!(
                            "element {} would act both as {prev} and {img}",
                            group.elements[j]
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        let action: Vec<Perm> = action.into_iter().map(|a| a.expect("group is generated")).collect();
        // every (element, generator) pair was checked above; this closes the
        // homomorphism check for pairs first reached through another path
        for (i, x) in group.elements.iter().enumerate() {
            for (g, ag) in group.gens.iter().zip(&gen_images) {
                if action[group.index[&g.mul(x)]] != ag.mul(&action[i]) {
                    return Err(Error::InvalidAction("action is not a homomorphism".into()));
                }
            }
        }
        Ok(GSet {
            group,
            points,
            action,
            gen_action: gen_images,
        })
    }

    /// The group acting on its own points.
    pub fn natural(group: Arc<PermGroup>) -> GSet {
        let points = group.degree;
        GSet {
            action: group.elements.clone(),
            gen_action: group.gens.clone(),
            points,
            group,
        }
    }

    /// Left multiplication on the left cosets of `h`, labelled by the
    /// ascending transversal.
    pub fn cosets(group: Arc<PermGroup>, h: &PermGroup) -> Result<GSet> {
        let reps = group.left_transversal(h)?;
        let coset_of = coset_lookup(&group, h, &reps);
        let gen_images = group
            .gens
            .iter()
            .map(|g| {
                Perm::new(
                    reps.iter()
                        .map(|t| coset_of[group.index[&g.mul(t)]] as u32)
                        .collect(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        GSet::new(group, reps.len(), gen_images)
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn action_of(&self, element: usize) -> &Perm {
        &self.action[element]
    }

    /// Actions of the group generators on the points.
    pub fn generator_actions(&self) -> &[Perm] {
        &self.gen_action
    }

    pub fn act(&self, g: &Perm, x: usize) -> usize {
        self.action[self.group.index[g]].apply(x)
    }

    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut seen = BTreeSet::from([x]);
        let mut queue = VecDeque::from([x]);
        while let Some(y) = queue.pop_front() {
            for a in &self.gen_action {
                let z = a.apply(y);
                if seen.insert(z) {
                    queue.push_back(z);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Orbit partition, orbits ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.points];
        let mut out = Vec::new();
        for x in 0..self.points {
            if !seen[x] {
                let o = self.orbit(x);
                for &y in &o {
                    seen[y] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.points == 0 || self.orbit(0).len() == self.points
    }

    pub fn stabilizer(&self, x: usize) -> PermGroup {
        let elems = self
            .group
            .elements
            .iter()
            .zip(&self.action)
            .filter(|(_, a)| a.apply(x) == x)
            .map(|(g, _)| g.clone())
            .collect();
        PermGroup::from_elements(self.group.degree, elems).expect("stabilizer is a subgroup")
    }

    /// The image of the group in Sym(points), i.e. the faithful quotient.
    pub fn image_group(&self) -> PermGroup {
        PermGroup::new(self.points, self.gen_action.clone()).expect("image of a capped group")
    }

    /// The same points viewed as a set for the subgroup `h`.
    pub fn restrict(&self, h: Arc<PermGroup>) -> Result<GSet> {
        if !h.is_subgroup_of(&self.group) {
            return Err(Error::NotSubgroup);
        }
        let gen_images = h.gens.iter().map(|g| self.action[self.group.index[g]].clone()).collect();
        GSet::new(h, self.points, gen_images)
    }

    /// The action on an invariant set of points, relabelled in ascending
    /// order. Returns the new set and the sorted old labels.
    pub fn sub_gset(&self, pts: &[usize]) -> Result<(GSet, Vec<usize>)> {
        let mut pts = pts.to_vec();
        pts.sort_unstable();
        pts.dedup();
        let mut pos = vec![usize::MAX; self.points];
        for (i, &x) in pts.iter().enumerate() {
            pos[x] = i;
        }
        let gen_images = self
            .gen_action
            .iter()
            .map(|a| {
                pts.iter()
                    .map(|&x| {
                        let y = pos[a.apply(x)];
                        (y != usize::MAX)
                            .then_some(y as u32)
                            .ok_or_else(|| Error::InvalidAction("point set is not invariant".into()))
                    })
                    .collect::<Result<Vec<u32>>>()
                    .map(|im| Perm { images: im })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((GSet::new(self.group.clone(), pts.len(), gen_images)?, pts))
    }

    /// Disjoint union, points of `other` shifted past those of `self`.
    pub fn disjoint_union(&self, other: &GSet) -> Result<GSet> {
        if *self.group != *other.group || self.group.gens != other.group.gens {
            return Err(Error::InvalidAction("disjoint union needs a common group".into()));
        }
        let shift = self.points as u32;
        let gen_images = self
            .gen_action
            .iter()
            .zip(&other.gen_action)
            .map(|(a, b)| {
                let mut im = a.images.clone();
                im.extend(b.images.iter().map(|&y| y + shift));
                Perm { images: im }
            })
            .collect();
        GSet::new(self.group.clone(), self.points + other.points, gen_images)
    }
}

fn coset_lookup(group: &PermGroup, h: &PermGroup, reps: &[Perm]) -> Vec<usize> {
    let mut coset_of = vec![0usize; group.order()];
    for (i, t) in reps.iter().enumerate() {
        for x in &h.elements {
            coset_of[group.index[&t.mul(x)]] = i;
        }
    }
    coset_of
}

/// `Ind_H^G(Y)`: points `(t_i, y)` labelled `i * |Y| + y`.
#[derive(Debug, Clone)]
pub struct InducedGSet {
    pub gset: GSet,
    pub transversal: Vec<Perm>,
    pub block_size: usize,
}

impl InducedGSet {
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let k = self.block_size;
        (0..self.transversal.len())
            .map(|i| (i * k..(i + 1) * k).collect())
            .collect()
    }

    pub fn label(&self, block: usize, y: usize) -> usize {
        block * self.block_size + y
    }
}

/// The G-set induced from an H-set `y`. The action is
/// `g (t ⊗ y) = t_g ⊗ (t_g⁻¹ g t) y` where `t_g` represents the coset of `g t`.
pub fn induced_gset(g: Arc<PermGroup>, y: &GSet) -> Result<InducedGSet> {
    let h = y.group.clone();
    if !h.is_subgroup_of(&g) {
        return Err(Error::NotSubgroup);
    }
    let reps = g.left_transversal(&h)?;
    let coset_of = coset_lookup(&g, &h, &reps);
    let k = y.points;
    let gen_images = g
        .gens
        .iter()
        .map(|s| {
            let mut im = vec![0u32; reps.len() * k];
            for (i, t) in reps.iter().enumerate() {
                let st = s.mul(t);
                let j = coset_of[g.index[&st]];
                let hh = reps[j].inverse().mul(&st);
                let ah = &y.action[h.index[&hh]];
                for p in 0..k {
                    im[i * k + p] = (j * k + ah.apply(p)) as u32;
                }
            }
            Perm::new(im)
        })
        .collect::<Result<Vec<_>>>()?;
    let gset = GSet::new(g, reps.len() * k, gen_images)?;
    Ok(InducedGSet {
        gset,
        transversal: reps,
        block_size: k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Perm {
        Perm::new(v.to_vec()).unwrap()
    }

    /// x -> 2x on Z_7 together with the 7-cycle.
    fn frobenius21() -> PermGroup {
        PermGroup::new(7, vec![Perm::cycle(7), p(&[0, 2, 4, 6, 1, 3, 5])]).unwrap()
    }

    #[test]
    fn group_make_examples() {
        assert_eq!(PermGroup::cyclic(7).order(), 7);
        let f = frobenius21();
        assert_eq!(f.order(), 21);
        let a = Perm::cycle(7);
        let b = p(&[0, 2, 4, 6, 1, 3, 5]);
        assert_eq!(b.mul(&a).mul(&b.inverse()), a.pow(2));
        assert_eq!(PermGroup::new(5, vec![]).unwrap().order(), 1);
        assert!(matches!(Perm::new(vec![0, 0, 1]), Err(Error::InvalidPermutation(_))));
        assert!(matches!(
            PermGroup::with_cap(7, vec![Perm::cycle(7)], 5),
            Err(Error::OrderCapExceeded { cap: 5 })
        ));
    }

    #[test]
    fn elements_are_sorted_and_closed() {
        let f = frobenius21();
        assert!(f.elements().windows(2).all(|w| w[0] < w[1]));
        assert!(f.elements()[0].is_identity());
        for a in f.elements() {
            assert!(f.contains(&a.inverse()));
            for b in f.elements() {
                assert!(f.contains(&a.mul(b)));
            }
        }
    }

    #[test]
    fn stabilizer_examples() {
        let z7 = Arc::new(PermGroup::cyclic(7));
        assert_eq!(GSet::natural(z7.clone()).stabilizer(3).order(), 1);
        let f = Arc::new(frobenius21());
        assert_eq!(GSet::natural(f.clone()).stabilizer(0).order(), 3);
        let point = GSet::new(f.clone(), 1, vec![Perm::identity(1); f.generators().len()]).unwrap();
        assert_eq!(point.stabilizer(0).order(), 21);
    }

    #[test]
    fn orbit_stabilizer_everywhere() {
        for g in [frobenius21(), PermGroup::cyclic(9), PermGroup::new(6, vec![p(&[1, 2, 0, 3, 4, 5]), p(&[0, 1, 2, 4, 5, 3])]).unwrap()] {
            let x = GSet::natural(Arc::new(g.clone()));
            for pt in 0..x.points() {
                assert_eq!(x.orbit(pt).len() * x.stabilizer(pt).order(), g.order());
            }
        }
    }

    #[test]
    fn minimal_normal_examples() {
        let z7 = PermGroup::cyclic(7);
        assert_eq!(z7.minimal_normal_subgroup().unwrap(), z7);
        let f = frobenius21();
        let a = f.minimal_normal_subgroup().unwrap();
        assert_eq!(a.order(), 7);
        assert!(f.is_normal_subgroup(&a));
        let z15 = PermGroup::cyclic(15);
        assert_eq!(z15.minimal_normal_subgroup().unwrap().order(), 3);
        assert!(matches!(PermGroup::cyclic(4).minimal_normal_subgroup(), Err(Error::NotOddOrder(4))));
        assert!(matches!(PermGroup::trivial(3).minimal_normal_subgroup(), Err(Error::NotOddOrder(1))));
    }

    #[test]
    fn minimal_normal_has_no_smaller_normal_subgroup() {
        let z3z3 = PermGroup::new(6, vec![p(&[1, 2, 0, 3, 4, 5]), p(&[0, 1, 2, 4, 5, 3])]).unwrap();
        for g in [frobenius21(), PermGroup::cyclic(27), PermGroup::cyclic(21), z3z3] {
            let a = g.minimal_normal_subgroup().unwrap();
            assert!(g.is_normal_subgroup(&a));
            for x in a.elements().iter().filter(|x| !x.is_identity()) {
                assert_eq!(g.normal_closure(std::slice::from_ref(x)).unwrap(), a);
            }
        }
    }

    #[test]
    fn product_examples() {
        let f = frobenius21();
        let a = f.minimal_normal_subgroup().unwrap();
        let g1 = GSet::natural(Arc::new(f.clone())).stabilizer(0);
        assert_eq!(f.product_subgroup(&a, &g1).unwrap(), f);
        assert_eq!(f.product_subgroup(&a, &PermGroup::trivial(7)).unwrap(), a);
        // absorption
        assert_eq!(f.product_subgroup(&PermGroup::trivial(7), &g1).unwrap(), g1);
        // G1 is not normalized by A
        assert!(matches!(f.product_subgroup(&g1, &a), Err(Error::NotNormal)));
    }

    #[test]
    fn transversal_is_least_and_starts_at_identity() {
        let f = frobenius21();
        let g1 = GSet::natural(Arc::new(f.clone())).stabilizer(0);
        let t = f.left_transversal(&g1).unwrap();
        assert_eq!(t.len(), 7);
        assert!(t[0].is_identity());
        for r in &t {
            let coset: Vec<Perm> = g1.elements().iter().map(|h| r.mul(h)).collect();
            assert_eq!(coset.iter().min().unwrap(), r);
        }
    }

    #[test]
    fn induced_examples() {
        let f = Arc::new(frobenius21());
        let x = GSet::natural(f.clone());
        let ind = induced_gset(f.clone(), &x).unwrap();
        assert_eq!(ind.transversal.len(), 1);
        assert_eq!(ind.gset.generator_actions(), x.generator_actions());

        let triv = Arc::new(PermGroup::trivial(7));
        let pt = GSet::new(triv, 1, vec![]).unwrap();
        let reg = induced_gset(f.clone(), &pt).unwrap();
        assert_eq!(reg.gset.points(), 21);
        assert!(reg.gset.is_transitive());
        assert_eq!(reg.gset.stabilizer(0).order(), 1);

        // inducing the regular Z7-set up to the Frobenius group gives a
        // regular 21-point set, matching the coset action on the trivial subgroup
        let a = Arc::new(f.minimal_normal_subgroup().unwrap());
        let y = GSet::natural(a.clone());
        let ind = induced_gset(f.clone(), &y).unwrap();
        assert_eq!(ind.gset.points(), 21);
        assert_eq!(ind.blocks().len(), 3);
        let direct = GSet::cosets(f.clone(), &PermGroup::trivial(7)).unwrap();
        assert_eq!(ind.gset.image_group().order(), direct.image_group().order());
        assert!(ind.gset.is_transitive() && direct.is_transitive());
        assert_eq!(ind.gset.stabilizer(0).order(), direct.stabilizer(0).order());
    }

    #[test]
    fn induced_transitivity_and_block_restriction() {
        let f = Arc::new(frobenius21());
        let a = Arc::new(f.minimal_normal_subgroup().unwrap());
        let z7 = GSet::natural(a.clone());
        let two = z7.disjoint_union(&z7).unwrap();
        assert!(induced_gset(f.clone(), &z7).unwrap().gset.is_transitive());
        let ind = induced_gset(f.clone(), &two).unwrap();
        assert!(!ind.gset.is_transitive());
        // H acts on block t = 1 exactly as on Y
        let res = ind.gset.restrict(a.clone()).unwrap();
        for (e, h) in a.elements().iter().enumerate() {
            let _ = h;
            for yv in 0..two.points() {
                assert_eq!(res.action_of(e).apply(yv), two.action_of(e).apply(yv));
            }
        }
    }

    #[test]
    fn bad_actions_are_rejected() {
        let z3 = Arc::new(PermGroup::cyclic(3));
        // a transposition cannot be the image of an element of order 3
        assert!(matches!(
            GSet::new(z3, 2, vec![p(&[1, 0])]),
            Err(Error::InvalidAction(_))
        ));
    }
}

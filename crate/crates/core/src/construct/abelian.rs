//! Codes in the group algebra of an abelian p-group from Galois orbits of
//! characters.
//!
//! Characters are exponent vectors `k` against a cyclic basis of `A`;
//! `χ_k(a) = ξ^{Σ k_i c_i(a) N / p^{e_i}}` with `ξ` a primitive `N`-th root
//! of unity, `N = exp(A)`, and `c(a)` the coordinates of `a` in the basis.
//! All character arithmetic therefore happens on exponents mod `N`; the
//! extension field is only needed to evaluate the idempotent.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use super::report::Node;
use crate::error::{Error, Result};
use crate::gf::{ExtensionField, Fel, FiniteField};
use crate::group::{Perm, PermGroup};
use crate::linalg::Subspace;
use crate::numtheory::{factorize, gcd, mult_order};

/// Automorphisms of `A` given as permutations of its element indices, one
/// per generator of the acting group `H`.
#[derive(Debug, Clone)]
pub struct AbelianAction {
    pub generators: Vec<Vec<usize>>,
    pub order: usize,
}

impl AbelianAction {
    pub fn trivial() -> AbelianAction {
        AbelianAction {
            generators: Vec::new(),
            order: 1,
        }
    }

    /// `H` acting on a normal subgroup `A` by `a -> h a h⁻¹`.
    pub fn conjugation(a: &PermGroup, h: &PermGroup) -> Result<AbelianAction> {
        let generators = h
            .generators()
            .iter()
            .map(|g| {
                a.elements()
                    .iter()
                    .map(|x| a.index_of(&g.conjugate(x)).ok_or(Error::NotNormal))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AbelianAction {
            generators,
            order: h.order(),
        })
    }
}

/// Characters of `A` as exponent vectors, with the actions of the Frobenius
/// and of `H` as permutations of the character list.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub prime: u64,
    /// Cyclic basis of `A` (element indices) and the orders `p^{e_i}`.
    pub basis: Vec<usize>,
    pub basis_orders: Vec<u64>,
    pub exponent: u64,
    /// Exponent vectors, index 0 is the trivial character.
    pub characters: Vec<Vec<u64>>,
    /// `coords[a]` = coordinates of element `a` in the basis.
    pub coords: Vec<Vec<u64>>,
    pub frobenius: Vec<usize>,
    pub inversion: Vec<usize>,
    pub h_action: Vec<Vec<usize>>,
}

impl CharacterTable {
    /// `χ_k(a)` as an exponent of `ξ`.
    pub fn value_exponent(&self, chi: usize, a: usize) -> u64 {
        let k = &self.characters[chi];
        let c = &self.coords[a];
        let mut e = 0u64;
        for i in 0..k.len() {
            let scale = self.exponent / self.basis_orders[i];
            e = (e + k[i] * c[i] % self.basis_orders[i] * scale) % self.exponent;
        }
        e
    }

    /// Index of the pointwise product `χ_i χ_j`.
    pub fn product(&self, i: usize, j: usize) -> usize {
        let k: Vec<u64> = self.characters[i]
            .iter()
            .zip(&self.characters[j])
            .zip(&self.basis_orders)
            .map(|((&x, &y), &o)| (x + y) % o)
            .collect();
        self.index_of(&k)
    }

    /// Values `χ(a)` for all `a`, given a primitive `exp(A)`-th root `xi`.
    pub fn values(&self, field: &FiniteField, xi: Fel, chi: usize) -> Vec<Fel> {
        (0..self.coords.len())
            .map(|a| field.pow(xi, self.value_exponent(chi, a)))
            .collect()
    }

    fn index_of(&self, k: &[u64]) -> usize {
        // mixed radix, first basis element most significant
        k.iter()
            .zip(&self.basis_orders)
            .fold(0u64, |acc, (&x, &o)| acc * o + x) as usize
    }
}

#[derive(Debug, Clone)]
pub struct OrbitPartition {
    /// Orbits on the nontrivial characters, ordered by least member.
    pub orbits: Vec<Vec<usize>>,
    /// Selected orbit indices and their mirrors, paired position by position.
    pub selected: Vec<usize>,
    pub mirror: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct AbelianCode {
    pub code: Subspace,
    pub table: CharacterTable,
    pub partition: OrbitPartition,
    pub extension_order: u32,
    pub trail: Node,
}

/// Cyclic decomposition by lifting elements of maximal order modulo the
/// subgroup generated so far.
fn cyclic_basis(a: &PermGroup, p: u64) -> Result<(Vec<usize>, Vec<u64>, Vec<Vec<u64>>)> {
    let elems = a.elements();
    let n = elems.len();
    let mut basis: Vec<usize> = Vec::new();
    let mut orders: Vec<u64> = Vec::new();
    // span[i] = Some(coords) for elements in the current subgroup
    let mut span: Vec<Option<Vec<u64>>> = vec![None; n];
    span[0] = Some(Vec::new());
    let mut members = vec![0usize];
    while members.len() < n {
        // order of x modulo the current subgroup
        let quotient_order = |x: usize| -> u64 {
            let mut y = elems[x].clone();
            let mut k = 1u64;
            while span[a.index_of(&y).expect("closed")].is_none() {
                y = y.mul(&elems[x]);
                k += 1;
            }
            k
        };
        let (best, best_order) = (0..n)
            .filter(|&x| span[x].is_none())
            .map(|x| (x, quotient_order(x)))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .expect("elements remain");
        // find s in the subgroup with (x s)^order = 1
        let lift = members
            .iter()
            .map(|&s| elems[best].mul(&elems[s]))
            .find(|y| y.pow(best_order).is_identity())
            .ok_or_else(|| Error::InternalCaseError("no lift of maximal order".into()))?;
        let b = a.index_of(&lift).expect("closed");
        if factorize(best_order).0.iter().any(|&(r, _)| r != p) {
            return Err(Error::PreconditionViolated(format!("|A| is not a power of {p}")));
        }
        // extend coordinates: old * b^j
        let mut next = Vec::with_capacity(members.len() * best_order as usize);
        let old: Vec<Vec<u64>> = members.iter().map(|&m| span[m].clone().expect("member")).collect();
        let mut power = Perm::identity(a.degree());
        for j in 0..best_order {
            for (&m, c0) in members.iter().zip(&old) {
                let y = power.mul(&elems[m]);
                let idx = a.index_of(&y).expect("closed");
                let mut c = c0.clone();
                c.push(j);
                if j > 0 {
                    span[idx] = Some(c);
                    next.push(idx);
                } else {
                    span[m] = Some(c);
                }
            }
            power = power.mul(&elems[b]);
        }
        members.extend(next);
        basis.push(b);
        orders.push(best_order);
    }
    let coords = span.into_iter().map(|c| c.expect("spanned")).collect();
    Ok((basis, orders, coords))
}

/// Builds the character table of the abelian p-group `a` with the given
/// action of `h` and the Frobenius `χ -> χ^q`.
pub fn character_table(a: &PermGroup, h: &AbelianAction, q: u64) -> Result<CharacterTable> {
    let n = a.order() as u64;
    let f = factorize(n);
    if f.0.len() != 1 {
        return Err(Error::PreconditionViolated(format!("|A| = {n} is not a prime power")));
    }
    let p = f.0[0].0;
    let (basis, basis_orders, coords) = cyclic_basis(a, p)?;
    let exponent = basis_orders.iter().copied().max().unwrap_or(1);
    let size: u64 = basis_orders.iter().product();
    debug_assert_eq!(size, n);
    let mut characters = Vec::with_capacity(n as usize);
    for idx in 0..n {
        let mut k = vec![0u64; basis_orders.len()];
        let mut r = idx;
        for i in (0..basis_orders.len()).rev() {
            k[i] = r % basis_orders[i];
            r /= basis_orders[i];
        }
        characters.push(k);
    }
    let mut table = CharacterTable {
        prime: p,
        basis,
        basis_orders,
        exponent,
        characters,
        coords,
        frobenius: Vec::new(),
        inversion: Vec::new(),
        h_action: Vec::new(),
    };
    let ord = table.basis_orders.clone();
    table.frobenius = table
        .characters
        .iter()
        .map(|k| {
            let img: Vec<u64> = k.iter().zip(&ord).map(|(&x, &o)| x * (q % o) % o).collect();
            table.index_of(&img)
        })
        .collect();
    table.inversion = table
        .characters
        .iter()
        .map(|k| {
            let img: Vec<u64> = k.iter().zip(&ord).map(|(&x, &o)| (o - x) % o).collect();
            table.index_of(&img)
        })
        .collect();
    // χ∘h⁻¹ is determined by its values on the basis
    let mut h_action = Vec::with_capacity(h.generators.len());
    for g in &h.generators {
        let mut inv = vec![0usize; g.len()];
        for (x, &y) in g.iter().enumerate() {
            inv[y] = x;
        }
        let perm = (0..table.characters.len())
            .map(|chi| {
                let img: Vec<u64> = table
                    .basis
                    .iter()
                    .zip(&ord)
                    .map(|(&b, &o)| table.value_exponent(chi, inv[b]) / (table.exponent / o))
                    .collect();
                table.index_of(&img)
            })
            .collect();
        h_action.push(perm);
    }
    table.h_action = h_action;
    Ok(table)
}

fn orbit_partition(t: &CharacterTable) -> Result<OrbitPartition> {
    let count = t.characters.len();
    let mut orbit_of = vec![usize::MAX; count];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 1..count {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut members = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        orbit_of[start] = id;
        while let Some(c) = queue.pop_front() {
            let images = std::iter::once(t.frobenius[c]).chain(t.h_action.iter().map(|h| h[c]));
            for d in images {
                if members.insert(d) {
                    orbit_of[d] = id;
                    queue.push_back(d);
                }
            }
        }
        orbits.push(members.into_iter().collect());
    }
    let mut selected = Vec::new();
    let mut mirror = Vec::new();
    let mut assigned = vec![false; orbits.len()];
    for (i, o) in orbits.iter().enumerate() {
        let m = orbit_of[t.inversion[o[0]]];
        if m == i {
            return Err(Error::InternalCaseError(format!(
                "character orbit {i} is closed under inversion"
            )));
        }
        if assigned[i] {
            continue;
        }
        assigned[i] = true;
        assigned[m] = true;
        selected.push(i);
        mirror.push(m);
    }
    Ok(OrbitPartition {
        orbits,
        selected,
        mirror,
    })
}

/// A code `C ≤ F A`, stable under `h`, with `C^⊥ = C ⊕ span(e)`.
///
/// Coordinates are indexed like `a.elements()`, and `A` acts by
/// `(a x)[b] = x[a⁻¹ b]`.
pub fn abelian_code(a: &PermGroup, h: &AbelianAction, field: &Arc<FiniteField>) -> Result<AbelianCode> {
    let n = a.order() as u64;
    let q = field.order() as u64;
    let fact = factorize(n);
    if n == 1 || fact.0.len() != 1 || fact.0[0].0 == 2 {
        return Err(Error::PreconditionViolated(format!("|A| = {n} is not a power of an odd prime")));
    }
    let p = fact.0[0].0;
    if gcd(p, q) != 1 {
        return Err(Error::PreconditionViolated(format!("{p} divides the field order {q}")));
    }
    let ord = mult_order(q as i64, p)?;
    if ord % 2 == 0 {
        return Err(Error::PreconditionViolated(format!("order of {q} mod {p} is {ord}, which is even")));
    }
    if h.order % 2 == 0 {
        return Err(Error::PreconditionViolated(format!("|H| = {} is even", h.order)));
    }
    if !a.is_abelian() {
        return Err(Error::PreconditionViolated("A is not abelian".into()));
    }
    check_automorphisms(a, h)?;
    let table = character_table(a, h, q)?;
    let partition = orbit_partition(&table)?;
    let ext = ExtensionField::cyclotomic(field.clone(), table.exponent)?;
    let e = ext.field().clone();
    let xi = e
        .root_of_unity(table.exponent)
        .ok_or_else(|| Error::InternalCaseError("no root of unity in the splitting field".into()))?;
    let powers: Vec<Fel> = (0..table.exponent).map(|k| e.pow(xi, k)).collect();
    let n_inv = e.inv(e.from_int(n as i64))?;
    // ε_B[a] = n⁻¹ Σ_{χ ∈ B} χ(a⁻¹)
    let chars: Vec<usize> = partition
        .selected
        .iter()
        .flat_map(|&i| partition.orbits[i].iter().copied())
        .collect();
    let idem: Vec<Fel> = (0..n as usize)
        .map(|x| {
            let s = chars.iter().fold(Fel::ZERO, |acc, &chi| {
                let ex = table.value_exponent(chi, x);
                e.add(acc, powers[((table.exponent - ex) % table.exponent) as usize])
            });
            e.mul(s, n_inv)
        })
        .collect();
    let rational = ext.is_rational(&idem).ok_or(Error::RationalityFailure)?;
    let elems = a.elements();
    let rows: Vec<Vec<Fel>> = elems
        .iter()
        .map(|g| {
            let ginv = g.inverse();
            elems
                .iter()
                .map(|b| rational[a.index_of(&ginv.mul(b)).expect("closed")])
                .collect()
        })
        .collect();
    let code = Subspace::from_rows(field, n as usize, &rows);
    check_output(&code, a, h, chars.len())?;
    let mut trail = Node::new("abelian", "")
        .leaf("order", n)
        .leaf("prime", p)
        .leaf(
            "basis_orders",
            table.basis_orders.iter().map(u64::to_string).collect::<Vec<_>>().join(" "),
        )
        .leaf("extension_order", e.order())
        .leaf("orbits", partition.orbits.len());
    let fmt_orbit = |o: &Vec<usize>| o.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    for (&s, &m) in partition.selected.iter().zip(&partition.mirror) {
        trail.push(
            Node::new("pair", "")
                .leaf("selected", fmt_orbit(&partition.orbits[s]))
                .leaf("mirror", fmt_orbit(&partition.orbits[m])),
        );
    }
    trail.push(Node::new("dimension", code.dim()));
    Ok(AbelianCode {
        code,
        extension_order: e.order(),
        table,
        partition,
        trail,
    })
}

fn check_automorphisms(a: &PermGroup, h: &AbelianAction) -> Result<()> {
    let elems = a.elements();
    let n = elems.len();
    for g in &h.generators {
        if g.len() != n || g.iter().collect::<BTreeSet<_>>().len() != n || g.iter().any(|&x| x >= n) {
            return Err(Error::PreconditionViolated("H generator is not a permutation of A".into()));
        }
        for gen in a.generators() {
            let i = a.index_of(gen).expect("member");
            for (j, y) in elems.iter().enumerate() {
                let prod = a.index_of(&gen.mul(y)).expect("closed");
                if g[prod] != a.index_of(&elems[g[i]].mul(&elems[g[j]])).expect("closed") {
                    return Err(Error::PreconditionViolated("H does not act by automorphisms".into()));
                }
            }
        }
    }
    Ok(())
}

fn check_output(code: &Subspace, a: &PermGroup, h: &AbelianAction, expected: usize) -> Result<()> {
    let n = code.ambient();
    let f = code.field();
    let e = vec![Fel::ONE; n];
    let perp = code.perp_standard();
    let hull = code.sum(&Subspace::from_rows(f, n, &[e.clone()]))?;
    let bad = |what: &str| Err(Error::InternalCaseError(format!("abelian code: {what}")));
    if code.dim() != expected || 2 * code.dim() + 1 != n {
        return bad("wrong dimension");
    }
    if code.contains(&e) || perp != hull {
        return bad("dual is not code plus all-ones");
    }
    let elems = a.elements();
    for g in &h.generators {
        let moved: Vec<Vec<Fel>> = (0..code.dim())
            .map(|i| {
                let r = code.basis().row(i);
                let mut out = vec![Fel::ZERO; n];
                for x in 0..n {
                    out[g[x]] = r[x];
                }
                out
            })
            .collect();
        if Subspace::from_rows(f, n, &moved) != *code {
            return bad("not stable under H");
        }
    }
    for gen in a.generators() {
        let moved: Vec<Vec<Fel>> = (0..code.dim())
            .map(|i| {
                let r = code.basis().row(i);
                let mut out = vec![Fel::ZERO; n];
                for (x, b) in elems.iter().enumerate() {
                    out[a.index_of(&gen.mul(b)).expect("closed")] = r[x];
                }
                out
            })
            .collect();
        if Subspace::from_rows(f, n, &moved) != *code {
            return bad("not stable under translation");
        }
    }
    Ok(())
}

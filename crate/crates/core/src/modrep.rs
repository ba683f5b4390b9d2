//! FG-modules realized as subspaces of an ambient row space with generator
//! matrices acting on the right.
//!
//! All constructions assume the semisimple case: the image of the group in
//! GL(n, q) has order prime to the characteristic.

use std::collections::{HashSet, VecDeque};
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{Fel, FiniteField};
use crate::group::{GSet, Perm};
use crate::linalg::{Echelon, Mat, Subspace, SymForm};
use crate::numtheory::gcd;

/// Random enveloping-algebra elements tried before falling back to the
/// endomorphism ring.
const MEATAXE_ATTEMPTS: usize = 24;
const ENDO_ATTEMPTS: usize = 24;
/// Cap on the closure of an abstract matrix group.
const MATRIX_GROUP_CAP: usize = 20000;

#[derive(Debug)]
enum Elements {
    Perms(Vec<Perm>),
    Mats(Vec<(Mat, Mat)>),
}

/// The ambient space `F^n` with its generator matrices.
#[derive(Debug)]
pub struct Ambient {
    field: Arc<FiniteField>,
    n: usize,
    gens: Vec<Mat>,
    group_order: usize,
    elements: OnceLock<Result<Elements>>,
}

impl Ambient {
    fn new(field: Arc<FiniteField>, n: usize, gens: Vec<Mat>, group_order: usize, elements: Option<Elements>) -> Ambient {
        let cell = OnceLock::new();
        if let Some(e) = elements {
            let _ = cell.set(Ok(e));
        }
        Ambient {
            field,
            n,
            gens,
            group_order,
            elements: cell,
        }
    }

    fn elements(&self) -> Result<&Elements> {
        self.elements
            .get_or_init(|| {
                let f = &self.field;
                let id = Mat::identity(f, self.n);
                let mut seen: HashSet<Vec<Fel>> = HashSet::from([id.data().to_vec()]);
                let mut out = vec![id.clone()];
                let mut queue = VecDeque::from([id]);
                while let Some(m) = queue.pop_front() {
                    for g in &self.gens {
                        let p = m.mul(g);
                        if seen.insert(p.data().to_vec()) {
                            if out.len() >= MATRIX_GROUP_CAP {
                                return Err(Error::OrderCapExceeded { cap: MATRIX_GROUP_CAP });
                            }
                            out.push(p.clone());
                            queue.push_back(p);
                        }
                    }
                }
                let pairs = out
                    .into_iter()
                    .map(|m| {
                        let inv = m.inverse().expect("group elements are invertible");
                        (m, inv)
                    })
                    .collect();
                Ok(Elements::Mats(pairs))
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// `|img|⁻¹ Σ M_g⁻¹ π M_g` over the image of the group.
    fn average_conjugates(&self, pi: &Mat) -> Result<Mat> {
        let f = &self.field;
        let (sum, count) = match self.elements()? {
            Elements::Perms(perms) => {
                let n = self.n;
                let mut acc = vec![Fel::ZERO; n * n];
                for g in perms {
                    let ginv = g.inverse();
                    for a in 0..n {
                        let ga = ginv.apply(a);
                        for b in 0..n {
                            let v = pi.get(ga, ginv.apply(b));
                            if !v.is_zero() {
                                acc[a * n + b] = f.add(acc[a * n + b], v);
                            }
                        }
                    }
                }
                (Mat::from_vec(f, n, n, acc), perms.len())
            }
            Elements::Mats(pairs) => {
                let mut acc = Mat::zeros(f, self.n, self.n);
                for (m, minv) in pairs {
                    acc = acc.add(&minv.mul(pi).mul(m));
                }
                (acc, pairs.len())
            }
        };
        let c = f.from_int(count as i64);
        let inv = f.inv(c).map_err(|_| Error::NotCoprime {
            a: count as u64,
            n: f.order() as u64,
        })?;
        Ok(sum.scale(inv))
    }
}

/// A submodule of an ambient module, optionally carrying the ambient
/// symmetric form.
#[derive(Debug, Clone)]
pub struct FGModule {
    ambient: Arc<Ambient>,
    carrier: Subspace,
    form: Option<SymForm>,
    irreducible: bool,
}

impl PartialEq for FGModule {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ambient, &other.ambient) && self.carrier == other.carrier
    }
}

#[derive(Debug, Clone)]
pub enum Split {
    Irreducible,
    Reducible(FGModule),
}

impl FGModule {
    /// The full space `F^n` under the given generator matrices.
    pub fn new(field: &Arc<FiniteField>, gens: Vec<Mat>, group_order: usize, form: Option<SymForm>) -> Result<FGModule> {
        let n = gens.first().map_or(0, Mat::rows);
        for g in &gens {
            if g.rows() != n || g.cols() != n {
                return Err(Error::DimensionMismatch { expected: n, got: g.cols() });
            }
            g.inverse()?;
        }
        if gcd(group_order as u64, field.characteristic() as u64) != 1 {
            return Err(Error::NotCoprime {
                a: group_order as u64,
                n: field.order() as u64,
            });
        }
        if let Some(form) = &form {
            if form.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, got: form.dim() });
            }
            if gens.iter().any(|g| !form.is_invariant_under(g)) {
                return Err(Error::PreconditionViolated("form is not invariant".into()));
            }
        }
        Ok(FGModule::from_ambient(Ambient::new(field.clone(), n, gens, group_order, None), form))
    }

    fn from_ambient(ambient: Ambient, form: Option<SymForm>) -> FGModule {
        let carrier = Subspace::full(&ambient.field, ambient.n);
        FGModule {
            ambient: Arc::new(ambient),
            carrier,
            form,
            irreducible: false,
        }
    }

    /// `F X` with permutation matrices and the standard inner product.
    pub fn permutation_module(x: &GSet, field: &Arc<FiniteField>) -> Result<FGModule> {
        let order = x.group().order();
        if gcd(order as u64, field.order() as u64) != 1 {
            return Err(Error::NotCoprime {
                a: order as u64,
                n: field.order() as u64,
            });
        }
        let gens: Vec<Mat> = x
            .generator_actions()
            .iter()
            .map(|p| Mat::permutation(field, p.images()))
            .collect();
        let form = SymForm::standard(field, x.points());
        debug_assert!(gens.iter().all(|g| form.is_invariant_under(g)));
        let mut perms: Vec<Perm> = (0..order).map(|i| x.action_of(i).clone()).collect();
        perms.sort();
        perms.dedup();
        let amb = Ambient::new(field.clone(), x.points(), gens, order, Some(Elements::Perms(perms)));
        Ok(FGModule::from_ambient(amb, Some(form)))
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.ambient.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.n
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn carrier(&self) -> &Subspace {
        &self.carrier
    }

    pub fn form(&self) -> Option<&SymForm> {
        self.form.as_ref()
    }

    pub fn group_order(&self) -> usize {
        self.ambient.group_order
    }

    /// Generator matrices on the ambient space.
    pub fn generators(&self) -> &[Mat] {
        &self.ambient.gens
    }

    pub fn is_known_irreducible(&self) -> bool {
        self.irreducible
    }

    pub fn same_ambient(&self, other: &FGModule) -> bool {
        Arc::ptr_eq(&self.ambient, &other.ambient)
    }

    pub fn is_stable(&self, s: &Subspace) -> bool {
        self.ambient.gens.iter().all(|g| s.is_stable_under(g))
    }

    /// The submodule with the given carrier.
    pub fn submodule(&self, carrier: Subspace) -> Result<FGModule> {
        if carrier.ambient() != self.ambient.n {
            return Err(Error::DimensionMismatch {
                expected: self.ambient.n,
                got: carrier.ambient(),
            });
        }
        if !self.carrier.contains_subspace(&carrier) || !self.is_stable(&carrier) {
            return Err(Error::NotSubmodule);
        }
        Ok(self.with_carrier(carrier))
    }

    fn with_carrier(&self, carrier: Subspace) -> FGModule {
        FGModule {
            ambient: self.ambient.clone(),
            carrier,
            form: self.form.clone(),
            irreducible: false,
        }
    }

    /// The whole ambient module.
    pub fn ambient_module(&self) -> FGModule {
        self.with_carrier(Subspace::full(self.field(), self.ambient.n))
    }

    /// Action matrices in carrier coordinates.
    pub fn action(&self) -> Vec<Mat> {
        let f = self.field();
        let b = self.carrier.basis();
        self.ambient
            .gens
            .iter()
            .map(|g| {
                let img = b.mul(g);
                let rows: Vec<Vec<Fel>> = (0..img.rows())
                    .map(|i| self.carrier.coordinates(img.row(i)).expect("carrier is stable"))
                    .collect();
                Mat::from_rows(f, self.dim(), &rows)
            })
            .collect()
    }

    /// Gram matrix of the form restricted to the carrier basis.
    pub fn gram(&self) -> Option<Mat> {
        self.form.as_ref().map(|f| f.gram_of(self.carrier.basis()))
    }

    /// `self ∩ U^⊥` under the module's form.
    pub fn perp_within(&self, u: &Subspace) -> Result<Subspace> {
        let form = self
            .form
            .as_ref()
            .ok_or_else(|| Error::PreconditionViolated("module carries no form".into()))?;
        u.perp(form)?.intersection(&self.carrier)
    }

    fn spin_rows(&self, vs: &[Vec<Fel>]) -> Subspace {
        let mut ech = Echelon::new(self.field(), self.ambient.n);
        let mut queue: VecDeque<Vec<Fel>> = VecDeque::new();
        for v in vs {
            if let Some(r) = ech.insert(v) {
                queue.push_back(r);
            }
        }
        while let Some(v) = queue.pop_front() {
            for g in &self.ambient.gens {
                if let Some(r) = ech.insert(&g.vec_mul(&v)) {
                    queue.push_back(r);
                }
            }
        }
        ech.to_subspace()
    }

    /// Smallest submodule containing `v`.
    pub fn spin(&self, v: &[Fel]) -> Result<FGModule> {
        if v.len() != self.ambient.n {
            return Err(Error::DimensionMismatch {
                expected: self.ambient.n,
                got: v.len(),
            });
        }
        if !self.carrier.contains(v) {
            return Err(Error::VectorOutsideCarrier);
        }
        Ok(self.with_carrier(self.spin_rows(&[v.to_vec()])))
    }

    /// Smallest submodule containing every given vector.
    pub fn spin_all(&self, vs: &[Vec<Fel>]) -> Result<FGModule> {
        if vs.iter().any(|v| v.len() != self.ambient.n || !self.carrier.contains(v)) {
            return Err(Error::VectorOutsideCarrier);
        }
        Ok(self.with_carrier(self.spin_rows(vs)))
    }

    /// A submodule `U'` with `self = U ⊕ U'`, the kernel of the averaged
    /// projection onto `U`.
    pub fn invariant_complement(&self, u: &FGModule) -> Result<FGModule> {
        let f = self.field();
        let n = self.ambient.n;
        if !self.carrier.contains_subspace(&u.carrier) || !self.is_stable(&u.carrier) {
            return Err(Error::NotSubmodule);
        }
        if u.carrier.is_zero() {
            return Ok(self.with_carrier(self.carrier.clone()));
        }
        if u.carrier == self.carrier {
            return Ok(self.with_carrier(Subspace::zero(f, n)));
        }
        // projection reading coordinates at the pivot columns of U
        let mut pi = Mat::zeros(f, n, n);
        for (i, &p) in u.carrier.pivots().iter().enumerate() {
            for j in 0..n {
                pi.set(p, j, u.carrier.basis().get(i, j));
            }
        }
        let avg = self.ambient.average_conjugates(&pi)?;
        let image = self.carrier.basis().mul(&avg);
        let kernel = image.left_kernel();
        let comp = Subspace::span(&kernel.basis().mul(self.carrier.basis()));
        debug_assert_eq!(comp.dim() + u.dim(), self.dim());
        Ok(self.with_carrier(comp))
    }

    /// One Meataxe round: certifies irreducibility or returns a proper
    /// nonzero submodule.
    pub fn split<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Split> {
        let k = self.dim();
        if k == 0 {
            return Err(Error::PreconditionViolated("zero module has no composition factors".into()));
        }
        if k == 1 || self.irreducible {
            return Ok(Split::Irreducible);
        }
        let f = self.field().clone();
        let act = self.action();
        let act_t: Vec<Mat> = act.iter().map(Mat::transpose).collect();
        let words = enveloping_words(&act, rng);
        for _ in 0..MEATAXE_ATTEMPTS {
            let mut theta = Mat::identity(&f, k).scale(f.random(rng));
            for w in &words {
                theta = theta.add(&w.scale(f.random(rng)));
            }
            let mut factors = theta.char_poly().factor(&f, rng);
            factors.sort_by_key(|(p, _)| p.degree());
            for (p, _) in factors {
                let deg = p.degree().expect("nonzero factor");
                let np = theta.eval_poly(&p);
                let kern = np.left_kernel();
                if kern.is_zero() {
                    continue;
                }
                let v = random_vector(&kern, rng);
                let s = spin_coords(&f, &act, &[v]);
                if s.dim() < k {
                    return Ok(Split::Reducible(self.from_coords(&s)));
                }
                if kern.dim() != deg {
                    continue;
                }
                let w = np.kernel().basis().row(0).to_vec();
                let t = spin_coords(&f, &act_t, &[w]);
                if t.dim() == k {
                    return Ok(Split::Irreducible);
                }
                return Ok(Split::Reducible(self.from_coords(&t.perp_standard())));
            }
        }
        // homogeneous modules with a large endomorphism ring can defeat the
        // random search; kernels of endomorphisms split them directly
        let endo = hom_basis(&act, &act);
        if endo.len() == 1 {
            return Ok(Split::Irreducible);
        }
        for _ in 0..ENDO_ATTEMPTS {
            let mut t = Mat::zeros(&f, k, k);
            for e in &endo {
                t = t.add(&e.scale(f.random(rng)));
            }
            for (p, _) in t.char_poly().factor(&f, rng) {
                let kern = t.eval_poly(&p).left_kernel();
                if !kern.is_zero() && kern.dim() < k {
                    return Ok(Split::Reducible(self.from_coords(&kern)));
                }
            }
        }
        Err(Error::DecompositionStalled(MEATAXE_ATTEMPTS + ENDO_ATTEMPTS))
    }

    fn from_coords(&self, s: &Subspace) -> FGModule {
        self.with_carrier(self.carrier.embed_subspace(s))
    }

    /// Runs the Meataxe test with a seeded generator.
    pub fn certify_irreducible(&self, seed: u64) -> Result<bool> {
        if self.dim() == 0 {
            return Ok(false);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(matches!(self.split(&mut rng)?, Split::Irreducible))
    }

    fn ensure_irreducible(&self) -> Result<()> {
        if self.irreducible || self.certify_irreducible(0x6d65_6174)? {
            Ok(())
        } else {
            Err(Error::NotIrreducible)
        }
    }

    /// Marks a module whose irreducibility was certified elsewhere.
    pub(crate) fn certified(mut self) -> FGModule {
        self.irreducible = true;
        self
    }

    /// Some irreducible submodule, found by repeated splitting.
    pub fn find_irreducible<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<FGModule> {
        let mut m = self.clone();
        loop {
            match m.split(rng)? {
                Split::Irreducible => return Ok(m.certified()),
                Split::Reducible(u) => m = u,
            }
        }
    }

    /// Direct-sum decomposition into irreducibles, sorted by (dim, carrier).
    pub fn decompose(&self, seed: u64) -> Result<Vec<FGModule>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut stack = vec![self.clone()];
        let mut out = Vec::new();
        while let Some(m) = stack.pop() {
            if m.dim() == 0 {
                continue;
            }
            match m.split(&mut rng)? {
                Split::Irreducible => out.push(m.certified()),
                Split::Reducible(u) => {
                    let c = m.invariant_complement(&u)?;
                    stack.push(c);
                    stack.push(u);
                }
            }
        }
        out.sort_by(|a, b| a.carrier.cmp(&b.carrier));
        Ok(out)
    }

    /// The module on coordinates of the carrier, as a full space.
    pub fn coordinate_module(&self) -> FGModule {
        let amb = Ambient::new(self.field().clone(), self.dim(), self.action(), self.ambient.group_order, None);
        let mut m = FGModule::from_ambient(amb, None);
        m.irreducible = self.irreducible;
        m
    }

    /// Contragredient module on `F^dim` with `g -> (ρ(g)⁻¹)ᵀ`.
    pub fn dual_module(&self) -> FGModule {
        let gens = self
            .action()
            .iter()
            .map(|r| r.inverse().expect("invertible action").transpose())
            .collect();
        let amb = Ambient::new(self.field().clone(), self.dim(), gens, self.ambient.group_order, None);
        let mut m = FGModule::from_ambient(amb, None);
        m.irreducible = self.irreducible;
        m
    }
}

fn random_vector<R: Rng + ?Sized>(s: &Subspace, rng: &mut R) -> Vec<Fel> {
    let f = s.field();
    loop {
        let c: Vec<Fel> = (0..s.dim()).map(|_| f.random(rng)).collect();
        if c.iter().any(|x| !x.is_zero()) {
            return s.embed(&c);
        }
    }
}

/// Spin in coordinates under the given matrices.
fn spin_coords(f: &Arc<FiniteField>, mats: &[Mat], vs: &[Vec<Fel>]) -> Subspace {
    let k = mats.first().map_or(vs.first().map_or(0, Vec::len), Mat::rows);
    let mut ech = Echelon::new(f, k);
    let mut queue: VecDeque<Vec<Fel>> = vs.iter().filter_map(|v| ech.insert(v)).collect();
    while let Some(v) = queue.pop_front() {
        for g in mats {
            if let Some(r) = ech.insert(&g.vec_mul(&v)) {
                queue.push_back(r);
            }
        }
    }
    ech.to_subspace()
}

/// Products of at most three generators; a random sample of 16 when there
/// are more than three generators.
fn enveloping_words<R: Rng + ?Sized>(act: &[Mat], rng: &mut R) -> Vec<Mat> {
    let r = act.len();
    let mut words: Vec<Mat> = act.to_vec();
    if r <= 3 {
        for a in act {
            for b in act {
                let ab = a.mul(b);
                for c in act {
                    words.push(ab.mul(c));
                }
                words.push(ab);
            }
        }
    } else {
        for _ in 0..16 {
            let len = rng.gen_range(2..=3);
            let mut w = act[rng.gen_range(0..r)].clone();
            for _ in 1..len {
                w = w.mul(&act[rng.gen_range(0..r)]);
            }
            words.push(w);
        }
    }
    words
}

/// Basis of `{T : R_g T = T S_g for all g}`, i.e. homs `v -> vT` from the
/// module with action `R` to the one with action `S`.
fn hom_basis(r: &[Mat], s: &[Mat]) -> Vec<Mat> {
    let (Some(r0), Some(s0)) = (r.first(), s.first()) else {
        return Vec::new();
    };
    let f = r0.field().clone();
    let (k1, k2) = (r0.rows(), s0.rows());
    let unknowns = k1 * k2;
    let mut eqs: Vec<Vec<Fel>> = Vec::new();
    for (rg, sg) in r.iter().zip(s) {
        for i in 0..k1 {
            for j in 0..k2 {
                let mut e = vec![Fel::ZERO; unknowns];
                // (R T)[i][j] = Σ_l R[i][l] T[l][j]
                for l in 0..k1 {
                    let c = rg.get(i, l);
                    if !c.is_zero() {
                        e[l * k2 + j] = f.add(e[l * k2 + j], c);
                    }
                }
                // (T S)[i][j] = Σ_l T[i][l] S[l][j]
                for l in 0..k2 {
                    let c = sg.get(l, j);
                    if !c.is_zero() {
                        e[i * k2 + l] = f.sub(e[i * k2 + l], c);
                    }
                }
                eqs.push(e);
            }
        }
    }
    let sol = if eqs.is_empty() {
        Subspace::full(&f, unknowns)
    } else {
        Mat::from_rows(&f, unknowns, &eqs).kernel()
    };
    (0..sol.dim())
        .map(|i| Mat::from_vec(&f, k1, k2, sol.basis().row(i).to_vec()))
        .collect()
}

/// A module homomorphism `v -> v T` in carrier coordinates.
#[derive(Debug, Clone)]
pub struct ModuleHom {
    pub source: FGModule,
    pub target: FGModule,
    pub matrix: Mat,
}

impl ModuleHom {
    /// Image of a source-carrier vector, as a target-carrier vector.
    pub fn apply(&self, v: &[Fel]) -> Result<Vec<Fel>> {
        let c = self.source.carrier.coordinates(v).ok_or(Error::VectorOutsideCarrier)?;
        Ok(self.target.carrier.embed(&self.matrix.vec_mul(&c)))
    }

    pub fn intertwines(&self) -> bool {
        self.source
            .action()
            .iter()
            .zip(self.target.action())
            .all(|(r, s)| r.mul(&self.matrix) == self.matrix.mul(&s))
    }
}

/// Basis of `Hom_FG(W, W')` in carrier coordinates.
pub fn hom_space(w: &FGModule, w2: &FGModule) -> Result<Vec<Mat>> {
    if w.ambient.gens.len() != w2.ambient.gens.len() {
        return Err(Error::DimensionMismatch {
            expected: w.ambient.gens.len(),
            got: w2.ambient.gens.len(),
        });
    }
    if w.dim() == 0 || w2.dim() == 0 {
        return Ok(Vec::new());
    }
    if w.ambient.gens.is_empty() {
        // trivial group: every linear map intertwines
        let f = w.field();
        return Ok((0..w.dim() * w2.dim())
            .map(|i| {
                let mut m = Mat::zeros(f, w.dim(), w2.dim());
                m.set(i / w2.dim(), i % w2.dim(), Fel::ONE);
                m
            })
            .collect());
    }
    Ok(hom_basis(&w.action(), &w2.action()))
}

/// An isomorphism between irreducibles, or `None`. Returns the first basis
/// solution of the intertwining system.
pub fn iso_test(w: &FGModule, w2: &FGModule) -> Result<Option<ModuleHom>> {
    w.ensure_irreducible()?;
    w2.ensure_irreducible()?;
    if w.dim() != w2.dim() {
        return Ok(None);
    }
    Ok(hom_space(w, w2)?.into_iter().next().map(|matrix| ModuleHom {
        source: w.clone(),
        target: w2.clone(),
        matrix,
    }))
}

/// Basis of the invariant bilinear forms `M = R_g M R_gᵀ`, optionally
/// restricted to symmetric `M`.
pub fn invariant_forms(w: &FGModule, symmetric: bool) -> Vec<Mat> {
    let f = w.field().clone();
    let k = w.dim();
    if k == 0 {
        return Vec::new();
    }
    let act = w.action();
    // unknown index for M[i][j]
    let slots: Vec<(usize, usize)> = if symmetric {
        (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect()
    } else {
        (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect()
    };
    let slot_of = |i: usize, j: usize| -> usize {
        let (a, b) = if symmetric && i > j { (j, i) } else { (i, j) };
        slots.iter().position(|&s| s == (a, b)).expect("slot")
    };
    let index: Vec<Vec<usize>> = (0..k).map(|i| (0..k).map(|j| slot_of(i, j)).collect()).collect();
    let mut eqs = Vec::new();
    for r in &act {
        for i in 0..k {
            for j in 0..k {
                // (R M Rᵀ)[i][j] - M[i][j] = Σ_{a,b} R[i][a] R[j][b] M[a][b] - M[i][j]
                let mut e = vec![Fel::ZERO; slots.len()];
                for a in 0..k {
                    let ra = r.get(i, a);
                    if ra.is_zero() {
                        continue;
                    }
                    for b in 0..k {
                        let c = f.mul(ra, r.get(j, b));
                        if !c.is_zero() {
                            let s = index[a][b];
                            e[s] = f.add(e[s], c);
                        }
                    }
                }
                let s = index[i][j];
                e[s] = f.sub(e[s], Fel::ONE);
                eqs.push(e);
            }
        }
    }
    let sol = if eqs.is_empty() {
        Subspace::full(&f, slots.len())
    } else {
        Mat::from_rows(&f, slots.len(), &eqs).kernel()
    };
    (0..sol.dim())
        .map(|t| {
            let row = sol.basis().row(t);
            let mut m = Mat::zeros(&f, k, k);
            for i in 0..k {
                for j in 0..k {
                    m.set(i, j, row[index[i][j]]);
                }
            }
            m
        })
        .collect()
}

/// A non-degenerate invariant form on an irreducible module, or `None`.
pub fn self_dual_test(w: &FGModule, require_symmetric: bool) -> Result<Option<Mat>> {
    w.ensure_irreducible()?;
    Ok(invariant_forms(w, require_symmetric).into_iter().next())
}

/// One isotypic component.
#[derive(Debug, Clone)]
pub struct HomogeneousClass {
    pub component: FGModule,
    pub sample: FGModule,
    pub multiplicity: usize,
    pub self_dual: bool,
    /// Index of the class of the dual of `sample`.
    pub dual: usize,
}

#[derive(Debug, Clone)]
pub struct HomogeneousDecomposition {
    pub seed: u64,
    pub classes: Vec<HomogeneousClass>,
}

impl HomogeneousDecomposition {
    pub fn total_dim(&self) -> usize {
        self.classes.iter().map(|c| c.component.dim()).sum()
    }

    /// Classes that are self-dual and occur an odd number of times.
    pub fn odd_self_dual(&self) -> impl Iterator<Item = (usize, &HomogeneousClass)> {
        self.classes
            .iter()
            .enumerate()
            .filter(|(_, c)| c.self_dual && c.multiplicity % 2 == 1)
    }
}

/// Groups the irreducible summands of `v` into isomorphism classes. Classes
/// are ordered by the least sample carrier; self-duality uses symmetric
/// forms in characteristic 2.
pub fn homogeneous_decomposition(v: &FGModule, seed: u64) -> Result<HomogeneousDecomposition> {
    let pieces = v.decompose(seed)?;
    let mut groups: Vec<Vec<FGModule>> = Vec::new();
    for piece in pieces {
        let mut placed = false;
        for g in groups.iter_mut() {
            if iso_test(&g[0], &piece)?.is_some() {
                g.push(piece.clone());
                placed = true;
                break;
            }
        }
        if !placed {
            groups.push(vec![piece]);
        }
    }
    let symmetric = v.field().characteristic() == 2;
    let mut classes = Vec::with_capacity(groups.len());
    for g in &groups {
        let sample = g[0].clone();
        let mut carrier = Subspace::zero(v.field(), v.ambient_dim());
        for p in g {
            carrier = carrier.sum(&p.carrier)?;
        }
        let component = v.with_carrier(carrier);
        let dual_mod = sample.dual_module();
        let mut dual = None;
        for (j, h) in groups.iter().enumerate() {
            if h[0].dim() == sample.dim() && !hom_space(&h[0].coordinate_module(), &dual_mod)?.is_empty() {
                dual = Some(j);
                break;
            }
        }
        let dual = dual.ok_or_else(|| Error::InternalCaseError("dual of a summand is not a summand".into()))?;
        let self_dual = self_dual_test(&sample, symmetric)?.is_some();
        classes.push(HomogeneousClass {
            component,
            sample,
            multiplicity: g.len(),
            self_dual,
            dual,
        });
    }
    Ok(HomogeneousDecomposition { seed, classes })
}

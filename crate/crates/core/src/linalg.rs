//! Dense linear algebra over GF(q).
//!
//! Vectors are rows. A matrix `M` acts on the right, `v -> v M`, and every
//! subspace is stored as the row space of a matrix in reduced row-echelon
//! form, so equal subspaces have identical representations.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Fel, FiniteField};
use crate::poly::Poly;

#[derive(Debug, Clone)]
pub struct Mat {
    field: Arc<FiniteField>,
    rows: usize,
    cols: usize,
    data: Vec<Fel>,
}

impl PartialEq for Mat {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for Mat {}

impl Mat {
    pub fn zeros(field: &Arc<FiniteField>, rows: usize, cols: usize) -> Mat {
        Mat {
            field: field.clone(),
            rows,
            cols,
            data: vec![Fel::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Arc<FiniteField>, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Fel::ONE);
        }
        m
    }

    pub fn from_rows(field: &Arc<FiniteField>, cols: usize, rows: &[Vec<Fel>]) -> Mat {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend_from_slice(r);
        }
        Mat {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_vec(field: &Arc<FiniteField>, rows: usize, cols: usize, data: Vec<Fel>) -> Mat {
        assert_eq!(data.len(), rows * cols);
        Mat {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Matrix of the permutation `x -> images[x]` acting on row vectors.
    pub fn permutation(field: &Arc<FiniteField>, images: &[u32]) -> Mat {
        let n = images.len();
        let mut m = Mat::zeros(field, n, n);
        for (x, &y) in images.iter().enumerate() {
            m.set(x, y as usize, Fel::ONE);
        }
        m
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Fel] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Fel {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fel) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fel] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Fel>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = &self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d = f.add(*d, f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Mat::from_vec(f, self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.add(&other.scale(self.field.neg(Fel::ONE)))
    }

    pub fn scale(&self, c: Fel) -> Mat {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Mat::from_vec(f, self.rows, self.cols, data)
    }

    pub fn vec_mul(&self, v: &[Fel]) -> Vec<Fel> {
        vec_mat(&self.field, v, self)
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        let mut acc = Mat::identity(&self.field, self.rows);
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

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat::from_vec(&self.field, self.rows + other.rows, self.cols, data)
    }

    /// Selects rows by index.
    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let rows: Vec<Vec<Fel>> = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        Mat::from_rows(&self.field, self.cols, &rows)
    }

    /// Reduced row-echelon form and rank. The result keeps all rows;
    /// rows past the rank are zero.
    pub fn rref(&self) -> (Mat, usize) {
        let (m, pivots) = self.rref_pivots();
        (m, pivots.len())
    }

    pub fn rref_pivots(&self) -> (Mat, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("pivot");
            m.scale_row(r, inv);
            for i in 0..m.rows {
                if i != r {
                    let factor = m.get(i, c);
                    if !factor.is_zero() {
                        m.axpy_row(i, r, f.neg(factor));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, r: usize, c: Fel) {
        let f = self.field.clone();
        for x in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *x = f.mul(*x, c);
        }
    }

    /// row[dst] += c * row[src]
    fn axpy_row(&mut self, dst: usize, src: usize, c: Fel) {
        let f = self.field.clone();
        let n = self.cols;
        for j in 0..n {
            let s = self.data[src * n + j];
            if !s.is_zero() {
                let d = &mut self.data[dst * n + j];
                *d = f.add(*d, f.mul(c, s));
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Inverse of a square matrix.
    pub fn inverse(&self) -> Result<Mat> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Mat::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, Fel::ONE);
        }
        let (r, pivots) = aug.rref_pivots();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::DivisionByZero);
        }
        let mut inv = Mat::zeros(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Ok(inv)
    }

    /// Right kernel `{x : M x^T = 0}` as a subspace of row vectors.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref_pivots();
        let f = &self.field;
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Fel::ZERO; self.cols];
            v[free] = Fel::ONE;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        Subspace::from_rows(f, self.cols, &basis)
    }

    /// Left null space `{v : v M = 0}`.
    pub fn left_kernel(&self) -> Subspace {
        self.transpose().kernel()
    }

    /// `p(M)` by Horner's rule.
    pub fn eval_poly(&self, p: &Poly) -> Mat {
        assert_eq!(self.rows, self.cols);
        let mut acc = Mat::zeros(&self.field, self.rows, self.cols);
        for &c in p.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..self.rows {
                let d = acc.get(i, i);
                acc.set(i, i, self.field.add(d, c));
            }
        }
        acc
    }

    /// Characteristic polynomial `det(xI - M)` via reduction to upper
    /// Hessenberg form.
    pub fn char_poly(&self) -> Poly {
        assert_eq!(self.rows, self.cols);
        let f = self.field.clone();
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n {
            let Some(i) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else {
                continue;
            };
            if i != m {
                h.swap_rows(i, m);
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + m);
                }
            }
            let piv = f.inv(h.get(m, m - 1)).expect("pivot");
            for i in m + 1..n {
                let u = f.mul(h.get(i, m - 1), piv);
                if u.is_zero() {
                    continue;
                }
                h.axpy_row(i, m, f.neg(u));
                for r in 0..n {
                    let v = f.add(h.get(r, m), f.mul(u, h.get(r, i)));
                    h.set(r, m, v);
                }
            }
        }
        // p[k] = char poly of the leading k x k block
        let mut p: Vec<Poly> = vec![Poly::one()];
        for k in 1..=n {
            let lin = Poly::new(vec![f.neg(h.get(k - 1, k - 1)), Fel::ONE]);
            let mut pk = lin.mul(&f, &p[k - 1]);
            let mut prod = Fel::ONE;
            for i in (1..k).rev() {
                prod = f.mul(prod, h.get(i, i - 1));
                let c = f.mul(h.get(i - 1, k - 1), prod);
                if !c.is_zero() {
                    pk = pk.sub(&f, &p[i - 1].scale(&f, c));
                }
            }
            p.push(pk);
        }
        p.pop().expect("nonempty")
    }

    /// Minimal polynomial, from the first linear dependency among the powers
    /// `I, M, M^2, ...`.
    pub fn min_poly(&self) -> Poly {
        assert_eq!(self.rows, self.cols);
        let f = self.field.clone();
        let mut ech = Echelon::new(&f, self.data.len());
        // track each echelon row as a combination of the powers
        let mut combos: Vec<Vec<Fel>> = Vec::new();
        let mut power = Mat::identity(&f, self.rows);
        for d in 0..=self.rows {
            let mut v = power.data.clone();
            let mut c = vec![Fel::ZERO; d + 1];
            c[d] = Fel::ONE;
            for (row, (&piv, combo)) in ech.rows.iter().zip(ech.pivots.iter().zip(&combos)) {
                let t = v[piv];
                if !t.is_zero() {
                    let nt = f.neg(t);
                    for (x, &r) in v.iter_mut().zip(row) {
                        *x = f.add(*x, f.mul(nt, r));
                    }
                    for (x, &r) in c.iter_mut().zip(combo) {
                        *x = f.add(*x, f.mul(nt, r));
                    }
                }
            }
            match v.iter().position(|x| !x.is_zero()) {
                None => return Poly::new(c).monic(&f),
                Some(p) => {
                    let inv = f.inv(v[p]).expect("nonzero");
                    ech.rows.push(v.iter().map(|&x| f.mul(x, inv)).collect());
                    ech.pivots.push(p);
                    combos.push(c.iter().map(|&x| f.mul(x, inv)).collect());
                }
            }
            power = power.mul(self);
        }
        unreachable!("Cayley-Hamilton bounds the degree")
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }
}

pub fn vec_mat(f: &FiniteField, v: &[Fel], m: &Mat) -> Vec<Fel> {
    assert_eq!(v.len(), m.rows);
    let mut out = vec![Fel::ZERO; m.cols];
    for (k, &a) in v.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (o, &b) in out.iter_mut().zip(m.row(k)) {
            *o = f.add(*o, f.mul(a, b));
        }
    }
    out
}

pub fn dot(f: &FiniteField, a: &[Fel], b: &[Fel]) -> Fel {
    a.iter()
        .zip(b)
        .fold(Fel::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

pub fn vec_add(f: &FiniteField, a: &[Fel], b: &[Fel]) -> Vec<Fel> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub fn vec_scale(f: &FiniteField, a: &[Fel], c: Fel) -> Vec<Fel> {
    a.iter().map(|&x| f.mul(x, c)).collect()
}

/// Row space in canonical (RREF) form.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
    pivots: Vec<usize>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.basis.data.hash(state);
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by ambient dimension, then dimension, then RREF entries.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient, self.dim(), &self.basis.data).cmp(&(other.ambient, other.dim(), &other.basis.data))
    }
}

impl Subspace {
    pub fn zero(field: &Arc<FiniteField>, n: usize) -> Subspace {
        Subspace {
            ambient: n,
            basis: Mat::zeros(field, 0, n),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Arc<FiniteField>, n: usize) -> Subspace {
        Subspace {
            ambient: n,
            basis: Mat::identity(field, n),
            pivots: (0..n).collect(),
        }
    }

    pub fn span(m: &Mat) -> Subspace {
        let (r, pivots) = m.rref_pivots();
        let k = pivots.len();
        let basis = Mat::from_vec(&m.field, k, m.cols, r.data[..k * m.cols].to_vec());
        Subspace {
            ambient: m.cols,
            basis,
            pivots,
        }
    }

    pub fn from_rows(field: &Arc<FiniteField>, n: usize, rows: &[Vec<Fel>]) -> Subspace {
        Subspace::span(&Mat::from_rows(field, n, rows))
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.basis.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                got: other.ambient,
            });
        }
        Ok(())
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Fel]) -> Option<Vec<Fel>> {
        assert_eq!(v.len(), self.ambient);
        let c: Vec<Fel> = self.pivots.iter().map(|&p| v[p]).collect();
        let back = vec_mat(self.field(), &c, &self.basis);
        (back == v).then_some(c)
    }

    pub fn contains(&self, v: &[Fel]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.ambient == self.ambient && (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    /// Vector with the given coordinates.
    pub fn embed(&self, coords: &[Fel]) -> Vec<Fel> {
        vec_mat(self.field(), coords, &self.basis)
    }

    /// Image of a subspace given in coordinates of this one.
    pub fn embed_subspace(&self, coords: &Subspace) -> Subspace {
        assert_eq!(coords.ambient, self.dim());
        Subspace::span(&coords.basis.mul(&self.basis))
    }

    /// A subspace of `self` expressed in coordinates of `self`.
    pub fn coordinates_of(&self, sub: &Subspace) -> Result<Subspace> {
        self.check_ambient(sub)?;
        let rows = (0..sub.dim())
            .map(|i| self.coordinates(sub.basis.row(i)).ok_or(Error::NotSubmodule))
            .collect::<Result<Vec<_>>>()?;
        Ok(Subspace::from_rows(self.field(), self.dim(), &rows))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::span(&self.basis.vstack(&other.basis)))
    }

    /// Intersection by the Zassenhaus stacking `[U U; W 0]`.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let n = self.ambient;
        let f = self.field();
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for i in 0..self.dim() {
            let mut r = self.basis.row(i).to_vec();
            r.extend_from_slice(self.basis.row(i));
            rows.push(r);
        }
        for i in 0..other.dim() {
            let mut r = other.basis.row(i).to_vec();
            r.extend(std::iter::repeat_n(Fel::ZERO, n));
            rows.push(r);
        }
        let (r, pivots) = Mat::from_rows(f, 2 * n, &rows).rref_pivots();
        let meet: Vec<Vec<Fel>> = pivots
            .iter()
            .enumerate()
            .filter(|&(_, &p)| p >= n)
            .map(|(i, _)| r.row(i)[n..].to_vec())
            .collect();
        Ok(Subspace::from_rows(f, n, &meet))
    }

    /// `(U ∩ W, U + W)`.
    pub fn meet_join(&self, other: &Subspace) -> Result<(Subspace, Subspace)> {
        Ok((self.intersection(other)?, self.sum(other)?))
    }

    /// Orthogonal complement under a symmetric form.
    pub fn perp(&self, form: &SymForm) -> Result<Subspace> {
        if form.dim() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                got: form.dim(),
            });
        }
        if self.is_zero() {
            return Ok(Subspace::full(self.field(), self.ambient));
        }
        let m = match &form.gram {
            None => self.basis.clone(),
            Some(g) => self.basis.mul(g),
        };
        Ok(m.kernel())
    }

    pub fn perp_standard(&self) -> Subspace {
        self.perp(&SymForm::standard(self.field(), self.ambient))
            .expect("ambient matches")
    }

    /// Gram matrix of the restricted form in this basis, the radical
    /// `U ∩ U^⊥` in ambient coordinates, and the classification.
    pub fn restrict_form(&self, form: &SymForm) -> Result<Restriction> {
        let perp = self.perp(form)?;
        let radical = self.intersection(&perp)?;
        let gram = form.gram_of(&self.basis);
        let kind = if radical.is_zero() {
            FormKind::NonDegenerate
        } else if gram.is_zero() {
            FormKind::Isotropic
        } else {
            FormKind::Mixed
        };
        Ok(Restriction { gram, radical, kind })
    }

    /// Applies `v -> v M` to every basis row.
    pub fn image(&self, m: &Mat) -> Subspace {
        Subspace::span(&self.basis.mul(m))
    }

    pub fn is_stable_under(&self, m: &Mat) -> bool {
        (0..self.dim()).all(|i| self.contains(&vec_mat(self.field(), self.basis.row(i), m)))
    }

    /// Enumerates every vector of the subspace (`q^dim` of them).
    pub fn vectors(&self) -> impl Iterator<Item = Vec<Fel>> + '_ {
        let q = self.field().order() as u64;
        let k = self.dim() as u32;
        (0..q.pow(k)).map(move |mut code| {
            let coords: Vec<Fel> = (0..k)
                .map(|_| {
                    let c = Fel((code % q) as u32);
                    code /= q;
                    c
                })
                .collect();
            self.embed(&coords)
        })
    }

    /// Generator-matrix text: header `q=<q> n=<n> k=<k>`, one row per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "q={} n={} k={}", self.field().order(), self.ambient, self.dim()).unwrap();
        for i in 0..self.dim() {
            let row: Vec<String> = self.basis.row(i).iter().map(|x| x.0.to_string()).collect();
            writeln!(s, "{}", row.join(" ")).unwrap();
        }
        s
    }

    /// Parses the generator-matrix text format; rows need not be reduced.
    pub fn from_text(field: &Arc<FiniteField>, text: &str) -> Result<Subspace> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (hl, header) = lines.next().ok_or_else(|| parse_err(1, 1, "missing header"))?;
        let mut q = None;
        let mut n = None;
        let mut k = None;
        for tok in header.split_whitespace() {
            let (key, val) = tok
                .split_once('=')
                .ok_or_else(|| parse_err(hl + 1, 1, "header token without '='"))?;
            let val: usize = val
                .parse()
                .map_err(|_| parse_err(hl + 1, 1, &format!("bad header value {val:?}")))?;
            match key {
                "q" => q = Some(val),
                "n" => n = Some(val),
                "k" => k = Some(val),
                _ => return Err(parse_err(hl + 1, 1, &format!("unknown header key {key:?}"))),
            }
        }
        let (q, n, k) = match (q, n, k) {
            (Some(q), Some(n), Some(k)) => (q, n, k),
            _ => return Err(parse_err(hl + 1, 1, "header must be q=<q> n=<n> k=<k>")),
        };
        if q != field.order() as usize {
            return Err(parse_err(hl + 1, 1, &format!("field order {q} does not match {}", field.order())));
        }
        let mut rows = Vec::new();
        for (ln, line) in lines {
            let row = line
                .split_whitespace()
                .enumerate()
                .map(|(col, t)| {
                    t.parse::<u32>()
                        .ok()
                        .filter(|&x| x < field.order())
                        .map(Fel)
                        .ok_or_else(|| parse_err(ln + 1, col + 1, &format!("bad entry {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != n {
                return Err(parse_err(ln + 1, 1, &format!("expected {n} entries, got {}", row.len())));
            }
            rows.push(row);
        }
        if rows.len() != k {
            return Err(parse_err(hl + 1, 1, &format!("header says k={k} but found {} rows", rows.len())));
        }
        Ok(Subspace::from_rows(field, n, &rows))
    }
}

fn parse_err(line: usize, column: usize, message: &str) -> Error {
    Error::Parse {
        line,
        column,
        message: message.to_string(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormKind {
    NonDegenerate,
    Isotropic,
    Mixed,
}

#[derive(Debug, Clone)]
pub struct Restriction {
    pub gram: Mat,
    pub radical: Subspace,
    pub kind: FormKind,
}

/// A symmetric bilinear form `(u, v) -> u G v^T`. `gram == None` is the
/// standard dot product.
#[derive(Debug, Clone)]
pub struct SymForm {
    n: usize,
    gram: Option<Mat>,
}

impl SymForm {
    pub fn standard(_field: &Arc<FiniteField>, n: usize) -> SymForm {
        SymForm { n, gram: None }
    }

    pub fn from_gram(gram: Mat) -> Result<SymForm> {
        if !gram.is_symmetric() {
            return Err(Error::PreconditionViolated("Gram matrix is not symmetric".into()));
        }
        Ok(SymForm {
            n: gram.rows(),
            gram: Some(gram),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_standard(&self) -> bool {
        self.gram.is_none()
    }

    pub fn gram(&self, field: &Arc<FiniteField>) -> Mat {
        self.gram.clone().unwrap_or_else(|| Mat::identity(field, self.n))
    }

    pub fn eval(&self, f: &FiniteField, u: &[Fel], v: &[Fel]) -> Fel {
        match &self.gram {
            None => dot(f, u, v),
            Some(g) => dot(f, &vec_mat(f, u, g), v),
        }
    }

    /// `B G B^T` for the rows of `b`.
    pub fn gram_of(&self, b: &Mat) -> Mat {
        match &self.gram {
            None => b.mul(&b.transpose()),
            Some(g) => b.mul(g).mul(&b.transpose()),
        }
    }

    pub fn is_invariant_under(&self, m: &Mat) -> bool {
        let g = self.gram(m.field());
        m.mul(&g).mul(&m.transpose()) == g
    }
}

/// Incremental echelon basis for spinning: reduces new vectors against the
/// rows collected so far.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: Arc<FiniteField>,
    n: usize,
    rows: Vec<Vec<Fel>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: &Arc<FiniteField>, n: usize) -> Echelon {
        Echelon {
            field: field.clone(),
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &mut [Fel]) {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if !c.is_zero() {
                let c = f.neg(c);
                for (x, &r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x = f.add(*x, f.mul(c, r));
                    }
                }
            }
        }
    }

    /// Adds `v` if it is independent; returns the reduced, normalized row.
    pub fn insert(&mut self, v: &[Fel]) -> Option<Vec<Fel>> {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let p = w.iter().position(|x| !x.is_zero())?;
        let inv = self.field.inv(w[p]).expect("nonzero");
        for x in &mut w {
            *x = self.field.mul(*x, inv);
        }
        self.rows.push(w.clone());
        self.pivots.push(p);
        Some(w)
    }

    pub fn to_subspace(&self) -> Subspace {
        Subspace::from_rows(&self.field, self.n, &self.rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u64, m: u32) -> Arc<FiniteField> {
        FiniteField::shared(p, m).unwrap()
    }

    fn rows(v: &[&[u32]]) -> Vec<Vec<Fel>> {
        v.iter().map(|r| r.iter().map(|&x| Fel(x)).collect()).collect()
    }

    /// All vectors of F^n, n small.
    fn all_vectors(f: &FiniteField, n: usize) -> Vec<Vec<Fel>> {
        let q = f.order() as usize;
        (0..q.pow(n as u32))
            .map(|mut c| {
                (0..n)
                    .map(|_| {
                        let x = Fel((c % q) as u32);
                        c /= q;
                        x
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn rref_examples() {
        let f = gf(2, 1);
        let id = Mat::identity(&f, 4);
        assert_eq!(id.rref(), (id.clone(), 4));
        let z = Mat::zeros(&f, 3, 3);
        assert_eq!(z.rref(), (z.clone(), 0));
        let m = Mat::from_rows(&f, 3, &rows(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]));
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn kernel_examples() {
        let f = gf(2, 1);
        assert!(Mat::identity(&f, 3).kernel().is_zero());
        assert!(Mat::zeros(&f, 2, 3).kernel().is_full());
        let k = Mat::from_rows(&f, 3, &rows(&[&[1, 1, 1]])).kernel();
        assert_eq!(k.dim(), 2);
        let brute: Vec<_> = all_vectors(&f, 3)
            .into_iter()
            .filter(|v| dot(&f, v, &[Fel(1); 3]).is_zero())
            .collect();
        assert_eq!(brute.len(), 4);
        assert!(brute.iter().all(|v| k.contains(v)));
    }

    #[test]
    fn perp_examples() {
        let f = gf(2, 1);
        let u = Subspace::from_rows(&f, 3, &rows(&[&[1, 1, 0], &[0, 1, 1]]));
        let p = u.perp_standard();
        assert_eq!(p, Subspace::from_rows(&f, 3, &rows(&[&[1, 1, 1]])));
        // brute-force oracle
        let brute: Vec<_> = all_vectors(&f, 3)
            .into_iter()
            .filter(|w| u.vectors().all(|v| dot(&f, &v, w).is_zero()))
            .collect();
        assert_eq!(brute.len(), 1 << p.dim());
        assert!(Subspace::zero(&f, 3).perp_standard().is_full());
        assert!(Subspace::full(&f, 3).perp_standard().is_zero());
        let form = SymForm::standard(&f, 4);
        assert!(matches!(u.perp(&form), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn meet_join_examples() {
        let f = gf(2, 1);
        let u = Subspace::from_rows(&f, 3, &rows(&[&[1, 1, 0], &[0, 1, 1]]));
        assert_eq!(u.meet_join(&u).unwrap(), (u.clone(), u.clone()));
        let a = Subspace::from_rows(&f, 4, &rows(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]));
        let b = Subspace::from_rows(&f, 4, &rows(&[&[0, 0, 1, 0], &[0, 0, 0, 1]]));
        let (m, j) = a.meet_join(&b).unwrap();
        assert!(m.is_zero() && j.is_full());
        let x = Subspace::from_rows(&f, 3, &rows(&[&[1, 1, 0]]));
        let y = Subspace::from_rows(&f, 3, &rows(&[&[0, 1, 1]]));
        let (m, j) = x.meet_join(&y).unwrap();
        assert!(m.is_zero());
        assert_eq!(j, u);
    }

    #[test]
    fn restrict_form_examples() {
        let f = gf(2, 1);
        let form = SymForm::standard(&f, 3);
        let e = Subspace::from_rows(&f, 3, &rows(&[&[1, 1, 1]]));
        let r = e.restrict_form(&form).unwrap();
        assert_eq!(r.gram.data(), &[Fel(1)]);
        assert_eq!(r.kind, FormKind::NonDegenerate);
        let w = Subspace::from_rows(&f, 3, &rows(&[&[1, 1, 0]]));
        let r = w.restrict_form(&form).unwrap();
        assert_eq!(r.gram.data(), &[Fel(0)]);
        assert_eq!(r.kind, FormKind::Isotropic);
        assert_eq!(r.radical, w);
        let full = Subspace::full(&f, 3).restrict_form(&form).unwrap();
        assert_eq!(full.gram, Mat::identity(&f, 3));
        let mixed = Subspace::from_rows(&f, 3, &rows(&[&[1, 1, 0], &[0, 0, 1]]))
            .restrict_form(&form)
            .unwrap();
        assert_eq!(mixed.kind, FormKind::Mixed);
    }

    #[test]
    fn inverse_roundtrip() {
        let f = gf(3, 1);
        let m = Mat::from_rows(&f, 2, &rows(&[&[1, 2], &[0, 1]]));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(&f, 2));
        let s = Mat::from_rows(&f, 2, &rows(&[&[1, 2], &[2, 1]]));
        assert!(s.inverse().is_err());
    }

    #[test]
    fn text_roundtrip() {
        let f = gf(2, 2);
        let u = Subspace::from_rows(&f, 3, &rows(&[&[1, 2, 3], &[0, 1, 1]]));
        let t = u.to_text();
        assert!(t.starts_with("q=4 n=3 k=2\n"));
        assert_eq!(Subspace::from_text(&f, &t).unwrap(), u);
        assert!(matches!(
            Subspace::from_text(&f, "q=4 n=3 k=1\n1 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn char_and_min_poly() {
        let f = gf(2, 1);
        // companion-like matrix of x^3 + x + 1
        let m = Mat::from_rows(&f, 3, &rows(&[&[0, 1, 0], &[0, 0, 1], &[1, 1, 0]]));
        let cp = m.char_poly();
        assert_eq!(cp.coeffs(), &[Fel(1), Fel(1), Fel(0), Fel(1)]);
        assert!(m.eval_poly(&cp).is_zero());
        assert_eq!(m.min_poly(), cp);
        let id = Mat::identity(&f, 4);
        assert_eq!(id.min_poly().coeffs(), &[Fel(1), Fel(1)]);
        assert_eq!(id.char_poly().degree(), Some(4));
        let f5 = gf(5, 1);
        let a = Mat::from_rows(&f5, 3, &rows(&[&[1, 2, 3], &[4, 0, 1], &[2, 2, 2]]));
        assert!(a.eval_poly(&a.char_poly()).is_zero());
        let mp = a.min_poly();
        assert!(a.eval_poly(&mp).is_zero());
        assert!(a.char_poly().rem(&f5, &mp).is_zero());
    }

    fn random_subspace(f: &Arc<FiniteField>, n: usize, k: usize, seed: &[u32]) -> Subspace {
        let q = f.order();
        let rows: Vec<Vec<Fel>> = (0..k)
            .map(|i| (0..n).map(|j| Fel(seed[(i * n + j) % seed.len()].wrapping_mul(2654435761u32.wrapping_add((i * 31 + j) as u32)) % q)).collect())
            .collect();
        Subspace::from_rows(f, n, &rows)
    }

    proptest! {
        #[test]
        fn perp_dimension_and_involution(
            which in 0usize..3,
            n in 1usize..=16,
            k in 0usize..=16,
            seed in prop::collection::vec(any::<u32>(), 1..40),
        ) {
            let f = [gf(2, 1), gf(3, 1), gf(2, 2)][which].clone();
            let u = random_subspace(&f, n, k.min(n), &seed);
            let p = u.perp_standard();
            prop_assert_eq!(u.dim() + p.dim(), n);
            prop_assert_eq!(p.perp_standard(), u.clone());
            let (m, j) = u.meet_join(&p).unwrap();
            prop_assert_eq!(u.dim() + p.dim(), m.dim() + j.dim());
        }

        #[test]
        fn rref_idempotent_and_canonical(
            n in 1usize..=10,
            k in 1usize..=8,
            seed in prop::collection::vec(any::<u32>(), 1..40),
        ) {
            let f = gf(5, 1);
            let u = random_subspace(&f, n, k, &seed);
            let (r1, rk) = u.basis().rref();
            prop_assert_eq!(&r1, u.basis());
            prop_assert_eq!(rk, u.dim());
            // a different spanning set of the same space gives the same RREF
            let mixed = u.basis().vstack(&u.basis().scale(Fel(3)));
            let mut rows = mixed.row_vecs();
            rows.reverse();
            prop_assert_eq!(Subspace::from_rows(&f, n, &rows), u);
        }
    }
}

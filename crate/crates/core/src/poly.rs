//! Univariate polynomials over GF(q) and their factorization
//! (square-free, distinct-degree, Cantor–Zassenhaus equal-degree).

use rand::Rng;

use crate::gf::{Fel, FiniteField};

/// Coefficients little-endian, no trailing zeros. The zero polynomial is
/// empty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    coeffs: Vec<Fel>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Fel>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![Fel::ONE] }
    }

    pub fn x() -> Poly {
        Poly {
            coeffs: vec![Fel::ZERO, Fel::ONE],
        }
    }

    pub fn coeffs(&self) -> &[Fel] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> Fel {
        self.coeffs.last().copied().unwrap_or(Fel::ZERO)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [Fel::ONE]
    }

    pub fn eval(&self, f: &FiniteField, x: Fel) -> Fel {
        self.coeffs
            .iter()
            .rev()
            .fold(Fel::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn add(&self, f: &FiniteField, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Poly, i: usize| p.coeffs.get(i).copied().unwrap_or(Fel::ZERO);
        Poly::new((0..n).map(|i| f.add(get(self, i), get(other, i))).collect())
    }

    pub fn sub(&self, f: &FiniteField, other: &Poly) -> Poly {
        self.add(f, &other.scale(f, f.neg(Fel::ONE)))
    }

    pub fn scale(&self, f: &FiniteField, c: Fel) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, f: &FiniteField, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Fel::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn monic(&self, f: &FiniteField) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = f.inv(self.lead()).expect("nonzero leading coefficient");
        self.scale(f, inv)
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn divrem(&self, f: &FiniteField, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.coeffs.len() < d.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let mut r = self.coeffs.clone();
        let dd = d.deg();
        let inv = f.inv(d.lead()).expect("nonzero leading coefficient");
        let mut q = vec![Fel::ZERO; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = f.mul(r[k + dd], inv);
            if c.is_zero() {
                continue;
            }
            q[k] = c;
            for (j, &dj) in d.coeffs.iter().enumerate() {
                r[k + j] = f.sub(r[k + j], f.mul(c, dj));
            }
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, f: &FiniteField, d: &Poly) -> Poly {
        self.divrem(f, d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, f: &FiniteField, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn mulmod(&self, f: &FiniteField, other: &Poly, m: &Poly) -> Poly {
        self.mul(f, other).rem(f, m)
    }

    pub fn powmod(&self, f: &FiniteField, mut e: u64, m: &Poly) -> Poly {
        let mut acc = Poly::one().rem(f, m);
        let mut b = self.rem(f, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(f, &b, m);
            }
            b = b.mulmod(f, &b, m);
            e >>= 1;
        }
        acc
    }

    pub fn derivative(&self, f: &FiniteField) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
                .collect(),
        )
    }

    /// Irreducibility over `f` by the gcd test against `x^(q^i) - x`,
    /// `i <= deg/2`.
    pub fn is_irreducible(&self, f: &FiniteField) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(n) => n,
        };
        let m = self.monic(f);
        let x = Poly::x();
        let mut h = x.clone();
        for _ in 0..n / 2 {
            h = h.powmod(f, f.order() as u64, &m);
            if !m.gcd(f, &h.sub(f, &x)).is_one() {
                return false;
            }
        }
        true
    }

    /// Inverse of the coefficient Frobenius applied to a polynomial in `x^p`.
    fn pth_root(&self, f: &FiniteField) -> Poly {
        let p = f.characteristic() as usize;
        let e = (f.order() / f.characteristic()) as u64;
        Poly::new(
            self.coeffs
                .iter()
                .step_by(p)
                .map(|&c| f.pow(c, e))
                .collect(),
        )
    }

    /// Square-free decomposition of a monic polynomial: pairwise coprime
    /// square-free factors with their multiplicities.
    pub fn squarefree(&self, f: &FiniteField) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        let this = self.monic(f);
        if this.deg() == 0 {
            return out;
        }
        let d = this.derivative(f);
        if d.is_zero() {
            for (g, e) in this.pth_root(f).squarefree(f) {
                out.push((g, e * f.characteristic()));
            }
            return out;
        }
        let mut c = this.gcd(f, &d);
        let mut w = this.divrem(f, &c).0;
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(f, &c);
            let z = w.divrem(f, &y).0;
            if z.deg() > 0 {
                out.push((z, i));
            }
            i += 1;
            w = y;
            c = c.divrem(f, &w).0;
        }
        if c.deg() > 0 {
            for (g, e) in c.pth_root(f).squarefree(f) {
                out.push((g, e * f.characteristic()));
            }
        }
        out
    }

    /// Distinct-degree factorization of a monic square-free polynomial.
    pub fn distinct_degree(&self, f: &FiniteField) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        let mut g = self.monic(f);
        let x = Poly::x();
        let mut h = x.clone();
        let mut i = 1;
        while g.deg() >= 2 * i {
            h = h.powmod(f, f.order() as u64, &g);
            let d = g.gcd(f, &h.sub(f, &x));
            if !d.is_one() {
                g = g.divrem(f, &d).0;
                h = h.rem(f, &g);
                out.push((d, i));
            }
            i += 1;
        }
        if g.deg() > 0 {
            let k = g.deg();
            out.push((g, k));
        }
        out
    }

    /// Splits a monic square-free product of degree-`d` irreducibles.
    pub fn equal_degree<R: Rng + ?Sized>(&self, f: &FiniteField, d: usize, rng: &mut R) -> Vec<Poly> {
        let g = self.monic(f);
        if g.deg() == d {
            return vec![g];
        }
        loop {
            let a = Poly::new((0..g.deg()).map(|_| f.random(rng)).collect());
            if a.degree().is_none_or(|k| k == 0) {
                continue;
            }
            let b = if f.characteristic() == 2 {
                // absolute trace polynomial a + a^2 + ... + a^(2^(m d - 1))
                let steps = f.degree() as usize * d;
                let mut t = a.rem(f, &g);
                let mut acc = t.clone();
                for _ in 1..steps {
                    t = t.mulmod(f, &t, &g);
                    acc = acc.add(f, &t);
                }
                acc
            } else {
                let c = a.powmod(f, (f.order() as u64 - 1) / 2, &g);
                let mut acc = c.clone();
                let mut t = c;
                for _ in 1..d {
                    t = t.powmod(f, f.order() as u64, &g);
                    acc = acc.mulmod(f, &t, &g);
                }
                acc.sub(f, &Poly::one())
            };
            let h = g.gcd(f, &b);
            if h.deg() > 0 && h.deg() < g.deg() {
                let other = g.divrem(f, &h).0;
                let mut out = h.equal_degree(f, d, rng);
                out.extend(other.equal_degree(f, d, rng));
                return out;
            }
        }
    }

    /// Complete factorization into monic irreducibles with multiplicity,
    /// sorted by degree then coefficients.
    pub fn factor<R: Rng + ?Sized>(&self, f: &FiniteField, rng: &mut R) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        for (s, e) in self.squarefree(f) {
            for (g, d) in s.distinct_degree(f) {
                for h in g.equal_degree(f, d, rng) {
                    out.push((h, e));
                }
            }
        }
        out.sort_by(|a, b| (a.0.deg(), &a.0.coeffs).cmp(&(b.0.deg(), &b.0.coeffs)));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(v: &[u32]) -> Poly {
        Poly::new(v.iter().map(|&c| Fel(c)).collect())
    }

    #[test]
    fn irreducible_over_gf2() {
        let f = FiniteField::new(2, 1).unwrap();
        assert!(p(&[1, 1, 1]).is_irreducible(&f));
        assert!(!p(&[1, 0, 1]).is_irreducible(&f));
        assert!(p(&[1, 1, 0, 1]).is_irreducible(&f));
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2
        assert!(!p(&[1, 0, 1, 0, 1]).is_irreducible(&f));
    }

    fn check_factorization(f: &FiniteField, poly: &Poly, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fs = poly.factor(f, &mut rng);
        let mut prod = Poly::one();
        for (g, e) in &fs {
            assert!(g.is_irreducible(f), "{g:?}");
            for _ in 0..*e {
                prod = prod.mul(f, g);
            }
        }
        assert_eq!(prod, poly.monic(f));
    }

    #[test]
    fn factor_x7_minus_1() {
        let f = FiniteField::new(2, 1).unwrap();
        let x7 = p(&[1, 0, 0, 0, 0, 0, 0, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let fs = x7.factor(&f, &mut rng);
        let degs: Vec<usize> = fs.iter().map(|(g, _)| g.deg()).collect();
        assert_eq!(degs, vec![1, 3, 3]);
        check_factorization(&f, &x7, 3);
    }

    #[test]
    fn factor_with_repeats_and_pth_powers() {
        for (pr, m) in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)] {
            let f = FiniteField::new(pr, m).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(pr * 10 + m as u64);
            for _ in 0..20 {
                let deg = rng.gen_range(1..12);
                let mut poly = Poly::new((0..=deg).map(|_| f.random(&mut rng)).collect());
                if poly.degree().is_none_or(|d| d == 0) {
                    continue;
                }
                // square a factor and raise another to the p-th power
                let a = Poly::new(vec![f.random(&mut rng), Fel::ONE]);
                poly = poly.mul(&f, &a).mul(&f, &a);
                let b = Poly::new(vec![Fel(1), Fel::ZERO, Fel::ONE]);
                let mut bp = Poly::one();
                for _ in 0..f.characteristic() {
                    bp = bp.mul(&f, &b);
                }
                poly = poly.mul(&f, &bp);
                check_factorization(&f, &poly, 7);
            }
        }
    }
}

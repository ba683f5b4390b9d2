//! Exact arithmetic in GF(p^m).
//!
//! Elements are integers in `[0, q)` holding the base-p digits of the
//! residue polynomial, little-endian: the element `c_0 + c_1 x + ...` is
//! encoded as `c_0 + c_1 p + ...`. The prime subfield is therefore the
//! range `[0, p)`. The modulus is the lexicographically least monic
//! irreducible of degree `m`, so encodings are reproducible.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::numtheory::{factorize, gcd, is_prime};
use crate::poly::Poly;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;
/// Fields up to this order get log/antilog tables.
pub const TABLE_LIMIT: u32 = 1 << 16;
const EXHAUSTIVE_SQRT_LIMIT: u32 = 1 << 12;

/// A field element in base-p encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fel(pub u32);

impl Fel {
    pub const ZERO: Fel = Fel(0);
    pub const ONE: Fel = Fel(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Binary,
    Prime,
    General,
}

#[derive(Debug)]
struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Arithmetic context for GF(p^m). Immutable after construction.
#[derive(Debug)]
pub struct FiniteField {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    kind: Kind,
    generator: Fel,
    tables: Option<Tables>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m
    }
}

impl Eq for FiniteField {}

impl FiniteField {
    pub fn new(p: u64, m: u32) -> Result<FiniteField> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::PreconditionViolated("extension degree must be positive".into()));
        }
        let q = (p as u128).pow(m);
        if q > MAX_ORDER as u128 {
            return Err(Error::TooLarge(q.min(u64::MAX as u128) as u64));
        }
        let (p, q) = (p as u32, q as u32);
        let kind = if p == 2 {
            Kind::Binary
        } else if m == 1 {
            Kind::Prime
        } else {
            Kind::General
        };
        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            least_irreducible(p, m)
        };
        let mut field = FiniteField {
            p,
            m,
            q,
            modulus,
            kind,
            generator: Fel::ONE,
            tables: None,
        };
        field.generator = field.find_generator();
        if q <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    pub fn shared(p: u64, m: u32) -> Result<Arc<FiniteField>> {
        Ok(Arc::new(FiniteField::new(p, m)?))
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Monic modulus over GF(p), little-endian, length `m + 1`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// A generator of the multiplicative group (least such encoding).
    pub fn generator(&self) -> Fel {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = Fel> {
        (0..self.q).map(Fel)
    }

    pub fn contains(&self, a: Fel) -> bool {
        a.0 < self.q
    }

    /// Image of an integer under `Z -> GF(p)`.
    pub fn from_int(&self, k: i64) -> Fel {
        Fel(k.rem_euclid(self.p as i64) as u32)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fel {
        Fel(rng.gen_range(0..self.q))
    }

    pub fn add(&self, a: Fel, b: Fel) -> Fel {
        match self.kind {
            Kind::Binary => Fel(a.0 ^ b.0),
            Kind::Prime => {
                let s = a.0 + b.0;
                Fel(if s >= self.p { s - self.p } else { s })
            }
            Kind::General => {
                let (mut x, mut y, mut r, mut pw) = (a.0, b.0, 0u32, 1u32);
                for _ in 0..self.m {
                    r += ((x % self.p + y % self.p) % self.p) * pw;
                    x /= self.p;
                    y /= self.p;
                    pw = pw.wrapping_mul(self.p);
                }
                Fel(r)
            }
        }
    }

    pub fn neg(&self, a: Fel) -> Fel {
        match self.kind {
            Kind::Binary => a,
            Kind::Prime => Fel(if a.0 == 0 { 0 } else { self.p - a.0 }),
            Kind::General => {
                let (mut x, mut r, mut pw) = (a.0, 0u32, 1u32);
                for _ in 0..self.m {
                    r += ((self.p - x % self.p) % self.p) * pw;
                    x /= self.p;
                    pw = pw.wrapping_mul(self.p);
                }
                Fel(r)
            }
        }
    }

    pub fn sub(&self, a: Fel, b: Fel) -> Fel {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fel, b: Fel) -> Fel {
        if a.0 == 0 || b.0 == 0 {
            return Fel::ZERO;
        }
        if let Some(t) = &self.tables {
            return Fel(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]);
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: Fel, b: Fel) -> Fel {
        match self.kind {
            Kind::Prime => Fel(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32),
            Kind::Binary => {
                let (mut x, y) = (a.0 as u64, b.0 as u64);
                let mut r = 0u64;
                let mut i = 0;
                while x != 0 {
                    if x & 1 == 1 {
                        r ^= y << i;
                    }
                    x >>= 1;
                    i += 1;
                }
                let mbits: u64 = self
                    .modulus
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| (c as u64) << i)
                    .sum();
                let m = self.m as usize;
                for d in (m..64).rev() {
                    if r >> d & 1 == 1 {
                        r ^= mbits << (d - m);
                    }
                }
                Fel(r as u32)
            }
            Kind::General => {
                let m = self.m as usize;
                let p = self.p as u64;
                let da = self.digits(a);
                let db = self.digits(b);
                let mut prod = vec![0u64; 2 * m - 1];
                for (i, &x) in da.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
                    }
                }
                for d in (m..prod.len()).rev() {
                    let c = prod[d];
                    if c == 0 {
                        continue;
                    }
                    for (k, &mk) in self.modulus.iter().enumerate().take(m) {
                        let idx = d - m + k;
                        prod[idx] = (prod[idx] + (p - c) * mk as u64) % p;
                    }
                    prod[d] = 0;
                }
                Fel(self.from_digits(prod[..m].iter().map(|&x| x as u32)))
            }
        }
    }

    pub fn digits(&self, a: Fel) -> Vec<u32> {
        let mut x = a.0;
        (0..self.m)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits<I: IntoIterator<Item = u32>>(&self, digits: I) -> u32 {
        let mut r = 0u32;
        let mut pw = 1u32;
        for d in digits {
            r += d * pw;
            pw = pw.wrapping_mul(self.p);
        }
        r
    }

    pub fn pow(&self, a: Fel, mut e: u64) -> Fel {
        if e == 0 {
            return Fel::ONE;
        }
        if a.0 == 0 {
            return Fel::ZERO;
        }
        if let Some(t) = &self.tables {
            let l = t.log[a.0 as usize] as u64 * (e % (self.q as u64 - 1)) % (self.q as u64 - 1);
            return Fel(t.exp[l as usize]);
        }
        let mut b = a;
        let mut acc = Fel::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fel) -> Result<Fel> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.tables {
            let l = t.log[a.0 as usize];
            return Ok(Fel(t.exp[((self.q - 1 - l) % (self.q - 1)) as usize]));
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }

    pub fn div(&self, a: Fel, b: Fel) -> Result<Fel> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `x -> x^p`.
    pub fn frobenius(&self, a: Fel) -> Fel {
        self.pow(a, self.p as u64)
    }

    pub fn is_square(&self, a: Fel) -> bool {
        self.p == 2 || a.0 == 0 || self.pow(a, (self.q as u64 - 1) / 2) == Fel::ONE
    }

    /// A square root of `a`, or `None` if `a` is a non-residue. In odd
    /// characteristic the smaller of the two roots (by encoding) is returned.
    pub fn sqrt(&self, a: Fel) -> Option<Fel> {
        if self.p == 2 {
            return Some(self.pow(a, (self.q / 2) as u64));
        }
        if a.0 == 0 {
            return Some(Fel::ZERO);
        }
        if !self.is_square(a) {
            return None;
        }
        let r = if self.q < EXHAUSTIVE_SQRT_LIMIT {
            self.elements().find(|&r| self.mul(r, r) == a)?
        } else {
            self.tonelli_shanks(a)
        };
        Some(r.min(self.neg(r)))
    }

    fn tonelli_shanks(&self, a: Fel) -> Fel {
        let mut s = 0u32;
        let mut t = self.q as u64 - 1;
        while t % 2 == 0 {
            t /= 2;
            s += 1;
        }
        let z = self
            .elements()
            .skip(1)
            .find(|&z| !self.is_square(z))
            .expect("odd field has a non-residue");
        let mut m = s;
        let mut c = self.pow(z, t);
        let mut x = self.pow(a, (t + 1) / 2);
        let mut b = self.pow(a, t);
        while b != Fel::ONE {
            let mut i = 0;
            let mut bb = b;
            while bb != Fel::ONE {
                bb = self.mul(bb, bb);
                i += 1;
            }
            let mut d = c;
            for _ in 0..(m - i - 1) {
                d = self.mul(d, d);
            }
            x = self.mul(x, d);
            c = self.mul(d, d);
            b = self.mul(b, c);
            m = i;
        }
        x
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Fel) -> u64 {
        assert!(!a.is_zero());
        let mut order = self.q as u64 - 1;
        for p in factorize(order).primes() {
            while order % p == 0 && self.pow(a, order / p) == Fel::ONE {
                order /= p;
            }
        }
        order
    }

    /// An element of exact multiplicative order `n`, least in the sense of
    /// being the canonical power of the generator.
    pub fn root_of_unity(&self, n: u64) -> Option<Fel> {
        if (self.q as u64 - 1) % n != 0 {
            return None;
        }
        Some(self.pow(self.generator, (self.q as u64 - 1) / n))
    }

    fn find_generator(&self) -> Fel {
        if self.q == 2 {
            return Fel::ONE;
        }
        let n = self.q as u64 - 1;
        let primes: Vec<u64> = factorize(n).primes().collect();
        self.elements()
            .skip(2)
            .find(|&g| primes.iter().all(|&r| self.pow(g, n / r) != Fel::ONE))
            .expect("multiplicative group of a finite field is cyclic")
    }

    fn build_tables(&self) -> Tables {
        let n = (self.q - 1) as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; self.q as usize];
        let mut x = Fel::ONE;
        for i in 0..n {
            exp[i] = x.0;
            exp[i + n] = x.0;
            log[x.0 as usize] = i as u32;
            x = self.mul_slow(x, self.generator);
        }
        assert_eq!(x, Fel::ONE, "generator order must be q-1");
        Tables { exp, log }
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.m)
    }
}

/// Lexicographically least monic irreducible of degree `m` over GF(p),
/// ordering by the base-p encoding of the lower coefficients.
fn least_irreducible(p: u32, m: u32) -> Vec<u32> {
    let prime = FiniteField::new(p as u64, 1).expect("prime field");
    let count = (p as u64).pow(m);
    for code in 0..count {
        let mut coeffs = Vec::with_capacity(m as usize + 1);
        let mut c = code;
        for _ in 0..m {
            coeffs.push(Fel((c % p as u64) as u32));
            c /= p as u64;
        }
        coeffs.push(Fel::ONE);
        if coeffs[0].is_zero() {
            continue;
        }
        let f = Poly::new(coeffs);
        if f.is_irreducible(&prime) {
            return f.coeffs().iter().map(|c| c.0).collect();
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// A field `E` carrying the Frobenius `x -> x^q` of a base field `F`, plus
/// the identification of its fixed field with a subfield of `F`.
///
/// [`ExtensionField::new`] gives `E = GF(q^d)`, whose fixed field is all of
/// `F`. [`ExtensionField::cyclotomic`] gives the smallest field over the
/// prime field holding the `n`-th roots of unity; the Frobenius then fixes
/// exactly `E ∩ F`, and Galois orbits of `n`-th roots are the same as over
/// `F(ξ_n)`.
#[derive(Debug, Clone)]
pub struct ExtensionField {
    base: Arc<FiniteField>,
    field: Arc<FiniteField>,
    degree: u32,
    to_base: HashMap<u32, u32>,
    from_base: HashMap<u32, u32>,
}

impl ExtensionField {
    pub fn new(base: Arc<FiniteField>, d: u32) -> Result<ExtensionField> {
        let big = (base.order() as u128).pow(d);
        if big > MAX_ORDER as u128 {
            return Err(Error::TooLarge(big.min(u64::MAX as u128) as u64));
        }
        let field = FiniteField::shared(base.characteristic() as u64, base.degree() * d)?;
        Self::assemble(base, field)
    }

    /// Smallest field of characteristic `p` containing a primitive `n`-th
    /// root of unity, with the Frobenius of `base`.
    pub fn cyclotomic(base: Arc<FiniteField>, n: u64) -> Result<ExtensionField> {
        let p = base.characteristic() as u64;
        let k = crate::numtheory::mult_order(p as i64, n)? as u32;
        let big = (p as u128).pow(k);
        if big > MAX_ORDER as u128 {
            return Err(Error::TooLarge(big.min(u64::MAX as u128) as u64));
        }
        let field = FiniteField::shared(p, k)?;
        Self::assemble(base, field)
    }

    fn assemble(base: Arc<FiniteField>, field: Arc<FiniteField>) -> Result<ExtensionField> {
        let p = base.characteristic();
        let g = gcd(base.degree() as u64, field.degree() as u64) as u32;
        let degree = field.degree() / g;
        let sub_order = p.pow(g);
        // generator of the common subfield inside E, and a root in F of its
        // minimal polynomial over GF(p)
        let z = field.pow(
            field.generator(),
            (field.order() as u64 - 1) / (sub_order as u64 - 1),
        );
        let mut conj = Vec::with_capacity(g as usize);
        let mut c = z;
        for _ in 0..g {
            conj.push(c);
            c = field.frobenius(c);
        }
        let mut minpoly = Poly::one();
        for &c in &conj {
            minpoly = minpoly.mul(&field, &Poly::new(vec![field.neg(c), Fel::ONE]));
        }
        let coeffs: Vec<Fel> = minpoly.coeffs().to_vec();
        debug_assert!(coeffs.iter().all(|c| c.0 < p));
        let minpoly_base = Poly::new(coeffs);
        let w = base
            .elements()
            .find(|&x| minpoly_base.eval(&base, x).is_zero())
            .ok_or_else(|| Error::InternalCaseError("subfield generator has no image".into()))?;
        let mut to_base = HashMap::with_capacity(sub_order as usize);
        let mut from_base = HashMap::with_capacity(sub_order as usize);
        to_base.insert(0, 0);
        from_base.insert(0, 0);
        let (mut ze, mut wb) = (Fel::ONE, Fel::ONE);
        for _ in 0..sub_order - 1 {
            to_base.insert(ze.0, wb.0);
            from_base.insert(wb.0, ze.0);
            ze = field.mul(ze, z);
            wb = base.mul(wb, w);
        }
        Ok(ExtensionField {
            base,
            field,
            degree,
            to_base,
            from_base,
        })
    }

    pub fn base(&self) -> &Arc<FiniteField> {
        &self.base
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    /// Order of the Frobenius `γ`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `γ(x) = x^q`, `q = |F|`.
    pub fn gamma(&self, x: Fel) -> Fel {
        self.field.pow(x, self.base.order() as u64)
    }

    /// Image in `E` of an element of `F`, if it lies in the common subfield.
    pub fn embed(&self, x: Fel) -> Option<Fel> {
        self.from_base.get(&x.0).map(|&y| Fel(y))
    }

    /// Re-expresses a γ-fixed vector over `F`; `None` if some entry moves.
    pub fn is_rational(&self, v: &[Fel]) -> Option<Vec<Fel>> {
        v.iter()
            .map(|&x| {
                if self.gamma(x) != x {
                    return None;
                }
                self.to_base.get(&x.0).map(|&y| Fel(y))
            })
            .collect()
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = Fel> + '_ {
        self.field.elements().filter(|&x| self.gamma(x) == x)
    }
}

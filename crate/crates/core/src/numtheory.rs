//! Integer-side criteria: factorization, multiplicative orders and the
//! odd-order test on `q` modulo the length of a transitive G-set.

use crate::error::{Error, Result};

/// Upper bound on inputs to [`factorize`].
pub const FACTOR_LIMIT: u64 = 1 << 32;

/// Canonical prime factorization, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization(pub Vec<(u64, u32)>);

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    pub fn value(&self) -> u64 {
        self.0.iter().map(|&(p, e)| p.pow(e)).product()
    }
}

/// Result of [`odd_order_check`]: the order of `base` modulo `modulus` and its
/// order modulo every prime divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderWitness {
    pub modulus: u64,
    pub base: u64,
    pub order: u64,
    pub per_prime: Vec<(u64, u64)>,
    pub pass: bool,
}

impl OrderWitness {
    pub fn all_primes_odd(&self) -> bool {
        self.per_prime.iter().all(|&(_, o)| o % 2 == 1)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Trial division. Panics if `n` is zero or above [`FACTOR_LIMIT`].
pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1 && n <= FACTOR_LIMIT, "factorize: {n} out of range");
    let mut out = Vec::new();
    let mut m = n;
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    Factorization(out)
}

pub fn pow_mod(base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let n128 = n as u128;
    let mut b = (base % n) as u128;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % n128;
        }
        b = b * b % n128;
        exp >>= 1;
    }
    acc as u64
}

fn reduce(q: i64, n: u64) -> u64 {
    q.rem_euclid(n as i64) as u64
}

/// Carmichael function computed from a factorization.
pub fn carmichael(f: &Factorization) -> u64 {
    let mut l = 1u64;
    for &(p, e) in &f.0 {
        let phi = (p - 1) * p.pow(e - 1);
        let lp = if p == 2 && e >= 3 { phi / 2 } else { phi };
        l = l / gcd(l, lp) * lp;
    }
    l
}

/// Least `k >= 1` with `q^k = 1 (mod n)`.
///
/// Starts from the Carmichael exponent of `n` and strips prime factors
/// while the power stays at one.
pub fn mult_order(q: i64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::PreconditionViolated("modulus must be positive".into()));
    }
    if n == 1 {
        return Ok(1);
    }
    let a = reduce(q, n);
    if gcd(a, n) != 1 {
        return Err(Error::NotCoprime { a, n });
    }
    let mut order = carmichael(&factorize(n));
    for p in factorize(order).primes() {
        while order % p == 0 && pow_mod(a, order / p, n) == 1 {
            order /= p;
        }
    }
    Ok(order)
}

/// Same contract as [`mult_order`], by iterating powers of `q`.
pub fn mult_order_iterative(q: i64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::PreconditionViolated("modulus must be positive".into()));
    }
    if n == 1 {
        return Ok(1);
    }
    let a = reduce(q, n);
    if gcd(a, n) != 1 {
        return Err(Error::NotCoprime { a, n });
    }
    let mut x = a;
    let mut k = 1;
    while x != 1 {
        x = ((x as u128 * a as u128) % n as u128) as u64;
        k += 1;
    }
    Ok(k)
}

/// Checks whether the order of `q` modulo `n` is odd, recording the order
/// modulo each prime divisor. For odd `n` the global and per-prime parities
/// are compared and a disagreement is reported as an error.
pub fn odd_order_check(q: i64, n: u64) -> Result<OrderWitness> {
    let order = mult_order(q, n)?;
    let per_prime = if n == 1 {
        Vec::new()
    } else {
        factorize(n)
            .primes()
            .map(|p| mult_order(q, p).map(|o| (p, o)))
            .collect::<Result<Vec<_>>>()?
    };
    let w = OrderWitness {
        modulus: n,
        base: reduce(q, n.max(1)),
        order,
        per_prime,
        pass: order % 2 == 1,
    };
    if n % 2 == 1 && w.pass != w.all_primes_odd() {
        return Err(Error::InternalCaseError(format!(
            "odd-order parity disagrees with per-prime parity for q={q}, n={n}"
        )));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(21).0, vec![(3, 1), (7, 1)]);
        assert_eq!(factorize(1).0, vec![]);
        assert_eq!(factorize(45).0, vec![(3, 2), (5, 1)]);
        assert_eq!(factorize(FACTOR_LIMIT).0, vec![(2, 32)]);
        assert_eq!(factorize(4294967291).0, vec![(4294967291, 1)]);
    }

    #[test]
    fn factorization_multiplies_back() {
        for n in 1..3000u64 {
            let f = factorize(n);
            assert_eq!(f.value(), n);
            assert!(f.primes().all(is_prime));
        }
    }

    #[test]
    fn order_examples() {
        assert_eq!(mult_order(2, 7).unwrap(), 3);
        assert_eq!(mult_order(2, 9).unwrap(), 6);
        assert_eq!(mult_order(5, 1).unwrap(), 1);
        assert_eq!(mult_order(-1, 7).unwrap(), 2);
        assert!(matches!(mult_order(3, 9), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn order_routes_agree_and_are_minimal() {
        for n in 1..2000u64 {
            for q in [2i64, 3, 4, 5, 8, 9, 41] {
                let Ok(o) = mult_order(q, n) else {
                    assert!(mult_order_iterative(q, n).is_err());
                    continue;
                };
                assert_eq!(o, mult_order_iterative(q, n).unwrap(), "q={q} n={n}");
                let a = reduce(q, n);
                assert_eq!(pow_mod(a, o, n), 1 % n);
                for d in 1..o {
                    if o % d == 0 {
                        assert_ne!(pow_mod(a, d, n), 1 % n);
                    }
                }
            }
        }
    }

    #[test]
    fn odd_order_examples() {
        let w = odd_order_check(2, 7).unwrap();
        assert!(w.pass);
        assert_eq!(w.order, 3);
        assert_eq!(w.per_prime, vec![(7, 3)]);
        let w = odd_order_check(2, 9).unwrap();
        assert!(!w.pass);
        assert_eq!(w.order, 6);
        let w = odd_order_check(4, 3).unwrap();
        assert!(w.pass);
        assert_eq!(w.order, 1);
    }
}

//! Multiplicative arithmetic functions, Dirichlet convolution and the
//! divisibility sets `D(Q, l1) = { M : l1 * gcd(Q, M) | M }`.

use std::sync::OnceLock;

use num_integer::Integer;

use crate::error::{Error, Result};

const SIEVE_BOUND: usize = 1_000_000;

fn spf_table() -> &'static [u32] {
    static TABLE: OnceLock<Vec<u32>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut spf = vec![0u32; SIEVE_BOUND + 1];
        for i in 2..=SIEVE_BOUND {
            if spf[i] == 0 {
                let mut j = i;
                while j <= SIEVE_BOUND {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        spf
    })
}

/// Prime factorization as `(p, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize(0)");
    let mut out: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, out: &mut Vec<(u64, u32)>| match out.last_mut() {
        Some((q, e)) if *q == p => *e += 1,
        _ => out.push((p, 1)),
    };
    if (n as usize) <= SIEVE_BOUND {
        let spf = spf_table();
        while n > 1 {
            let p = spf[n as usize] as u64;
            push(p, &mut out);
            n /= p;
        }
        return out;
    }
    let mut p = 2u64;
    while p * p <= n {
        while n % p == 0 {
            push(p, &mut out);
            n /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        push(n, &mut out);
    }
    out
}

pub fn moebius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: u64) -> u64 {
    jordan_totient(1, n)
}

/// `J_k(n) = n^k prod_{p | n} (1 - p^-k)`.
pub fn jordan_totient(k: u32, n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .map(|(p, e)| p.pow(k * (e - 1)) * (p.pow(k) - 1))
        .product()
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Values `f(1), ..., f(n)` of an arithmetic function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArithFnTable {
    values: Vec<i64>,
}

impl ArithFnTable {
    pub fn new(values: Vec<i64>) -> Result<Self> {
        match values.first() {
            Some(v) if *v != 0 => Ok(ArithFnTable { values }),
            Some(_) => Err(Error::Invalid("arithmetic function must be nonzero at 1".into())),
            None => Err(Error::Invalid("empty arithmetic function table".into())),
        }
    }

    fn from_fn(n: usize, f: impl Fn(u64) -> i64) -> Self {
        ArithFnTable {
            values: (1..=n as u64).map(f).collect(),
        }
    }

    /// The convolution identity `epsilon`.
    pub fn unit(n: usize) -> Self {
        Self::from_fn(n, |k| i64::from(k == 1))
    }

    pub fn one(n: usize) -> Self {
        Self::from_fn(n, |_| 1)
    }

    /// `n -> n^k`.
    pub fn power(n: usize, k: u32) -> Self {
        Self::from_fn(n, |m| (m as i64).pow(k))
    }

    pub fn moebius(n: usize) -> Self {
        Self::from_fn(n, moebius)
    }

    pub fn phi(n: usize) -> Self {
        Self::from_fn(n, |m| euler_phi(m) as i64)
    }

    pub fn jordan(n: usize, k: u32) -> Self {
        Self::from_fn(n, |m| jordan_totient(k, m) as i64)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// `f(n)` for `1 <= n <= len`.
    pub fn at(&self, n: usize) -> i64 {
        self.values[n - 1]
    }

    /// `(f * g)(n) = sum_{d | n} f(d) g(n/d)`.
    pub fn dirichlet_convolve(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        let n = self.len();
        let mut out = vec![0i64; n];
        for d in 1..=n {
            let fd = self.values[d - 1];
            if fd == 0 {
                continue;
            }
            for m in (d..=n).step_by(d) {
                out[m - 1] += fd * other.values[m / d - 1];
            }
        }
        Ok(ArithFnTable { values: out })
    }
}

/// Data describing `D(Q, l1)` for `l1 = l / gcd(l, Q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwistReduction {
    pub q: u64,
    pub l: u64,
    pub l1: u64,
    /// Stable value of `gcd(Q, l1^n)` for large `n`.
    pub m: u64,
    /// `l1 * m`; `D(Q, l1)` is the set of its multiples.
    pub generator: u64,
}

impl TwistReduction {
    pub fn contains(&self, big_m: u64) -> bool {
        big_m % self.generator == 0
    }
}

pub fn twist_reduction(q: u64, l: u64) -> TwistReduction {
    assert!(q >= 1 && l >= 1, "twist_reduction needs positive arguments");
    let l1 = l / l.gcd(&q);
    // ceil(log2 Q) bounds every p-adic valuation of Q
    let v = if q < 2 { 0 } else { 64 - (q - 1).leading_zeros() };
    let mut m = 1u64;
    for _ in 0..v {
        m = q.gcd(&(m * l1));
    }
    TwistReduction {
        q,
        l,
        l1,
        m,
        generator: l1 * m,
    }
}

/// Membership in `D(Q, l1)` straight from the definition.
pub fn in_divisibility_set(q: u64, l1: u64, big_m: u64) -> bool {
    big_m % (l1 * q.gcd(&big_m)) == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(moebius(1), 1);
        assert_eq!(moebius(4), 0);
        assert_eq!(moebius(6), 1);
        assert_eq!(moebius(30), -1);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), (1..=12u64).filter(|k| k.gcd(&12) == 1).count() as u64);
        assert_eq!(divisors(30).iter().map(|&d| euler_phi(d)).sum::<u64>(), 30);
        let j2: Vec<u64> = [1, 2, 3, 5, 6, 10].iter().map(|&n| jordan_totient(2, n)).collect();
        assert_eq!(j2, vec![1, 3, 8, 24, 24, 72]);
    }

    #[test]
    fn large_argument_uses_trial_division() {
        let n = 2 * 1_000_003u64;
        assert_eq!(factorize(n), vec![(2, 1), (1_000_003, 1)]);
        assert_eq!(euler_phi(n), 1_000_002);
    }

    #[test]
    fn divisors_sorted() {
        assert_eq!(divisors(10), vec![1, 2, 5, 10]);
        assert_eq!(divisors(84).len(), 12);
        assert_eq!(divisors(1), vec![1]);
    }

    #[test]
    fn convolution_identities() {
        let n = 300;
        let j2 = ArithFnTable::jordan(n, 2);
        assert_eq!(ArithFnTable::one(n).dirichlet_convolve(&j2).unwrap(), ArithFnTable::power(n, 2));
        assert_eq!(
            ArithFnTable::moebius(n).dirichlet_convolve(&ArithFnTable::power(n, 2)).unwrap(),
            j2
        );
        assert_eq!(ArithFnTable::unit(n).dirichlet_convolve(&j2).unwrap(), j2);
        assert_eq!(
            ArithFnTable::one(3).dirichlet_convolve(&ArithFnTable::one(4)),
            Err(Error::LengthMismatch { left: 3, right: 4 })
        );
        assert!(ArithFnTable::new(vec![0, 1]).is_err());
    }

    #[test]
    fn reductions() {
        let r = twist_reduction(84, 27);
        assert_eq!((r.l1, r.m, r.generator), (9, 3, 27));
        let r = twist_reduction(10, 3);
        assert_eq!((r.l1, r.m, r.generator), (3, 1, 3));
        let r = twist_reduction(10, 5);
        assert_eq!((r.l1, r.m, r.generator), (1, 1, 1));
        // the limit of gcd(Q, l1^n), not its first value
        let r = twist_reduction(4, 8);
        assert_eq!((r.l1, r.m, r.generator), (2, 4, 8));
    }

    #[test]
    fn generator_matches_definition() {
        for q in 1..=30u64 {
            for l in 1..=30u64 {
                let r = twist_reduction(q, l);
                for m in 1..=400u64 {
                    assert_eq!(r.contains(m), in_divisibility_set(q, r.l1, m), "Q={q} l={l} M={m}");
                }
            }
        }
    }
}

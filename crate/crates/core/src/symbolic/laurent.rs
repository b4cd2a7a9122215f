//! Integer Laurent polynomials in `L` and `T`.
//!
//! `L` exponents range over all integers, `T` exponents are kept nonnegative.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Key `(l, t)` stands for `L^l * T^t`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn monomial(coeff: impl Into<BigInt>, l: i64, t: i64) -> Self {
        debug_assert!(t >= 0, "negative T exponent");
        let mut out = Self::zero();
        out.add_term(l, t, coeff.into());
        out
    }

    /// `L - 1`.
    pub fn l_minus_one() -> Self {
        &Self::monomial(1, 1, 0) - &Self::one()
    }

    /// `L - 1 - c`.
    pub fn l_minus(c: i64) -> Self {
        &Self::monomial(1, 1, 0) - &Self::monomial(c + 1, 0, 0)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn add_term(&mut self, l: i64, t: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((l, t)).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(l, t));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, &BigInt)> {
        self.terms.iter().map(|(&(l, t), c)| (l, t, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        for (l, t, v) in self.terms() {
            out.add_term(l, t, v * c);
        }
        out
    }

    /// Multiply by `L^l T^t`.
    pub fn shift(&self, l: i64, t: i64) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + l, b + t), c.clone()))
                .collect(),
        }
    }

    /// Sum of coefficients, i.e. the value at `L = T = 1`.
    pub fn value_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn min_l(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.0).min()
    }

    pub fn max_l(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn min_t(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.1).min()
    }

    /// Coefficient of `T^t`, as a Laurent polynomial in `L` only.
    pub fn t_slice(&self, t: i64) -> BTreeMap<i64, BigInt> {
        self.terms
            .iter()
            .filter(|(k, _)| k.1 == t)
            .map(|(k, c)| (k.0, c.clone()))
            .collect()
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (l, t, c) in rhs.terms() {
            out.add_term(l, t, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (l, t, c) in rhs.terms() {
            out.add_term(l, t, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (l1, t1, c1) in self.terms() {
            for (l2, t2, c2) in rhs.terms() {
                out.add_term(l1 + l2, t1 + t2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-BigInt::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_terms() {
        let a = LaurentPoly::l_minus_one();
        let b = &a - &a;
        assert!(b.is_zero());
        let sq = a.pow(2);
        assert_eq!(sq.value_at_one(), BigInt::zero());
        assert_eq!(sq.len(), 3);
    }

    #[test]
    fn shift_moves_exponents() {
        let a = LaurentPoly::l_minus_one().shift(-2, 3);
        assert_eq!(a.min_l(), Some(-2));
        assert_eq!(a.max_l(), Some(-1));
        assert_eq!(a.min_t(), Some(3));
    }
}

//! The Euler specialization `L -> 1`, `T -> L^(-s)` of factored motivic
//! expressions.
//!
//! With `L = e^h` every denominator factor becomes
//! `1 - e^(-(a + b s) h) = (a + b s) h u(h)` with `u(0) = 1`, so each term is
//! a Laurent series in `h` with coefficients in `Q(s)`. The specialization is
//! the `h^0` coefficient of the sum, and poles in `h` must cancel.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::motivic::MotivicExpression;
use super::poly::Poly;
use super::ratfunc::RationalFunction;
use super::{BigRational, rat};
use crate::error::{Error, Result};

type Series = Vec<Poly>;

fn factorial(n: usize) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, k| acc * k)
}

fn series_mul(a: &Series, b: &Series, len: usize) -> Series {
    let mut out = vec![Poly::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Inverse of a series whose constant term is 1.
fn series_inv_unit(a: &Series, len: usize) -> Series {
    let mut out = vec![Poly::zero(); len];
    out[0] = Poly::one();
    for n in 1..len {
        let mut acc = Poly::zero();
        for k in 1..=n.min(a.len() - 1) {
            acc = &acc + &(&a[k] * &out[n - k]);
        }
        out[n] = -&acc;
    }
    out
}

/// `exp(w h)` truncated to `len` terms, `w` a polynomial in `s`.
fn exp_series(w: &Poly, len: usize) -> Series {
    let mut out = Vec::with_capacity(len);
    let mut p = Poly::one();
    for j in 0..len {
        out.push(p.scale(&BigRational::new(BigInt::one(), factorial(j))));
        p = &p * w;
    }
    out
}

/// `u(h) = (1 - e^(-c h))/(c h) = sum_j (-c)^j h^j / (j+1)!`.
fn u_series(c: &Poly, len: usize) -> Series {
    let minus_c = -c;
    let mut out = Vec::with_capacity(len);
    let mut p = Poly::one();
    for j in 0..len {
        out.push(p.scale(&BigRational::new(BigInt::one(), factorial(j + 1))));
        p = &p * &minus_c;
    }
    out
}

/// Apply `L -> 1, T -> L^(-s)` to `x`.
///
/// Fails with [`Error::DivergentSpecialization`] if the total has a pole at
/// `L = 1`.
pub fn euler_specialize(x: &MotivicExpression) -> Result<RationalFunction> {
    let k_max = x.terms.iter().map(|t| t.factors.len()).max().unwrap_or(0);
    // totals[i] is the coefficient of h^(i - k_max)
    let mut totals = vec![RationalFunction::zero(); k_max + 1];
    for term in &x.terms {
        if term.numer.is_zero() {
            continue;
        }
        let k = term.factors.len();
        let len = k + 1;
        let mut numer = vec![Poly::zero(); len];
        for (l, t, c) in term.numer.terms() {
            let w = Poly::linear_i64(l, -t);
            let e = exp_series(&w, len);
            let coeff = BigRational::from_integer(c.clone());
            for (slot, v) in numer.iter_mut().zip(e.iter()) {
                *slot = &*slot + &v.scale(&coeff);
            }
        }
        let mut acc = numer;
        let mut cprod = Poly::one();
        for f in &term.factors {
            let c = Poly::linear_i64(f.a, f.b);
            acc = series_mul(&acc, &series_inv_unit(&u_series(&c, len), len), len);
            cprod = &cprod * &c;
        }
        for (j, p) in acc.into_iter().enumerate() {
            // h^(j - k) lands in slot j - k + k_max
            let slot = j + k_max - k;
            let v = RationalFunction::new(p, cprod.clone())?;
            totals[slot] = &totals[slot] + &v;
        }
    }
    for (i, v) in totals.iter().enumerate().take(k_max) {
        if !v.is_zero() {
            return Err(Error::DivergentSpecialization {
                order: i as i64 - k_max as i64,
            });
        }
    }
    Ok(totals.pop().unwrap_or_else(RationalFunction::zero))
}

/// Euler specialization of a Laurent polynomial with no denominator: the
/// value at `L = T = 1`.
pub fn specialize_constant(x: &super::laurent::LaurentPoly) -> BigRational {
    let v = x.value_at_one();
    if v.is_zero() {
        rat(0)
    } else {
        BigRational::from_integer(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::laurent::LaurentPoly;
    use crate::symbolic::motivic::{DenomFactor, MotivicTerm};
    use proptest::prelude::*;

    fn expr(numer: LaurentPoly, factors: &[(i64, i64)]) -> MotivicExpression {
        MotivicExpression::from_term(MotivicTerm::new(
            numer,
            factors.iter().map(|&(a, b)| DenomFactor::new(a, b).unwrap()).collect(),
        ))
    }

    #[test]
    fn single_factor() {
        let x = expr(LaurentPoly::l_minus_one(), &[(2, 30)]);
        let got = euler_specialize(&x).unwrap();
        assert_eq!(got, RationalFunction::inverse_linear(rat(2), rat(30)).unwrap());
    }

    #[test]
    fn monomial_goes_to_one() {
        let x = MotivicExpression::from_poly(LaurentPoly::monomial(1, 1, 0));
        assert_eq!(euler_specialize(&x).unwrap(), RationalFunction::one());
    }

    #[test]
    fn pole_is_reported() {
        let x = expr(LaurentPoly::one(), &[(1, 1)]);
        assert_eq!(
            euler_specialize(&x),
            Err(Error::DivergentSpecialization { order: -1 })
        );
    }

    #[test]
    fn enough_zeros_kill_everything() {
        for k in 0..4usize {
            let f: Vec<(i64, i64)> = (0..k).map(|i| (i as i64 + 1, 2)).collect();
            let x = expr(LaurentPoly::l_minus_one().pow(k as u32 + 1), &f);
            assert!(euler_specialize(&x).unwrap().is_zero());
        }
    }

    #[test]
    fn poles_cancel_across_terms() {
        // 1/(1-L^-1 T) - 1/(1-L^-2 T^2) = L^-1 T/(1 - L^-2 T^2), which
        // specializes to zero order, no pole in total after multiplying by L-1
        let a = expr(LaurentPoly::one(), &[(1, 1)]);
        let b = expr(LaurentPoly::one(), &[(1, 1), (1, 1)]);
        let c = expr(LaurentPoly::monomial(1, -1, 1), &[(1, 1), (1, 1)]);
        // a - b + c = (1 - L^-1 T - 1 + L^-1 T)/(..)^2 = 0
        let total = a.sub(&b).add(&c);
        assert!(euler_specialize(&total).unwrap().is_zero());
    }

    proptest! {
        #[test]
        fn additive(a1 in 1i64..5, b1 in 0i64..5, a2 in 1i64..5, b2 in 0i64..5, l in -3i64..3, t in 0i64..3) {
            let x = expr(LaurentPoly::l_minus_one().shift(l, t), &[(a1, b1)]);
            let y = expr(LaurentPoly::l_minus_one().pow(2), &[(a1, b1), (a2, b2)]);
            let sum = euler_specialize(&x.add(&y)).unwrap();
            prop_assert_eq!(sum, euler_specialize(&x).unwrap() + euler_specialize(&y).unwrap());
        }
    }
}

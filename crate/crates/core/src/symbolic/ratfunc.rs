//! Exact univariate rational functions in `s`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::{BigRational, rat};
use crate::error::{Error, Result};

/// A reduced fraction `num/den` of polynomials over the rationals.
///
/// Canonical form: `gcd(num, den) = 1` and `den` is monic, so structural
/// equality coincides with equality of functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RationalFunction {
                num,
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_rem(&g).unwrap().0, den.div_rem(&g).unwrap().0)
        };
        let lc = den.leading().expect("nonzero denominator").clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RationalFunction { num, den }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        RationalFunction {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::constant(BigRational::new(n.into(), d.into()))
    }

    pub fn s() -> Self {
        Self::from_poly(Poly::s())
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }

    /// `1 / (a + b*s)`.
    pub fn inverse_linear(a: BigRational, b: BigRational) -> Result<Self> {
        Self::new(Poly::one(), Poly::linear(a, b))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
        .renormalized_if_zero()
    }

    fn renormalized_if_zero(self) -> Self {
        if self.num.is_zero() {
            Self::zero()
        } else {
            self
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn pow(&self, exp: i32) -> Result<Self> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let e = exp.unsigned_abs();
        Ok(RationalFunction {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    /// Value at `x`, or `None` if `x` is a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// The composition `x(alpha*s + beta)`.
    pub fn substitute_affine(&self, alpha: &BigRational, beta: &BigRational) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::ZeroSlope);
        }
        Self::new(
            self.num.compose_affine(alpha, beta),
            self.den.compose_affine(alpha, beta),
        )
    }

    /// Rational roots of the denominator, with multiplicity, together with
    /// the leftover factor that has no rational root.
    pub fn poles(&self) -> (Vec<(BigRational, u32)>, Poly) {
        super::render::rational_roots(&self.den)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({})", super::render::canonical(self, "s"))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render::canonical(self, "s"))
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::reduce(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::reduce(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by the zero function; see [`RationalFunction::checked_div`].
impl<'a> Div<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl std::iter::Sum for RationalFunction {
    fn sum<I: Iterator<Item = RationalFunction>>(iter: I) -> Self {
        iter.fold(RationalFunction::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::ratio;

    fn lin(a: i64, b: i64) -> RationalFunction {
        RationalFunction::inverse_linear(rat(a), rat(b)).unwrap()
    }

    #[test]
    fn common_denominator_collapses() {
        let x = lin(1, 1);
        let y = &RationalFunction::s() * &lin(1, 1);
        assert_eq!(&x + &y, RationalFunction::one());
    }

    #[test]
    fn suspension_table_entry_is_one_at_zero() {
        let z = RationalFunction::new(
            Poly::from_i64(&[11, 10]),
            &Poly::from_i64(&[11, 30]) * &Poly::from_i64(&[1, 1]),
        )
        .unwrap();
        assert_eq!(z.eval(&rat(0)), Some(rat(1)));
    }

    #[test]
    fn substitution_examples() {
        let x = lin(11, 30);
        let shifted = x.substitute_affine(&rat(1), &ratio(1, 10)).unwrap();
        assert_eq!(shifted, lin(14, 30));
        for v in 0..3 {
            let v = rat(v);
            assert_eq!(shifted.eval(&v), x.eval(&(&v + ratio(1, 10))));
        }
        let s = RationalFunction::s();
        assert_eq!(s.substitute_affine(&rat(1), &rat(0)).unwrap(), s);

        let half = lin(22, 54);
        let got = half.substitute_affine(&rat(1), &ratio(1, 84)).unwrap();
        let want = RationalFunction::new(Poly::from_i64(&[14]), Poly::from_i64(&[317, 756])).unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            RationalFunction::one().checked_div(&RationalFunction::zero()),
            Err(Error::DivisionByZero)
        );
        assert!(RationalFunction::new(Poly::one(), Poly::zero()).is_err());
        assert!(RationalFunction::one().substitute_affine(&rat(0), &rat(1)).is_err());
    }

    #[test]
    fn canonical_form_is_monic_and_reduced() {
        let f = RationalFunction::new(
            &Poly::from_i64(&[2, 2]) * &Poly::from_i64(&[3, 1]),
            &Poly::from_i64(&[4, 4]) * &Poly::from_i64(&[0, 5]),
        )
        .unwrap();
        assert_eq!(f.den().leading(), Some(&rat(1)));
        assert_eq!(f.den().degree(), Some(1));
        assert_eq!(f.num().degree(), Some(1));
    }
}

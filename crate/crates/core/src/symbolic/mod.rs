//! Exact symbolic layer: rational functions in `s`, Laurent polynomials in
//! `L` and `T`, factored motivic expressions and their Euler specialization.

pub mod euler;
pub mod laurent;
pub mod motivic;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod render;

pub use num_rational::BigRational;

pub use euler::euler_specialize;
pub use laurent::LaurentPoly;
pub use motivic::{DenomFactor, MotivicExpression, MotivicTerm, TSeries};
pub use parse::parse_rational_function;
pub use poly::Poly;
pub use ratfunc::RationalFunction;
pub use render::{canonical, latex};

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

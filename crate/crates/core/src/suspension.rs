//! Suspension formulas: the topological zeta functions of `G = z^p (z^Q - f)`
//! and of `F = z^Q - f` (plain and twisted) in terms of the twisted zeta
//! functions of `f`, the matrix form of the latter, pole candidates, and the
//! comparison with the older `(e+1) phi(e)` formula.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::arith::{divisors, euler_phi, jordan_totient, twist_reduction};
use crate::error::{Error, Result};
use crate::symbolic::{rat, ratio, BigRational, Poly, RationalFunction};
use crate::zeta::ZetaBundle;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuspensionParams {
    pub q: i64,
    pub p: i64,
    pub nuz: i64,
    /// Dimension of the source of `f`; only the pole bounds use it.
    pub d: i64,
}

impl SuspensionParams {
    pub fn new(q: i64, p: i64, nuz: i64, d: i64) -> Result<Self> {
        if q < 1 {
            return Err(Error::Invalid("Q must be ≥ 1".into()));
        }
        if p < 0 {
            return Err(Error::Invalid("p must be ≥ 0".into()));
        }
        if nuz < 1 {
            return Err(Error::Invalid("nu_z must be ≥ 1".into()));
        }
        if d < 1 {
            return Err(Error::Invalid("d must be ≥ 1".into()));
        }
        Ok(SuspensionParams { q, p, nuz, d })
    }

    /// Parameters of `F = z^Q - f` with the form `dz`.
    pub fn f_case(q: i64, d: i64) -> Result<Self> {
        Self::new(q, 0, 1, d)
    }
}

fn check_q(q: i64) -> Result<u64> {
    if q < 1 {
        Err(Error::Invalid("Q must be ≥ 1".into()))
    } else {
        Ok(q as u64)
    }
}

fn j2(e: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(jordan_totient(2, e)))
}

/// Divisors of `Q` other than 1.
fn proper_twists(q: u64) -> impl Iterator<Item = u64> {
    divisors(q).into_iter().filter(|&e| e != 1)
}

/// `s -> s + 1/Q`.
fn at_t(z: &RationalFunction, q: i64) -> Result<RationalFunction> {
    z.substitute_affine(&rat(1), &ratio(1, q))
}

/// `1/t = Q/(Q s + 1)`.
fn inv_t(q: i64) -> RationalFunction {
    RationalFunction::inverse_linear(ratio(1, q), rat(1)).expect("nonzero slope")
}

fn s_over_s_plus_1() -> RationalFunction {
    let s = RationalFunction::s();
    &s * &RationalFunction::inverse_linear(rat(1), rat(1)).expect("nonzero slope")
}

/// Twists of `f` read by [`suspend_g`] and [`suspend_f_untwisted`]: the
/// divisors of `Q`.
pub fn required_twists_untwisted(q: i64) -> Result<BTreeSet<u64>> {
    Ok(divisors(check_q(q)?).into_iter().collect())
}

/// Twists of `f` read by [`suspend_f_twisted`] at `l`.
pub fn required_twists(q: i64, l: u64) -> Result<BTreeSet<u64>> {
    let qu = check_q(q)?;
    if l == 0 {
        return Err(Error::Invalid("twist order must be positive".into()));
    }
    if qu % l == 0 {
        return required_twists_untwisted(q);
    }
    let g = twist_reduction(qu, l).generator;
    let mut out: BTreeSet<u64> = divisors(qu).into_iter().map(|e| e.lcm(&g)).collect();
    out.insert(l);
    Ok(out)
}

/// `Z_top(z^p (z^Q - f), s)` from the twisted zeta functions of `f`.
pub fn suspend_g(bundle: &ZetaBundle, params: &SuspensionParams) -> Result<RationalFunction> {
    let SuspensionParams { q, p, nuz, .. } = *params;
    let qu = check_q(q)?;
    let alpha = ratio(q + p, q);
    let beta = ratio(nuz, q);
    let at_r = |e: u64| bundle.get(e)?.substitute_affine(&alpha, &beta);
    // Q r = (Q+p) s + nu_z
    let inv_qr = RationalFunction::inverse_linear(rat(nuz), rat(q + p))?;
    let inv_r = inv_qr.scale(&rat(q));
    let inv_nuz_ps = RationalFunction::inverse_linear(rat(nuz), rat(p))?;
    let ss1 = s_over_s_plus_1();
    let u = &(&(&RationalFunction::s() * &inv_r) * &inv_nuz_ps) - &ss1.scale(&ratio(1, q));
    let mut sum = RationalFunction::zero();
    for e in proper_twists(qu) {
        sum = &sum + &at_r(e)?.scale(&(j2(e) / rat(q)));
    }
    Ok(&(&inv_qr + &(&u * &at_r(1)?)) - &(&ss1 * &sum))
}

/// `Z_top(z^Q - f, s)`.
pub fn suspend_f_untwisted(bundle: &ZetaBundle, q: i64) -> Result<RationalFunction> {
    let qu = check_q(q)?;
    let it = inv_t(q);
    let s_plus_1 = RationalFunction::from_poly(Poly::from_i64(&[1, 1]));
    let inv_s = RationalFunction::s().recip()?;
    // (s+1)/(Q s t)
    let first = (&(&s_plus_1 * &inv_s) * &it).scale(&ratio(1, q));
    // (t+1)/t = 1 + 1/t
    let t1_over_t = &RationalFunction::one() + &it;
    let second = (&t1_over_t * &at_t(&bundle.get(1)?, q)?).scale(&ratio(q - 1, q));
    let mut sum = RationalFunction::zero();
    for e in proper_twists(qu) {
        sum = &sum + &at_t(&bundle.get(e)?, q)?.scale(&(j2(e) / rat(q)));
    }
    Ok(&s_over_s_plus_1() * &(&(&first + &second) - &sum))
}

/// `Z_top^(l)(z^Q - f, s)`.
pub fn suspend_f_twisted(bundle: &ZetaBundle, q: i64, l: u64) -> Result<RationalFunction> {
    let qu = check_q(q)?;
    if l == 0 {
        return Err(Error::Invalid("twist order must be positive".into()));
    }
    if l == 1 {
        return suspend_f_untwisted(bundle, q);
    }
    let zt = |e: u64| at_t(&bundle.get(e)?, q);
    if qu % l == 0 {
        let it = inv_t(q);
        let first = it.scale(&ratio(1, q));
        // (t+1)/(Q t) = (1 + 1/t)/Q
        let w = (&RationalFunction::one() + &it).scale(&ratio(1, q));
        let mut sum = RationalFunction::zero();
        for e in proper_twists(qu) {
            sum = &sum + &zt(e)?.scale(&(j2(e) / rat(q)));
        }
        Ok(&(&(&first + &zt(l)?) - &(&w * &zt(1)?)) - &sum)
    } else {
        let g = twist_reduction(qu, l).generator;
        let mut sum = RationalFunction::zero();
        for e in divisors(qu) {
            sum = &sum + &zt(e.lcm(&g))?.scale(&(j2(e) / rat(q)));
        }
        Ok(&zt(l)? - &sum)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuspensionMatrix {
    /// Divisors of `Q` in increasing order, so 1 comes first.
    pub divisors: Vec<u64>,
    /// `Q * Id - J`, each row of `J` being `(J_2(l_1), ..., J_2(l_k))`.
    pub b: Vec<Vec<i64>>,
}

pub fn suspension_matrix(q: i64) -> Result<SuspensionMatrix> {
    let divs = divisors(check_q(q)?);
    let b = (0..divs.len())
        .map(|i| {
            divs.iter()
                .enumerate()
                .map(|(j, &e)| i64::from(i == j) * q - jordan_totient(2, e) as i64)
                .collect()
        })
        .collect();
    Ok(SuspensionMatrix { divisors: divs, b })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixIdentity {
    pub matrix: SuspensionMatrix,
    /// `Q * ZF(s)`.
    pub lhs: Vec<RationalFunction>,
    /// `(1/t) A + B Zf(t)`.
    pub rhs: Vec<RationalFunction>,
    pub equal: bool,
}

/// Both sides of `Q ZF(s) = (1/t) A + B Zf(t)`.
pub fn suspension_matrix_identity(bundle: &ZetaBundle, q: i64) -> Result<MatrixIdentity> {
    let matrix = suspension_matrix(q)?;
    let it = inv_t(q);
    let s_plus_1 = RationalFunction::from_poly(Poly::from_i64(&[1, 1]));
    let s1_over_s = &s_plus_1 * &RationalFunction::s().recip()?;
    let t1_over_t = &RationalFunction::one() + &it;
    let mut zf_big = Vec::new();
    let mut zf_small = Vec::new();
    let mut a = Vec::new();
    for &l in &matrix.divisors {
        let zl = at_t(&bundle.get(l)?, q)?;
        if l == 1 {
            zf_big.push(&s1_over_s * &suspend_f_untwisted(bundle, q)?);
            zf_small.push(&t1_over_t * &zl);
            a.push(s1_over_s.clone());
        } else {
            zf_big.push(suspend_f_twisted(bundle, q, l)?);
            zf_small.push(zl);
            a.push(RationalFunction::one());
        }
    }
    let lhs: Vec<RationalFunction> = zf_big.iter().map(|z| z.scale(&rat(q))).collect();
    let rhs: Vec<RationalFunction> = matrix
        .b
        .iter()
        .zip(&a)
        .map(|(row, ai)| {
            row.iter()
                .zip(&zf_small)
                .fold(&it * ai, |acc, (&bij, z)| &acc + &z.scale(&rat(bij)))
        })
        .collect();
    let equal = lhs == rhs;
    Ok(MatrixIdentity {
        matrix,
        lhs,
        rhs,
        equal,
    })
}

/// Candidate poles of `Z_top(G)` for `omega = x^nu z^nu_z dx/x dz/z`, given
/// the poles of `Z_top(f)`.
pub fn pole_candidates_g(
    poles_of_f: &BTreeSet<BigRational>,
    q: i64,
    p: i64,
    nuz: i64,
) -> BTreeSet<BigRational> {
    let mut out = BTreeSet::new();
    out.insert(rat(-1));
    out.insert(ratio(-nuz, q + p));
    if p > 0 {
        out.insert(ratio(-nuz, p));
    }
    for r in poles_of_f {
        out.insert((r * rat(q) - rat(nuz)) / rat(q + p));
    }
    out
}

/// Candidate poles of `Z_top(G, z^d dx dz)`: the case `nu_z = d + 1`.
pub fn pole_bound_g(poles_of_f: &BTreeSet<BigRational>, params: &SuspensionParams) -> BTreeSet<BigRational> {
    pole_candidates_g(poles_of_f, params.q, params.p, params.d + 1)
}

/// Candidate poles of `Z_top(F)`: `{-1, -1/Q}` and the poles of `f`
/// shifted by `-1/Q`.
pub fn pole_bound_f(poles_of_f: &BTreeSet<BigRational>, q: i64) -> BTreeSet<BigRational> {
    let mut out = BTreeSet::new();
    out.insert(rat(-1));
    out.insert(ratio(-1, q));
    for r in poles_of_f {
        out.insert(r - ratio(1, q));
    }
    out
}

/// Rational poles of `z`; fails if the denominator has a factor without
/// rational roots.
pub fn rational_poles(z: &RationalFunction) -> Result<BTreeSet<BigRational>> {
    let (roots, rest) = z.poles();
    if !rest.is_constant() {
        return Err(Error::Invalid(format!(
            "denominator has the factor {rest} with no rational root"
        )));
    }
    Ok(roots.into_iter().map(|(r, _)| r).collect())
}

/// Union of the rational poles of the given bundle entries.
pub fn bundle_poles(bundle: &ZetaBundle, twists: impl IntoIterator<Item = u64>) -> Result<BTreeSet<BigRational>> {
    let mut out = BTreeSet::new();
    for e in twists {
        out.extend(rational_poles(&bundle.get(e)?)?);
    }
    Ok(out)
}

/// Whether every pole of `z` is rational and lies in `candidates`.
pub fn poles_within(z: &RationalFunction, candidates: &BTreeSet<BigRational>) -> bool {
    rational_poles(z).is_ok_and(|ps| ps.is_subset(candidates))
}

/// The older suspension formula with weights `(e+1) phi(e)`, evaluated as
/// stated.
pub fn legacy_formula(bundle: &ZetaBundle, q: i64) -> Result<RationalFunction> {
    let qu = check_q(q)?;
    let it = inv_t(q);
    let ss1 = s_over_s_plus_1();
    let t1_over_t = &RationalFunction::one() + &it;
    let main = (&(&ss1 * &t1_over_t) * &at_t(&bundle.get(1)?, q)?).scale(&ratio(q - 1, q));
    let mut sum = RationalFunction::zero();
    for e in proper_twists(qu) {
        let w = BigRational::new(BigInt::from((e + 1) * euler_phi(e)), BigInt::from(q));
        sum = &sum + &at_t(&bundle.get(e)?, q)?.scale(&w);
    }
    Ok(&(&main - &(&ss1 * &sum)) + &it.scale(&ratio(1, q)))
}

/// `Z_top(x^Q + y^Q + z^Q)` from the non-degenerate Newton polyhedron.
pub fn fermat_nondegenerate(q: i64) -> RationalFunction {
    let num = Poly::from_i64(&[3, (q - 2) * (q - 1) + 1]);
    let den = &Poly::from_i64(&[1, 1]) * &Poly::from_i64(&[3, q]);
    RationalFunction::new(num, den).expect("nonzero denominator")
}

/// The non-degenerate value minus the older formula on the Fermat family.
pub fn fermat_discrepancy(q: i64) -> Result<RationalFunction> {
    if q < 2 {
        return Err(Error::Invalid("Q must be ≥ 2".into()));
    }
    let weight: i64 = proper_twists(q as u64)
        .map(|e| ((e + 1) * euler_phi(e)) as i64)
        .sum();
    let c = (q + 1) * (q - 1) - weight;
    let den = &(&Poly::from_i64(&[1, 1]) * &Poly::from_i64(&[3, q]))
        .scale(&rat(q));
    let num = Poly::from_i64(&[0, (q - 2) * c]);
    RationalFunction::new(num, den.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::parse_rational_function;

    fn rf(s: &str) -> RationalFunction {
        parse_rational_function(s, "s").unwrap()
    }

    fn fermat_bundle(q: i64) -> ZetaBundle {
        let mut pairs = vec![(1, rf(&format!("(2+({})*s)/(({q}*s+2)*(s+1))", 2 - q)))];
        for e in proper_twists(q as u64) {
            pairs.push((e, rf(&format!("({})/({q}*s+2)", 2 - q))));
        }
        ZetaBundle::from_pairs(pairs).unwrap()
    }

    #[test]
    fn matrix_for_ten() {
        let m = suspension_matrix(10).unwrap();
        assert_eq!(m.divisors, vec![1, 2, 5, 10]);
        assert_eq!(
            m.b,
            vec![
                vec![9, -3, -24, -72],
                vec![-1, 7, -24, -72],
                vec![-1, -3, -14, -72],
                vec![-1, -3, -24, -62],
            ]
        );
        assert_eq!(suspension_matrix(7).unwrap().b, vec![vec![6, -48], vec![-1, 7 - 48]]);
        assert_eq!(suspension_matrix(1).unwrap().b, vec![vec![0]]);
    }

    #[test]
    fn fermat_family() {
        for q in 2..=12 {
            let b = fermat_bundle(q);
            let z = suspend_f_untwisted(&b, q).unwrap();
            assert_eq!(z, fermat_nondegenerate(q), "Q = {q}");
            let legacy = legacy_formula(&b, q).unwrap();
            assert_eq!(&z - &legacy, fermat_discrepancy(q).unwrap(), "Q = {q}");
            let prime = crate::arith::factorize(q as u64).len() == 1 && crate::arith::factorize(q as u64)[0].1 == 1;
            assert_eq!(z == legacy, prime, "Q = {q}");
        }
        assert_eq!(fermat_discrepancy(4).unwrap(), rf("s/((s+1)*(4*s+3))"));
    }

    #[test]
    fn g_reduces_to_f() {
        for q in 1..=8 {
            let b = fermat_bundle(q.max(2));
            let g = suspend_g(&b, &SuspensionParams::f_case(q, 2).unwrap()).unwrap();
            assert_eq!(g, suspend_f_untwisted(&b, q).unwrap());
        }
    }

    #[test]
    fn smooth_q_one() {
        let b = ZetaBundle::from_pairs([(1, rf("1/(s+1)"))]).unwrap();
        assert_eq!(suspend_f_untwisted(&b, 1).unwrap(), rf("1/(s+1)"));
        assert!(suspension_matrix_identity(&b, 1).unwrap().equal);
    }

    #[test]
    fn required_sets() {
        assert_eq!(required_twists(10, 3).unwrap(), [3, 6, 15, 30].into());
        assert_eq!(required_twists(10, 2).unwrap(), [1, 2, 5, 10].into());
        let lvp = required_twists(84, 27).unwrap();
        assert!(lvp.contains(&27) && lvp.contains(&54) && lvp.contains(&756));
    }

    #[test]
    fn pole_sets() {
        let poles: BTreeSet<BigRational> = [rat(-1), ratio(-11, 30)].into();
        let f = pole_bound_f(&poles, 10);
        assert!(f.contains(&ratio(-7, 15)));
        assert!(f.contains(&ratio(-1, 10)));
        let params = SuspensionParams::new(10, 0, 3, 2).unwrap();
        let g = pole_bound_g(&poles, &params);
        assert_eq!(g, [rat(-1), ratio(-3, 10), ratio(-13, 10), ratio(-2, 3)].into());
        let empty = pole_bound_g(&BTreeSet::new(), &params);
        assert_eq!(empty, [rat(-1), ratio(-3, 10)].into());
        assert!(poles_within(&rf("1/((15*s+7)*(s+1))"), &f));
        assert!(!poles_within(&rf("1/(s^2+1)"), &f));
    }
}

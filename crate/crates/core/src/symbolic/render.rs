//! Text and LaTeX renderings of polynomials and rational functions.
//!
//! Canonical text: the numerator is an integer polynomial, the denominator an
//! integer constant times a product of primitive integer factors (one per
//! rational root, plus whatever has no rational root). Factors are sorted by
//! degree and then by their rendered text.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Poly;
use super::ratfunc::RationalFunction;
use super::BigRational;

/// Integer coefficients, ascending; descending order is used for display
/// unless the leading coefficient is negative.
fn int_poly_text(coeffs: &[BigInt], var: &str, latex_space: Option<bool>) -> String {
    let terms: Vec<(usize, &BigInt)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    if terms.is_empty() {
        return "0".to_string();
    }
    let lead_negative = terms.last().map(|(_, c)| c.is_negative()).unwrap_or(false);
    let ordered: Vec<(usize, &BigInt)> = if lead_negative {
        terms
    } else {
        terms.into_iter().rev().collect()
    };
    let mut out = String::new();
    for (idx, (deg, c)) in ordered.iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&monomial_text(&abs, *deg, var, latex_space));
    }
    out
}

fn monomial_text(abs: &BigInt, deg: usize, var: &str, latex_space: Option<bool>) -> String {
    let power = match (deg, latex_space) {
        (0, _) => String::new(),
        (1, _) => var.to_string(),
        (d, None) => format!("{var}^{d}"),
        (d, Some(_)) => format!("{var}^{{{d}}}"),
    };
    if deg == 0 {
        return abs.to_string();
    }
    if abs.is_one() {
        return power;
    }
    match latex_space {
        None => format!("{abs}*{power}"),
        Some(true) => format!("{abs} {power}"),
        Some(false) => format!("{abs}{power}"),
    }
}

/// Plain rendering of a rational-coefficient polynomial, e.g. `7/15 + s`.
pub fn poly_text(p: &Poly, var: &str) -> String {
    let (content, prim) = p.primitive_integer();
    if p.is_zero() {
        return "0".into();
    }
    let body = int_poly_text(&prim, var, None);
    if content.is_one() {
        body
    } else if prim.len() == 1 {
        content.to_string()
    } else {
        format!("{content}*({body})")
    }
}

/// Evaluate `q^n * P(p/q)` for an integer polynomial.
fn homogeneous_eval(coeffs: &[BigInt], p: &BigInt, q: &BigInt) -> BigInt {
    let n = coeffs.len() - 1;
    let mut acc = BigInt::zero();
    let mut ppow = BigInt::one();
    let qpows: Vec<BigInt> = (0..=n)
        .scan(BigInt::one(), |st, _| {
            let v = st.clone();
            *st *= q;
            Some(v)
        })
        .collect();
    for (i, c) in coeffs.iter().enumerate() {
        acc += c * &ppow * &qpows[n - i];
        ppow *= p;
    }
    acc
}

/// Divide an integer polynomial by `q*s - p` (exact).
fn deflate(coeffs: &[BigInt], p: &BigInt, q: &BigInt) -> Vec<BigInt> {
    let n = coeffs.len() - 1;
    let mut out = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for i in (1..=n).rev() {
        let c = &coeffs[i] + &carry;
        let b = c.div_floor(q);
        debug_assert!((&b * q) == c);
        carry = &b * p;
        out[i - 1] = b;
    }
    out
}

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut m = n.abs().to_u128()?;
    if m == 0 {
        return None;
    }
    let mut primes: Vec<(u128, u32)> = Vec::new();
    let mut d = 2u128;
    while d * d <= m && d <= 1_000_000 {
        if m % d == 0 {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            primes.push((d, e));
        }
        d += 1;
    }
    if m > 1 {
        primes.push((m, 1));
    }
    let mut divs = vec![1u128];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for &dv in &divs {
            let mut pk = 1u128;
            for _ in 0..=e {
                next.push(dv * pk);
                pk *= p;
            }
        }
        divs = next;
    }
    divs.sort_unstable();
    Some(divs.into_iter().map(BigInt::from).collect())
}

/// Rational roots of `poly` with multiplicities, plus the monic cofactor
/// carrying no rational root.
pub fn rational_roots(poly: &Poly) -> (Vec<(BigRational, u32)>, Poly) {
    let mut roots: Vec<(BigRational, u32)> = Vec::new();
    if poly.is_zero() || poly.is_constant() {
        return (roots, poly.monic());
    }
    let (_, mut coeffs) = poly.primitive_integer();
    let push = |r: BigRational, roots: &mut Vec<(BigRational, u32)>| {
        if let Some(e) = roots.iter_mut().find(|(x, _)| *x == r) {
            e.1 += 1;
        } else {
            roots.push((r, 1));
        }
    };
    while coeffs.len() > 1 && coeffs[0].is_zero() {
        coeffs.remove(0);
        push(BigRational::zero(), &mut roots);
    }
    'outer: while coeffs.len() > 1 {
        let (Some(ps), Some(qs)) = (
            small_divisors(&coeffs[0]),
            small_divisors(coeffs.last().unwrap()),
        ) else {
            break;
        };
        for q in &qs {
            for p in &ps {
                for p in [p.clone(), -p.clone()] {
                    if !p.gcd(q).is_one() {
                        continue;
                    }
                    if homogeneous_eval(&coeffs, &p, q).is_zero() {
                        coeffs = deflate(&coeffs, &p, q);
                        push(BigRational::new(p, q.clone()), &mut roots);
                        continue 'outer;
                    }
                }
            }
        }
        break;
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    let rest = Poly::from_coeffs(coeffs.into_iter().map(BigRational::from_integer).collect());
    (roots, rest.monic())
}

struct Factored {
    numerator: Vec<BigInt>,
    den_constant: BigInt,
    /// (primitive integer factor, multiplicity), sorted.
    factors: Vec<(Vec<BigInt>, u32)>,
}

fn factor_for_display(x: &RationalFunction, var: &str) -> Factored {
    let (roots, rest) = rational_roots(x.den());
    let mut constant = BigRational::one();
    let mut factors: Vec<(Vec<BigInt>, u32)> = Vec::new();
    for (r, m) in roots {
        let q = r.denom().clone();
        let p = r.numer().clone();
        constant /= BigRational::from_integer(q.pow(m));
        factors.push((vec![-p, q], m));
    }
    if !rest.is_constant() {
        let (c, prim) = rest.primitive_integer();
        constant *= c;
        factors.push((prim, 1));
    }
    let (nc, nprim) = x.num().primitive_integer();
    let total = if x.num().is_zero() {
        BigRational::zero()
    } else {
        nc / constant
    };
    let numerator: Vec<BigInt> = nprim.iter().map(|c| c * total.numer()).collect();
    factors.sort_by(|a, b| {
        (a.0.len(), int_poly_text(&a.0, var, None)).cmp(&(b.0.len(), int_poly_text(&b.0, var, None)))
    });
    Factored {
        numerator: if x.num().is_zero() { vec![] } else { numerator },
        den_constant: total.denom().clone(),
        factors,
    }
}

fn is_bare_monomial(coeffs: &[BigInt]) -> bool {
    coeffs.iter().filter(|c| !c.is_zero()).count() == 1
}

/// Canonical text, e.g. `(3*s + 7)/((15*s + 7)*(s + 1))`.
pub fn canonical(x: &RationalFunction, var: &str) -> String {
    let f = factor_for_display(x, var);
    let num_text = int_poly_text(&f.numerator, var, None);
    let mut parts: Vec<String> = Vec::new();
    if !f.den_constant.is_one() {
        parts.push(f.den_constant.to_string());
    }
    for (fac, m) in &f.factors {
        let body = int_poly_text(fac, var, None);
        let base = if is_bare_monomial(fac) {
            body
        } else {
            format!("({body})")
        };
        parts.push(if *m == 1 { base } else { format!("{base}^{m}") });
    }
    if parts.is_empty() {
        return num_text;
    }
    let num_part = if is_bare_monomial(&f.numerator) || f.numerator.is_empty() {
        num_text
    } else {
        format!("({num_text})")
    };
    let single_simple = parts.len() == 1
        && (f.factors.is_empty() || (f.factors[0].1 == 1));
    if single_simple {
        format!("{num_part}/{}", parts[0])
    } else {
        format!("{num_part}/({})", parts.join("*"))
    }
}

/// LaTeX rendering, e.g. `\frac{3s + 7}{(15 s + 7)(s + 1)}`.
pub fn latex(x: &RationalFunction, var: &str) -> String {
    let f = factor_for_display(x, var);
    let num_text = int_poly_text(&f.numerator, var, Some(false));
    if f.factors.is_empty() && f.den_constant.is_one() {
        return num_text;
    }
    let mut den = String::new();
    if !f.den_constant.is_one() {
        den.push_str(&f.den_constant.to_string());
    }
    let lone = f.factors.len() == 1 && f.factors[0].1 == 1 && f.den_constant.is_one();
    for (fac, m) in &f.factors {
        let body = int_poly_text(fac, var, Some(true));
        let base = if lone || is_bare_monomial(fac) {
            body
        } else {
            format!("({body})")
        };
        if *m == 1 {
            den.push_str(&base);
        } else if is_bare_monomial(fac) && !lone {
            den.push_str(&format!("{base}^{{{m}}}"));
        } else {
            let wrapped = if base.starts_with('(') { base } else { format!("({base})") };
            den.push_str(&format!("{wrapped}^{{{m}}}"));
        }
    }
    format!("\\frac{{{num_text}}}{{{den}}}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{rat, ratio};

    fn rf(num: &[i64], dens: &[&[i64]]) -> RationalFunction {
        let den = dens
            .iter()
            .fold(Poly::one(), |acc, d| &acc * &Poly::from_i64(d));
        RationalFunction::new(Poly::from_i64(num), den).unwrap()
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(
            canonical(&rf(&[7, 3], &[&[7, 15], &[1, 1]]), "s"),
            "(3*s + 7)/((15*s + 7)*(s + 1))"
        );
        assert_eq!(canonical(&rf(&[1], &[&[1, 1], &[1, 1]]), "s"), "1/((s + 1)^2)");
        assert_eq!(canonical(&rf(&[8], &[&[317, 756]]), "s"), "8/(756*s + 317)");
        assert_eq!(canonical(&rf(&[-5], &[&[14, 30]]), "s"), "-5/(2*(15*s + 7))");
        assert_eq!(
            canonical(&rf(&[2, -3], &[&[2, 5], &[1, 1]]), "s"),
            "(2 - 3*s)/((5*s + 2)*(s + 1))"
        );
        assert_eq!(canonical(&rf(&[0, 1], &[&[3, 4], &[1, 1]]), "s"), "s/((4*s + 3)*(s + 1))");
        assert_eq!(canonical(&RationalFunction::zero(), "s"), "0");
        assert_eq!(canonical(&RationalFunction::from_ratio(-3, 4), "s"), "-3/4");
        assert_eq!(canonical(&rf(&[1, 0, 2], &[]), "t"), "2*t^2 + 1");
    }

    #[test]
    fn latex_examples() {
        assert_eq!(
            latex(&rf(&[7, 3], &[&[7, 15], &[1, 1]]), "s"),
            "\\frac{3s + 7}{(15 s + 7)(s + 1)}"
        );
        assert_eq!(latex(&rf(&[1], &[&[1, 1], &[1, 1]]), "s"), "\\frac{1}{(s + 1)^{2}}");
        assert_eq!(latex(&rf(&[1], &[&[14, 30]]), "s"), "\\frac{1}{2(15 s + 7)}");
    }

    #[test]
    fn roots_with_multiplicity() {
        let p = &(&Poly::from_i64(&[7, 15]) * &Poly::from_i64(&[1, 1])) * &Poly::from_i64(&[1, 1]);
        let (roots, rest) = rational_roots(&p);
        assert_eq!(roots, vec![(rat(-1), 2), (ratio(-7, 15), 1)]);
        assert!(rest.is_constant());
        let (roots, rest) = rational_roots(&Poly::from_i64(&[1, 0, 1]));
        assert!(roots.is_empty());
        assert_eq!(rest.degree(), Some(2));
    }
}

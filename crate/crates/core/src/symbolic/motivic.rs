//! Factored elements of the localized power-series module in `L` and `T`.
//!
//! A [`MotivicExpression`] is a finite sum of terms `numer / prod (1 - L^(-a) T^b)`.
//! Denominator factors are kept as exponent pairs and never expanded, which
//! preserves the shape needed by the Euler specialization.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// The factor `1 - L^(-a) T^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DenomFactor {
    pub a: i64,
    pub b: i64,
}

impl DenomFactor {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if b < 0 {
            return Err(Error::Invalid(format!("negative T exponent {b} in denominator factor")));
        }
        if a == 0 && b == 0 {
            return Err(Error::DegenerateFactor);
        }
        Ok(DenomFactor { a, b })
    }

    pub fn as_poly(&self) -> LaurentPoly {
        &LaurentPoly::one() - &LaurentPoly::monomial(1, -self.a, self.b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotivicTerm {
    pub numer: LaurentPoly,
    /// Sorted multiset of denominator factors.
    pub factors: Vec<DenomFactor>,
}

impl MotivicTerm {
    pub fn new(numer: LaurentPoly, mut factors: Vec<DenomFactor>) -> Self {
        factors.sort();
        MotivicTerm { numer, factors }
    }

    /// `numer / (1 - L^(-a) T^b)` with the pair validated.
    pub fn simple(numer: LaurentPoly, a: i64, b: i64) -> Result<Self> {
        Ok(Self::new(numer, vec![DenomFactor::new(a, b)?]))
    }

    pub fn polynomial(numer: LaurentPoly) -> Self {
        Self::new(numer, Vec::new())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MotivicExpression {
    pub terms: Vec<MotivicTerm>,
}

/// Truncated `T`-expansion: `coeffs[n]` is the coefficient of `T^n`, a
/// Laurent polynomial in `L` stored as exponent -> coefficient.
///
/// With `l_floor = Some(f)` the coefficients are exact for `L`-exponents
/// `>= f` and nothing below `f` is stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSeries {
    pub t_bound: usize,
    pub l_floor: Option<i64>,
    pub coeffs: Vec<BTreeMap<i64, BigInt>>,
}

impl TSeries {
    pub fn zero(t_bound: usize, l_floor: Option<i64>) -> Self {
        TSeries {
            t_bound,
            l_floor,
            coeffs: vec![BTreeMap::new(); t_bound + 1],
        }
    }

    pub fn add_term(&mut self, t: usize, l: i64, c: BigInt) {
        if t > self.t_bound || c.is_zero() || self.l_floor.is_some_and(|f| l < f) {
            return;
        }
        let slot = &mut self.coeffs[t];
        let e = slot.entry(l).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            slot.remove(&l);
        }
    }

    pub fn add_assign(&mut self, other: &TSeries) {
        for (t, m) in other.coeffs.iter().enumerate() {
            for (&l, c) in m {
                self.add_term(t, l, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(BTreeMap::is_empty)
    }

    fn mul_trunc(&self, other: &TSeries, floor: Option<i64>) -> TSeries {
        let mut out = TSeries::zero(self.t_bound, floor);
        for (t1, m1) in self.coeffs.iter().enumerate() {
            if m1.is_empty() {
                continue;
            }
            for (t2, m2) in other.coeffs.iter().enumerate().take(self.t_bound + 1 - t1) {
                for (&l1, c1) in m1 {
                    for (&l2, c2) in m2 {
                        out.add_term(t1 + t2, l1 + l2, c1 * c2);
                    }
                }
            }
        }
        out
    }
}

impl MotivicExpression {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_term(term: MotivicTerm) -> Self {
        MotivicExpression { terms: vec![term] }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self::from_term(MotivicTerm::polynomial(p))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        MotivicExpression { terms }
    }

    pub fn neg(&self) -> Self {
        MotivicExpression {
            terms: self
                .terms
                .iter()
                .map(|t| MotivicTerm::new(-&t.numer, t.factors.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let mut f = a.factors.clone();
                f.extend(b.factors.iter().copied());
                terms.push(MotivicTerm::new(&a.numer * &b.numer, f));
            }
        }
        MotivicExpression { terms }
    }

    pub fn scale(&self, p: &LaurentPoly) -> Self {
        MotivicExpression {
            terms: self
                .terms
                .iter()
                .map(|t| MotivicTerm::new(&t.numer * p, t.factors.clone()))
                .collect(),
        }
    }

    /// Divide by `1 - L^(-a) T^b`.
    pub fn divide_by_factor(&self, factor: DenomFactor) -> Self {
        MotivicExpression {
            terms: self
                .terms
                .iter()
                .map(|t| {
                    let mut f = t.factors.clone();
                    f.push(factor);
                    MotivicTerm::new(t.numer.clone(), f)
                })
                .collect(),
        }
    }

    /// Numerator over a common denominator given as a factor multiset.
    fn common_numerator(&self) -> LaurentPoly {
        let mut lcm: BTreeMap<DenomFactor, usize> = BTreeMap::new();
        for t in &self.terms {
            let mut counts: BTreeMap<DenomFactor, usize> = BTreeMap::new();
            for f in &t.factors {
                *counts.entry(*f).or_default() += 1;
            }
            for (f, c) in counts {
                let e = lcm.entry(f).or_default();
                *e = (*e).max(c);
            }
        }
        let mut total = LaurentPoly::zero();
        for t in &self.terms {
            let mut counts: BTreeMap<DenomFactor, usize> = BTreeMap::new();
            for f in &t.factors {
                *counts.entry(*f).or_default() += 1;
            }
            let mut num = t.numer.clone();
            for (f, need) in &lcm {
                let have = counts.get(f).copied().unwrap_or(0);
                for _ in have..*need {
                    num = &num * &f.as_poly();
                }
            }
            total = &total + &num;
        }
        total
    }

    /// Equality in the localized module, decided by clearing denominators.
    pub fn equals(&self, other: &Self) -> bool {
        self.sub(other).common_numerator().is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.common_numerator().is_zero()
    }

    /// Exact coefficients of `T^0 .. T^t_bound`.
    ///
    /// Every denominator factor must involve `T`; a factor `(1 - L^c)` is
    /// not a power series in `T` and yields [`Error::NotTExpandable`].
    pub fn series(&self, t_bound: usize) -> Result<TSeries> {
        for t in &self.terms {
            if let Some(f) = t.factors.iter().find(|f| f.b == 0) {
                return Err(Error::NotTExpandable { exp: -f.a });
            }
        }
        self.expand(t_bound, None)
    }

    /// Coefficients of `T^0 .. T^t_bound`, with factors free of `T` expanded
    /// as series in `L^(-1)`, exact for `L`-exponents `>= l_floor`.
    pub fn series_truncated(&self, t_bound: usize, l_floor: i64) -> Result<TSeries> {
        self.expand(t_bound, Some(l_floor))
    }

    fn expand(&self, t_bound: usize, floor: Option<i64>) -> Result<TSeries> {
        let mut out = TSeries::zero(t_bound, floor);
        for term in &self.terms {
            out.add_assign(&expand_term(term, t_bound, floor)?);
        }
        Ok(out)
    }

    pub fn to_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self.terms.iter().map(term_latex).collect();
        parts.join(" + ")
    }
}

/// Upper bound on the `L`-exponents of a component's expansion.
fn factor_max_l(f: &DenomFactor, t_bound: usize) -> i64 {
    if f.b == 0 {
        if f.a > 0 {
            0
        } else {
            f.a
        }
    } else {
        let kmax = (t_bound as i64) / f.b;
        (-f.a * kmax).max(0)
    }
}

fn factor_series(f: &DenomFactor, t_bound: usize, floor: Option<i64>) -> Result<TSeries> {
    let mut s = TSeries::zero(t_bound, floor);
    if f.b > 0 {
        let mut k = 0i64;
        while k * f.b <= t_bound as i64 {
            s.add_term((k * f.b) as usize, -f.a * k, BigInt::one());
            k += 1;
        }
        return Ok(s);
    }
    let floor = floor.ok_or(Error::NotTExpandable { exp: -f.a })?;
    if f.a > 0 {
        // 1/(1 - L^-a) = sum_{k>=0} L^(-ak)
        let mut k = 0i64;
        while -f.a * k >= floor {
            s.add_term(0, -f.a * k, BigInt::one());
            k += 1;
        }
    } else {
        // 1/(1 - L^c) = -sum_{k>=1} L^(-kc), c = -a > 0
        let c = -f.a;
        let mut k = 1i64;
        while -c * k >= floor {
            s.add_term(0, -c * k, -BigInt::one());
            k += 1;
        }
    }
    Ok(s)
}

fn expand_term(term: &MotivicTerm, t_bound: usize, floor: Option<i64>) -> Result<TSeries> {
    let mut numer = TSeries::zero(t_bound, None);
    for (l, t, c) in term.numer.terms() {
        if t >= 0 && (t as usize) <= t_bound {
            numer.add_term(t as usize, l, c.clone());
        }
    }
    if numer.is_zero() {
        return Ok(TSeries::zero(t_bound, floor));
    }
    let Some(target) = floor else {
        let mut acc = numer;
        for f in &term.factors {
            acc = acc.mul_trunc(&factor_series(f, t_bound, None)?, None);
        }
        return Ok(acc);
    };
    let numer_max = numer
        .coeffs
        .iter()
        .filter_map(|m| m.keys().next_back().copied())
        .max()
        .unwrap();
    let maxes: Vec<i64> = std::iter::once(numer_max)
        .chain(term.factors.iter().map(|f| factor_max_l(f, t_bound)))
        .collect();
    let total: i64 = maxes.iter().sum();
    // After absorbing component j the running product is exact down to
    // target - (sum of the maxima still to come).
    let mut prefix = maxes[0];
    let mut acc = numer;
    let mut remaining = total - maxes[0];
    acc = {
        let mut trimmed = TSeries::zero(t_bound, Some(target - remaining));
        trimmed.add_assign(&acc);
        trimmed
    };
    for (j, f) in term.factors.iter().enumerate() {
        let mj = maxes[j + 1];
        remaining -= mj;
        let comp = factor_series(f, t_bound, Some(target - remaining - prefix))?;
        acc = acc.mul_trunc(&comp, Some(target - remaining));
        prefix += mj;
    }
    let mut out = TSeries::zero(t_bound, Some(target));
    out.add_assign(&acc);
    Ok(out)
}

fn l_power(e: i64) -> Option<String> {
    match e {
        0 => None,
        1 => Some("L".into()),
        e => Some(format!("L^{e}")),
    }
}

fn t_power(e: i64) -> Option<String> {
    match e {
        0 => None,
        1 => Some("T".into()),
        e => Some(format!("T^{e}")),
    }
}

fn laurent_text(p: &LaurentPoly) -> String {
    let mut terms: Vec<(i64, i64, &BigInt)> = p.terms().collect();
    terms.sort_by(|a, b| (b.1, b.0).cmp(&(a.1, a.0)));
    let mut out = String::new();
    for (i, (l, t, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono: Vec<String> = [t_power(*t), l_power(*l)].into_iter().flatten().collect();
        let abs = c.abs();
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono.join("*"));
        } else {
            out.push_str(&format!("{abs}*{}", mono.join("*")));
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// Numerator text with the lowest common monomial pulled out, e.g.
/// `(L - 1)*T^2*L^-2`.
fn numer_text(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let lmin = p.min_l().unwrap();
    let tmin = p.min_t().unwrap();
    let rest = p.shift(-lmin, -tmin);
    let mut pieces: Vec<String> = Vec::new();
    let mut sign = "";
    if rest.len() == 1 {
        let (_, _, c) = rest.terms().next().unwrap();
        if c.is_negative() {
            sign = "-";
        }
        if !c.abs().is_one() {
            pieces.push(c.abs().to_string());
        }
    } else {
        pieces.push(format!("({})", laurent_text(&rest)));
    }
    pieces.extend(t_power(tmin));
    pieces.extend(l_power(lmin));
    if pieces.is_empty() {
        pieces.push("1".into());
    }
    format!("{sign}{}", pieces.join("*"))
}

fn factor_text(f: &DenomFactor) -> String {
    let mono: Vec<String> = [l_power(-f.a), t_power(f.b)].into_iter().flatten().collect();
    format!("1 - {}", mono.join("*"))
}

fn denominator_text(factors: &[DenomFactor]) -> Option<String> {
    if factors.is_empty() {
        return None;
    }
    let mut grouped: Vec<(DenomFactor, usize)> = Vec::new();
    for f in factors {
        match grouped.last_mut() {
            Some((g, n)) if g == f => *n += 1,
            _ => grouped.push((*f, 1)),
        }
    }
    let parts: Vec<String> = grouped
        .iter()
        .map(|(f, n)| {
            if *n == 1 {
                format!("({})", factor_text(f))
            } else {
                format!("({})^{n}", factor_text(f))
            }
        })
        .collect();
    if parts.len() == 1 && grouped[0].1 == 1 {
        Some(parts[0].clone())
    } else {
        Some(format!("({})", parts.join("*")))
    }
}

fn term_text(t: &MotivicTerm) -> String {
    let num = numer_text(&t.numer);
    match denominator_text(&t.factors) {
        None => num,
        Some(d) => format!("{num}/{d}"),
    }
}

fn term_latex(t: &MotivicTerm) -> String {
    let text = numer_text(&t.numer)
        .replace('*', " ")
        .replace('L', "\\mathbb{L}");
    let text = braces_on_exponents(&text);
    if t.factors.is_empty() {
        return text;
    }
    let den: Vec<String> = t
        .factors
        .iter()
        .map(|f| format!("({})", braces_on_exponents(&factor_text(f).replace('*', " ").replace('L', "\\mathbb{L}"))))
        .collect();
    format!("\\frac{{{text}}}{{{}}}", den.join(""))
}

fn braces_on_exponents(s: &str) -> String {
    let mut out = String::new();
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        out.push(c);
        if c == '^' {
            out.push('{');
            if chars.peek() == Some(&'-') {
                out.push(chars.next().unwrap());
            }
            while chars.peek().is_some_and(|d| d.is_ascii_digit()) {
                out.push(chars.next().unwrap());
            }
            out.push('}');
        }
    }
    out
}

/// One line per nonzero `T`-degree, `L`-exponents in decreasing order.
impl fmt::Display for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, m) in self.coeffs.iter().enumerate() {
            if m.is_empty() {
                continue;
            }
            write!(f, "T^{t}:")?;
            for (i, (&l, c)) in m.iter().rev().enumerate() {
                let neg = c.is_negative();
                let mag = c.abs();
                let sign = match (i, neg) {
                    (0, false) => " ",
                    (0, true) => " -",
                    (_, false) => " + ",
                    (_, true) => " - ",
                };
                let mono = match l {
                    0 => String::new(),
                    1 => "L".into(),
                    _ => format!("L^{l}"),
                };
                match (mag.is_one(), mono.is_empty()) {
                    (true, true) => write!(f, "{sign}1")?,
                    (true, false) => write!(f, "{sign}{mono}")?,
                    (false, true) => write!(f, "{sign}{mag}")?,
                    (false, false) => write!(f, "{sign}{mag}*{mono}")?,
                }
            }
            writeln!(f)?;
        }
        match self.l_floor {
            Some(fl) => write!(f, "+ O(T^{}) + O(L^{})", self.t_bound + 1, fl - 1),
            None => write!(f, "+ O(T^{})", self.t_bound + 1),
        }
    }
}

impl fmt::Display for MotivicExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let text = term_text(t);
            if i == 0 {
                f.write_str(&text)?;
            } else if let Some(rest) = text.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {text}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lm1() -> LaurentPoly {
        LaurentPoly::l_minus_one()
    }

    #[test]
    fn equal_after_multiplying_through() {
        let x = MotivicExpression::from_term(MotivicTerm::simple(lm1(), 1, 1).unwrap());
        let extra = DenomFactor::new(2, 2).unwrap();
        let y = MotivicExpression::from_term(MotivicTerm::new(
            &lm1() * &extra.as_poly(),
            vec![DenomFactor::new(1, 1).unwrap(), extra],
        ));
        assert!(x.equals(&y));
        // 1/(1-u) = (1+u)/(1-u^2) with u = L^-1 T
        let z = MotivicExpression::from_term(MotivicTerm::new(
            &lm1() * &(&LaurentPoly::one() + &LaurentPoly::monomial(1, -1, 1)),
            vec![extra],
        ));
        assert!(x.equals(&z));
        assert!(!x.equals(&MotivicExpression::zero()));
    }

    #[test]
    fn empty_and_zero_numerator_agree() {
        let zero_num = MotivicExpression::from_term(MotivicTerm::simple(LaurentPoly::zero(), 3, 1).unwrap());
        assert!(MotivicExpression::zero().equals(&zero_num));
    }

    #[test]
    fn geometric_series() {
        let x = MotivicExpression::from_term(
            MotivicTerm::simple(lm1().shift(0, 1), 1, 1).unwrap(),
        );
        let s = x.series(3).unwrap();
        assert!(s.coeffs[0].is_empty());
        for n in 1..=3usize {
            let want: BTreeMap<i64, BigInt> =
                [(2 - n as i64, BigInt::one()), (1 - n as i64, -BigInt::one())].into();
            assert_eq!(s.coeffs[n], want);
        }
    }

    #[test]
    fn t_free_factor_is_not_expandable() {
        let x = MotivicExpression::from_term(MotivicTerm::simple(lm1(), 2, 0).unwrap());
        assert_eq!(x.series(4), Err(Error::NotTExpandable { exp: -2 }));
        // but it expands in L^-1: (L-1)/(1-L^-2) = L - 1 + L^-1 - L^-2 + ...
        let s = x.series_truncated(0, -4).unwrap();
        let want: BTreeMap<i64, BigInt> = (-4..=1)
            .map(|e| (e, if (e - 1) % 2 == 0 { BigInt::one() } else { -BigInt::one() }))
            .collect();
        assert_eq!(s.coeffs[0], want);
    }

    #[test]
    fn truncated_product_is_exact_above_floor() {
        // L^3/(1-L^-1)^2 has coefficient of L^e equal to (3 - e + 1) for e <= 3
        let f = DenomFactor::new(1, 0).unwrap();
        let x = MotivicExpression::from_term(MotivicTerm::new(LaurentPoly::monomial(1, 3, 0), vec![f, f]));
        let s = x.series_truncated(0, -5).unwrap();
        for e in -5..=3i64 {
            assert_eq!(s.coeffs[0][&e], BigInt::from(4 - e));
        }
        assert_eq!(s.coeffs[0].len(), 9);
    }

    #[test]
    fn degenerate_factor_rejected() {
        assert_eq!(DenomFactor::new(0, 0), Err(Error::DegenerateFactor));
    }

    #[test]
    fn display_matches_canonical_shape() {
        let x = MotivicExpression::from_term(
            MotivicTerm::simple(lm1().shift(-2, 2), 2, 2).unwrap(),
        );
        assert_eq!(x.to_string(), "(L - 1)*T^2*L^-2/(1 - L^-2*T^2)");
    }
}

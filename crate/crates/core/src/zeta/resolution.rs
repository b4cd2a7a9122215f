//! Zeta functions from the numerical data of an embedded resolution.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symbolic::{
    rat, BigRational, DenomFactor, LaurentPoly, MotivicExpression, MotivicTerm, RationalFunction,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Divisor {
    pub id: String,
    #[serde(rename = "N")]
    pub n: i64,
    pub nu: i64,
}

/// A stratum `E_I°` with its Euler characteristic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    pub divisors: Vec<String>,
    pub euler: i64,
}

/// Class `[E_I°]` as `sum coeff * L^exponent`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumClass {
    pub divisors: Vec<String>,
    #[serde(rename = "classInL")]
    pub class_in_l: Vec<(i64, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionData {
    pub divisors: Vec<Divisor>,
    pub strata: Vec<Stratum>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<StratumClass>>,
}

/// Numerical data `(N_i, nu_i)` of one stratum together with its weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumData<W> {
    pub data: Vec<(i64, i64)>,
    pub weight: W,
}

impl ResolutionData {
    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for d in &self.divisors {
            if !seen.insert(d.id.as_str()) {
                return Err(Error::Invalid(format!("duplicate divisor id '{}'", d.id)));
            }
            if d.n < 1 {
                return Err(Error::Invalid(format!("divisor '{}': multiplicity must be ≥ 1", d.id)));
            }
            if d.nu < 1 {
                return Err(Error::Invalid(format!("divisor '{}': discrepancy must be ≥ 1", d.id)));
            }
        }
        let check = |ids: &[String], what: &str| -> Result<()> {
            if ids.is_empty() {
                return Err(Error::Invalid(format!("{what} with an empty divisor set")));
            }
            for id in ids {
                if !seen.contains(id.as_str()) {
                    return Err(Error::Invalid(format!("{what} references unknown divisor id '{id}'")));
                }
            }
            Ok(())
        };
        for s in &self.strata {
            check(&s.divisors, "stratum")?;
        }
        for c in self.classes.iter().flatten() {
            check(&c.divisors, "class")?;
        }
        Ok(())
    }

    fn lookup(&self) -> BTreeMap<&str, (i64, i64)> {
        self.divisors.iter().map(|d| (d.id.as_str(), (d.n, d.nu))).collect()
    }

    pub fn strata_data(&self) -> Vec<StratumData<i64>> {
        let map = self.lookup();
        self.strata
            .iter()
            .map(|s| StratumData {
                data: s.divisors.iter().map(|id| map[id.as_str()]).collect(),
                weight: s.euler,
            })
            .collect()
    }

    pub fn class_data(&self) -> Option<Vec<StratumData<LaurentPoly>>> {
        let map = self.lookup();
        self.classes.as_ref().map(|cs| {
            cs.iter()
                .map(|c| {
                    let mut class = LaurentPoly::zero();
                    for &(e, k) in &c.class_in_l {
                        class.add_term(e, 0, BigInt::from(k));
                    }
                    StratumData {
                        data: c.divisors.iter().map(|id| map[id.as_str()]).collect(),
                        weight: class,
                    }
                })
                .collect()
        })
    }

    /// Multiplicities `N_i` occurring in the data.
    pub fn multiplicities(&self) -> BTreeSet<i64> {
        self.divisors.iter().map(|d| d.n).collect()
    }
}

/// `sum chi(E_I°) / prod (N_i s + nu_i)` over strata with `e | N_i` for all `i`.
pub fn resolution_topological(res: &ResolutionData, twist: u64) -> Result<RationalFunction> {
    if twist == 0 {
        return Err(Error::Invalid("twist order must be positive".into()));
    }
    let e = twist as i64;
    Ok(res
        .strata_data()
        .into_iter()
        .filter(|s| s.data.iter().all(|(n, _)| n % e == 0))
        .map(|s| {
            s.data.iter().fold(RationalFunction::from_i64(s.weight), |acc, &(n, v)| {
                acc * RationalFunction::inverse_linear(rat(v), rat(n)).expect("N > 0")
            })
        })
        .sum())
}

/// `sum [E_I°] prod (L - 1) T^N_i / (L^nu_i - T^N_i)`; needs stratum classes.
pub fn resolution_naive_motivic(res: &ResolutionData) -> Result<MotivicExpression> {
    let classes = res
        .class_data()
        .ok_or_else(|| Error::Invalid("resolution data carries no stratum classes".into()))?;
    let mut out = MotivicExpression::zero();
    for c in classes {
        let mut numer = c.weight;
        let mut factors = Vec::new();
        for &(n, v) in &c.data {
            numer = &numer * &LaurentPoly::l_minus_one().shift(-v, n);
            factors.push(DenomFactor::new(v, n)?);
        }
        out = out.add(&MotivicExpression::from_term(MotivicTerm::new(numer, factors)));
    }
    Ok(out)
}

/// `sum chi(E_I°) / prod nu_i`, which equals 1 for genuine resolution data.
pub fn z_at_zero(res: &ResolutionData) -> BigRational {
    res.strata_data()
        .into_iter()
        .map(|s| BigRational::new(BigInt::from(s.weight), s.data.iter().map(|&(_, v)| BigInt::from(v)).product()))
        .fold(BigRational::zero(), |a, b| a + b)
}

pub fn check_z_at_zero(res: &ResolutionData) -> bool {
    z_at_zero(res).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{euler_specialize, Poly};

    pub(crate) fn fermat(q: i64) -> ResolutionData {
        let mut divisors = vec![Divisor {
            id: "E1".into(),
            n: q,
            nu: 2,
        }];
        let mut strata = vec![Stratum {
            divisors: vec!["E1".into()],
            euler: 2 - q,
        }];
        for j in 1..=q {
            let id = format!("S{j}");
            divisors.push(Divisor { id: id.clone(), n: 1, nu: 1 });
            strata.push(Stratum {
                divisors: vec!["E1".into(), id],
                euler: 1,
            });
        }
        ResolutionData {
            divisors,
            strata,
            classes: None,
        }
    }

    #[test]
    fn fermat_table() {
        for q in 2..=8i64 {
            let r = fermat(q);
            r.validate().unwrap();
            assert!(check_z_at_zero(&r));
            let z1 = RationalFunction::new(
                Poly::from_i64(&[2, 2 - q]),
                &Poly::from_i64(&[2, q]) * &Poly::from_i64(&[1, 1]),
            )
            .unwrap();
            assert_eq!(resolution_topological(&r, 1).unwrap(), z1);
            let ze = RationalFunction::new(Poly::from_i64(&[2 - q]), Poly::from_i64(&[2, q])).unwrap();
            for e in 2..=2 * q as u64 {
                let want = if q as u64 % e == 0 { ze.clone() } else { RationalFunction::zero() };
                assert_eq!(resolution_topological(&r, e).unwrap(), want);
            }
        }
    }

    #[test]
    fn validation() {
        let mut r = fermat(3);
        r.strata[0].euler += 1;
        assert!(!check_z_at_zero(&r));
        r.strata[1].divisors.push("X9".into());
        let err = r.validate().unwrap_err().to_string();
        assert!(err.contains("X9"), "{err}");
        let mut r = fermat(3);
        r.divisors[0].nu = 0;
        assert!(r.validate().unwrap_err().to_string().contains("discrepancy must be ≥ 1"));
    }

    #[test]
    fn naive_motivic_specializes_to_topological() {
        // z^2 - x^2: one blow-up, E with (2, 2) and two strict transforms
        let mut r = ResolutionData {
            divisors: vec![
                Divisor { id: "E".into(), n: 2, nu: 2 },
                Divisor { id: "A".into(), n: 1, nu: 1 },
                Divisor { id: "B".into(), n: 1, nu: 1 },
            ],
            strata: vec![
                Stratum { divisors: vec!["E".into()], euler: 0 },
                Stratum { divisors: vec!["E".into(), "A".into()], euler: 1 },
                Stratum { divisors: vec!["E".into(), "B".into()], euler: 1 },
            ],
            classes: None,
        };
        assert!(resolution_naive_motivic(&r).is_err());
        // E° is P^1 minus two points: L - 1
        r.classes = Some(vec![
            StratumClass { divisors: vec!["E".into()], class_in_l: vec![(1, 1), (0, -1)] },
            StratumClass { divisors: vec!["E".into(), "A".into()], class_in_l: vec![(0, 1)] },
            StratumClass { divisors: vec!["E".into(), "B".into()], class_in_l: vec![(0, 1)] },
        ]);
        let m = resolution_naive_motivic(&r).unwrap();
        assert_eq!(euler_specialize(&m).unwrap(), resolution_topological(&r, 1).unwrap());
        let inv = RationalFunction::inverse_linear(rat(1), rat(1)).unwrap();
        assert_eq!(resolution_topological(&r, 1).unwrap(), inv.pow(2).unwrap());
    }
}

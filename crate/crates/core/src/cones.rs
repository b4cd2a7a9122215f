//! The cones `sigma+`, `sigma-` and `rho` attached to a stratum of
//! `z^p (z^Q - x^N)`, their lattice points and generating functions.
//!
//! Coordinates are ordered as the stratum indices `I` followed by `z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::One;

use crate::error::{Error, Result};
use crate::lattice::{column_hermite, determinant, maximal_minor_gcd};
use crate::symbolic::{DenomFactor, LaurentPoly, MotivicExpression, MotivicTerm};

/// Numerical data `(N_k, nu_k)_{k in I}`, `Q`, `p = N_z` and `nu_z` of a stratum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StratumProfile {
    pub n: Vec<i64>,
    pub nu: Vec<i64>,
    pub q: i64,
    pub p: i64,
    pub nuz: i64,
}

impl StratumProfile {
    pub fn new(n: Vec<i64>, nu: Vec<i64>, q: i64, p: i64, nuz: i64) -> Result<Self> {
        if n.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        if n.len() != nu.len() {
            return Err(Error::LengthMismatch {
                left: n.len(),
                right: nu.len(),
            });
        }
        if n.iter().any(|&x| x <= 0) {
            return Err(Error::Invalid("multiplicities N_k must be positive".into()));
        }
        if nu.iter().any(|&x| x <= 0) || nuz <= 0 {
            return Err(Error::Invalid("discrepancy must be ≥ 1".into()));
        }
        if q <= 0 {
            return Err(Error::Invalid("Q must be positive".into()));
        }
        if p < 0 {
            return Err(Error::Invalid("p must be nonnegative".into()));
        }
        Ok(StratumProfile { n, nu, q, p, nuz })
    }

    /// The profile `(N, nu)` with `p = 0`, `nu_z = 1`.
    pub fn suspension(n: Vec<i64>, nu: Vec<i64>, q: i64) -> Result<Self> {
        Self::new(n, nu, q, 0, 1)
    }

    pub fn dim(&self) -> usize {
        self.n.len()
    }

    pub fn e_k(&self, k: usize) -> i64 {
        self.q.gcd(&self.n[k])
    }

    /// `N_I`, the gcd of the multiplicities.
    pub fn n_gcd(&self) -> i64 {
        self.n.iter().fold(0, |g, x| g.gcd(x))
    }

    pub fn e_i(&self) -> i64 {
        self.q.gcd(&self.n_gcd())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeKind {
    SigmaPlus,
    SigmaMinus,
    Rho,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeSpec {
    pub ambient_dim: usize,
    pub generators: Vec<Vec<i64>>,
    pub simplicial: bool,
}

fn rho_generators(profile: &StratumProfile) -> Vec<Vec<i64>> {
    let d = profile.dim();
    (0..d)
        .map(|k| {
            let e = profile.e_k(k);
            let mut v = vec![0i64; d + 1];
            v[k] = profile.q / e;
            v[d] = profile.n[k] / e;
            v
        })
        .collect()
}

pub fn cone_sigma_plus(profile: &StratumProfile) -> ConeSpec {
    let d = profile.dim();
    let mut generators = rho_generators(profile);
    let mut ez = vec![0i64; d + 1];
    ez[d] = 1;
    generators.push(ez);
    ConeSpec {
        ambient_dim: d + 1,
        generators,
        simplicial: true,
    }
}

pub fn cone_rho(profile: &StratumProfile) -> ConeSpec {
    ConeSpec {
        ambient_dim: profile.dim() + 1,
        generators: rho_generators(profile),
        simplicial: true,
    }
}

fn wide(rows: &[Vec<i64>]) -> Vec<Vec<i128>> {
    rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()
}

/// Index of the generated sublattice in the saturated lattice of the span.
pub fn cone_multiplicity(c: &ConeSpec) -> Result<u64> {
    if !c.simplicial {
        return Err(Error::NonSimplicial);
    }
    let rows = wide(&c.generators);
    let m = if rows.len() == c.ambient_dim {
        determinant(&rows).abs()
    } else {
        maximal_minor_gcd(&rows).abs()
    };
    if m == 0 {
        return Err(Error::NonSimplicial);
    }
    Ok(m as u64)
}

/// Lattice points `sum lambda_i a_i` with every `lambda_i` in `(0, 1]`.
pub fn fundamental_domain(c: &ConeSpec) -> Result<Vec<Vec<i64>>> {
    if !c.simplicial {
        return Err(Error::NonSimplicial);
    }
    let g = wide(&c.generators);
    let k = g.len();
    let hm = column_hermite(&g).ok_or(Error::NonSimplicial)?;
    let h: Vec<Vec<Ratio<i128>>> = hm
        .h
        .iter()
        .map(|r| r.iter().map(|&x| Ratio::from_integer(x)).collect())
        .collect();
    let diag: Vec<i128> = (0..k).map(|i| hm.h[i][i].abs()).collect();
    let mut points = Vec::new();
    let mut y = vec![0i128; k];
    loop {
        // lambda H = y, H lower triangular: solve from the last coordinate
        let mut lambda = vec![Ratio::from_integer(0i128); k];
        for j in (0..k).rev() {
            let mut acc = Ratio::from_integer(y[j]);
            for i in j + 1..k {
                acc -= lambda[i] * h[i][j];
            }
            lambda[j] = acc / h[j][j];
        }
        let shifted: Vec<Ratio<i128>> = lambda
            .iter()
            .map(|l| l - Ratio::from_integer(l.ceil().to_integer()) + Ratio::one())
            .collect();
        let mut beta = vec![Ratio::from_integer(0i128); c.ambient_dim];
        for (l, gen) in shifted.iter().zip(&g) {
            for (b, x) in beta.iter_mut().zip(gen) {
                *b += l * Ratio::from_integer(*x);
            }
        }
        points.push(
            beta.iter()
                .map(|b| {
                    debug_assert!(b.is_integer());
                    b.to_integer() as i64
                })
                .collect(),
        );
        // odometer over 0 <= y_j < |H_jj|
        let mut j = 0;
        loop {
            if j == k {
                points.sort();
                return Ok(points);
            }
            y[j] += 1;
            if y[j] < diag[j] {
                break;
            }
            y[j] = 0;
            j += 1;
        }
    }
}

fn weight(v: &[i64], subst: &[(i64, i64)]) -> (i64, i64) {
    v.iter()
        .zip(subst)
        .fold((0, 0), |(l, t), (x, (sl, st))| (l + x * sl, t + x * st))
}

fn check_subst(dim: usize, subst: &[(i64, i64)]) -> Result<()> {
    if subst.len() != dim {
        return Err(Error::LengthMismatch {
            left: dim,
            right: subst.len(),
        });
    }
    if subst.iter().any(|&(_, t)| t < 0) {
        return Err(Error::Invalid("negative T exponent in substitution".into()));
    }
    Ok(())
}

/// `Phi_C` with `x_j -> L^(l_j) T^(t_j)`, as `P_C / prod (1 - x^(a_i))`.
pub fn generating_function(c: &ConeSpec, subst: &[(i64, i64)]) -> Result<MotivicExpression> {
    check_subst(c.ambient_dim, subst)?;
    let mut numer = LaurentPoly::zero();
    for beta in fundamental_domain(c)? {
        let (l, t) = weight(&beta, subst);
        numer.add_term(l, t, BigInt::one());
    }
    let factors = c
        .generators
        .iter()
        .map(|a| {
            let (l, t) = weight(a, subst);
            DenomFactor::new(-l, t)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MotivicExpression::from_term(MotivicTerm::new(numer, factors)))
}

/// Generating function of the open positive orthant.
pub fn orthant_generating_function(subst: &[(i64, i64)]) -> Result<MotivicExpression> {
    check_subst(subst.len(), subst)?;
    let (l, t) = subst.iter().fold((0, 0), |(a, b), (x, y)| (a + x, b + y));
    let factors = subst
        .iter()
        .map(|&(l, t)| DenomFactor::new(-l, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(MotivicExpression::from_term(MotivicTerm::new(
        LaurentPoly::monomial(1, l, t),
        factors,
    )))
}

/// `Phi_{sigma-} = Phi_orthant - Phi_{sigma+} - Phi_rho`.
pub fn sigma_minus_generating_function(
    profile: &StratumProfile,
    subst: &[(i64, i64)],
) -> Result<MotivicExpression> {
    let orthant = orthant_generating_function(subst)?;
    let plus = generating_function(&cone_sigma_plus(profile), subst)?;
    let rho = generating_function(&cone_rho(profile), subst)?;
    Ok(orthant.sub(&plus).sub(&rho))
}

pub fn cone_generating_function(
    profile: &StratumProfile,
    which: ConeKind,
    subst: &[(i64, i64)],
) -> Result<MotivicExpression> {
    match which {
        ConeKind::SigmaPlus => generating_function(&cone_sigma_plus(profile), subst),
        ConeKind::Rho => generating_function(&cone_rho(profile), subst),
        ConeKind::SigmaMinus => sigma_minus_generating_function(profile, subst),
    }
}

/// Which cone of the fan contains the positive point `b`.
pub fn classify(profile: &StratumProfile, b: &[i64]) -> ConeKind {
    let d = profile.dim();
    let lhs: i64 = profile.n.iter().zip(b).map(|(n, x)| n * x).sum();
    let rhs = profile.q * b[d];
    match lhs.cmp(&rhs) {
        std::cmp::Ordering::Less => ConeKind::SigmaPlus,
        std::cmp::Ordering::Greater => ConeKind::SigmaMinus,
        std::cmp::Ordering::Equal => ConeKind::Rho,
    }
}

/// `N(sigma+) = gcd(N_I, p)`, `N(sigma-) = Q + p`,
/// `N(rho) = lcm(N_I, Q) (Q + p) / Q`.
pub fn cone_gcd_invariant(profile: &StratumProfile, which: ConeKind) -> u64 {
    let ni = profile.n_gcd();
    let v = match which {
        ConeKind::SigmaPlus => ni.gcd(&profile.p),
        ConeKind::SigmaMinus => profile.q + profile.p,
        ConeKind::Rho => ni.lcm(&profile.q) / profile.q * (profile.q + profile.p),
    };
    v as u64
}

/// `gcd { min((Q+p) a_z, <a, N> + p a_z) }` over positive points `a` of the
/// open cone, with `a_k <= bound` for `k in I` and `a_z` within `bound` of the
/// separating hyperplane.
pub fn brute_force_gcd_invariant(profile: &StratumProfile, which: ConeKind, bound: i64) -> u64 {
    let d = profile.dim();
    let q = profile.q;
    let p = profile.p;
    let mut g = 0i64;
    let mut a = vec![1i64; d];
    loop {
        let na: i64 = profile.n.iter().zip(&a).map(|(n, x)| n * x).sum();
        // a_z with Q a_z compared against na
        let (lo, hi) = match which {
            ConeKind::SigmaPlus => (na / q + 1, na / q + bound),
            ConeKind::SigmaMinus => (1, ((na - 1) / q).min(bound)),
            ConeKind::Rho => {
                if na % q == 0 {
                    (na / q, na / q)
                } else {
                    (1, 0)
                }
            }
        };
        for az in lo..=hi {
            let v = ((q + p) * az).min(na + p * az);
            g = g.gcd(&v);
        }
        if g == 1 {
            return 1;
        }
        let mut j = 0;
        loop {
            if j == d {
                return g as u64;
            }
            a[j] += 1;
            if a[j] <= bound {
                break;
            }
            a[j] = 1;
            j += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prof(n: &[i64], q: i64) -> StratumProfile {
        StratumProfile::new(n.to_vec(), vec![1; n.len()], q, 0, 1).unwrap()
    }

    #[test]
    fn generators() {
        assert_eq!(cone_sigma_plus(&prof(&[2], 2)).generators, vec![vec![1, 1], vec![0, 1]]);
        assert_eq!(cone_sigma_plus(&prof(&[3], 2)).generators, vec![vec![2, 3], vec![0, 1]]);
        assert_eq!(
            cone_sigma_plus(&prof(&[5, 6], 10)).generators,
            vec![vec![2, 0, 1], vec![0, 5, 3], vec![0, 0, 1]]
        );
        assert_eq!(cone_rho(&prof(&[1], 1)).generators, vec![vec![1, 1]]);
    }

    #[test]
    fn multiplicities() {
        assert_eq!(cone_multiplicity(&cone_sigma_plus(&prof(&[2], 2))).unwrap(), 1);
        assert_eq!(cone_multiplicity(&cone_rho(&prof(&[5, 6], 10))).unwrap(), 1);
        // (2, 1) is primitive, so the segment holds no further lattice point
        assert_eq!(cone_multiplicity(&cone_rho(&prof(&[2], 4))).unwrap(), 1);
        assert_eq!(cone_multiplicity(&cone_rho(&prof(&[2, 2], 4))).unwrap(), 2);
        let bad = ConeSpec {
            ambient_dim: 2,
            generators: vec![vec![1, 1], vec![2, 2]],
            simplicial: true,
        };
        assert_eq!(cone_multiplicity(&bad), Err(Error::NonSimplicial));
    }

    #[test]
    fn domains() {
        assert_eq!(fundamental_domain(&cone_sigma_plus(&prof(&[1], 1))).unwrap(), vec![vec![1, 2]]);
        assert_eq!(fundamental_domain(&cone_rho(&prof(&[2], 4))).unwrap(), vec![vec![2, 1]]);
        // generators (2,0,1), (0,2,1): the midpoint (1,1,1) is a lattice point
        assert_eq!(
            fundamental_domain(&cone_rho(&prof(&[2, 2], 4))).unwrap(),
            vec![vec![1, 1, 1], vec![2, 2, 2]]
        );
    }

    #[test]
    fn closed_form_multiplicities() {
        for q in 1..=8i64 {
            for n1 in 1..=6i64 {
                for n2 in 1..=6i64 {
                    let p = prof(&[n1, n2], q);
                    let prod_e = p.e_k(0) * p.e_k(1);
                    let plus = cone_sigma_plus(&p);
                    let rho = cone_rho(&p);
                    assert_eq!(cone_multiplicity(&plus).unwrap() as i64, q * q / prod_e);
                    assert_eq!(cone_multiplicity(&rho).unwrap() as i64, q * p.e_i() / prod_e);
                    for c in [plus, rho] {
                        let d = fundamental_domain(&c).unwrap();
                        assert_eq!(d.len() as u64, cone_multiplicity(&c).unwrap());
                        let sum: Vec<i64> = (0..c.ambient_dim)
                            .map(|j| c.generators.iter().map(|g| g[j]).sum())
                            .collect();
                        assert!(d.contains(&sum));
                    }
                }
            }
        }
    }

    #[test]
    fn rho_generating_function() {
        let p = StratumProfile::new(vec![2], vec![1], 2, 0, 1).unwrap();
        let phi = generating_function(&cone_rho(&p), &[(-1, 2), (-1, 0)]).unwrap();
        let want = MotivicExpression::from_term(
            MotivicTerm::simple(LaurentPoly::monomial(1, -2, 2), 2, 2).unwrap(),
        );
        assert!(phi.equals(&want));
        assert_eq!(
            generating_function(&cone_rho(&p), &[(0, 0), (0, 0)]),
            Err(Error::DegenerateFactor)
        );
    }

    #[test]
    fn gcd_invariants() {
        let p = prof(&[2], 2);
        assert_eq!(cone_gcd_invariant(&p, ConeKind::SigmaMinus), 2);
        assert_eq!(cone_gcd_invariant(&p, ConeKind::Rho), 2);
        for q in 1..=6i64 {
            for n in 1..=6i64 {
                for pp in 0..=2i64 {
                    let p = StratumProfile::new(vec![n], vec![1], q, pp, 1).unwrap();
                    for which in [ConeKind::SigmaPlus, ConeKind::SigmaMinus, ConeKind::Rho] {
                        assert_eq!(
                            brute_force_gcd_invariant(&p, which, 25),
                            cone_gcd_invariant(&p, which),
                            "{p:?} {which:?}"
                        );
                    }
                }
            }
        }
    }
}

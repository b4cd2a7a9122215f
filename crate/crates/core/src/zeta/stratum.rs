//! The four contributions `W^{sigma+}, W^{sigma-}, W^rho, W^{rho*}` of one
//! stratum of `z^p (z^Q - x^N)`: factored motivic form, topological closed
//! form, twisted gating and a direct lattice-sum oracle.

use num_bigint::BigInt;

use crate::cones::{
    classify, cone_generating_function, cone_gcd_invariant, ConeKind, StratumProfile,
};
use crate::error::{Error, Result};
use crate::symbolic::{
    rat, ratio, BigRational, DenomFactor, LaurentPoly, MotivicExpression, Poly,
    RationalFunction, TSeries,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumZeta<T> {
    pub sigma_plus: T,
    pub sigma_minus: T,
    pub rho: T,
    pub rho_star: T,
}

impl<T> StratumZeta<T> {
    pub fn parts(&self) -> [(&'static str, &T); 4] {
        [
            ("sigma+", &self.sigma_plus),
            ("sigma-", &self.sigma_minus),
            ("rho", &self.rho),
            ("rho*", &self.rho_star),
        ]
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> StratumZeta<U> {
        StratumZeta {
            sigma_plus: f(&self.sigma_plus),
            sigma_minus: f(&self.sigma_minus),
            rho: f(&self.rho),
            rho_star: f(&self.rho_star),
        }
    }

    pub fn try_map<U>(&self, mut f: impl FnMut(&T) -> Result<U>) -> Result<StratumZeta<U>> {
        Ok(StratumZeta {
            sigma_plus: f(&self.sigma_plus)?,
            sigma_minus: f(&self.sigma_minus)?,
            rho: f(&self.rho)?,
            rho_star: f(&self.rho_star)?,
        })
    }
}

impl StratumZeta<RationalFunction> {
    pub fn total(&self) -> RationalFunction {
        &(&self.sigma_plus + &self.sigma_minus) + &(&self.rho + &self.rho_star)
    }
}

impl StratumZeta<MotivicExpression> {
    pub fn total(&self) -> MotivicExpression {
        self.sigma_plus
            .add(&self.sigma_minus)
            .add(&self.rho)
            .add(&self.rho_star)
    }
}

/// `x_k -> L^(-nu_k) T^(N_k)`, `z -> L^(-nu_z) T^p`.
pub fn plus_substitution(profile: &StratumProfile) -> Vec<(i64, i64)> {
    let mut s: Vec<(i64, i64)> = profile.nu.iter().zip(&profile.n).map(|(&v, &n)| (-v, n)).collect();
    s.push((-profile.nuz, profile.p));
    s
}

/// `x_k -> L^(-nu_k)`, `z -> L^(-nu_z) T^(Q+p)`.
pub fn minus_substitution(profile: &StratumProfile) -> Vec<(i64, i64)> {
    let mut s: Vec<(i64, i64)> = profile.nu.iter().map(|&v| (-v, 0)).collect();
    s.push((-profile.nuz, profile.q + profile.p));
    s
}

/// Factored naive motivic contributions built from the cone generating
/// functions.
pub fn stratum_naive_motivic(profile: &StratumProfile) -> Result<StratumZeta<MotivicExpression>> {
    let d = profile.dim() as u32;
    let plus = plus_substitution(profile);
    let minus = minus_substitution(profile);
    let lm1 = LaurentPoly::l_minus_one();
    let e_i = profile.e_i();

    let phi_plus = cone_generating_function(profile, ConeKind::SigmaPlus, &plus)?;
    let phi_minus = cone_generating_function(profile, ConeKind::SigmaMinus, &minus)?;
    let phi_rho = cone_generating_function(profile, ConeKind::Rho, &plus)?;

    let sigma_plus = phi_plus.scale(&lm1.pow(d + 1));
    let sigma_minus = phi_minus.scale(&lm1.pow(d + 1));
    let rho = phi_rho.scale(&(&lm1.pow(d) * &LaurentPoly::l_minus(e_i)));
    let rho_star = phi_rho
        .scale(&lm1.pow(d + 1).scale(&BigInt::from(e_i)).shift(-1, 1))
        .divide_by_factor(DenomFactor::new(1, 1)?);
    Ok(StratumZeta {
        sigma_plus,
        sigma_minus,
        rho,
        rho_star,
    })
}

/// Direct summation over the lattice points `b` of each cone, exact for
/// `L`-exponents `>= l_floor` and `T`-degree `<= t_bound`.
pub fn lattice_series_oracle(
    profile: &StratumProfile,
    t_bound: usize,
    l_floor: i64,
) -> StratumZeta<TSeries> {
    let d = profile.dim();
    let floor = Some(l_floor);
    let mut out = StratumZeta {
        sigma_plus: TSeries::zero(t_bound, floor),
        sigma_minus: TSeries::zero(t_bound, floor),
        rho: TSeries::zero(t_bound, floor),
        rho_star: TSeries::zero(t_bound, floor),
    };
    let lm1 = LaurentPoly::l_minus_one();
    let base_sigma = lm1.pow(d as u32 + 1);
    let base_rho = &lm1.pow(d as u32) * &LaurentPoly::l_minus(profile.e_i());
    let base_star = base_sigma.scale(&BigInt::from(profile.e_i()));
    let top = d as i64 + 1;
    let weights: Vec<i64> = profile.nu.iter().copied().chain([profile.nuz]).collect();
    // every contribution of b has L-degree at most top - <b, nu>
    let budget = top - l_floor;
    let mut b = vec![1i64; d + 1];
    let add = |series: &mut TSeries, poly: &LaurentPoly, shift_l: i64, t: i64| {
        if t < 0 || t as usize > t_bound {
            return;
        }
        for (l, _, c) in poly.terms() {
            series.add_term(t as usize, l + shift_l, c.clone());
        }
    };
    loop {
        let bnu: i64 = b.iter().zip(&weights).map(|(x, w)| x * w).sum();
        if bnu <= budget {
            let nb: i64 = profile.n.iter().zip(&b).map(|(n, x)| n * x).sum::<i64>() + profile.p * b[d];
            let q_side = (profile.q + profile.p) * b[d];
            match classify(profile, &b) {
                ConeKind::SigmaPlus => add(&mut out.sigma_plus, &base_sigma, -bnu, nb),
                ConeKind::SigmaMinus => add(&mut out.sigma_minus, &base_sigma, -bnu, q_side),
                ConeKind::Rho => {
                    add(&mut out.rho, &base_rho, -bnu, q_side);
                    let mut i = 1i64;
                    while q_side + i <= t_bound as i64 && top - i - bnu >= l_floor {
                        add(&mut out.rho_star, &base_star, -i - bnu, q_side + i);
                        i += 1;
                    }
                }
            }
        }
        // advance b over the simplex <b, nu> <= budget
        let mut j = 0;
        loop {
            if j > d {
                return out;
            }
            b[j] += 1;
            let bnu: i64 = b.iter().zip(&weights).map(|(x, w)| x * w).sum();
            if bnu <= budget {
                break;
            }
            b[j] = 1;
            j += 1;
        }
    }
}

/// `r = ((Q+p) s + nu_z) / Q` as an affine map `s -> alpha s + beta`.
pub fn r_affine(q: i64, p: i64, nuz: i64) -> (BigRational, BigRational) {
    (ratio(q + p, q), ratio(nuz, q))
}

/// `prod_k 1/(N_k r + nu_k)`.
fn product_term(profile: &StratumProfile) -> RationalFunction {
    let (alpha, beta) = r_affine(profile.q, profile.p, profile.nuz);
    profile
        .n
        .iter()
        .zip(&profile.nu)
        .fold(RationalFunction::one(), |acc, (&n, &v)| {
            let b = &alpha * rat(n);
            let a = &beta * rat(n) + rat(v);
            acc * RationalFunction::inverse_linear(a, b).expect("positive slope")
        })
}

/// Closed forms of the Euler specializations of the four parts.
pub fn stratum_topological(profile: &StratumProfile) -> StratumZeta<RationalFunction> {
    let prod = product_term(profile);
    let e2 = rat(profile.e_i() * profile.e_i());
    let q = rat(profile.q);
    let inv_nu = RationalFunction::from_ratio(1, profile.nu.iter().product());
    let sigma_plus = &RationalFunction::inverse_linear(rat(profile.nuz), rat(profile.p)).unwrap() * &prod;
    // Q r = (Q+p) s + nu_z
    let inv_qr = RationalFunction::inverse_linear(rat(profile.nuz), rat(profile.q + profile.p)).unwrap();
    let sigma_minus = &inv_qr * &(&inv_nu - &prod);
    let rho = prod.scale(&-(&e2 / &q));
    let inv_s1 = RationalFunction::new(Poly::one(), Poly::linear_i64(1, 1)).unwrap();
    let rho_star = &prod.scale(&(&e2 / &q)) * &inv_s1;
    StratumZeta {
        sigma_plus,
        sigma_minus,
        rho,
        rho_star,
    }
}

/// Which of `sigma+, sigma-, rho` survive the twist of order `e`.
pub fn twisted_gates(profile: &StratumProfile, e: u64) -> [bool; 3] {
    let e = e as i64;
    let ni = profile.n_gcd();
    let lcm = num_integer::lcm(ni, profile.q);
    [ni % e == 0, profile.q % e == 0, lcm % e == 0]
}

/// Twisted topological parts; needs `p = 0` and `nu_z = 1`.
pub fn stratum_twisted_topological(
    profile: &StratumProfile,
    e: u64,
) -> Result<StratumZeta<RationalFunction>> {
    if profile.p != 0 || profile.nuz != 1 {
        return Err(Error::HypothesisViolated(format!(
            "twisted parts need p = 0 and nu_z = 1, got p = {}, nu_z = {}",
            profile.p, profile.nuz
        )));
    }
    if e == 0 {
        return Err(Error::Invalid("twist order must be positive".into()));
    }
    let plain = stratum_topological(profile);
    let [plus, minus, rho] = twisted_gates(profile, e);
    let gate = |keep: bool, x: RationalFunction| if keep { x } else { RationalFunction::zero() };
    Ok(StratumZeta {
        sigma_plus: gate(plus, plain.sigma_plus),
        sigma_minus: gate(minus, plain.sigma_minus),
        rho: gate(rho, plain.rho),
        rho_star: RationalFunction::zero(),
    })
}

/// The gates re-derived from the cone invariants `N(.)`, computed by
/// brute force over cone points.
pub fn twisted_gates_from_cones(profile: &StratumProfile, e: u64, bound: i64) -> [bool; 3] {
    [ConeKind::SigmaPlus, ConeKind::SigmaMinus, ConeKind::Rho]
        .map(|k| crate::cones::brute_force_gcd_invariant(profile, k, bound) % e == 0)
}

/// Same gates from the closed forms of `N(.)`.
pub fn twisted_gates_closed_form(profile: &StratumProfile, e: u64) -> [bool; 3] {
    [ConeKind::SigmaPlus, ConeKind::SigmaMinus, ConeKind::Rho].map(|k| cone_gcd_invariant(profile, k) % e == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::euler_specialize;

    fn basic() -> StratumProfile {
        StratumProfile::new(vec![2], vec![1], 2, 0, 1).unwrap()
    }

    fn inv(a: i64, b: i64) -> RationalFunction {
        RationalFunction::inverse_linear(rat(a), rat(b)).unwrap()
    }

    #[test]
    fn closed_forms_for_basic_profile() {
        let z = stratum_topological(&basic());
        assert_eq!(z.sigma_plus, inv(2, 2));
        assert_eq!(z.sigma_minus, inv(2, 2));
        assert_eq!(z.rho, inv(2, 2).scale(&rat(-2)));
        assert_eq!(z.rho_star, (inv(2, 2) * inv(1, 1)).scale(&rat(2)));
        assert_eq!(z.total(), inv(1, 1).pow(2).unwrap());
    }

    #[test]
    fn specialization_matches_closed_form() {
        let p = basic();
        let w = stratum_naive_motivic(&p).unwrap();
        let top = stratum_topological(&p);
        assert_eq!(euler_specialize(&w.sigma_plus).unwrap(), top.sigma_plus);
        assert_eq!(euler_specialize(&w.sigma_minus).unwrap(), top.sigma_minus);
        assert_eq!(euler_specialize(&w.rho).unwrap(), top.rho);
        assert_eq!(euler_specialize(&w.rho_star).unwrap(), top.rho_star);
    }

    #[test]
    fn series_match_lattice_oracle() {
        for p in [
            basic(),
            StratumProfile::new(vec![1], vec![1], 1, 0, 1).unwrap(),
            StratumProfile::new(vec![2, 3], vec![1, 2], 4, 1, 2).unwrap(),
        ] {
            let w = stratum_naive_motivic(&p).unwrap();
            let oracle = lattice_series_oracle(&p, 8, -10);
            let got = w.try_map(|x| x.series_truncated(8, -10)).unwrap();
            assert_eq!(got, oracle, "{p:?}");
        }
    }

    #[test]
    fn rho_empty_below_first_solution() {
        let p = StratumProfile::new(vec![3], vec![1], 5, 0, 1).unwrap();
        let o = lattice_series_oracle(&p, 7, -30);
        assert!(o.rho.is_zero());
        assert!(lattice_series_oracle(&basic(), 0, -5).sigma_plus.is_zero());
    }

    #[test]
    fn twisted_gating() {
        let p = basic();
        assert!(stratum_twisted_topological(&p, 2).unwrap().total().is_zero());
        let seven = stratum_twisted_topological(&p, 7).unwrap();
        assert!(seven.parts().iter().all(|(_, x)| x.is_zero()));
        let one = stratum_twisted_topological(&p, 1).unwrap();
        assert!(one.rho_star.is_zero());
        assert_eq!(one.rho, stratum_topological(&p).rho);
        let bad = StratumProfile::new(vec![2], vec![1], 2, 1, 1).unwrap();
        assert!(matches!(
            stratum_twisted_topological(&bad, 2),
            Err(Error::HypothesisViolated(_))
        ));
    }
}

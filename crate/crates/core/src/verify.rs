//! The verification suite behind `topozeta verify`: one check per
//! acceptance criterion, each reporting pass/fail with a short detail.

use std::collections::BTreeSet;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{
    divisors, euler_phi, factorize, in_divisibility_set, jordan_totient, moebius, twist_reduction,
    ArithFnTable,
};
use crate::cones::{brute_force_gcd_invariant, ConeKind, StratumProfile};
use crate::io::{fixture, parse_bundle, parse_resolution};
use crate::suspension::{
    bundle_poles, fermat_discrepancy, fermat_nondegenerate, legacy_formula, pole_bound_f, pole_bound_g,
    poles_within, rational_poles, required_twists, suspend_f_twisted, suspend_f_untwisted, suspend_g,
    suspension_matrix, suspension_matrix_identity, SuspensionParams,
};
use crate::symbolic::{canonical, euler_specialize, parse_rational_function, rat, RationalFunction};
use crate::zeta::{
    bundle_from_resolution, lattice_series_oracle, resolution_topological, stratum_naive_motivic,
    stratum_topological, stratum_twisted_topological, ResolutionData, ZetaBundle,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = std::result::Result<String, String>;

fn record(id: u8, name: &'static str, check: Check) -> CriterionResult {
    let (passed, detail) = match check {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult {
        id,
        name,
        passed,
        detail,
    }
}

fn rf(text: &str) -> RationalFunction {
    parse_rational_function(text, "s").expect("literal parses")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn shipped_bundle(name: &str) -> std::result::Result<ZetaBundle, String> {
    parse_bundle(fixture(name).ok_or_else(|| format!("missing fixture {name}"))?).map_err(err)
}

fn shipped_resolution(name: &str) -> std::result::Result<ResolutionData, String> {
    Ok(parse_resolution(fixture(name).ok_or_else(|| format!("missing fixture {name}"))?)
        .map_err(err)?
        .value)
}

fn is_prime(q: i64) -> bool {
    let f = factorize(q as u64);
    f.len() == 1 && f[0].1 == 1
}

/// Resolution fixtures with the dimension of the ambient space of `f`.
fn resolution_fixtures() -> std::result::Result<Vec<(String, ResolutionData)>, String> {
    let mut out = Vec::new();
    for q in 2..=12 {
        let name = format!("fermat_q{q}.json");
        out.push((name.clone(), shipped_resolution(&name)?));
    }
    for name in ["x5y6_resolution.json", "z2_minus_x2.json"] {
        out.push((name.to_string(), shipped_resolution(name)?));
    }
    Ok(out)
}

/// The F-table of `x^5 + y^6` suspended by 10 points.
pub fn f_table_5_6_10(d: u64) -> RationalFunction {
    match d {
        1 => rf("(3*s + 7)/((15*s + 7)*(s + 1))"),
        3 | 6 => rf("6/(15*s + 7)"),
        5 => rf("1/(2*(15*s + 7))"),
        10 => rf("-5/(2*(15*s + 7))"),
        15 | 30 => rf("7/(2*(15*s + 7))"),
        _ => RationalFunction::zero(),
    }
}

pub fn criterion_1() -> CriterionResult {
    let check = || -> Check {
        let b = shipped_bundle("x5y6.json")?;
        for d in 1..=30u64 {
            let got = suspend_f_twisted(&b, 10, d).map_err(err)?;
            let want = f_table_5_6_10(d);
            ensure(got == want, || {
                format!("Z^({d})(F) = {}, expected {}", canonical(&got, "s"), canonical(&want, "s"))
            })?;
        }
        Ok("Z^(d)(F) matches the table for d = 1..30".into())
    };
    record(1, "x^5+y^6 suspended by 10 points", check())
}

pub fn criterion_2() -> CriterionResult {
    let check = || -> Check {
        let b = shipped_bundle("lvp.json")?;
        let got = suspend_f_twisted(&b, 84, 27).map_err(err)?;
        let want = rf("8/(756*s + 317)");
        ensure(got == want, || format!("Z^(27)(F) = {}", canonical(&got, "s")))?;
        Ok(format!("Z^(27)(F) = {}", canonical(&got, "s")))
    };
    record(2, "Q = 84, l = 27 twisted suspension", check())
}

pub fn criterion_3() -> CriterionResult {
    let check = || -> Check {
        let mut equal_at = Vec::new();
        for q in 2..=12i64 {
            let res = shipped_resolution(&format!("fermat_q{q}.json"))?;
            let twists: BTreeSet<u64> = divisors(q as u64).into_iter().collect();
            let b = bundle_from_resolution(&res, &twists).map_err(err)?;
            let z = suspend_f_untwisted(&b, q).map_err(err)?;
            ensure(z == fermat_nondegenerate(q), || {
                format!("Q = {q}: Z(F) = {}", canonical(&z, "s"))
            })?;
            let legacy = legacy_formula(&b, q).map_err(err)?;
            let diff = &z - &legacy;
            ensure(diff == fermat_discrepancy(q).map_err(err)?, || {
                format!("Q = {q}: difference {}", canonical(&diff, "s"))
            })?;
            ensure((z == legacy) == is_prime(q), || {
                format!("Q = {q}: legacy agreement {} but primality {}", z == legacy, is_prime(q))
            })?;
            if z == legacy {
                equal_at.push(q);
            }
        }
        ensure(equal_at == vec![2, 3, 5, 7, 11], || format!("legacy agrees at {equal_at:?}"))?;
        Ok(format!("legacy formula agrees exactly at Q in {equal_at:?}"))
    };
    record(3, "Fermat family and the legacy formula", check())
}

pub fn criterion_4() -> CriterionResult {
    let check = || -> Check {
        let b = shipped_bundle("x5y6.json")?;
        let expected = vec![
            vec![9, -3, -24, -72],
            vec![-1, 7, -24, -72],
            vec![-1, -3, -14, -72],
            vec![-1, -3, -24, -62],
        ];
        let m = suspension_matrix(10).map_err(err)?;
        ensure(m.b == expected, || format!("B = {:?}", m.b))?;
        let id = suspension_matrix_identity(&b, 10).map_err(err)?;
        ensure(id.matrix == m, || "identity used a different matrix".into())?;
        for (i, (l, r)) in id.lhs.iter().zip(&id.rhs).enumerate() {
            ensure(l == r, || {
                format!("row {i}: {} vs {}", canonical(l, "s"), canonical(r, "s"))
            })?;
        }
        ensure(id.equal, || "identity flag is false".into())?;
        Ok("Q ZF(s) = (1/t) A + B Zf(t) in all 4 rows".into())
    };
    record(4, "matrix identity for Q = 10", check())
}

/// Profiles for the oracle comparison, reproducible from `seed`.
pub fn random_profiles(seed: u64, count: usize) -> Vec<StratumProfile> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let d = rng.gen_range(1..=3);
            let n = (0..d).map(|_| rng.gen_range(1..=10)).collect();
            let nu = (0..d).map(|_| rng.gen_range(1..=4)).collect();
            let q = rng.gen_range(1..=10);
            let p = rng.gen_range(0..=3);
            let nuz = rng.gen_range(1..=4);
            StratumProfile::new(n, nu, q, p, nuz).expect("valid ranges")
        })
        .collect()
}

pub const ORACLE_SEED: u64 = 0x5eed_2024;
pub const ORACLE_PROFILES: usize = 60;
pub const ORACLE_T_BOUND: usize = 10;
pub const ORACLE_L_FLOOR: i64 = -6;
pub const GATE_BOX: i64 = 25;

/// Checks one profile against the lattice sum, the closed forms and the
/// cone-point gating.
pub fn oracle_triangle(p: &StratumProfile) -> std::result::Result<(), String> {
    let w = stratum_naive_motivic(p).map_err(err)?;
    let oracle = lattice_series_oracle(p, ORACLE_T_BOUND, ORACLE_L_FLOOR);
    let series = w
        .try_map(|x| x.series_truncated(ORACLE_T_BOUND, ORACLE_L_FLOOR))
        .map_err(err)?;
    for ((name, a), (_, b)) in series.parts().iter().zip(oracle.parts()) {
        ensure(*a == b, || format!("{p:?}: {name} series differs from the lattice sum"))?;
    }
    let top = stratum_topological(p);
    for ((name, m), (_, t)) in w.parts().iter().zip(top.parts()) {
        let e = euler_specialize(m).map_err(err)?;
        ensure(&e == t, || {
            format!("{p:?}: {name} specializes to {}, closed form {}", canonical(&e, "s"), canonical(t, "s"))
        })?;
    }
    let p0 = StratumProfile::new(p.n.clone(), p.nu.clone(), p.q, 0, 1).map_err(err)?;
    let kinds = [ConeKind::SigmaPlus, ConeKind::SigmaMinus, ConeKind::Rho];
    let brute = kinds.map(|k| brute_force_gcd_invariant(&p0, k, GATE_BOX));
    let plain = stratum_topological(&p0);
    for e in 1..=60u64 {
        let tw = stratum_twisted_topological(&p0, e).map_err(err)?;
        let expect = [
            (brute[0] % e == 0).then(|| plain.sigma_plus.clone()),
            (brute[1] % e == 0).then(|| plain.sigma_minus.clone()),
            (brute[2] % e == 0).then(|| plain.rho.clone()),
        ];
        let got = [&tw.sigma_plus, &tw.sigma_minus, &tw.rho];
        for (k, (g, x)) in got.iter().zip(&expect).enumerate() {
            let want = x.clone().unwrap_or_else(RationalFunction::zero);
            ensure(**g == want, || format!("{p0:?}: twist {e}, cone {k} gated wrongly"))?;
        }
        ensure(tw.rho_star.is_zero(), || format!("{p0:?}: rho* survives twist {e}"))?;
    }
    Ok(())
}

pub fn criterion_5() -> CriterionResult {
    let check = || -> Check {
        let profiles = random_profiles(ORACLE_SEED, ORACLE_PROFILES);
        for p in &profiles {
            oracle_triangle(p)?;
        }
        Ok(format!(
            "{} profiles, series to T^{ORACLE_T_BOUND}, gates for e <= 60",
            profiles.len()
        ))
    };
    record(5, "oracle triangle on random strata", check())
}

/// `phi` and `J_k` by multiplicative sieves.
fn sieve_jordan(n: usize, k: u32) -> Vec<i128> {
    let mut j: Vec<i128> = (0..=n as i128).map(|m| m.pow(k)).collect();
    let mut composite = vec![false; n + 1];
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        let pk = (p as i128).pow(k);
        for m in (p..=n).step_by(p) {
            if m > p {
                composite[m] = true;
            }
            j[m] = j[m] / pk * (pk - 1);
        }
    }
    j
}

pub fn criterion_6() -> CriterionResult {
    let check = || -> Check {
        let n = 10_000usize;
        let phi = ArithFnTable::phi(n);
        let gauss = ArithFnTable::one(n).dirichlet_convolve(&phi).map_err(err)?;
        ensure(gauss == ArithFnTable::power(n, 1), || "Gauss identity fails".into())?;
        let sieve_phi = sieve_jordan(n, 1);
        for m in 1..=n {
            ensure(i128::from(phi.at(m)) == sieve_phi[m], || format!("phi({m}) disagrees with the sieve"))?;
        }
        for k in 1..=3u32 {
            let jk = ArithFnTable::jordan(n, k);
            let sk = ArithFnTable::power(n, k);
            let sieve = sieve_jordan(n, k);
            for m in 1..=n {
                ensure(i128::from(jk.at(m)) == sieve[m], || format!("J_{k}({m}) disagrees with the sieve"))?;
            }
            ensure(ArithFnTable::one(n).dirichlet_convolve(&jk).map_err(err)? == sk, || {
                format!("sigma_{k} != 1 * J_{k}")
            })?;
            ensure(ArithFnTable::moebius(n).dirichlet_convolve(&sk).map_err(err)? == jk, || {
                format!("J_{k} != mu * sigma_{k}")
            })?;
        }
        // J_k(m) counts k-tuples in [1, m] coprime together with m
        for m in 1..=24u64 {
            let count1 = (1..=m).filter(|a| a.gcd(&m) == 1).count() as u64;
            let count2 = (1..=m)
                .flat_map(|a| (1..=m).map(move |b| (a, b)))
                .filter(|(a, b)| a.gcd(b).gcd(&m) == 1)
                .count() as u64;
            ensure(count1 == euler_phi(m) && count2 == jordan_totient(2, m), || {
                format!("tuple count at {m}")
            })?;
        }
        ensure(moebius(30) == -1 && moebius(12) == 0, || "moebius values".into())?;
        let mut cases = 0;
        for q in 1..=60u64 {
            for l in 1..=60u64 {
                if q % l == 0 {
                    continue;
                }
                cases += 1;
                let tr = twist_reduction(q, l);
                let member: Vec<bool> = (0..=2000u64).map(|m| m > 0 && in_divisibility_set(q, tr.l1, m)).collect();
                for m in 1..=2000u64 {
                    let inside = member[m as usize];
                    ensure(inside == (m % tr.generator == 0), || format!("D({q}, {}) at {m}", tr.l1))?;
                    if inside {
                        ensure(m % tr.l1 == 0, || format!("l1 does not divide {m} in D({q}, {})", tr.l1))?;
                        for k in (2 * m..=2000).step_by(m as usize) {
                            ensure(member[k as usize], || format!("D({q}, {}) not closed under multiples", tr.l1))?;
                        }
                    }
                }
                let small: Vec<u64> = (1..=500u64).filter(|&m| member[m as usize]).collect();
                for (i, &a) in small.iter().enumerate() {
                    for &b in &small[i..] {
                        ensure(member[a.gcd(&b) as usize], || format!("D({q}, {}) not closed under gcd", tr.l1))?;
                    }
                }
            }
        }
        Ok(format!("n <= {n}; {cases} pairs (Q, l) up to 60 with M <= 2000"))
    };
    record(6, "arithmetic identities", check())
}

fn evaluates_to_one(z: &RationalFunction) -> bool {
    z.eval(&rat(0)) == Some(rat(1))
}

pub fn criterion_7() -> CriterionResult {
    let check = || -> Check {
        let mut count = 0;
        let mut bundles = vec![("x5y6.json".to_string(), 10i64, shipped_bundle("x5y6.json")?)];
        for (name, res) in resolution_fixtures()? {
            let z = resolution_topological(&res, 1).map_err(err)?;
            ensure(evaluates_to_one(&z), || format!("{name}: Z(0) = {:?}", z.eval(&rat(0))))?;
            count += 1;
            for q in [2i64, 3, 4, 6, 10] {
                let twists: BTreeSet<u64> = divisors(q as u64).into_iter().collect();
                bundles.push((name.clone(), q, bundle_from_resolution(&res, &twists).map_err(err)?));
            }
        }
        for (name, q, b) in &bundles {
            let z = suspend_f_untwisted(b, *q).map_err(err)?;
            ensure(evaluates_to_one(&z), || format!("{name}, Q = {q}: Z(F)(0) != 1"))?;
            count += 1;
            for p in 0..=3 {
                let g = suspend_g(b, &SuspensionParams::new(*q, p, 1, 2).map_err(err)?).map_err(err)?;
                ensure(evaluates_to_one(&g), || format!("{name}, Q = {q}, p = {p}: Z(G)(0) != 1"))?;
                count += 1;
            }
        }
        Ok(format!("{count} untwisted outputs equal 1 at s = 0"))
    };
    record(7, "Z(0) = 1", check())
}

pub fn criterion_8() -> CriterionResult {
    let check = || -> Check {
        let mut count = 0;
        let mut cases: Vec<(String, i64, ZetaBundle, Vec<u64>)> = Vec::new();
        let x5y6 = shipped_bundle("x5y6.json")?;
        cases.push(("x5y6.json".into(), 10, x5y6, (1..=30).collect()));
        cases.push(("lvp.json".into(), 84, shipped_bundle("lvp.json")?, vec![27]));
        for (name, res) in resolution_fixtures()? {
            for q in [2i64, 3, 4, 6, 10] {
                let ls: Vec<u64> = (1..=2 * q as u64).collect();
                let mut twists = BTreeSet::new();
                for &l in &ls {
                    twists.extend(required_twists(q, l).map_err(err)?);
                }
                cases.push((name.clone(), q, bundle_from_resolution(&res, &twists).map_err(err)?, ls));
            }
        }
        for (name, q, b, ls) in &cases {
            let all_poles = bundle_poles(b, b.entries().keys().copied()).map_err(err)?;
            let twisted_bound = pole_bound_f(&all_poles, *q);
            let plain_poles = if b.contains(1) {
                Some(rational_poles(&b.get(1).map_err(err)?).map_err(err)?)
            } else {
                None
            };
            for &l in ls {
                let z = suspend_f_twisted(b, *q, l).map_err(err)?;
                let bound = match (&plain_poles, l) {
                    (Some(p), 1) => pole_bound_f(p, *q),
                    _ => twisted_bound.clone(),
                };
                ensure(poles_within(&z, &bound), || {
                    format!("{name}, Q = {q}, l = {l}: pole of {} outside candidates", canonical(&z, "s"))
                })?;
                count += 1;
            }
            if let Some(pf) = &plain_poles {
                for p in 0..=3 {
                    let params = SuspensionParams::new(*q, p, 3, 2).map_err(err)?;
                    let g = suspend_g(b, &params).map_err(err)?;
                    ensure(poles_within(&g, &pole_bound_g(pf, &params)), || {
                        format!("{name}, Q = {q}, p = {p}: pole of Z(G) = {} outside candidates", canonical(&g, "s"))
                    })?;
                    count += 1;
                }
            }
        }
        Ok(format!("{count} zeta functions checked"))
    };
    record(8, "pole containment", check())
}

pub fn run_all() -> Vec<CriterionResult> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
    ]
}

pub fn render_table(results: &[CriterionResult]) -> String {
    let mut out = String::new();
    for r in results {
        out.push_str(&format!(
            "{} criterion {}: {} ({})\n",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.name,
            r.detail
        ));
    }
    out
}

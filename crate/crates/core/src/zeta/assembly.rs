//! Zeta functions of `z^p (z^Q - f)` summed stratum by stratum over a
//! resolution of `f`, each stratum contributing `chi(E_I°)` times the four
//! parts of its local model.

use crate::cones::StratumProfile;
use crate::error::Result;
use crate::symbolic::{rat, MotivicExpression, RationalFunction};

use super::resolution::ResolutionData;
use super::stratum::{stratum_naive_motivic, stratum_topological, stratum_twisted_topological};

fn profiles(res: &ResolutionData, q: i64, p: i64, nuz: i64) -> Result<Vec<(StratumProfile, i64)>> {
    res.strata_data()
        .into_iter()
        .map(|s| {
            let (n, nu): (Vec<i64>, Vec<i64>) = s.data.into_iter().unzip();
            Ok((StratumProfile::new(n, nu, q, p, nuz)?, s.weight))
        })
        .collect()
}

/// `Z_top(z^p (z^Q - f))` by summing stratum contributions.
pub fn stratified_topological(res: &ResolutionData, q: i64, p: i64, nuz: i64) -> Result<RationalFunction> {
    Ok(profiles(res, q, p, nuz)?
        .into_iter()
        .map(|(pr, chi)| stratum_topological(&pr).total().scale(&rat(chi)))
        .sum())
}

/// `Z_top^(l)(z^Q - f)` for `l != 1` from the gated stratum parts.
pub fn stratified_twisted(res: &ResolutionData, q: i64, l: u64) -> Result<RationalFunction> {
    let mut total = RationalFunction::zero();
    for (pr, chi) in profiles(res, q, 0, 1)? {
        total = total + stratum_twisted_topological(&pr, l)?.total().scale(&rat(chi));
    }
    Ok(total)
}

/// Naive motivic zeta of `z^p (z^Q - f)` from stratum classes, when given.
pub fn stratified_naive_motivic(
    res: &ResolutionData,
    q: i64,
    p: i64,
    nuz: i64,
) -> Result<Option<MotivicExpression>> {
    let Some(classes) = res.class_data() else {
        return Ok(None);
    };
    let mut out = MotivicExpression::zero();
    for c in classes {
        let (n, nu): (Vec<i64>, Vec<i64>) = c.data.into_iter().unzip();
        let w = stratum_naive_motivic(&StratumProfile::new(n, nu, q, p, nuz)?)?.total();
        out = out.add(&w.scale(&c.weight));
    }
    Ok(Some(out))
}

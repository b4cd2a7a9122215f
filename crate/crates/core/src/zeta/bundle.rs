//! Families `e -> Z^(e)(f, s)` of twisted topological zeta functions.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::symbolic::RationalFunction;

use super::resolution::{resolution_topological, ResolutionData};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaBundle {
    entries: BTreeMap<u64, RationalFunction>,
    /// Absent twists read as the zero function instead of an error.
    pub default_zero: bool,
}

impl ZetaBundle {
    pub fn new(entries: BTreeMap<u64, RationalFunction>, default_zero: bool) -> Result<Self> {
        if entries.contains_key(&0) {
            return Err(Error::Invalid("twist order must be positive".into()));
        }
        Ok(ZetaBundle {
            entries,
            default_zero,
        })
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, RationalFunction)>) -> Result<Self> {
        Self::new(pairs.into_iter().collect(), true)
    }

    pub fn entries(&self) -> &BTreeMap<u64, RationalFunction> {
        &self.entries
    }

    pub fn contains(&self, e: u64) -> bool {
        self.entries.contains_key(&e)
    }

    pub fn insert(&mut self, e: u64, z: RationalFunction) {
        self.entries.insert(e, z);
    }

    /// Entry at twist `e`; a missing entry is zero (with a logged warning)
    /// or [`Error::MissingTwist`], depending on `default_zero`.
    pub fn get(&self, e: u64) -> Result<RationalFunction> {
        match self.entries.get(&e) {
            Some(z) => Ok(z.clone()),
            None if self.default_zero => {
                log::warn!("bundle has no entry for twist {e}; using 0");
                Ok(RationalFunction::zero())
            }
            None => Err(Error::MissingTwist(e)),
        }
    }

    /// Twists from `required` that are absent.
    pub fn missing(&self, required: &BTreeSet<u64>) -> Vec<u64> {
        required.iter().copied().filter(|e| !self.contains(*e)).collect()
    }
}

pub fn bundle_from_resolution(res: &ResolutionData, twists: &BTreeSet<u64>) -> Result<ZetaBundle> {
    if !twists.contains(&1) {
        return Err(Error::Invalid("twist set must contain 1".into()));
    }
    let entries = twists
        .iter()
        .map(|&e| Ok((e, resolution_topological(res, e)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    ZetaBundle::new(entries, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_entries() {
        let b = ZetaBundle::from_pairs([(1, RationalFunction::one())]).unwrap();
        assert!(b.get(5).unwrap().is_zero());
        let strict = ZetaBundle::new(b.entries().clone(), false).unwrap();
        assert_eq!(strict.get(5), Err(Error::MissingTwist(5)));
        assert_eq!(strict.missing(&[1, 2, 5].into()), vec![2, 5]);
    }
}

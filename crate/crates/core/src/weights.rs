//! Weight vectors and bundle identity.
//!
//! An entry `a` stands for `a * w1` when read as an `sl2` weight at level `l`,
//! and for the fundamental weight `w_a` when read as an `sp_2l` weight at
//! level one. Zero entries are kept.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Lie data of a bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `sl2` at level `l`.
    Sl2,
    /// `sp_2l` at level one; `l` is the Lie rank.
    Spc,
}

impl Family {
    pub const BOTH: [Family; 2] = [Family::Sl2, Family::Spc];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Sl2 => "sl2",
            Family::Spc => "spc",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A multiset of weights with even sum, stored weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<u32>);

impl WeightVector {
    /// Sorts descending and checks the parity of the sum.
    pub fn new(mut entries: Vec<u32>) -> Result<Self> {
        let sum = entries_sum(&entries);
        if !sum.is_multiple_of(2) {
            return Err(Error::OddWeightSum(sum));
        }
        entries.sort_unstable_by(|a, b| b.cmp(a));
        Ok(WeightVector(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u64 {
        entries_sum(&self.0)
    }

    /// Largest entry, 0 for the empty vector.
    pub fn max_entry(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

pub(crate) fn entries_sum(entries: &[u32]) -> u64 {
    entries.iter().map(|&a| u64::from(a)).sum()
}

fn write_tuple(f: &mut fmt::Formatter<'_>, entries: &[u32]) -> fmt::Result {
    f.write_str("(")?;
    for (i, a) in entries.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str(")")
}

/// The identity of one conformal blocks bundle.
///
/// `marked` holds the weight attached to each marked point `1..=n` in order.
/// Ranks only see the multiset ([`BundleSpec::weights`]); F-curve degrees see
/// the labelling.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BundleSpec {
    family: Family,
    level: u32,
    #[serde(rename = "weights")]
    marked: Vec<u32>,
    #[serde(skip)]
    weights: WeightVector,
}

impl BundleSpec {
    /// Builds a bundle with the points labelled in the given order.
    pub fn labeled(family: Family, level: u32, marked: Vec<u32>) -> Result<Self> {
        if level == 0 {
            return Err(Error::ZeroLevel);
        }
        if marked.is_empty() {
            return Err(Error::EmptyWeights);
        }
        let weights = WeightVector::new(marked.clone())?;
        if weights.max_entry() > level {
            return Err(Error::WeightExceedsLevel {
                weight: weights.max_entry(),
                level,
            });
        }
        Ok(BundleSpec {
            family,
            level,
            marked,
            weights,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Level for `sl2`, Lie rank for `sp_2l`.
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn n(&self) -> usize {
        self.marked.len()
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    pub fn marked_weights(&self) -> &[u32] {
        &self.marked
    }

    pub fn with_family(&self, family: Family) -> Self {
        BundleSpec {
            family,
            ..self.clone()
        }
    }

    /// Same marked weights at another level.
    pub fn at_level(&self, level: u32) -> Result<Self> {
        BundleSpec::labeled(self.family, level, self.marked.clone())
    }
}

impl fmt::Display for BundleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} l={} ", self.family, self.level)?;
        write_tuple(f, &self.marked)
    }
}

/// Builds a bundle in canonical form: points relabelled so weights decrease.
pub fn make_bundle(family: Family, level: u32, raw_weights: &[u32]) -> Result<BundleSpec> {
    let mut sorted = raw_weights.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    BundleSpec::labeled(family, level, sorted)
}

/// `s` with `a + b + c + d = 2(l + s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SParameter(pub i64);

impl SParameter {
    pub fn value(self) -> i64 {
        self.0
    }
}

pub fn s_parameter(weights: &WeightVector, level: u32) -> Result<SParameter> {
    if weights.len() != 4 {
        return Err(Error::Arity {
            expected: 4,
            got: weights.len(),
        });
    }
    Ok(SParameter(s_of_sum(weights.sum(), level)))
}

pub(crate) fn s_of_sum(sum: u64, level: u32) -> i64 {
    (sum / 2) as i64 - i64::from(level)
}

/// `sum / 2 - 1`.
pub fn stabilizing_lie_rank(weights: &WeightVector) -> Result<u32> {
    let sum = weights.sum();
    if sum < 2 {
        return Err(Error::DegenerateSum(sum));
    }
    Ok((sum / 2 - 1) as u32)
}

/// Replaces `w_i` by `level - w_i` at the given positions (0-based, in the
/// order of `marked`) and re-sorts.
pub fn plussed(marked: &[u32], level: u32, positions: &[usize]) -> Result<WeightVector> {
    if !positions.len().is_multiple_of(2) {
        return Err(Error::OddSubset(positions.len()));
    }
    if let Some(&w) = marked.iter().find(|&&w| w > level) {
        return Err(Error::WeightExceedsLevel { weight: w, level });
    }
    let mut out = marked.to_vec();
    let mut seen = vec![false; marked.len()];
    for &p in positions {
        if p >= marked.len() {
            return Err(Error::PositionOutOfRange {
                position: p,
                len: marked.len(),
            });
        }
        if std::mem::replace(&mut seen[p], true) {
            return Err(Error::DuplicatePosition(p));
        }
        out[p] = level - marked[p];
    }
    WeightVector::new(out)
}

/// Every weakly decreasing `n`-tuple with entries in `0..=max_entry` and even
/// sum, in increasing lexicographic order.
pub fn enumerate_weight_vectors(n: usize, max_entry: u32) -> WeightVectors {
    WeightVectors {
        current: Some(vec![0; n]),
        max_entry,
    }
}

/// Iterator returned by [`enumerate_weight_vectors`].
#[derive(Debug, Clone)]
pub struct WeightVectors {
    current: Option<Vec<u32>>,
    max_entry: u32,
}

impl WeightVectors {
    fn advance(&mut self) {
        let Some(cur) = self.current.as_mut() else {
            return;
        };
        // rightmost entry that can grow without breaking the ordering
        let pos = (0..cur.len()).rev().find(|&i| {
            let cap = if i == 0 { self.max_entry } else { cur[i - 1] };
            cur[i] < cap
        });
        match pos {
            Some(i) => {
                cur[i] += 1;
                cur[i + 1..].iter_mut().for_each(|x| *x = 0);
            }
            None => self.current = None,
        }
    }
}

impl Iterator for WeightVectors {
    type Item = WeightVector;

    fn next(&mut self) -> Option<WeightVector> {
        loop {
            let cur = self.current.clone()?;
            self.advance();
            if entries_sum(&cur).is_multiple_of(2) {
                return Some(WeightVector(cur));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wv(v: &[u32]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn make_bundle_sorts() {
        let b = make_bundle(Family::Sl2, 5, &[4, 4, 4, 4]).unwrap();
        assert_eq!(b.weights().entries(), &[4, 4, 4, 4]);
        let b = make_bundle(Family::Spc, 5, &[1, 2, 2, 1]).unwrap();
        assert_eq!(b.weights().entries(), &[2, 2, 1, 1]);
        assert_eq!(b.marked_weights(), &[2, 2, 1, 1]);
    }

    #[test]
    fn make_bundle_errors() {
        assert_eq!(
            make_bundle(Family::Sl2, 3, &[1, 1, 1]),
            Err(Error::OddWeightSum(3))
        );
        assert_eq!(
            make_bundle(Family::Sl2, 3, &[4, 2]),
            Err(Error::WeightExceedsLevel {
                weight: 4,
                level: 3
            })
        );
        assert_eq!(make_bundle(Family::Spc, 3, &[]), Err(Error::EmptyWeights));
        assert_eq!(make_bundle(Family::Spc, 0, &[0, 0]), Err(Error::ZeroLevel));
    }

    #[test]
    fn labeled_keeps_order() {
        let b = BundleSpec::labeled(Family::Sl2, 1, vec![1, 0, 1]).unwrap();
        assert_eq!(b.marked_weights(), &[1, 0, 1]);
        assert_eq!(b.weights().entries(), &[1, 1, 0]);
    }

    #[test]
    fn s_values() {
        assert_eq!(s_parameter(&wv(&[4, 4, 4, 4]), 5).unwrap().value(), 3);
        assert_eq!(s_parameter(&wv(&[2, 2, 1, 1]), 5).unwrap().value(), -2);
        assert_eq!(s_parameter(&wv(&[0, 0, 0, 0]), 1).unwrap().value(), -1);
        assert_eq!(
            s_parameter(&wv(&[1, 1]), 1),
            Err(Error::Arity {
                expected: 4,
                got: 2
            })
        );
    }

    #[test]
    fn stabilizing_rank_values() {
        assert_eq!(stabilizing_lie_rank(&wv(&[5, 4, 3, 2, 1, 1])).unwrap(), 7);
        assert_eq!(stabilizing_lie_rank(&wv(&[1, 1])).unwrap(), 0);
        assert_eq!(stabilizing_lie_rank(&wv(&[4, 4, 4, 4])).unwrap(), 7);
        assert_eq!(
            stabilizing_lie_rank(&wv(&[0, 0])),
            Err(Error::DegenerateSum(0))
        );
    }

    #[test]
    fn plussing_examples() {
        assert_eq!(plussed(&[3, 1], 4, &[0, 1]).unwrap(), wv(&[3, 1]));
        assert_eq!(plussed(&[2, 2, 1, 1], 5, &[0, 1]).unwrap(), wv(&[3, 3, 1, 1]));
        assert_eq!(plussed(&[3, 2, 1], 4, &[]).unwrap(), wv(&[3, 2, 1]));
        assert_eq!(plussed(&[3, 2, 1], 4, &[0]), Err(Error::OddSubset(1)));
        assert_eq!(
            plussed(&[3, 1], 4, &[0, 0]),
            Err(Error::DuplicatePosition(0))
        );
        assert!(matches!(
            plussed(&[3, 1], 4, &[0, 2]),
            Err(Error::PositionOutOfRange { .. })
        ));
    }

    #[test]
    fn enumeration_small_cases() {
        let got: Vec<_> = enumerate_weight_vectors(2, 1).collect();
        assert_eq!(got, vec![wv(&[0, 0]), wv(&[1, 1])]);
        let got: Vec<_> = enumerate_weight_vectors(4, 1).collect();
        assert_eq!(got, vec![wv(&[0, 0, 0, 0]), wv(&[1, 1, 0, 0]), wv(&[1, 1, 1, 1])]);
        assert_eq!(enumerate_weight_vectors(4, 2).count(), 9);
        assert_eq!(enumerate_weight_vectors(0, 3).count(), 1);
    }
}

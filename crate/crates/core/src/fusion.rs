//! Ranks of `sl2` conformal blocks (equal to the `sp_2l` level-one ranks).
//!
//! Base rules are the two- and three-point fusion rules; everything else goes
//! through the factorization recursion
//! `rk(w) = sum_mu rk(w', mu) * rk(x, y, mu)` where `x, y` are the two smallest
//! entries and `w'` the rest. Results are cached per `(multiset, level)`.

use std::sync::OnceLock;

use dashmap::DashMap;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::weights::{entries_sum, s_parameter, stabilizing_lie_rank, WeightVector};

/// Dimension of a space of conformal blocks.
pub type Rank = BigUint;

type Key = (Vec<u32>, u32);

fn cache() -> &'static DashMap<Key, Rank> {
    static CACHE: OnceLock<DashMap<Key, Rank>> = OnceLock::new();
    CACHE.get_or_init(DashMap::new)
}

/// Number of cached `(multiset, level)` entries.
pub fn cache_len() -> usize {
    cache().len()
}

fn check_level(weights: &[u32], level: u32) -> Result<()> {
    match weights.iter().find(|&&w| w > level) {
        Some(&w) => Err(Error::WeightExceedsLevel { weight: w, level }),
        None => Ok(()),
    }
}

/// Two-point rule: 1 iff the weights agree.
pub fn rank2(a: u32, b: u32, level: u32) -> Result<Rank> {
    check_level(&[a, b], level)?;
    Ok(indicator(a == b))
}

/// Three-point fusion rule.
pub fn rank3(a: u32, b: u32, c: u32, level: u32) -> Result<Rank> {
    check_level(&[a, b, c], level)?;
    Ok(indicator(admissible3(a, b, c, level)))
}

fn indicator(b: bool) -> Rank {
    if b {
        Rank::one()
    } else {
        Rank::zero()
    }
}

#[inline]
pub(crate) fn admissible3(a: u32, b: u32, c: u32, level: u32) -> bool {
    let (a, b, c, l) = (u64::from(a), u64::from(b), u64::from(c), u64::from(level));
    let sum = a + b + c;
    sum % 2 == 0 && a <= b + c && b <= a + c && c <= a + b && sum <= 2 * l
}

/// True iff the largest entry exceeds the sum of the others, which forces
/// rank zero at every level.
pub fn triangle_vanishes(weights: &[u32]) -> bool {
    let Some(&max) = weights.iter().max() else {
        return false;
    };
    u64::from(max) > entries_sum(weights) - u64::from(max)
}

/// Rank of a canonical bundle.
pub fn rank(weights: &WeightVector, level: u32) -> Result<Rank> {
    rank_of(weights.entries(), level)
}

/// Rank of an arbitrary multiset; odd sums give 0.
pub fn rank_of(weights: &[u32], level: u32) -> Result<Rank> {
    check_level(weights, level)?;
    let mut key: Vec<u32> = weights.iter().copied().filter(|&w| w > 0).collect();
    key.sort_unstable_by(|a, b| b.cmp(a));
    Ok(rank_canonical(key, level))
}

/// `key` is sorted descending with zeros removed and entries at most `level`.
pub(crate) fn rank_canonical(key: Vec<u32>, level: u32) -> Rank {
    if !entries_sum(&key).is_multiple_of(2) || triangle_vanishes(&key) {
        return Rank::zero();
    }
    match key.len() {
        0 => return Rank::one(),
        1 => return Rank::zero(),
        2 => return indicator(key[0] == key[1]),
        3 => return indicator(admissible3(key[0], key[1], key[2], level)),
        _ => {}
    }
    let cache_key = (key, level);
    if let Some(hit) = cache().get(&cache_key) {
        return hit.clone();
    }
    let key = &cache_key.0;
    let (rest, tail) = key.split_at(key.len() - 2);
    let (x, y) = (tail[0], tail[1]);
    let mut total = Rank::zero();
    let hi = (x + y).min(2 * level - x - y);
    let mut mu = x - y;
    while mu <= hi {
        total += rank_canonical(insert_sorted(rest, mu), level);
        mu += 2;
    }
    cache().insert(cache_key, total.clone());
    total
}

/// Inserts `w` into a descending, zero-free slice.
pub(crate) fn insert_sorted(sorted: &[u32], w: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(sorted.len() + 1);
    let pos = sorted.partition_point(|&x| x >= w);
    out.extend_from_slice(&sorted[..pos]);
    if w > 0 {
        out.push(w);
    }
    out.extend_from_slice(&sorted[pos..]);
    out
}

/// `sum_mu rk(left, mu) * rk(right, mu)` over `mu = 0..=level`.
pub fn factorization_sum(left: &[u32], right: &[u32], level: u32) -> Result<Rank> {
    check_level(left, level)?;
    check_level(right, level)?;
    let mut total = Rank::zero();
    let mut l = left.to_vec();
    let mut r = right.to_vec();
    for mu in 0..=level {
        l.push(mu);
        r.push(mu);
        let a = rank_of(&l, level)?;
        if !a.is_zero() {
            total += a * rank_of(&r, level)?;
        }
        l.pop();
        r.pop();
    }
    Ok(total)
}

/// Four-point rank classification by closed-form conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RankOneClass {
    Zero,
    One,
    MoreThanOne,
}

impl RankOneClass {
    pub fn of_rank(r: &Rank) -> Self {
        if r.is_zero() {
            RankOneClass::Zero
        } else if r.is_one() {
            RankOneClass::One
        } else {
            RankOneClass::MoreThanOne
        }
    }
}

pub fn classify_rank_one_4pt(weights: &WeightVector, level: u32) -> Result<RankOneClass> {
    let s = s_parameter(weights, level)?.value();
    check_level(weights.entries(), level)?;
    let [a, b, c, d] = four(weights).map(i64::from);
    if d == 0 {
        // a zero weight leaves a three-point bundle, of rank 0 or 1
        let [x, y, z, _] = four(weights);
        return Ok(if admissible3(x, y, z, level) {
            RankOneClass::One
        } else {
            RankOneClass::Zero
        });
    }
    let l = i64::from(level);
    let all_at_least_s = [a, b, c, d].iter().all(|&w| w >= s);
    let all_above_s = [a, b, c, d].iter().all(|&w| w > s);
    let one = (s >= 0 && all_at_least_s && (a == l || d == s)) || (s < 0 && a == l + s);
    let more = (s >= 0 && all_above_s && a != l) || (s < 0 && a < l + s);
    Ok(match (one, more) {
        (true, _) => RankOneClass::One,
        (false, true) => RankOneClass::MoreThanOne,
        (false, false) => RankOneClass::Zero,
    })
}

pub(crate) fn four(weights: &WeightVector) -> [u32; 4] {
    let e = weights.entries();
    [e[0], e[1], e[2], e[3]]
}

/// Ranks at each level in `lo..=hi`.
pub fn rank_at_levels(weights: &WeightVector, lo: u32, hi: u32) -> Result<Vec<Rank>> {
    check_level(weights.entries(), lo)?;
    (lo..=hi).map(|l| rank(weights, l)).collect()
}

/// Four-point rank below the stable range predicted from the stable rank:
/// `rk(r + 1 + s) = rk(r + 1) + s` for `s <= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictedRank {
    pub value: Rank,
    /// The raw prediction was negative and was floored at zero.
    pub clamped: bool,
}

pub fn predicted_four_point_rank(weights: &WeightVector, level: u32) -> Result<PredictedRank> {
    if weights.len() != 4 {
        return Err(Error::Arity {
            expected: 4,
            got: weights.len(),
        });
    }
    check_level(weights.entries(), level)?;
    let stab = stabilizing_lie_rank(weights)?;
    let stable_level = (stab + 1).max(weights.max_entry());
    let stable = rank(weights, stable_level)?
        .to_i64()
        .expect("four-point ranks are bounded by the level");
    let s = i64::from(level) - i64::from(stab) - 1;
    let raw = if s >= 0 { stable } else { stable + s };
    Ok(PredictedRank {
        value: Rank::from(raw.max(0) as u64),
        clamped: raw < 0,
    })
}

//! Degrees of four-point bundles on `M_0,4 = P^1`.
//!
//! Throughout, `(a, b, c, d)` is sorted descending and `a + b + c + d = 2(l + s)`.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::fusion::{four, rank_canonical};
use crate::weights::{Family, WeightVector};

/// Degree of a four-point bundle.
pub type Degree4 = u64;

fn check(weights: &WeightVector, level: u32) -> Result<[u32; 4]> {
    if weights.len() != 4 {
        return Err(Error::Arity {
            expected: 4,
            got: weights.len(),
        });
    }
    if weights.max_entry() > level {
        return Err(Error::WeightExceedsLevel {
            weight: weights.max_entry(),
            level,
        });
    }
    Ok(four(weights))
}

/// `rank * s` for `s >= 0`, else 0.
pub fn deg4_sl2(weights: &WeightVector, level: u32) -> Result<Degree4> {
    let w = check(weights, level)?;
    Ok(sl2_sorted(w, level))
}

/// Closed form for `sp_2l` at level one.
pub fn deg4_sp(weights: &WeightVector, level: u32) -> Result<Degree4> {
    let w = check(weights, level)?;
    Ok(sp_sorted(w, level))
}

/// The `sp_2l` degree written as the rank times a linear factor.
pub fn deg4_sp_rank_form(weights: &WeightVector, level: u32) -> Result<Degree4> {
    let w = check(weights, level)?;
    let [a, _, _, d] = w.map(i64::from);
    let l = i64::from(level);
    let s = s_of(w, level);
    if a > l + s {
        return Ok(0);
    }
    let factor = match (upper_branch(w), s > 0) {
        (true, true) => l + 2 * s - a,
        (true, false) => l + s - a,
        (false, true) => d + s,
        (false, false) => d,
    };
    if factor <= 0 {
        return Ok(0);
    }
    let rank = four_point_rank(w, level) as i64;
    Ok(exact_half(rank * factor))
}

pub fn deg4(family: Family, weights: &WeightVector, level: u32) -> Result<Degree4> {
    let w = check(weights, level)?;
    Ok(deg4_sorted(family, w, level))
}

/// Unchecked entry point for callers that already hold a sorted, admissible tuple.
#[inline]
pub(crate) fn deg4_sorted(family: Family, w: [u32; 4], level: u32) -> Degree4 {
    match family {
        Family::Sl2 => sl2_sorted(w, level),
        Family::Spc => sp_sorted(w, level),
    }
}

fn s_of(w: [u32; 4], level: u32) -> i64 {
    let sum: i64 = w.iter().map(|&x| i64::from(x)).sum();
    debug_assert!(sum % 2 == 0, "odd four-point sum {w:?}");
    sum / 2 - i64::from(level)
}

/// `a + d >= b + c`; ties go here.
fn upper_branch(w: [u32; 4]) -> bool {
    w[0] + w[3] >= w[1] + w[2]
}

fn four_point_rank(w: [u32; 4], level: u32) -> u64 {
    let key: Vec<u32> = w.iter().copied().filter(|&x| x > 0).collect();
    rank_canonical(key, level)
        .to_u64()
        .expect("four-point ranks are bounded by the level")
}

fn sl2_sorted(w: [u32; 4], level: u32) -> Degree4 {
    let s = s_of(w, level);
    if s <= 0 {
        return 0;
    }
    four_point_rank(w, level) * s as u64
}

fn sp_sorted(w: [u32; 4], level: u32) -> Degree4 {
    let [a, _, _, d] = w.map(i64::from);
    let l = i64::from(level);
    let s = s_of(w, level);
    if a > l + s {
        return 0;
    }
    let numerator = match (upper_branch(w), s > 0) {
        (true, true) => (l + 1 - a) * (l + 2 * s - a),
        (true, false) => (l + s + 1 - a) * (l + s - a),
        (false, true) => (1 + d - s) * (d + s),
        (false, false) => d * (d + 1),
    };
    if numerator <= 0 {
        0
    } else {
        exact_half(numerator)
    }
}

fn exact_half(x: i64) -> Degree4 {
    assert!(x % 2 == 0, "degree numerator {x} is odd");
    (x / 2) as Degree4
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wv(v: &[u32]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn worked_examples() {
        let w = wv(&[4, 4, 4, 4]);
        assert_eq!(deg4_sl2(&w, 5).unwrap(), 6);
        assert_eq!(deg4_sp(&w, 5).unwrap(), 7);
        assert_eq!(deg4_sp_rank_form(&w, 5).unwrap(), 7);
        let w = wv(&[2, 2, 1, 1]);
        assert_eq!(deg4_sl2(&w, 5).unwrap(), 0);
        assert_eq!(deg4_sp(&w, 5).unwrap(), 1);
        assert_eq!(deg4_sp_rank_form(&w, 5).unwrap(), 1);
        let w = wv(&[0, 0, 0, 0]);
        assert_eq!(deg4_sl2(&w, 1).unwrap(), 0);
        assert_eq!(deg4(Family::Spc, &w, 3).unwrap(), 0);
    }

    #[test]
    fn dispatch() {
        let w = wv(&[4, 4, 4, 4]);
        assert_eq!(deg4(Family::Sl2, &w, 5).unwrap(), 6);
        assert_eq!(deg4(Family::Spc, &w, 5).unwrap(), 7);
    }

    #[test]
    fn large_first_weight_vanishes() {
        // a > l + s
        let w = wv(&[5, 1, 1, 1]);
        assert_eq!(deg4_sp(&w, 5).unwrap(), 0);
        assert_eq!(deg4_sp_rank_form(&w, 5).unwrap(), 0);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            deg4_sp(&wv(&[1, 1]), 3),
            Err(Error::Arity { expected: 4, got: 2 })
        ));
        assert!(matches!(
            deg4_sl2(&wv(&[4, 2, 1, 1]), 3),
            Err(Error::WeightExceedsLevel { .. })
        ));
    }
}

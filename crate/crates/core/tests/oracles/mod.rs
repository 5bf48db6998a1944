//! Reference implementations that share no code with the crate.

#![allow(dead_code)]

use std::f64::consts::PI;

/// Verlinde formula evaluated in floating point.
pub fn verlinde(weights: &[u32], level: u32) -> f64 {
    let k = f64::from(level + 2);
    let s = |i: u32, j: u32| (2.0 / k).sqrt() * (PI * f64::from(i + 1) * f64::from(j + 1) / k).sin();
    let n = weights.len() as i32;
    (0..=level)
        .map(|j| {
            let mut term = s(0, j).powi(2 - n);
            for &a in weights {
                term *= s(a, j);
            }
            term
        })
        .sum()
}

pub fn verlinde_rounded(weights: &[u32], level: u32) -> u64 {
    let v = verlinde(weights, level);
    assert!((v - v.round()).abs() < 1e-6, "non-integral Verlinde value {v}");
    v.round() as u64
}

fn fuses(a: u32, b: u32, c: u32, level: u32) -> bool {
    let sum = a + b + c;
    sum.is_multiple_of(2) && a <= b + c && b <= a + c && c <= a + b && sum <= 2 * level
}

/// Counts admissible chains `w1 -> mu_1 -> ... -> w_n` through the fusion graph.
pub fn path_count(weights: &[u32], level: u32) -> u128 {
    let size = level as usize + 1;
    // state: weight carried after fusing a prefix
    let mut state = vec![0u128; size];
    state[0] = 1;
    for &w in weights {
        let mut next = vec![0u128; size];
        for (mu, &count) in state.iter().enumerate() {
            if count == 0 {
                continue;
            }
            for (nu, slot) in next.iter_mut().enumerate() {
                if fuses(mu as u32, w, nu as u32, level) {
                    *slot += count;
                }
            }
        }
        state = next;
    }
    state[0]
}

/// All weakly decreasing tuples with even sum, by filtering every tuple.
pub fn brute_force_vectors(n: usize, max: u32) -> Vec<Vec<u32>> {
    let base = max as u64 + 1;
    let total = base.pow(n as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut v = Vec::with_capacity(n);
        for _ in 0..n {
            v.push((c % base) as u32);
            c /= base;
        }
        v.reverse();
        if v.windows(2).all(|p| p[0] >= p[1]) && v.iter().sum::<u32>() % 2 == 0 {
            out.push(v);
        }
    }
    out.sort();
    out
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Signed count of size-`n` multisets from `0..=m` weighted by `(-1)^sum`,
/// read off `(1-t)^-e (1+t)^-o` with `e`, `o` the numbers of even and odd values.
pub fn signed_multiset_count(n: usize, m: u32) -> i64 {
    let evens = (m / 2 + 1) as usize;
    let odds = m.div_ceil(2) as usize;
    let mut coeffs = vec![0i64; n + 1];
    coeffs[0] = 1;
    let mut mul = |sign: i64, times: usize| {
        for _ in 0..times {
            // multiply by 1 / (1 - sign t)
            for i in 1..=n {
                coeffs[i] += sign * coeffs[i - 1];
            }
        }
    };
    mul(1, evens);
    mul(-1, odds);
    coeffs[n]
}

/// Four-point degree by summing the sl2 formula `rank * max(s, 0)` over nothing
/// but the definitions: used to cross-check the `sl2` closed form.
pub fn sl2_degree_from_definitions(w: [u32; 4], level: u32) -> u64 {
    let s = i64::from(w.iter().sum::<u32>() / 2) - i64::from(level);
    if s <= 0 {
        return 0;
    }
    path_count(&w, level) as u64 * s as u64
}

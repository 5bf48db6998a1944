//! Finite-range verification scans.
//!
//! Each scan enumerates instances, checks them independently (in parallel),
//! and folds the outcomes into a [`VerificationReport`] in enumeration order.
//! A failing instance never stops a scan.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::degrees::{deg4_sl2, deg4_sp};
use crate::error::{Error, Result};
use crate::fusion::{rank, Rank};
use crate::intersection::{
    divisor_class, intersection_vector, is_trivial, verify_sum_decomposition, IntersectionVector,
};
use crate::weights::{
    enumerate_weight_vectors, make_bundle, plussed, stabilizing_lie_rank, BundleSpec, Family,
    WeightVector,
};

/// One failed assertion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub instance: String,
    /// F-curve, level or coordinate that exhibits the failure.
    pub witness: Option<String>,
    pub expected: String,
    pub got: String,
}

/// An F-curve on which the `sp` degree strictly exceeds the `sl2` degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub instance: String,
    pub curve: String,
    pub sl2_degree: String,
    pub spc_degree: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub proposition_id: String,
    pub passed: bool,
    pub instances_checked: u64,
    pub skipped: Vec<String>,
    pub witnesses: Vec<Witness>,
    pub failures: Vec<Failure>,
    /// Wall time; not serialized so reports stay byte-stable.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    fn new(id: &str) -> Self {
        VerificationReport {
            proposition_id: id.to_string(),
            passed: true,
            instances_checked: 0,
            skipped: Vec::new(),
            witnesses: Vec::new(),
            failures: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn is_pass(&self) -> bool {
        self.failures.is_empty()
    }

    fn absorb(&mut self, outcome: Outcome) {
        self.instances_checked += outcome.checked;
        self.failures.extend(outcome.failures);
        self.witnesses.extend(outcome.witnesses);
        self.skipped.extend(outcome.skipped);
    }

    fn finish(mut self, start: Instant) -> Self {
        self.passed = self.failures.is_empty();
        self.elapsed = start.elapsed();
        self
    }

    /// Concatenates several reports under a new id.
    pub fn merge(id: &str, parts: Vec<VerificationReport>) -> Self {
        let mut out = VerificationReport::new(id);
        for p in parts {
            out.instances_checked += p.instances_checked;
            out.skipped.extend(p.skipped);
            out.witnesses.extend(p.witnesses);
            out.failures.extend(p.failures);
            out.elapsed += p.elapsed;
        }
        out.passed = out.failures.is_empty();
        out
    }
}

#[derive(Default)]
struct Outcome {
    checked: u64,
    failures: Vec<Failure>,
    witnesses: Vec<Witness>,
    skipped: Vec<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, failure: impl FnOnce() -> Failure) {
        self.checked += 1;
        if !ok {
            self.failures.push(failure());
        }
    }
}

fn fail(instance: impl Into<String>, witness: Option<String>, expected: impl ToString, got: impl ToString) -> Failure {
    Failure {
        instance: instance.into(),
        witness,
        expected: expected.to_string(),
        got: got.to_string(),
    }
}

fn both(level: u32, w: &WeightVector) -> Result<(BundleSpec, BundleSpec)> {
    Ok((
        make_bundle(Family::Sl2, level, w.entries())?,
        make_bundle(Family::Spc, level, w.entries())?,
    ))
}

/// Divisor equality between the two families holds iff the rank is at most one.
pub fn check_prop_main(n: usize, max_level: u32) -> Result<VerificationReport> {
    let start = Instant::now();
    if n < 4 {
        return Err(Error::TooFewPoints(n));
    }
    let instances: Vec<(u32, WeightVector)> = (1..=max_level)
        .flat_map(|l| enumerate_weight_vectors(n, l).map(move |w| (l, w)))
        .collect();
    let outcomes: Vec<Result<Outcome>> = instances
        .par_iter()
        .map(|(l, w)| main_instance(*l, w))
        .collect();
    let mut report = VerificationReport::new("main");
    for o in outcomes {
        report.absorb(o?);
    }
    Ok(report.finish(start))
}

fn main_instance(level: u32, w: &WeightVector) -> Result<Outcome> {
    let (sl2, spc) = both(level, w)?;
    let r = rank(w, level)?;
    let vs = intersection_vector(&sl2)?;
    let vp = intersection_vector(&spc)?;
    let name = format!("{w} l={level} rank={r}");
    let mut out = Outcome::default();

    let above = vs.iter().zip(vp.degrees()).find(|((_, a), b)| a > b);
    out.check(above.is_none(), || {
        let ((c, a), b) = above.unwrap();
        fail(name.clone(), Some(c.to_string()), format!("sl2 <= spc ({b})"), a)
    });

    let strict = vs.iter().zip(vp.degrees()).find(|((_, a), b)| a < b);
    if r <= Rank::one() {
        out.check(strict.is_none(), || {
            let ((c, a), b) = strict.unwrap();
            fail(name.clone(), Some(c.to_string()), a, b)
        });
    } else {
        match strict {
            Some(((c, a), b)) => {
                out.checked += 1;
                out.witnesses.push(Witness {
                    instance: name,
                    curve: c.to_string(),
                    sl2_degree: a.to_string(),
                    spc_degree: b.to_string(),
                });
            }
            None => out.check(false, || {
                fail(name, None, "some curve with spc > sl2", "all degrees equal")
            }),
        }
    }
    Ok(out)
}

/// Classes are constant for Lie rank at or above the stabilizing Lie rank, and
/// nontrivial iff the rank there is positive.
pub fn check_stabilization(weights: &WeightVector, extra: u32) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut report = VerificationReport::new("stab");
    let name = weights.to_string();
    let stab = match stabilizing_lie_rank(weights) {
        Ok(s) => s,
        Err(e) => {
            report.skipped.push(format!("{name}: {e}"));
            return Ok(report.finish(start));
        }
    };
    if stab < weights.max_entry() {
        let e = Error::StabRankBelowMaxWeight {
            stab,
            max: weights.max_entry(),
        };
        report.skipped.push(format!("{name}: {e}"));
        return Ok(report.finish(start));
    }
    if weights.len() < 4 {
        report
            .skipped
            .push(format!("{name}: no F-curves on M_0,{}", weights.len()));
        return Ok(report.finish(start));
    }

    let base = make_bundle(Family::Spc, stab, weights.entries())?;
    let reference = intersection_vector(&base)?;
    let nontrivial = !rank(weights, stab)?.is_zero();
    let levels: Vec<u32> = (stab..=stab + extra).collect();
    let outcomes: Vec<Result<Outcome>> = levels
        .par_iter()
        .map(|&r| -> Result<Outcome> {
            let mut out = Outcome::default();
            let v = intersection_vector(&base.at_level(r)?)?;
            let inst = format!("{name} r={r}");
            out.check(v == reference, || {
                let c = first_difference(&reference, &v).unwrap_or_default();
                fail(inst.clone(), Some(c), "class at stabilizing Lie rank", "different class")
            });
            out.check(v.is_zero() != nontrivial, || {
                fail(inst, None, format!("nontrivial={nontrivial}"), format!("nontrivial={}", !v.is_zero()))
            });
            Ok(out)
        })
        .collect();
    for o in outcomes {
        report.absorb(o?);
    }
    Ok(report.finish(start))
}

fn first_difference(a: &IntersectionVector, b: &IntersectionVector) -> Option<String> {
    a.iter()
        .zip(b.degrees())
        .find(|((_, x), y)| x != y)
        .map(|((c, x), y)| format!("{c}: {x} vs {y}"))
}

/// Below `r + 1` ranks stay under the stable rank and rise strictly once
/// positive; from `r + 1` on they are constant.
pub fn check_rank_monotonicity(weights: &WeightVector, max_level: u32) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut report = VerificationReport::new("mono");
    let name = weights.to_string();
    let lo = weights.max_entry().max(1);
    if max_level < lo {
        report
            .skipped
            .push(format!("{name}: level range {lo}..={max_level} is empty"));
        return Ok(report.finish(start));
    }
    // the all-zero vector has no stabilizing Lie rank; its rank is 1 at every level
    let stab_level = stabilizing_lie_rank(weights).map_or(0, |s| s + 1);
    let ranks: Vec<Rank> = (lo..=max_level)
        .map(|l| rank(weights, l))
        .collect::<Result<_>>()?;
    let stable_level = stab_level.max(lo);
    let stable = rank(weights, stable_level)?;
    let mut out = Outcome::default();
    for (i, r) in ranks.iter().enumerate() {
        let l = lo + i as u32;
        let inst = format!("{name} l={l}");
        if l < stab_level {
            let next = if l < max_level {
                ranks[i + 1].clone()
            } else {
                rank(weights, l + 1)?
            };
            // runs of zero rank below the stable level are allowed
            let rising = if r.is_zero() { *r <= next } else { *r < next };
            out.check(rising, || fail(inst.clone(), Some(format!("l={}", l + 1)), format!("< {next}"), r));
            out.check(*r < stable, || fail(inst, Some(format!("l={stable_level}")), format!("< {stable}"), r));
        } else {
            out.check(*r == stable, || fail(inst, Some(format!("l={stable_level}")), &stable, r));
        }
    }
    report.absorb(out);
    Ok(report.finish(start))
}

/// `rk(w) = rk(plussed(w, I))` for every even subset `I`.
pub fn check_plussing(n: usize, level: u32) -> Result<VerificationReport> {
    let start = Instant::now();
    if n > 20 {
        return Err(Error::InvalidBoundaryIndex(format!("n = {n} is too large for subset enumeration")));
    }
    let vectors: Vec<WeightVector> = enumerate_weight_vectors(n, level).collect();
    let outcomes: Vec<Result<Outcome>> = vectors
        .par_iter()
        .map(|w| -> Result<Outcome> {
            let mut out = Outcome::default();
            let base = rank(w, level)?;
            for mask in 0u32..(1 << n) {
                if mask.count_ones() % 2 != 0 {
                    continue;
                }
                let positions: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                let p = plussed(w.entries(), level, &positions)?;
                let r = rank(&p, level)?;
                out.check(r == base, || {
                    fail(format!("{w} l={level}"), Some(format!("I={positions:?} -> {p}")), &base, &r)
                });
            }
            Ok(out)
        })
        .collect();
    let mut report = VerificationReport::new("plussing");
    for o in outcomes {
        report.absorb(o?);
    }
    Ok(report.finish(start))
}

/// Expected values for the worked examples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExampleValues {
    pub projective_rank_scaling: FourPointExample,
    pub above_critical_level: FourPointExample,
    pub six_point_sl2: Vec<i64>,
    pub six_point_spc: Vec<i64>,
    /// `(level, coordinates, rank)` rows for `sp` with weights `(5,4,3,2,1,1)`.
    pub stable_rows: Vec<(u32, Vec<i64>, u64)>,
    pub decomposition_target: Vec<u32>,
    pub decomposition_parts: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourPointExample {
    pub level: u32,
    pub weights: Vec<u32>,
    pub rank: u64,
    pub sl2_degree: u64,
    pub spc_degree: u64,
}

/// Marked-point order under which the six-point coordinates are stated.
pub const SIX_POINT_WEIGHTS: [u32; 6] = [4, 4, 3, 4, 4, 3];
pub const STABLE_WEIGHTS: [u32; 6] = [5, 4, 3, 2, 1, 1];

impl Default for ExampleValues {
    fn default() -> Self {
        let stable = vec![12, 5, 3, 10, 5, 5, 4, 4, 3, 5, 3, 7, 14, 11, 4, 4];
        ExampleValues {
            projective_rank_scaling: FourPointExample {
                level: 5,
                weights: vec![4, 4, 4, 4],
                rank: 2,
                sl2_degree: 6,
                spc_degree: 7,
            },
            above_critical_level: FourPointExample {
                level: 5,
                weights: vec![2, 2, 1, 1],
                rank: 2,
                sl2_degree: 0,
                spc_degree: 1,
            },
            six_point_sl2: vec![12, 6, 12, 12, 6, 12, 12, 0, 12, 2, 2, 6, 24, 2, 2, 6],
            six_point_spc: vec![14, 8, 14, 14, 8, 14, 14, 3, 14, 4, 4, 8, 28, 4, 4, 8],
            stable_rows: vec![
                (5, vec![7, 1, 1, 5, 2, 2, 1, 1, 1, 1, 1, 3, 7, 6, 1, 1], 3),
                (6, vec![11, 4, 2, 9, 4, 4, 3, 3, 2, 4, 2, 6, 12, 10, 3, 3], 7),
                (7, stable.clone(), 10),
                (8, stable.clone(), 11),
                (9, stable.clone(), 11),
                (10, stable, 11),
            ],
            decomposition_target: vec![9, 8, 8, 8, 8, 8, 8, 2, 1],
            decomposition_parts: vec![
                vec![1, 1, 1, 1, 1, 1, 1, 1, 0],
                vec![1, 1, 1, 1, 1, 1, 1, 1, 0],
                vec![1, 1, 1, 1, 1, 1, 1, 0, 1],
                vec![1, 1, 1, 1, 1, 1, 0, 0, 0],
                vec![1, 1, 1, 1, 1, 0, 1, 0, 0],
                vec![1, 1, 1, 1, 0, 1, 1, 0, 0],
                vec![1, 1, 1, 0, 1, 1, 1, 0, 0],
                vec![1, 1, 0, 1, 1, 1, 1, 0, 0],
                vec![1, 0, 1, 1, 1, 1, 1, 0, 0],
            ],
        }
    }
}

/// Reproduces the worked examples against the built-in expected values.
pub fn reproduce_examples() -> Result<VerificationReport> {
    reproduce_examples_against(&ExampleValues::default())
}

pub fn reproduce_examples_against(expected: &ExampleValues) -> Result<VerificationReport> {
    let start = Instant::now();
    let groups = vec![
        four_point_group("four-point (4,4,4,4)", &expected.projective_rank_scaling)?,
        four_point_group("four-point (2,2,1,1)", &expected.above_critical_level)?,
        six_point_group(expected)?,
        stable_table_group(expected)?,
        decomposition_group(expected)?,
    ];
    let mut report = VerificationReport::new("examples");
    for g in groups {
        report.absorb(g);
    }
    Ok(report.finish(start))
}

fn four_point_group(id: &str, ex: &FourPointExample) -> Result<Outcome> {
    let mut out = Outcome::default();
    let w = WeightVector::new(ex.weights.clone())?;
    let (sl2, spc) = both(ex.level, &w)?;
    let r = rank(&w, ex.level)?;
    let inst = |what: &str| format!("{id}: {what}");
    out.check(r == BigUint::from(ex.rank), || fail(inst("rank"), None, ex.rank, &r));
    let ds = deg4_sl2(&w, ex.level)?;
    out.check(ds == ex.sl2_degree, || fail(inst("sl2 degree"), None, ex.sl2_degree, ds));
    let dp = deg4_sp(&w, ex.level)?;
    out.check(dp == ex.spc_degree, || fail(inst("spc degree"), None, ex.spc_degree, dp));
    out.check(is_trivial(&sl2) == (ex.sl2_degree == 0), || {
        fail(inst("sl2 triviality"), None, ex.sl2_degree == 0, !(ex.sl2_degree == 0))
    });
    out.check(is_trivial(&spc) == (ex.spc_degree == 0), || {
        fail(inst("spc triviality"), None, ex.spc_degree == 0, !(ex.spc_degree == 0))
    });
    Ok(out)
}

fn coords_check(out: &mut Outcome, inst: String, bundle: &BundleSpec, expected: &[i64]) -> Result<()> {
    let class = divisor_class(bundle)?;
    let got: Option<Vec<i64>> = class
        .integer_coords()
        .and_then(|v| v.iter().map(|x| x.to_i64()).collect());
    let basis = crate::intersection::BoundaryBasis::nonadjacent_six();
    match got {
        Some(g) if g.len() == expected.len() => {
            for (i, (a, b)) in expected.iter().zip(&g).enumerate() {
                out.check(a == b, || {
                    fail(inst.clone(), Some(format!("coordinate {} ({})", i + 1, basis.label(i))), a, b)
                });
            }
        }
        _ => out.check(false, || {
            let shown: Vec<String> = class.coords.iter().map(|q| q.to_string()).collect();
            fail(inst.clone(), None, format!("{expected:?}"), shown.join(","))
        }),
    }
    Ok(())
}

fn six_point_group(expected: &ExampleValues) -> Result<Outcome> {
    let mut out = Outcome::default();
    let sl2 = BundleSpec::labeled(Family::Sl2, 5, SIX_POINT_WEIGHTS.to_vec())?;
    let spc = sl2.with_family(Family::Spc);
    // the two classes differ, so the rank must exceed one
    let r = rank(sl2.weights(), 5)?;
    out.check(r > BigUint::one(), || fail("six-point: rank", None, "> 1", &r));
    coords_check(&mut out, "six-point: sl2".into(), &sl2, &expected.six_point_sl2)?;
    coords_check(&mut out, "six-point: spc".into(), &spc, &expected.six_point_spc)?;
    Ok(out)
}

fn stable_table_group(expected: &ExampleValues) -> Result<Outcome> {
    let mut out = Outcome::default();
    let w = WeightVector::new(STABLE_WEIGHTS.to_vec())?;
    for (level, coords, expected_rank) in &expected.stable_rows {
        let b = make_bundle(Family::Spc, *level, w.entries())?;
        let r = rank(&w, *level)?;
        out.check(r == BigUint::from(*expected_rank), || {
            fail(format!("stable table: rank l={level}"), None, expected_rank, &r)
        });
        coords_check(&mut out, format!("stable table: class l={level}"), &b, coords)?;
    }
    Ok(out)
}

fn decomposition_group(expected: &ExampleValues) -> Result<Outcome> {
    let mut out = Outcome::default();
    let level = *expected.decomposition_target.iter().max().unwrap_or(&1);
    let target = BundleSpec::labeled(Family::Sl2, level, expected.decomposition_target.clone())?;
    let parts: Vec<BundleSpec> = expected
        .decomposition_parts
        .iter()
        .map(|p| BundleSpec::labeled(Family::Sl2, 1, p.clone()))
        .collect::<Result<_>>()?;
    let r = rank(target.weights(), level)?;
    out.check(r.is_one(), || fail("decomposition: target rank", None, 1, &r));
    let ok = verify_sum_decomposition(&target, &parts)?;
    out.check(ok, || fail("decomposition: sum of level-one classes", None, true, ok));
    Ok(out)
}

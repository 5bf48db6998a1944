//! F-curves, intersection numbers and boundary coordinates on `M_0,n`.
//!
//! A divisor class is held as its vector of F-curve degrees; F-curves span the
//! 1-cycles, so this vector determines the class. Coordinates in a boundary
//! basis are recovered by an exact linear solve.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::degrees::deg4_sorted;
use crate::error::{Error, Result};
use crate::fusion::{insert_sorted, rank, rank_canonical};
use crate::linalg::solve_exact;
use crate::weights::{entries_sum, BundleSpec};

/// Largest supported number of marked points (points are held in a `u64` mask).
pub const MAX_POINTS: usize = 63;

/// A partition of the marked points into four nonempty blocks.
///
/// Points are 0-based internally and 1-based when displayed. Blocks are kept
/// ordered by their smallest point, each block ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FCurve {
    blocks: [Vec<usize>; 4],
}

impl FCurve {
    /// Canonicalizes and checks the blocks.
    pub fn new(blocks: [Vec<usize>; 4]) -> Result<Self> {
        let mut blocks = blocks;
        for b in blocks.iter_mut() {
            if b.is_empty() {
                return Err(Error::InvalidCurve("empty block".into()));
            }
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        let n: usize = blocks.iter().map(Vec::len).sum();
        if n > MAX_POINTS {
            return Err(Error::InvalidCurve(format!("{n} points is too many")));
        }
        let mut seen = vec![false; n];
        for &p in blocks.iter().flatten() {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidCurve(format!(
                    "blocks do not partition 1..={n}"
                )));
            }
        }
        Ok(FCurve { blocks })
    }

    pub fn blocks(&self) -> &[Vec<usize>; 4] {
        &self.blocks
    }

    /// Number of marked points.
    pub fn n(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    fn masks(&self) -> [u64; 4] {
        self.blocks.clone().map(|b| mask_of(&b))
    }
}

fn mask_of(points: &[usize]) -> u64 {
    points.iter().fold(0, |m, &p| m | (1 << p))
}

impl fmt::Display for FCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.n() >= 10;
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            for (j, p) in block.iter().enumerate() {
                if wide && j > 0 {
                    f.write_str(".")?;
                }
                write!(f, "{}", p + 1)?;
            }
        }
        Ok(())
    }
}

impl FromStr for FCurve {
    type Err = Error;

    /// Parses `1|2|3|456`; blocks with points above 9 separate points by `.`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split('|').collect();
        if parts.len() != 4 {
            return Err(Error::InvalidCurve(format!("{s:?} does not have 4 blocks")));
        }
        let mut blocks: [Vec<usize>; 4] = Default::default();
        for (slot, part) in blocks.iter_mut().zip(&parts) {
            let points: Vec<&str> = if part.contains('.') {
                part.split('.').collect()
            } else {
                part.split("").filter(|t| !t.is_empty()).collect()
            };
            for p in points {
                let v: usize = p
                    .parse()
                    .map_err(|_| Error::InvalidCurve(format!("bad point {p:?} in {s:?}")))?;
                if v == 0 {
                    return Err(Error::InvalidCurve("points are numbered from 1".into()));
                }
                slot.push(v - 1);
            }
        }
        FCurve::new(blocks)
    }
}

/// Every F-curve of `M_0,n`, ordered by restricted growth string.
pub fn enumerate_fcurves(n: usize) -> Result<Vec<FCurve>> {
    if n < 4 {
        return Err(Error::TooFewPoints(n));
    }
    if n > MAX_POINTS {
        return Err(Error::InvalidCurve(format!("{n} points is too many")));
    }
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    grow(&mut labels, 1, 0, n, &mut out);
    Ok(out)
}

fn grow(labels: &mut [usize], i: usize, max: usize, n: usize, out: &mut Vec<FCurve>) {
    // not enough points left to open the remaining blocks
    if 3 - max > n - i {
        return;
    }
    if i == n {
        let mut blocks: [Vec<usize>; 4] = Default::default();
        for (p, &b) in labels.iter().enumerate() {
            blocks[b].push(p);
        }
        out.push(FCurve { blocks });
        return;
    }
    for b in 0..=(max + 1).min(3) {
        labels[i] = b;
        grow(labels, i + 1, max.max(b), n, out);
    }
}

/// A nonzero summand of the factorization formula for `deg(V|F)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    /// Attaching weights, one per block in block order.
    pub attaching: [u32; 4],
    /// Four-point degree at the attaching weights.
    pub degree: u64,
    /// Product of the four block ranks.
    pub multiplicity: BigUint,
}

/// `rk(w_I, mu)` for every attaching weight, restricted to nonzero values.
fn block_ranks(block: &[u32], level: u32) -> Vec<(u32, BigUint)> {
    let mut base: Vec<u32> = block.iter().copied().filter(|&w| w > 0).collect();
    base.sort_unstable_by(|a, b| b.cmp(a));
    let parity = entries_sum(&base) % 2;
    (0..=level)
        .filter(|&mu| u64::from(mu) % 2 == parity)
        .filter_map(|mu| {
            let r = rank_canonical(insert_sorted(&base, mu), level);
            (!r.is_zero()).then_some((mu, r))
        })
        .collect()
}

fn for_each_term(bundle: &BundleSpec, curve: &FCurve, mut f: impl FnMut(Term)) {
    let level = bundle.level();
    let marked = bundle.marked_weights();
    let ranks: Vec<Vec<(u32, BigUint)>> = curve
        .blocks
        .iter()
        .map(|b| {
            let w: Vec<u32> = b.iter().map(|&p| marked[p]).collect();
            block_ranks(&w, level)
        })
        .collect();
    for (m1, r1) in &ranks[0] {
        for (m2, r2) in &ranks[1] {
            for (m3, r3) in &ranks[2] {
                for (m4, r4) in &ranks[3] {
                    let attaching = [*m1, *m2, *m3, *m4];
                    let mut sorted = attaching;
                    sorted.sort_unstable_by(|a, b| b.cmp(a));
                    let degree = deg4_sorted(bundle.family(), sorted, level);
                    if degree == 0 {
                        continue;
                    }
                    f(Term {
                        attaching,
                        degree,
                        multiplicity: r1 * r2 * r3 * r4,
                    });
                }
            }
        }
    }
}

fn check_curve(bundle: &BundleSpec, curve: &FCurve) -> Result<()> {
    if curve.n() != bundle.n() {
        return Err(Error::PartitionMismatch {
            curve: curve.n(),
            bundle: bundle.n(),
        });
    }
    Ok(())
}

/// Nonzero terms of the factorization formula for `deg(V|F)`.
pub fn intersection_terms(bundle: &BundleSpec, curve: &FCurve) -> Result<Vec<Term>> {
    check_curve(bundle, curve)?;
    let mut out = Vec::new();
    for_each_term(bundle, curve, |t| out.push(t));
    Ok(out)
}

/// `deg(V|F) = sum_mu deg(V_mu) * prod_i rk(w_Ii, mu_i)`.
pub fn intersect(bundle: &BundleSpec, curve: &FCurve) -> Result<BigUint> {
    check_curve(bundle, curve)?;
    Ok(intersect_unchecked(bundle, curve))
}

fn intersect_unchecked(bundle: &BundleSpec, curve: &FCurve) -> BigUint {
    let mut total = BigUint::zero();
    for_each_term(bundle, curve, |t| total += t.multiplicity * t.degree);
    total
}

/// Degrees of a divisor on every F-curve of `M_0,n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionVector {
    curves: Vec<FCurve>,
    degrees: Vec<BigUint>,
}

impl IntersectionVector {
    pub fn n(&self) -> usize {
        self.curves.first().map_or(0, FCurve::n)
    }

    pub fn curves(&self) -> &[FCurve] {
        &self.curves
    }

    pub fn degrees(&self) -> &[BigUint] {
        &self.degrees
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FCurve, &BigUint)> {
        self.curves.iter().zip(&self.degrees)
    }

    pub fn get(&self, curve: &FCurve) -> Option<&BigUint> {
        self.curves
            .binary_search_by(|c| rg_cmp(c, curve))
            .ok()
            .map(|i| &self.degrees[i])
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, factor: u32) -> Self {
        IntersectionVector {
            curves: self.curves.clone(),
            degrees: self.degrees.iter().map(|d| d * factor).collect(),
        }
    }

    /// Entrywise sum; `None` if the vectors live on different `M_0,n`.
    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        if self.curves.len() != other.curves.len() || self.n() != other.n() {
            return None;
        }
        Some(IntersectionVector {
            curves: self.curves.clone(),
            degrees: self
                .degrees
                .iter()
                .zip(&other.degrees)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }
}

/// Order of `enumerate_fcurves`: lexicographic on the block label of each point.
fn rg_cmp(a: &FCurve, b: &FCurve) -> std::cmp::Ordering {
    let labels = |c: &FCurve| {
        let mut l = vec![0usize; c.n()];
        for (i, blk) in c.blocks.iter().enumerate() {
            for &p in blk {
                l[p] = i;
            }
        }
        l
    };
    labels(a).cmp(&labels(b))
}

pub fn intersection_vector(bundle: &BundleSpec) -> Result<IntersectionVector> {
    let curves = enumerate_fcurves(bundle.n())?;
    let degrees = curves
        .par_iter()
        .map(|c| intersect_unchecked(bundle, c))
        .collect();
    Ok(IntersectionVector { curves, degrees })
}

fn check_boundary(subset: &[usize], n: usize) -> Result<u64> {
    if n > MAX_POINTS || subset.iter().any(|&p| p >= n) {
        return Err(Error::InvalidBoundaryIndex(format!(
            "{subset:?} is not a subset of {n} points"
        )));
    }
    let mask = mask_of(subset);
    let size = mask.count_ones() as usize;
    if size != subset.len() {
        return Err(Error::InvalidBoundaryIndex(format!(
            "{subset:?} is not a subset of {n} points"
        )));
    }
    if size < 2 || size + 2 > n {
        return Err(Error::InvalidBoundaryIndex(format!(
            "|I| = {size} outside 2..={}",
            n.saturating_sub(2)
        )));
    }
    Ok(mask)
}

/// `F . delta_I`: +1 if `I` (or its complement) is a union of two blocks,
/// -1 if it is a single block, 0 otherwise.
pub fn boundary_pairing(curve: &FCurve, subset: &[usize]) -> Result<i32> {
    let n = curve.n();
    let mask = check_boundary(subset, n)?;
    Ok(pairing_masks(&curve.masks(), mask, n))
}

fn pairing_masks(blocks: &[u64; 4], subset: u64, n: usize) -> i32 {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let complement = full ^ subset;
    let hit = |m: u64| m == subset || m == complement;
    for i in 0..4 {
        for j in i + 1..4 {
            if hit(blocks[i] | blocks[j]) {
                return 1;
            }
        }
    }
    if blocks.iter().any(|&b| b.count_ones() >= 2 && hit(b)) {
        return -1;
    }
    0
}

/// A list of boundary divisors `delta_I` used as coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryBasis {
    pub id: String,
    pub n: usize,
    /// 0-based point sets.
    pub subsets: Vec<Vec<usize>>,
}

impl BoundaryBasis {
    pub fn new(id: impl Into<String>, n: usize, subsets: Vec<Vec<usize>>) -> Result<Self> {
        let mut subsets = subsets;
        for s in subsets.iter_mut() {
            s.sort_unstable();
            check_boundary(s, n)?;
        }
        Ok(BoundaryBasis {
            id: id.into(),
            n,
            subsets,
        })
    }

    /// Builds a basis from 1-based point lists.
    pub fn from_one_based(id: impl Into<String>, n: usize, subsets: &[Vec<usize>]) -> Result<Self> {
        let zero_based = subsets
            .iter()
            .map(|s| {
                s.iter()
                    .map(|&p| {
                        p.checked_sub(1).ok_or_else(|| {
                            Error::InvalidBoundaryIndex("points are numbered from 1".into())
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        BoundaryBasis::new(id, n, zero_based)
    }

    /// The nonadjacent basis of `Pic(M_0,6)` in the order
    /// `d13 d14 d15 d24 d25 d26 d35 d36 d46 d124 d125 d134 d135 d136 d145 d146`.
    pub fn nonadjacent_six() -> Self {
        const SETS: [&[usize]; 16] = [
            &[1, 3],
            &[1, 4],
            &[1, 5],
            &[2, 4],
            &[2, 5],
            &[2, 6],
            &[3, 5],
            &[3, 6],
            &[4, 6],
            &[1, 2, 4],
            &[1, 2, 5],
            &[1, 3, 4],
            &[1, 3, 5],
            &[1, 3, 6],
            &[1, 4, 5],
            &[1, 4, 6],
        ];
        let lists: Vec<Vec<usize>> = SETS.iter().map(|s| s.to_vec()).collect();
        BoundaryBasis::from_one_based("nonadjacent-m06", 6, &lists)
            .expect("built-in basis is valid")
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    /// Label like `d124` (or `d1.10.11` past nine points).
    pub fn label(&self, index: usize) -> String {
        let s = &self.subsets[index];
        let sep = if self.n >= 10 { "." } else { "" };
        let body: Vec<String> = s.iter().map(|p| (p + 1).to_string()).collect();
        format!("d{}", body.join(sep))
    }

    fn pairing_matrix(&self, curves: &[FCurve]) -> Vec<Vec<i32>> {
        let masks: Vec<u64> = self.subsets.iter().map(|s| mask_of(s)).collect();
        curves
            .iter()
            .map(|c| {
                let blocks = c.masks();
                masks
                    .iter()
                    .map(|&m| pairing_masks(&blocks, m, self.n))
                    .collect()
            })
            .collect()
    }
}

/// Exact coordinates of a divisor in a boundary basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    pub basis_id: String,
    pub coords: Vec<BigRational>,
}

impl DivisorClass {
    /// Coordinates as integers, if all are integral.
    pub fn integer_coords(&self) -> Option<Vec<BigInt>> {
        self.coords
            .iter()
            .map(|q| q.is_integer().then(|| q.to_integer()))
            .collect()
    }

    /// `F . D` for each curve, from the coordinates.
    pub fn degrees_on(&self, basis: &BoundaryBasis, curves: &[FCurve]) -> Vec<BigRational> {
        basis
            .pairing_matrix(curves)
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&self.coords)
                    .filter(|(p, _)| **p != 0)
                    .map(|(&p, x)| x * BigRational::from_integer(BigInt::from(p)))
                    .fold(BigRational::zero(), |a, b| a + b)
            })
            .collect()
    }
}

/// Coordinates in the built-in nonadjacent basis; `n` must be 6.
pub fn divisor_class(bundle: &BundleSpec) -> Result<DivisorClass> {
    if bundle.n() != 6 {
        return Err(Error::BasisUnavailable(bundle.n()));
    }
    divisor_class_in(bundle, &BoundaryBasis::nonadjacent_six())
}

pub fn divisor_class_in(bundle: &BundleSpec, basis: &BoundaryBasis) -> Result<DivisorClass> {
    if basis.n != bundle.n() {
        return Err(Error::ArityMismatch {
            left: bundle.n(),
            right: basis.n,
        });
    }
    let vector = intersection_vector(bundle)?;
    class_from_vector(&vector, basis)
}

/// Solves for coordinates reproducing a given intersection vector.
pub fn class_from_vector(vector: &IntersectionVector, basis: &BoundaryBasis) -> Result<DivisorClass> {
    let a: Vec<Vec<BigInt>> = basis
        .pairing_matrix(vector.curves())
        .into_iter()
        .map(|row| row.into_iter().map(BigInt::from).collect())
        .collect();
    let b: Vec<BigInt> = vector.degrees().iter().cloned().map(BigInt::from).collect();
    let coords = solve_exact(&a, &b)?;
    Ok(DivisorClass {
        basis_id: basis.id.clone(),
        coords,
    })
}

fn same_n(a: &BundleSpec, b: &BundleSpec) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::ArityMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    Ok(())
}

pub fn divisors_equal(left: &BundleSpec, right: &BundleSpec) -> Result<bool> {
    same_n(left, right)?;
    Ok(intersection_vector(left)? == intersection_vector(right)?)
}

/// True iff every F-curve degree vanishes (always true for `n < 4`).
pub fn is_trivial(bundle: &BundleSpec) -> bool {
    match enumerate_fcurves(bundle.n()) {
        Ok(curves) => curves
            .par_iter()
            .all(|c| intersect_unchecked(bundle, c).is_zero()),
        Err(_) => true,
    }
}

pub fn verify_sum_decomposition(target: &BundleSpec, parts: &[BundleSpec]) -> Result<bool> {
    for p in parts {
        same_n(target, p)?;
    }
    let lhs = intersection_vector(target)?;
    let mut rhs: Option<IntersectionVector> = None;
    for p in parts {
        let v = intersection_vector(p)?;
        rhs = Some(match rhs {
            None => v,
            Some(acc) => acc.checked_add(&v).expect("same n"),
        });
    }
    Ok(match rhs {
        Some(r) => r == lhs,
        None => lhs.is_zero(),
    })
}

/// Checks `c1(V(N l, N w)) = N c1(V(l, w))` for a rank-one base.
pub fn verify_scaling(base: &BundleSpec, factor: u32) -> Result<bool> {
    let r = rank(base.weights(), base.level())?;
    if !r.is_one() {
        return Err(Error::RankNotOne(r.to_string()));
    }
    let scaled = BundleSpec::labeled(
        base.family(),
        base.level() * factor,
        base.marked_weights().iter().map(|w| w * factor).collect(),
    )?;
    Ok(intersection_vector(&scaled)? == intersection_vector(base)?.scaled(factor))
}

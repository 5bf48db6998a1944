//! Fixtures shared by the benches.

use cblocks::{BundleSpec, Family};

pub fn six_point(family: Family) -> BundleSpec {
    BundleSpec::labeled(family, 5, vec![4, 4, 3, 4, 4, 3]).expect("valid bundle")
}

pub fn stable_row(level: u32) -> BundleSpec {
    BundleSpec::labeled(Family::Spc, level, vec![5, 4, 3, 2, 1, 1]).expect("valid bundle")
}

/// Level-nine target and its nine level-one summands on `M_0,9`.
pub fn decomposition() -> (BundleSpec, Vec<BundleSpec>) {
    let target = BundleSpec::labeled(Family::Sl2, 9, vec![9, 8, 8, 8, 8, 8, 8, 2, 1]).expect("valid bundle");
    let rows: [[u32; 9]; 9] = [
        [1, 1, 1, 1, 1, 1, 1, 1, 0],
        [1, 1, 1, 1, 1, 1, 1, 1, 0],
        [1, 1, 1, 1, 1, 1, 1, 0, 1],
        [1, 1, 1, 1, 1, 1, 0, 0, 0],
        [1, 1, 1, 1, 1, 0, 1, 0, 0],
        [1, 1, 1, 1, 0, 1, 1, 0, 0],
        [1, 1, 1, 0, 1, 1, 1, 0, 0],
        [1, 1, 0, 1, 1, 1, 1, 0, 0],
        [1, 0, 1, 1, 1, 1, 1, 0, 0],
    ];
    let parts = rows
        .iter()
        .map(|r| BundleSpec::labeled(Family::Sl2, 1, r.to_vec()).expect("valid bundle"))
        .collect();
    (target, parts)
}

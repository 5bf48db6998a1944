//! The `scan` table: one row per (weights, family, level).

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use cblocks::{enumerate_weight_vectors, intersection_vector, make_bundle, rank, Family, IntersectionVector};

use crate::Exit;

pub const MAX_N: usize = 9;
pub const MAX_LEVEL: u32 = 12;

/// Digest of the F-curve degrees; equal classes give equal hashes.
pub fn class_hash(v: &IntersectionVector) -> String {
    let mut h = Sha256::new();
    h.update(format!("n={};", v.n()).as_bytes());
    for (i, d) in v.degrees().iter().enumerate() {
        if i > 0 {
            h.update(b",");
        }
        h.update(d.to_string().as_bytes());
    }
    hex::encode(&h.finalize()[..8])
}

struct Row {
    weights: String,
    family: Family,
    level: u32,
    rank: String,
    trivial: bool,
    hash: String,
}

pub fn table(n: usize, lmax: u32) -> Result<Vec<u8>, Exit> {
    if !(4..=MAX_N).contains(&n) {
        return Err(Exit::usage(format!("--n must be in 4..={MAX_N}")));
    }
    if lmax > MAX_LEVEL {
        return Err(Exit::usage(format!("--lmax must be at most {MAX_LEVEL}")));
    }
    let instances: Vec<(u32, cblocks::WeightVector, Family)> = (1..=lmax)
        .flat_map(|l| {
            enumerate_weight_vectors(n, l)
                .flat_map(move |w| Family::BOTH.map(|f| (l, w.clone(), f)))
        })
        .collect();
    let rows: Vec<Row> = instances
        .par_iter()
        .map(|(level, w, family)| -> cblocks::Result<Row> {
            let b = make_bundle(*family, *level, w.entries())?;
            let v = intersection_vector(&b)?;
            let weights: Vec<String> = w.entries().iter().map(u32::to_string).collect();
            Ok(Row {
                weights: weights.join(","),
                family: *family,
                level: *level,
                rank: rank(w, *level)?.to_string(),
                trivial: v.is_zero(),
                hash: class_hash(&v),
            })
        })
        .collect::<cblocks::Result<_>>()?;

    let mut out = csv::Writer::from_writer(Vec::new());
    out.write_record(["weights", "family", "level", "rank", "trivial", "class_hash"])?;
    for r in rows {
        out.write_record([
            r.weights,
            r.family.to_string(),
            r.level.to_string(),
            r.rank,
            r.trivial.to_string(),
            r.hash,
        ])?;
    }
    out.into_inner().map_err(|e| Exit::usage(e.to_string()))
}

//! Exact computations for conformal blocks bundles on the moduli space of
//! stable rational curves, for `sl2` at level `l` and `sp_2l` at level one.
//!
//! Both families share one rank function (the multiplicities agree), so the
//! crate is organised bottom-up:
//!
//! * [`weights`]: weight vectors, bundle identity, `s` and the stabilizing Lie rank.
//! * [`fusion`]: memoized factorization recursion for ranks.
//! * [`degrees`]: closed-form degrees on `M_0,4`.
//! * [`intersection`]: F-curves, intersection numbers, boundary coordinates.
//! * [`linalg`]: fraction-free exact solver used for coordinates.
//! * [`props`]: finite-range verification scans with structured reports.

pub mod degrees;
pub mod error;
pub mod fusion;
pub mod intersection;
pub mod linalg;
pub mod props;
pub mod weights;

pub use degrees::{deg4, deg4_sl2, deg4_sp, deg4_sp_rank_form, Degree4};
pub use error::{Error, Result};
pub use fusion::{
    classify_rank_one_4pt, rank, rank2, rank3, rank_at_levels, rank_of, triangle_vanishes, Rank,
    RankOneClass,
};
pub use intersection::{
    boundary_pairing, divisor_class, divisor_class_in, divisors_equal, enumerate_fcurves,
    intersect, intersection_vector, is_trivial, verify_scaling, verify_sum_decomposition,
    BoundaryBasis, DivisorClass, FCurve, IntersectionVector,
};
pub use props::VerificationReport;
pub use weights::{
    enumerate_weight_vectors, make_bundle, plussed, s_parameter, stabilizing_lie_rank,
    BundleSpec, Family, SParameter, WeightVector,
};

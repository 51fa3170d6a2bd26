//! Affine-invariant preference aggregation.
//!
//! Raw preference scores are z-normalized per criterion into a linear
//! preference space, and each alternative is summarized by the weighted
//! centroid of its z-scores. The crate also carries the usual rival
//! aggregators (weighted arithmetic/geometric means, a min–max centroid and
//! two distance-to-ideal scores) together with diagnostics that show which of
//! them keep their ranking under positive affine changes of scale.
//!
//! ```
//! use pfm_rank::{rank_pstar, PreferenceMatrix, WeightVector};
//!
//! let matrix = PreferenceMatrix::from_rows(vec![
//!     vec![100.0, 0.0, 90.0],
//!     vec![0.0, 100.0, 100.0],
//!     vec![20.0, 45.0, 55.0],
//!     vec![85.0, 60.0, 0.0],
//! ])
//! .unwrap();
//! let weights = WeightVector::new(vec![0.4, 0.1, 0.5]).unwrap();
//! let result = rank_pstar(&matrix, &weights).unwrap();
//! assert_eq!(result.ranking.dense_ranks, vec![1, 2, 3, 4]);
//! ```

pub mod aggregation;
pub mod baselines;
pub mod cli;
pub mod diagnostics;
pub mod error;
pub mod io;
pub mod lps;

pub use aggregation::{
    aggregate, minmax_scale, minmax_scale_to, rank, rank_pstar, weighted_centroid, wlsd_objective,
    AggregateOptions, AggregationResult, Direction, Method, Ranking, Scaled, ScoreVector,
    DEFAULT_TIE_TOL,
};
pub use error::{Error, Result};
pub use lps::{
    apply_affine, column_stats, k_ratio, normalization_as_affine, z_normalize, z_normalize_with,
    AffineMap, DegeneratePolicy, NormalizationParams, PreferenceMatrix, WeightVector, ZMatrix,
};

//! The weighted-centroid aggregator, min–max rescaling and tie-aware ranking.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::baselines;
use crate::error::{Error, Result};
use crate::lps::{self, DegeneratePolicy, PreferenceMatrix, WeightVector, ZMatrix};

/// Default absolute tolerance under which two scores are considered tied.
pub const DEFAULT_TIE_TOL: f64 = 1e-9;

/// Aggregation method tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Weighted centroid of z-scores.
    PStar,
    /// Weighted arithmetic mean of absolute raw scores.
    Wam,
    /// Weighted geometric mean of absolute raw scores.
    Wgm,
    /// Weighted centroid of min–max k-scores.
    KCentroid,
    /// Weighted squared Euclidean distance to the z-space ideal point.
    #[serde(rename = "euclid")]
    DEuclid,
    /// Weighted Manhattan distance to the z-space ideal point.
    #[serde(rename = "manhattan")]
    DManhattan,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::PStar,
        Method::Wam,
        Method::Wgm,
        Method::KCentroid,
        Method::DEuclid,
        Method::DManhattan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::PStar => "pstar",
            Method::Wam => "wam",
            Method::Wgm => "wgm",
            Method::KCentroid => "kcentroid",
            Method::DEuclid => "euclid",
            Method::DManhattan => "manhattan",
        }
    }

    pub fn direction(self) -> Direction {
        match self {
            Method::DEuclid | Method::DManhattan => Direction::LowerBetter,
            _ => Direction::HigherBetter,
        }
    }

    /// Whether the method works on z-scores rather than raw scores.
    pub fn needs_z(self) -> bool {
        matches!(self, Method::PStar | Method::DEuclid | Method::DManhattan)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                Error::validation(format!(
                    "unknown method '{s}' (expected one of pstar, wam, wgm, kcentroid, euclid, manhattan)"
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    HigherBetter,
    LowerBetter,
}

/// One score per alternative, tagged with the method that produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreVector {
    pub method: Method,
    pub direction: Direction,
    pub scores: Vec<f64>,
}

impl ScoreVector {
    pub fn new(method: Method, scores: Vec<f64>) -> Self {
        Self {
            method,
            direction: method.direction(),
            scores,
        }
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

/// Ordered tie groups (best first) and the matching dense ranks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ranking {
    /// Alternative indices (0-based), best group first.
    pub tie_groups: Vec<Vec<usize>>,
    /// Dense rank per alternative, 1 = best.
    pub dense_ranks: Vec<usize>,
}

impl Ranking {
    /// Index of the sole best alternative, or `None` if the top is tied.
    pub fn winner(&self) -> Option<usize> {
        match self.tie_groups.first() {
            Some(group) if group.len() == 1 => Some(group[0]),
            _ => None,
        }
    }

    pub fn is_full_tie(&self) -> bool {
        self.tie_groups.len() == 1
    }

    /// Renders the ranking as `A ≻ B = C` using the given labels.
    pub fn describe(&self, labels: &[String]) -> String {
        self.tie_groups
            .iter()
            .map(|g| {
                g.iter()
                    .map(|&i| labels[i].as_str())
                    .collect::<Vec<_>>()
                    .join(" = ")
            })
            .collect::<Vec<_>>()
            .join(" ≻ ")
    }
}

/// Scores rescaled onto `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scaled {
    pub values: Vec<f64>,
    /// Set when all scores are tied; every value is then the midpoint.
    pub all_tied: bool,
}

/// Options shared by every aggregation entry point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AggregateOptions {
    pub tie_tol: f64,
    pub degenerate: DegeneratePolicy,
}

impl Default for AggregateOptions {
    fn default() -> Self {
        Self {
            tie_tol: DEFAULT_TIE_TOL,
            degenerate: DegeneratePolicy::Reject,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AggregationResult {
    pub alternatives: Vec<String>,
    pub score_vector: ScoreVector,
    /// `[0, 100]` rescaling; only produced for the weighted centroid.
    pub scaled: Option<Scaled>,
    pub ranking: Ranking,
    pub warnings: Vec<String>,
}

/// `P*_i = Σ_j w_j · z_ij`.
pub fn weighted_centroid(z: &ZMatrix, w: &WeightVector) -> Result<ScoreVector> {
    w.expect_len(z.n_criteria())?;
    let scores = z
        .values()
        .iter()
        .map(|row| weighted_sum(row, w.as_slice()))
        .collect();
    Ok(ScoreVector::new(Method::PStar, scores))
}

pub(crate) fn weighted_sum(row: &[f64], w: &[f64]) -> f64 {
    row.iter().zip(w).map(|(v, wj)| wj * v).sum()
}

/// Weighted least-squares distance `Σ_j w_j (z_j − F)²`.
///
/// Only useful to show that the weighted centroid is its minimizer; the value
/// itself has no preference meaning.
pub fn wlsd_objective(z_row: &[f64], w: &WeightVector, f: f64) -> Result<f64> {
    w.expect_len(z_row.len())?;
    Ok(z_row
        .iter()
        .zip(w.as_slice())
        .map(|(z, wj)| wj * (z - f).powi(2))
        .sum())
}

/// Rescales onto `[0, 100]` with the default tie tolerance.
pub fn minmax_scale(scores: &ScoreVector) -> Scaled {
    minmax_scale_to(scores, 0.0, 100.0, DEFAULT_TIE_TOL)
}

/// Linear min–max rescaling onto `[lo, hi]`. The minimum maps to `lo`.
///
/// # Panics
///
/// If `lo >= hi`.
pub fn minmax_scale_to(scores: &ScoreVector, lo: f64, hi: f64, tie_tol: f64) -> Scaled {
    assert!(lo < hi, "min-max range must satisfy lo < hi");
    let (min, max) = lps::column_extremes(scores.scores.iter().copied());
    if scores.scores.is_empty() || max - min <= tie_tol {
        return Scaled {
            values: vec![(lo + hi) / 2.0; scores.len()],
            all_tied: true,
        };
    }
    let span = max - min;
    Scaled {
        values: scores
            .scores
            .iter()
            .map(|s| (s - min) / span * (hi - lo) + lo)
            .collect(),
        all_tied: false,
    }
}

/// Orders alternatives best-first. Scores within `tie_tol` of their
/// neighbour in sorted order share a group, so ties chain transitively.
pub fn rank(scores: &ScoreVector, tie_tol: f64) -> Ranking {
    let s = &scores.scores;
    let mut order: Vec<usize> = (0..s.len()).collect();
    // stable sort keeps input order among equal scores
    match scores.direction {
        Direction::HigherBetter => order.sort_by(|&a, &b| s[b].total_cmp(&s[a])),
        Direction::LowerBetter => order.sort_by(|&a, &b| s[a].total_cmp(&s[b])),
    }

    let mut tie_groups: Vec<Vec<usize>> = Vec::new();
    let mut prev: Option<f64> = None;
    for idx in order {
        match (prev, tie_groups.last_mut()) {
            (Some(p), Some(group)) if (s[idx] - p).abs() <= tie_tol => group.push(idx),
            _ => tie_groups.push(vec![idx]),
        }
        prev = Some(s[idx]);
    }
    for group in &mut tie_groups {
        group.sort_unstable();
    }

    let mut dense_ranks = vec![0; s.len()];
    for (r, group) in tie_groups.iter().enumerate() {
        for &i in group {
            dense_ranks[i] = r + 1;
        }
    }
    Ranking {
        tie_groups,
        dense_ranks,
    }
}

/// Full weighted-centroid pipeline: normalize, aggregate, rescale, rank.
pub fn rank_pstar(matrix: &PreferenceMatrix, w: &WeightVector) -> Result<AggregationResult> {
    aggregate(matrix, w, Method::PStar, &AggregateOptions::default())
}

/// Runs any aggregator and ranks its scores.
pub fn aggregate(
    matrix: &PreferenceMatrix,
    w: &WeightVector,
    method: Method,
    opts: &AggregateOptions,
) -> Result<AggregationResult> {
    w.expect_len(matrix.n_criteria())?;
    let z = if method.needs_z() {
        Some(lps::z_normalize_with(matrix, opts.degenerate)?)
    } else {
        None
    };
    aggregate_with_z(matrix, w, method, opts, z.as_ref())
}

/// Same as [`aggregate`] but reuses an already normalized matrix.
pub(crate) fn aggregate_with_z(
    matrix: &PreferenceMatrix,
    w: &WeightVector,
    method: Method,
    opts: &AggregateOptions,
    z: Option<&ZMatrix>,
) -> Result<AggregationResult> {
    let z_required = || z.expect("z-based method called without a z matrix");
    let score_vector = match method {
        Method::PStar => weighted_centroid(z_required(), w)?,
        Method::Wam => baselines::wam(matrix, w)?,
        Method::Wgm => baselines::wgm(matrix, w)?,
        Method::KCentroid => baselines::k_centroid(matrix, w)?,
        Method::DEuclid => baselines::dist_euclid(z_required(), w)?,
        Method::DManhattan => baselines::dist_manhattan(z_required(), w)?,
    };

    let mut warnings = Vec::new();
    if let Some(z) = z {
        for &j in z.zeroed_criteria() {
            warnings.push(format!(
                "criterion '{}' has no spread and was set to zero",
                matrix.criteria()[j]
            ));
        }
    }
    let scaled =
        (method == Method::PStar).then(|| minmax_scale_to(&score_vector, 0.0, 100.0, opts.tie_tol));
    let ranking = rank(&score_vector, opts.tie_tol);
    Ok(AggregationResult {
        alternatives: matrix.alternatives().to_vec(),
        score_vector,
        scaled,
        ranking,
        warnings,
    })
}

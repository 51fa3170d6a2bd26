//! Rival aggregators kept for comparison: weighted arithmetic and geometric
//! means on absolute raw scores, the min–max k-score centroid, and weighted
//! distances to the ideal point `(1, …, 1)` in z-space.
//!
//! WAM and WGM take `|p|` exactly as they are conventionally defined, even
//! when raw scores are negative.

use serde::Serialize;

use crate::aggregation::{weighted_sum, Method, ScoreVector};
use crate::error::{Error, Result};
use crate::lps::{column_extremes, PreferenceMatrix, WeightVector, ZMatrix};

/// Per-criterion min–max scores `k_ij ∈ [0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KMatrix {
    values: Vec<Vec<f64>>,
}

impl KMatrix {
    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().map(move |row| row[j])
    }
}

/// `Σ_j w_j |p_ij|`
pub fn wam(matrix: &PreferenceMatrix, w: &WeightVector) -> Result<ScoreVector> {
    w.expect_len(matrix.n_criteria())?;
    let scores = matrix
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .zip(w.as_slice())
                .map(|(p, wj)| wj * p.abs())
                .sum()
        })
        .collect();
    Ok(ScoreVector::new(Method::Wam, scores))
}

/// `Π_j |p_ij|^{w_j}`; zero-weight criteria contribute a factor of 1.
pub fn wgm(matrix: &PreferenceMatrix, w: &WeightVector) -> Result<ScoreVector> {
    w.expect_len(matrix.n_criteria())?;
    let scores = matrix
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .zip(w.as_slice())
                .filter(|(_, &wj)| wj > 0.0)
                .map(|(p, &wj)| p.abs().powf(wj))
                .product()
        })
        .collect();
    Ok(ScoreVector::new(Method::Wgm, scores))
}

/// `k_ij = (p_ij − min_j) / (max_j − min_j)`.
pub fn k_scores(matrix: &PreferenceMatrix) -> Result<KMatrix> {
    let extremes: Vec<(f64, f64)> = (0..matrix.n_criteria())
        .map(|j| {
            if matrix.is_constant(j) {
                Err(Error::DegenerateCriterion {
                    index: j,
                    label: matrix.criteria()[j].clone(),
                })
            } else {
                Ok(column_extremes(matrix.column(j)))
            }
        })
        .collect::<Result<_>>()?;
    let values = matrix
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .zip(&extremes)
                .map(|(p, (lo, hi))| (p - lo) / (hi - lo))
                .collect()
        })
        .collect();
    Ok(KMatrix { values })
}

/// `Π*_i = Σ_j w_j k_ij`.
pub fn k_centroid(matrix: &PreferenceMatrix, w: &WeightVector) -> Result<ScoreVector> {
    w.expect_len(matrix.n_criteria())?;
    let k = k_scores(matrix)?;
    let scores = k
        .values
        .iter()
        .map(|row| weighted_sum(row, w.as_slice()))
        .collect();
    Ok(ScoreVector::new(Method::KCentroid, scores))
}

/// `D^E_i = Σ_j w_j (z_ij − 1)²`, lower is better.
pub fn dist_euclid(z: &ZMatrix, w: &WeightVector) -> Result<ScoreVector> {
    w.expect_len(z.n_criteria())?;
    let scores = z
        .values()
        .iter()
        .map(|row| {
            row.iter()
                .zip(w.as_slice())
                .map(|(v, wj)| wj * (v - 1.0).powi(2))
                .sum()
        })
        .collect();
    Ok(ScoreVector::new(Method::DEuclid, scores))
}

/// `D^M_i = Σ_j w_j |z_ij − 1|`, lower is better.
pub fn dist_manhattan(z: &ZMatrix, w: &WeightVector) -> Result<ScoreVector> {
    w.expect_len(z.n_criteria())?;
    let scores = z
        .values()
        .iter()
        .map(|row| {
            row.iter()
                .zip(w.as_slice())
                .map(|(v, wj)| wj * (v - 1.0).abs())
                .sum()
        })
        .collect();
    Ok(ScoreVector::new(Method::DManhattan, scores))
}

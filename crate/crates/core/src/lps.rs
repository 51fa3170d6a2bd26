//! Linear preference space construction.
//!
//! Raw preference scores live on one-dimensional affine scales: only
//! differences, and ratios of differences, carry meaning. This module holds
//! the domain types for a decision problem and the per-criterion z-score
//! normalization that maps every criterion onto a common origin (the column
//! mean) and a common unit (the population standard deviation).
//!
//! The standard deviation is the *population* one (divide by `I`). This is
//! the definition that reproduces the published worked example
//! (`σ_C1 ≈ 42.186`, giving `z = 1.1556` for a raw score of 100).

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance for weight sums and other score equality checks.
pub const SCORE_TOL: f64 = 1e-9;

/// A column whose spread is at or below this fraction of its largest
/// magnitude is treated as constant.
const SPREAD_EPS: f64 = 1e-12;

/// Raw preference scores for `I` alternatives against `J` criteria.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreferenceMatrix {
    alternatives: Vec<String>,
    criteria: Vec<String>,
    values: Vec<Vec<f64>>,
}

impl PreferenceMatrix {
    /// Builds a matrix from labels and row-major values (`values[i][j]`).
    pub fn new(
        alternatives: Vec<String>,
        criteria: Vec<String>,
        values: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if alternatives.len() < 2 {
            return Err(Error::validation(format!(
                "at least 2 alternatives are required, found {}",
                alternatives.len()
            )));
        }
        if criteria.is_empty() {
            return Err(Error::validation("at least 1 criterion is required"));
        }
        check_labels("alternative", &alternatives)?;
        check_labels("criterion", &criteria)?;
        if values.len() != alternatives.len() {
            return Err(Error::DimensionMismatch {
                what: "value rows",
                expected: alternatives.len(),
                found: values.len(),
            });
        }
        for (i, row) in values.iter().enumerate() {
            if row.len() != criteria.len() {
                return Err(Error::DimensionMismatch {
                    what: "values per row",
                    expected: criteria.len(),
                    found: row.len(),
                });
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::validation(format!(
                    "score for alternative '{}' on criterion '{}' is not finite",
                    alternatives[i], criteria[j]
                )));
            }
        }
        Ok(Self {
            alternatives,
            criteria,
            values,
        })
    }

    /// Builds a matrix with generated labels `A1..AI` and `C1..CJ`.
    pub fn from_rows(values: Vec<Vec<f64>>) -> Result<Self> {
        let n_crit = values.first().map_or(0, Vec::len);
        let alternatives = (1..=values.len()).map(|i| format!("A{i}")).collect();
        let criteria = (1..=n_crit).map(|j| format!("C{j}")).collect();
        Self::new(alternatives, criteria, values)
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn criteria(&self) -> &[String] {
        &self.criteria
    }

    pub fn n_alternatives(&self) -> usize {
        self.alternatives.len()
    }

    pub fn n_criteria(&self) -> usize {
        self.criteria.len()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i]
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i][j]
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().map(move |row| row[j])
    }

    /// True when column `j` has no usable spread.
    pub(crate) fn is_constant(&self, j: usize) -> bool {
        let (lo, hi) = column_extremes(self.column(j));
        let scale = lo.abs().max(hi.abs());
        hi - lo <= SPREAD_EPS * scale
    }
}

fn check_labels(axis: &str, labels: &[String]) -> Result<()> {
    let mut seen = HashSet::with_capacity(labels.len());
    for label in labels {
        if label.trim().is_empty() {
            return Err(Error::validation(format!(
                "{axis} labels must be non-empty"
            )));
        }
        if !seen.insert(label.as_str()) {
            return Err(Error::validation(format!(
                "duplicate {axis} label '{label}'"
            )));
        }
    }
    Ok(())
}

pub(crate) fn column_extremes(column: impl Iterator<Item = f64>) -> (f64, f64) {
    column.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    })
}

/// Nonnegative criterion weights summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    /// Validates weights strictly: nonnegative, finite, and summing to 1 within 1e-9.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        Self::check_entries(&weights)?;
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > SCORE_TOL {
            return Err(Error::validation(format!(
                "weights must sum to 1 (within 1e-9), found sum {sum}"
            )));
        }
        Ok(Self(weights))
    }

    /// Rescales nonnegative weights so they sum to 1.
    pub fn normalized(weights: Vec<f64>) -> Result<Self> {
        Self::check_entries(&weights)?;
        let sum: f64 = weights.iter().sum();
        if sum <= 0.0 {
            return Err(Error::validation("weights must have a positive sum"));
        }
        Ok(Self(weights.into_iter().map(|w| w / sum).collect()))
    }

    /// Equal weights `1/J` over `n` criteria.
    pub fn uniform(n: usize) -> Result<Self> {
        Self::normalized(vec![1.0; n])
    }

    fn check_entries(weights: &[f64]) -> Result<()> {
        if weights.is_empty() {
            return Err(Error::validation("weight vector is empty"));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::validation(format!(
                "weights must be finite and nonnegative, found {w}"
            )));
        }
        Ok(())
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn expect_len(&self, n_criteria: usize) -> Result<()> {
        if self.0.len() != n_criteria {
            return Err(Error::DimensionMismatch {
                what: "weights",
                expected: n_criteria,
                found: self.0.len(),
            });
        }
        Ok(())
    }
}

/// A positive affine map `p ↦ a·p + b` with `a > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    slope: f64,
    intercept: f64,
}

impl AffineMap {
    pub fn new(slope: f64, intercept: f64) -> Result<Self> {
        if !(slope > 0.0 && slope.is_finite()) || !intercept.is_finite() {
            return Err(Error::InvalidAffine { index: 0, slope });
        }
        Ok(Self { slope, intercept })
    }

    pub const fn identity() -> Self {
        Self {
            slope: 1.0,
            intercept: 0.0,
        }
    }

    pub fn slope(&self) -> f64 {
        self.slope
    }

    pub fn intercept(&self) -> f64 {
        self.intercept
    }

    pub fn apply(&self, p: f64) -> f64 {
        self.slope * p + self.intercept
    }
}

/// Per-criterion mean and population standard deviation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizationParams {
    pub means: Vec<f64>,
    pub stddevs: Vec<f64>,
}

/// What to do with a criterion whose scores are all equal.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegeneratePolicy {
    /// Fail with [`Error::DegenerateCriterion`].
    #[default]
    Reject,
    /// Replace the column with zeros; the criterion then contributes nothing.
    Zero,
}

/// z-normalized scores together with the parameters that produced them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZMatrix {
    values: Vec<Vec<f64>>,
    params: NormalizationParams,
    /// Criteria zeroed out under [`DegeneratePolicy::Zero`].
    zeroed: Vec<usize>,
}

impl ZMatrix {
    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i]
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().map(move |row| row[j])
    }

    pub fn params(&self) -> &NormalizationParams {
        &self.params
    }

    pub fn n_alternatives(&self) -> usize {
        self.values.len()
    }

    pub fn n_criteria(&self) -> usize {
        self.params.means.len()
    }

    pub fn zeroed_criteria(&self) -> &[usize] {
        &self.zeroed
    }
}

/// Column means and population standard deviations.
pub fn column_stats(matrix: &PreferenceMatrix) -> NormalizationParams {
    let n = matrix.n_alternatives() as f64;
    let (means, stddevs) = (0..matrix.n_criteria())
        .map(|j| {
            let naive = matrix.column(j).sum::<f64>() / n;
            // second pass removes most of the rounding error of the naive mean
            let mean = naive + matrix.column(j).map(|p| p - naive).sum::<f64>() / n;
            let var = matrix.column(j).map(|p| (p - mean).powi(2)).sum::<f64>() / n;
            (mean, var.sqrt())
        })
        .unzip();
    NormalizationParams { means, stddevs }
}

/// z-normalizes every criterion, rejecting constant columns.
pub fn z_normalize(matrix: &PreferenceMatrix) -> Result<ZMatrix> {
    z_normalize_with(matrix, DegeneratePolicy::Reject)
}

pub fn z_normalize_with(matrix: &PreferenceMatrix, policy: DegeneratePolicy) -> Result<ZMatrix> {
    let params = column_stats(matrix);
    let mut zeroed = Vec::new();
    for j in 0..matrix.n_criteria() {
        if matrix.is_constant(j) {
            match policy {
                DegeneratePolicy::Reject => {
                    return Err(Error::DegenerateCriterion {
                        index: j,
                        label: matrix.criteria()[j].clone(),
                    })
                }
                DegeneratePolicy::Zero => zeroed.push(j),
            }
        }
    }
    // The stored mean is only accurate to half an ulp of its magnitude, which
    // after division by a small sd is visible in the z column sums. Centring
    // against the mean plus its residual keeps them at rounding level.
    let n = matrix.n_alternatives() as f64;
    let residuals: Vec<f64> = (0..matrix.n_criteria())
        .map(|j| matrix.column(j).map(|p| p - params.means[j]).sum::<f64>() / n)
        .collect();
    let values = matrix
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(j, &p)| {
                    if zeroed.contains(&j) {
                        0.0
                    } else {
                        ((p - params.means[j]) - residuals[j]) / params.stddevs[j]
                    }
                })
                .collect()
        })
        .collect();
    Ok(ZMatrix {
        values,
        params,
        zeroed,
    })
}

/// The z-transformation of one criterion written as an affine map
/// `z = p/σ − μ/σ`.
pub fn normalization_as_affine(
    params: &NormalizationParams,
    criterion: usize,
) -> Result<AffineMap> {
    let sd = params.stddevs[criterion];
    if sd <= 0.0 || !sd.is_finite() {
        return Err(Error::DegenerateCriterion {
            index: criterion,
            label: format!("C{}", criterion + 1),
        });
    }
    Ok(affine_from_stats(params, criterion))
}

fn affine_from_stats(params: &NormalizationParams, j: usize) -> AffineMap {
    let (mean, sd) = (params.means[j], params.stddevs[j]);
    AffineMap {
        slope: 1.0 / sd,
        intercept: -mean / sd,
    }
}

/// Applies one affine map per criterion.
pub fn apply_affine(matrix: &PreferenceMatrix, maps: &[AffineMap]) -> Result<PreferenceMatrix> {
    if maps.len() != matrix.n_criteria() {
        return Err(Error::DimensionMismatch {
            what: "affine maps",
            expected: matrix.n_criteria(),
            found: maps.len(),
        });
    }
    if let Some((index, map)) = maps
        .iter()
        .enumerate()
        .find(|(_, m)| !(m.slope > 0.0 && m.slope.is_finite()))
    {
        return Err(Error::InvalidAffine {
            index,
            slope: map.slope,
        });
    }
    let values = matrix
        .rows()
        .iter()
        .map(|row| row.iter().zip(maps).map(|(&p, m)| m.apply(p)).collect())
        .collect();
    PreferenceMatrix::new(matrix.alternatives.clone(), matrix.criteria.clone(), values)
}

/// Ratio of two preference differences, `(pa − pb) / (pc − pd)`.
pub fn k_ratio(pa: f64, pb: f64, pc: f64, pd: f64) -> Result<f64> {
    let denom = pc - pd;
    if denom.abs() <= 1e-12 * 1f64.max(pc.abs()).max(pd.abs()) {
        return Err(Error::ZeroDenominator { pc, pd });
    }
    Ok((pa - pb) / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sec3() -> PreferenceMatrix {
        PreferenceMatrix::from_rows(vec![
            vec![100.0, 0.0, 90.0],
            vec![0.0, 100.0, 100.0],
            vec![20.0, 45.0, 55.0],
            vec![85.0, 60.0, 0.0],
        ])
        .unwrap()
    }

    fn col(values: &[f64]) -> PreferenceMatrix {
        PreferenceMatrix::from_rows(values.iter().map(|&v| vec![v]).collect()).unwrap()
    }

    #[test]
    fn stats_of_first_criterion() {
        let p = column_stats(&sec3());
        assert!((p.means[0] - 51.25).abs() < 1e-12);
        // sqrt(1779.6875)
        assert!((p.stddevs[0] - 42.186_342_576_7).abs() < 1e-9);
    }

    #[test]
    fn stats_of_constant_and_two_point_columns() {
        let p = column_stats(&col(&[7.5, 7.5, 7.5]));
        assert_eq!(p.means[0], 7.5);
        assert_eq!(p.stddevs[0], 0.0);

        let p = column_stats(&col(&[15.0, 20.0]));
        assert_eq!(p.means[0], 17.5);
        assert_eq!(p.stddevs[0], 2.5);
    }

    #[test]
    fn z_table_matches_published_values() {
        let expected = [
            [1.1556, -1.4327, 0.7351],
            [-1.2148, 1.3628, 0.9908],
            [-0.7408, -0.1747, -0.1598],
            [0.8000, 0.2446, -1.5660],
        ];
        let z = z_normalize(&sec3()).unwrap();
        for (row, exp) in z.values().iter().zip(expected) {
            for (v, e) in row.iter().zip(exp) {
                assert!((v - e).abs() < 5e-5, "{v} vs {e}");
            }
        }
    }

    #[test]
    fn two_point_column_normalizes_to_unit_pair() {
        let z = z_normalize(&col(&[15.0, 20.0])).unwrap();
        assert_eq!(z.column(0).collect::<Vec<_>>(), vec![-1.0, 1.0]);
    }

    #[test]
    fn normalized_input_is_fixed_point() {
        let m = col(&[-1.0, 1.0]);
        let z = z_normalize(&m).unwrap();
        assert_eq!(z.column(0).collect::<Vec<_>>(), vec![-1.0, 1.0]);
    }

    #[test]
    fn constant_column_is_rejected_by_default() {
        let m = PreferenceMatrix::from_rows(vec![vec![1.0, 0.1], vec![2.0, 0.1], vec![3.0, 0.1]])
            .unwrap();
        match z_normalize(&m) {
            Err(Error::DegenerateCriterion { index, label }) => {
                assert_eq!(index, 1);
                assert_eq!(label, "C2");
            }
            other => panic!("unexpected {other:?}"),
        }
        let z = z_normalize_with(&m, DegeneratePolicy::Zero).unwrap();
        assert_eq!(z.zeroed_criteria(), &[1]);
        assert!(z.column(1).all(|v| v == 0.0));
    }

    #[test]
    fn normalization_map_for_first_criterion() {
        let params = column_stats(&sec3());
        let map = normalization_as_affine(&params, 0).unwrap();
        assert!((map.slope() - 0.02370).abs() < 5e-6);
        assert!((map.intercept() + 1.21485).abs() < 5e-6);

        let id = normalization_as_affine(
            &NormalizationParams {
                means: vec![0.0],
                stddevs: vec![1.0],
            },
            0,
        )
        .unwrap();
        assert_eq!(id, AffineMap::identity());

        let params = column_stats(&col(&[15.0, 20.0]));
        let map = normalization_as_affine(&params, 0).unwrap();
        assert_eq!((map.slope(), map.intercept()), (0.4, -7.0));
    }

    #[test]
    fn normalization_map_rejects_zero_spread() {
        let params = NormalizationParams {
            means: vec![3.0],
            stddevs: vec![0.0],
        };
        assert!(matches!(
            normalization_as_affine(&params, 0),
            Err(Error::DegenerateCriterion { index: 0, .. })
        ));
    }

    #[test]
    fn affine_rescale_onto_percent_scale() {
        let m = PreferenceMatrix::from_rows(vec![
            vec![100.0, 40.0],
            vec![0.0, 60.0],
            vec![20.0, 45.0],
            vec![85.0, 50.0],
            vec![60.0, 55.0],
        ])
        .unwrap();
        let maps = [AffineMap::identity(), AffineMap::new(5.0, -200.0).unwrap()];
        let out = apply_affine(&m, &maps).unwrap();
        assert_eq!(
            out.column(1).collect::<Vec<_>>(),
            vec![0.0, 100.0, 25.0, 50.0, 75.0]
        );
        assert_eq!(
            out.column(0).collect::<Vec<_>>(),
            m.column(0).collect::<Vec<_>>()
        );
    }

    #[test]
    fn affine_shift_maps_dataset_ten_onto_fifteen() {
        let ten =
            PreferenceMatrix::from_rows(vec![vec![0.0, 0.0], vec![0.0, 100.0], vec![100.0, 60.0]])
                .unwrap();
        let shift = AffineMap::new(1.0, -50.0).unwrap();
        let out = apply_affine(&ten, &[shift, shift]).unwrap();
        assert_eq!(
            out.rows(),
            &[vec![-50.0, -50.0], vec![-50.0, 50.0], vec![50.0, 10.0]]
        );
    }

    #[test]
    fn identity_maps_leave_matrix_unchanged() {
        let m = sec3();
        let out = apply_affine(&m, &[AffineMap::identity(); 3]).unwrap();
        assert_eq!(out, m);
    }

    #[test]
    fn non_positive_slopes_are_rejected() {
        assert!(AffineMap::new(0.0, 1.0).is_err());
        assert!(AffineMap::new(-2.0, 1.0).is_err());
        let bad = AffineMap {
            slope: -1.0,
            intercept: 0.0,
        };
        let err = apply_affine(
            &sec3(),
            &[AffineMap::identity(), bad, AffineMap::identity()],
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::InvalidAffine {
                index: 1,
                slope: -1.0
            }
        );
    }

    #[test]
    fn k_ratio_examples() {
        let k = k_ratio(100.0, 0.0, 85.0, 20.0).unwrap();
        assert!((k - 1.53846).abs() < 5e-6);
        assert_eq!(k_ratio(5.0, 3.0, 2.0, 1.0).unwrap(), 2.0);
        assert!(matches!(
            k_ratio(1.0, 0.0, 3.0, 3.0),
            Err(Error::ZeroDenominator { .. })
        ));

        let z = z_normalize(&sec3()).unwrap();
        let c1: Vec<f64> = z.column(0).collect();
        let kz = k_ratio(c1[0], c1[1], c1[3], c1[2]).unwrap();
        assert!((kz - k).abs() < 1e-12);
    }

    #[test]
    fn matrix_validation() {
        assert!(PreferenceMatrix::from_rows(vec![vec![1.0]]).is_err());
        assert!(PreferenceMatrix::from_rows(vec![vec![1.0], vec![f64::NAN]]).is_err());
        assert!(matches!(
            PreferenceMatrix::from_rows(vec![vec![1.0, 2.0], vec![3.0]]),
            Err(Error::DimensionMismatch { .. })
        ));
        let dup = PreferenceMatrix::new(
            vec!["A".into(), "A".into()],
            vec!["C".into()],
            vec![vec![1.0], vec![2.0]],
        );
        assert!(dup.is_err());
        let blank = PreferenceMatrix::new(
            vec!["A".into(), " ".into()],
            vec!["C".into()],
            vec![vec![1.0], vec![2.0]],
        );
        assert!(blank.is_err());
    }

    #[test]
    fn weight_validation() {
        assert!(WeightVector::new(vec![0.4, 0.1, 0.5]).is_ok());
        assert!(WeightVector::new(vec![0.5, 0.49]).is_err());
        assert!(WeightVector::new(vec![1.5, -0.5]).is_err());
        let w = WeightVector::normalized(vec![0.5, 0.49]).unwrap();
        assert!((w.as_slice().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(WeightVector::normalized(vec![0.0, 0.0]).is_err());
    }

    fn matrix_strategy() -> impl Strategy<Value = PreferenceMatrix> {
        (2usize..=8, 1usize..=6)
            .prop_flat_map(|(i, j)| {
                prop::collection::vec(prop::collection::vec(-100.0..100.0f64, j), i)
            })
            .prop_filter_map("needs spread in every column", |rows| {
                let m = PreferenceMatrix::from_rows(rows).ok()?;
                let params = column_stats(&m);
                params.stddevs.iter().all(|s| *s > 1e-3).then_some(m)
            })
    }

    fn maps_strategy(n: usize) -> impl Strategy<Value = Vec<AffineMap>> {
        prop::collection::vec((-3.0..3.0f64, -1e4..1e4f64), n).prop_map(|v| {
            v.into_iter()
                .map(|(e, b)| AffineMap::new(10f64.powf(e), b).unwrap())
                .collect()
        })
    }

    proptest! {
        #[test]
        fn z_columns_are_centered_and_unit(m in matrix_strategy()) {
            let z = z_normalize(&m).unwrap();
            let n = m.n_alternatives() as f64;
            for j in 0..m.n_criteria() {
                let mean = z.column(j).sum::<f64>() / n;
                let sd = (z.column(j).map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt();
                prop_assert!(mean.abs() <= 1e-9);
                prop_assert!((sd - 1.0).abs() <= 1e-9);
            }
        }

        #[test]
        fn z_is_affine_invariant(
            (m, maps) in matrix_strategy().prop_flat_map(|m| {
                let j = m.n_criteria();
                (Just(m), maps_strategy(j))
            })
        ) {
            let before = z_normalize(&m).unwrap();
            let after = z_normalize(&apply_affine(&m, &maps).unwrap()).unwrap();
            for (r0, r1) in before.values().iter().zip(after.values()) {
                for (a, b) in r0.iter().zip(r1) {
                    prop_assert!((a - b).abs() <= 1e-8, "{} vs {}", a, b);
                }
            }
        }

        #[test]
        fn k_ratio_survives_any_affine_map(
            p in prop::array::uniform4(-1e3..1e3f64),
            e in -3.0..3.0f64,
            b in -1e4..1e4f64,
        ) {
            prop_assume!((p[2] - p[3]).abs() > 1e-3);
            let map = AffineMap::new(10f64.powf(e), b).unwrap();
            let k0 = k_ratio(p[0], p[1], p[2], p[3]).unwrap();
            let q: Vec<f64> = p.iter().map(|&v| map.apply(v)).collect();
            let k1 = k_ratio(q[0], q[1], q[2], q[3]).unwrap();
            prop_assert!((k0 - k1).abs() <= 1e-9 * k0.abs().max(1.0), "{} vs {}", k0, k1);
        }

        #[test]
        fn normalization_map_reproduces_z(m in matrix_strategy()) {
            let z = z_normalize(&m).unwrap();
            prop_assume!(z.params().stddevs.iter().all(|s| *s > 1.0));
            for j in 0..m.n_criteria() {
                let map = normalization_as_affine(z.params(), j).unwrap();
                for (p, zv) in m.column(j).zip(z.column(j)) {
                    prop_assert!((map.apply(p) - zv).abs() <= 1e-12, "{} vs {}", map.apply(p), zv);
                }
            }
        }
    }
}

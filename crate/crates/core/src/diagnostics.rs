//! Checks that make the aggregation axioms executable.
//!
//! * [`comparability_check`]: do all criteria share the same raw min and max?
//! * [`invariance_trial`]: does a method's ranking survive random positive
//!   affine rescalings of individual criteria?
//! * [`equilibrium_check`]: the weighted centroid balances each alternative's
//!   weighted z-scores, and each z column balances around zero.
//! * [`compare_methods`]: side-by-side rankings and pairwise agreement.
//!
//! # Random map generator
//!
//! Trial `t` of a run with seed `s` draws from `ChaCha8Rng::seed_from_u64(s)`
//! switched to stream `t`. Each criterion gets a slope `10^u` with
//! `u ~ U[-3, 3)` and an intercept `b ~ U[-1e4, 1e4)`, drawn criterion by
//! criterion in that order. A draw whose transformed problem cannot be
//! aggregated is skipped and redrawn from the same stream, at most
//! [`MAX_REDRAWS`] times. Reports depend only on `(matrix, weights, method,
//! trials, seed)`, whatever the thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::aggregation::{
    aggregate, aggregate_with_z, weighted_centroid, AggregateOptions, Method, Ranking, ScoreVector,
};
use crate::error::{Error, Result};
use crate::lps::{
    apply_affine, column_extremes, z_normalize_with, AffineMap, PreferenceMatrix, WeightVector,
    ZMatrix, SCORE_TOL,
};

pub const MAX_REDRAWS: usize = 10;

const LOG10_SLOPE_RANGE: (f64, f64) = (-3.0, 3.0);
const INTERCEPT_RANGE: (f64, f64) = (-1e4, 1e4);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionRange {
    pub criterion: String,
    pub min: f64,
    pub max: f64,
    pub range: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparabilityReport {
    pub comparable: bool,
    pub per_criterion: Vec<CriterionRange>,
    /// Pairs `(j, k)`, `j < k`, whose minima or maxima differ.
    pub violating_pairs: Vec<(usize, usize)>,
}

/// Raw scales are comparable when every criterion has the same minimum and
/// the same maximum (within 1e-9).
pub fn comparability_check(matrix: &PreferenceMatrix) -> ComparabilityReport {
    let per_criterion: Vec<CriterionRange> = matrix
        .criteria()
        .iter()
        .enumerate()
        .map(|(j, label)| {
            let (min, max) = column_extremes(matrix.column(j));
            CriterionRange {
                criterion: label.clone(),
                min,
                max,
                range: max - min,
            }
        })
        .collect();
    let mut violating_pairs = Vec::new();
    for (j, a) in per_criterion.iter().enumerate() {
        for (k, b) in per_criterion.iter().enumerate().skip(j + 1) {
            if (a.min - b.min).abs() > SCORE_TOL || (a.max - b.max).abs() > SCORE_TOL {
                violating_pairs.push((j, k));
            }
        }
    }
    ComparabilityReport {
        comparable: violating_pairs.is_empty(),
        per_criterion,
        violating_pairs,
    }
}

/// A transformation under which a method changed its ranking.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    pub maps: Vec<AffineMap>,
    pub transformed: PreferenceMatrix,
    pub ranking_before: Ranking,
    pub ranking_after: Ranking,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvarianceReport {
    pub method: Method,
    pub trials: usize,
    pub violations: usize,
    /// Draws discarded because the aggregator failed on them.
    pub skipped: usize,
    /// Trials that ran out of redraws and were not evaluated.
    pub exhausted: usize,
    pub seed: u64,
    /// The lowest-index violating trial.
    pub first_counterexample: Option<Counterexample>,
}

/// Outcome of comparing a method's ranking before and after one set of maps.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransformCheck {
    pub ranking_before: Ranking,
    pub ranking_after: Ranking,
    pub violated: bool,
}

/// Applies `maps` and reports whether `method` changes its tie groups.
pub fn check_transform(
    matrix: &PreferenceMatrix,
    w: &WeightVector,
    method: Method,
    maps: &[AffineMap],
    opts: &AggregateOptions,
) -> Result<TransformCheck> {
    let before = aggregate(matrix, w, method, opts)?.ranking;
    let after = aggregate(&apply_affine(matrix, maps)?, w, method, opts)?.ranking;
    Ok(TransformCheck {
        violated: before.tie_groups != after.tie_groups,
        ranking_before: before,
        ranking_after: after,
    })
}

/// The generator for one trial, as documented at module level.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Draws one random positive affine map per criterion.
pub fn draw_maps<R: Rng>(rng: &mut R, n_criteria: usize) -> Vec<AffineMap> {
    (0..n_criteria)
        .map(|_| {
            let exponent = rng.random_range(LOG10_SLOPE_RANGE.0..LOG10_SLOPE_RANGE.1);
            let intercept = rng.random_range(INTERCEPT_RANGE.0..INTERCEPT_RANGE.1);
            AffineMap::new(10f64.powf(exponent), intercept).expect("slope is positive")
        })
        .collect()
}

enum TrialOutcome {
    Held {
        skipped: usize,
    },
    Violated {
        skipped: usize,
        example: Counterexample,
    },
    Exhausted {
        skipped: usize,
    },
}

/// Runs `trials` seeded random affine rescalings and counts ranking changes.
///
/// A violation is any change of tie groups: a reordering or a tie that
/// appears or disappears.
pub fn invariance_trial(
    matrix: &PreferenceMatrix,
    w: &WeightVector,
    method: Method,
    trials: usize,
    seed: u64,
    opts: &AggregateOptions,
) -> Result<InvarianceReport> {
    if trials == 0 {
        return Err(Error::validation("trials must be at least 1"));
    }
    let before = aggregate(matrix, w, method, opts)?.ranking;

    let outcomes: Vec<TrialOutcome> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            let mut skipped = 0;
            for _ in 0..=MAX_REDRAWS {
                let maps = draw_maps(&mut rng, matrix.n_criteria());
                let evaluated = apply_affine(matrix, &maps).and_then(|transformed| {
                    aggregate(&transformed, w, method, opts).map(|r| (transformed, r.ranking))
                });
                match evaluated {
                    Ok((_, after)) if after.tie_groups == before.tie_groups => {
                        return TrialOutcome::Held { skipped }
                    }
                    Ok((transformed, after)) => {
                        return TrialOutcome::Violated {
                            skipped,
                            example: Counterexample {
                                trial,
                                maps,
                                transformed,
                                ranking_before: before.clone(),
                                ranking_after: after,
                            },
                        }
                    }
                    Err(_) => skipped += 1,
                }
            }
            TrialOutcome::Exhausted { skipped }
        })
        .collect();

    let mut report = InvarianceReport {
        method,
        trials,
        violations: 0,
        skipped: 0,
        exhausted: 0,
        seed,
        first_counterexample: None,
    };
    for outcome in outcomes {
        match outcome {
            TrialOutcome::Held { skipped } => report.skipped += skipped,
            TrialOutcome::Violated { skipped, example } => {
                report.skipped += skipped;
                report.violations += 1;
                report.first_counterexample.get_or_insert(example);
            }
            TrialOutcome::Exhausted { skipped } => {
                report.skipped += skipped;
                report.exhausted += 1;
            }
        }
    }
    Ok(report)
}

/// Barycentre residuals of a weighted-centroid result.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumReport {
    /// `Σ_j w_j (z_ij − P*_i)` per alternative.
    pub horizontal: Vec<f64>,
    /// `(1/I) Σ_i z_ij` per criterion.
    pub vertical: Vec<f64>,
    pub max_horizontal: f64,
    pub max_vertical: f64,
}

impl EquilibriumReport {
    pub fn within(&self, tol: f64) -> bool {
        self.max_horizontal <= tol && self.max_vertical <= tol
    }
}

pub fn equilibrium_check(
    z: &ZMatrix,
    w: &WeightVector,
    pstar: &ScoreVector,
) -> Result<EquilibriumReport> {
    w.expect_len(z.n_criteria())?;
    if pstar.len() != z.n_alternatives() {
        return Err(Error::DimensionMismatch {
            what: "aggregated scores",
            expected: z.n_alternatives(),
            found: pstar.len(),
        });
    }
    let horizontal: Vec<f64> = z
        .values()
        .iter()
        .zip(&pstar.scores)
        .map(|(row, p)| {
            row.iter()
                .zip(w.as_slice())
                .map(|(v, wj)| wj * (v - p))
                .sum()
        })
        .collect();
    let n = z.n_alternatives() as f64;
    let vertical: Vec<f64> = (0..z.n_criteria())
        .map(|j| z.column(j).sum::<f64>() / n)
        .collect();
    let max_abs = |v: &[f64]| v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    Ok(EquilibriumReport {
        max_horizontal: max_abs(&horizontal),
        max_vertical: max_abs(&vertical),
        horizontal,
        vertical,
    })
}

/// Balance point of point masses on a beam: `Σ m x / Σ m`.
pub fn balance_point(masses: &[f64], positions: &[f64]) -> f64 {
    let total: f64 = masses.iter().sum();
    masses
        .iter()
        .zip(positions)
        .map(|(m, x)| m * x)
        .sum::<f64>()
        / total
}

/// Scores and ranking of one method inside a comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodRun {
    pub scores: ScoreVector,
    pub ranking: Ranking,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodOutcome {
    pub method: Method,
    /// Error message when this method could not be evaluated.
    pub outcome: std::result::Result<MethodRun, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Agreement {
    pub a: Method,
    pub b: Method,
    /// `None` when either side failed.
    pub agree: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub alternatives: Vec<String>,
    pub methods: Vec<Method>,
    pub outcomes: Vec<MethodOutcome>,
    pub agreement: Vec<Agreement>,
}

impl ComparisonReport {
    /// Dense ranks per alternative (rows) and method (columns).
    pub fn rank_table(&self) -> Vec<Vec<Option<usize>>> {
        (0..self.alternatives.len())
            .map(|i| {
                self.outcomes
                    .iter()
                    .map(|o| o.outcome.as_ref().ok().map(|r| r.ranking.dense_ranks[i]))
                    .collect()
            })
            .collect()
    }

    pub fn run(&self, method: Method) -> Option<&MethodRun> {
        self.outcomes
            .iter()
            .find(|o| o.method == method)
            .and_then(|o| o.outcome.as_ref().ok())
    }

    pub fn agrees(&self, a: Method, b: Method) -> Option<bool> {
        if a == b {
            return self.run(a).map(|_| true);
        }
        self.agreement
            .iter()
            .find(|g| (g.a == a && g.b == b) || (g.a == b && g.b == a))
            .and_then(|g| g.agree)
    }
}

/// Runs each method on the same problem. z-based methods share one
/// normalization; a failing method is reported inline.
pub fn compare_methods(
    matrix: &PreferenceMatrix,
    w: &WeightVector,
    methods: &[Method],
    opts: &AggregateOptions,
) -> Result<ComparisonReport> {
    if methods.is_empty() {
        return Err(Error::validation("at least one method is required"));
    }
    w.expect_len(matrix.n_criteria())?;
    let mut unique: Vec<Method> = Vec::with_capacity(methods.len());
    for &m in methods {
        if !unique.contains(&m) {
            unique.push(m);
        }
    }
    let z = unique
        .iter()
        .any(|m| m.needs_z())
        .then(|| z_normalize_with(matrix, opts.degenerate));

    let outcomes: Vec<MethodOutcome> = unique
        .iter()
        .map(|&method| {
            let z_ref = match (&z, method.needs_z()) {
                (Some(Err(e)), true) => {
                    return MethodOutcome {
                        method,
                        outcome: Err(e.to_string()),
                    }
                }
                (Some(Ok(z)), true) => Some(z),
                _ => None,
            };
            let outcome = aggregate_with_z(matrix, w, method, opts, z_ref)
                .map(|r| MethodRun {
                    scores: r.score_vector,
                    ranking: r.ranking,
                })
                .map_err(|e| e.to_string());
            MethodOutcome { method, outcome }
        })
        .collect();

    let mut agreement = Vec::new();
    for (x, a) in outcomes.iter().enumerate() {
        for b in &outcomes[x + 1..] {
            let agree = match (&a.outcome, &b.outcome) {
                (Ok(ra), Ok(rb)) => Some(ra.ranking.tie_groups == rb.ranking.tie_groups),
                _ => None,
            };
            agreement.push(Agreement {
                a: a.method,
                b: b.method,
                agree,
            });
        }
    }
    Ok(ComparisonReport {
        alternatives: matrix.alternatives().to_vec(),
        methods: unique,
        outcomes,
        agreement,
    })
}

/// Comparability plus barycentre residuals for one problem.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub comparability: ComparabilityReport,
    pub equilibrium: EquilibriumReport,
}

pub fn check_problem(
    matrix: &PreferenceMatrix,
    w: &WeightVector,
    opts: &AggregateOptions,
) -> Result<CheckReport> {
    let z = z_normalize_with(matrix, opts.degenerate)?;
    let pstar = weighted_centroid(&z, w)?;
    Ok(CheckReport {
        comparability: comparability_check(matrix),
        equilibrium: equilibrium_check(&z, w, &pstar)?,
    })
}

//! Problem files in, reports out.
//!
//! # CSV problem layout
//!
//! ```text
//! # title: worked example
//! alternative,C1,C2,C3
//! A1,100,0,90
//! A2,0,100,100
//! A3,20,45,55
//! A4,85,60,0
//! weights,0.4,0.1,0.5
//! ```
//!
//! The header names the criteria (its first cell is ignored), the first
//! column names the alternatives and the last row, labelled `weights`, holds
//! the criterion weights. `# key: value` lines become metadata.
//!
//! # JSON problem layout
//!
//! ```json
//! { "criteria": ["C1", "C2"], "alternatives": ["A1", "A2"],
//!   "values": [[15, 50000], [20, 45000]], "weights": [0.6, 0.4],
//!   "metadata": { "title": "job offers" } }
//! ```
//!
//! Both accept UTF-8 with LF or CRLF line endings. JSON output keeps full
//! precision; TEXT tables round z-scores to 4 and aggregated scores to 5
//! decimals (round half to even).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::aggregation::{weighted_sum, AggregationResult, Method};
use crate::diagnostics::{
    CheckReport, ComparabilityReport, ComparisonReport, EquilibriumReport, InvarianceReport,
};
use crate::error::{Error, Result};
use crate::lps::{z_normalize_with, DegeneratePolicy, PreferenceMatrix, WeightVector};

/// Decimal places for aggregated scores in TEXT output.
pub const SCORE_DP: usize = 5;
/// Decimal places for z-scores in TEXT output.
pub const Z_DP: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Csv,
    Json,
}

impl InputFormat {
    /// Picks a format from the file extension, falling back to sniffing the
    /// first non-blank byte (`{` means JSON).
    pub fn detect(path: Option<&str>, bytes: &[u8]) -> Self {
        let ext = path
            .and_then(|p| p.rsplit_once('.'))
            .map(|(_, e)| e.to_ascii_lowercase());
        match ext.as_deref() {
            Some("json") => InputFormat::Json,
            Some("csv") => InputFormat::Csv,
            _ => match strip_bom(bytes).iter().find(|b| !b.is_ascii_whitespace()) {
                Some(b'{') => InputFormat::Json,
                _ => InputFormat::Csv,
            },
        }
    }
}

impl FromStr for InputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(InputFormat::Csv),
            "json" => Ok(InputFormat::Json),
            other => Err(Error::validation(format!("unknown input format '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::validation(format!(
                "unknown output format '{other}'"
            ))),
        }
    }
}

/// A validated decision problem.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemDocument {
    pub matrix: PreferenceMatrix,
    pub weights: WeightVector,
    pub metadata: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Rescale weights to sum to 1 instead of rejecting them.
    pub normalize_weights: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemJson {
    criteria: Vec<String>,
    alternatives: Vec<String>,
    values: Vec<Vec<f64>>,
    weights: Vec<f64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    metadata: BTreeMap<String, String>,
}

fn strip_bom(bytes: &[u8]) -> &[u8] {
    bytes.strip_prefix(b"\xEF\xBB\xBF").unwrap_or(bytes)
}

pub fn parse_problem(
    bytes: &[u8],
    format: InputFormat,
    opts: &ParseOptions,
) -> Result<ProblemDocument> {
    let bytes = strip_bom(bytes);
    let text = std::str::from_utf8(bytes).map_err(|e| {
        Error::parse(
            format!("byte {}", e.valid_up_to()),
            "input is not valid UTF-8",
        )
    })?;
    let raw = match format {
        InputFormat::Csv => parse_csv(text)?,
        InputFormat::Json => serde_json::from_str::<ProblemJson>(text).map_err(|e| {
            Error::parse(
                format!("line {}, column {}", e.line(), e.column()),
                e.to_string(),
            )
        })?,
    };
    build_document(raw, opts)
}

fn build_document(raw: ProblemJson, opts: &ParseOptions) -> Result<ProblemDocument> {
    let matrix = PreferenceMatrix::new(raw.alternatives, raw.criteria, raw.values)?;
    if raw.weights.len() != matrix.n_criteria() {
        return Err(Error::DimensionMismatch {
            what: "weights",
            expected: matrix.n_criteria(),
            found: raw.weights.len(),
        });
    }
    let weights = if opts.normalize_weights {
        WeightVector::normalized(raw.weights)?
    } else {
        WeightVector::new(raw.weights)?
    };
    Ok(ProblemDocument {
        matrix,
        weights,
        metadata: raw.metadata,
    })
}

fn parse_csv(text: &str) -> Result<ProblemJson> {
    let mut metadata = BTreeMap::new();
    for line in text.lines() {
        if let Some(rest) = line.trim_start().strip_prefix('#') {
            if let Some((k, v)) = rest.split_once(':') {
                metadata.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
    }

    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let csv_err = |e: csv::Error| {
        let location = e
            .position()
            .map_or_else(|| "input".to_string(), |p| format!("line {}", p.line()));
        Error::parse(location, e.to_string())
    };

    let header = reader.headers().map_err(csv_err)?.clone();
    if header.len() < 2 {
        return Err(Error::parse(
            "line 1",
            "header needs an alternative column and at least one criterion",
        ));
    }
    let criteria: Vec<String> = header.iter().skip(1).map(str::to_string).collect();

    let mut alternatives = Vec::new();
    let mut values = Vec::new();
    let mut weights: Option<Vec<f64>> = None;
    for record in reader.records() {
        let record = record.map_err(csv_err)?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        if weights.is_some() {
            return Err(Error::parse(
                format!("line {line}"),
                "rows after the weights row",
            ));
        }
        if record.len() != header.len() {
            return Err(Error::parse(
                format!("line {line}"),
                format!("expected {} fields, found {}", header.len(), record.len()),
            ));
        }
        let label = record[0].to_string();
        let numbers = record
            .iter()
            .skip(1)
            .zip(&criteria)
            .map(|(cell, crit)| {
                cell.parse::<f64>().map_err(|_| {
                    Error::parse(
                        format!("line {line}, field '{crit}'"),
                        format!("'{cell}' is not a number"),
                    )
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        if label.eq_ignore_ascii_case("weights") {
            weights = Some(numbers);
        } else {
            alternatives.push(label);
            values.push(numbers);
        }
    }
    let weights =
        weights.ok_or_else(|| Error::parse("end of input", "missing final 'weights' row"))?;
    Ok(ProblemJson {
        criteria,
        alternatives,
        values,
        weights,
        metadata,
    })
}

/// Serializes a problem in either input format. Numbers use the shortest
/// representation that parses back to the same double.
pub fn write_problem(doc: &ProblemDocument, format: InputFormat) -> Vec<u8> {
    match format {
        InputFormat::Json => {
            let raw = ProblemJson {
                criteria: doc.matrix.criteria().to_vec(),
                alternatives: doc.matrix.alternatives().to_vec(),
                values: doc.matrix.rows().to_vec(),
                weights: doc.weights.as_slice().to_vec(),
                metadata: doc.metadata.clone(),
            };
            let mut out = serde_json::to_vec_pretty(&raw).expect("problem serializes");
            out.push(b'\n');
            out
        }
        InputFormat::Csv => {
            let mut out = Vec::new();
            for (k, v) in &doc.metadata {
                out.extend_from_slice(format!("# {k}: {v}\n").as_bytes());
            }
            let mut w = csv::Writer::from_writer(out);
            let header = std::iter::once("alternative")
                .chain(doc.matrix.criteria().iter().map(String::as_str));
            w.write_record(header).expect("in-memory write");
            for (label, row) in doc.matrix.alternatives().iter().zip(doc.matrix.rows()) {
                let cells = std::iter::once(label.clone()).chain(row.iter().map(f64::to_string));
                w.write_record(cells).expect("in-memory write");
            }
            let cells = std::iter::once("weights".to_string())
                .chain(doc.weights.as_slice().iter().map(f64::to_string));
            w.write_record(cells).expect("in-memory write");
            w.into_inner().expect("in-memory flush")
        }
    }
}

/// Fixed-point rendering without a `-0.000` artefact.
pub fn fixed(x: f64, dp: usize) -> String {
    let s = format!("{x:.dp$}");
    match s.strip_prefix('-') {
        Some(rest) if rest.chars().all(|c| c == '0' || c == '.') => rest.to_string(),
        _ => s,
    }
}

fn text_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let mut s = String::new();
        for (cell, w) in cells.zip(&widths) {
            let pad = w - cell.chars().count();
            s.push_str(cell);
            s.extend(std::iter::repeat_n(' ', pad + 2));
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(&mut headers.iter().copied());
    for row in rows {
        line(&mut row.iter().map(String::as_str));
    }
    out
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

fn score_header(method: Method) -> &'static str {
    match method {
        Method::PStar => "P*",
        Method::Wam => "WAM",
        Method::Wgm => "WGM",
        Method::KCentroid => "Pi*(k)",
        Method::DEuclid => "D^E",
        Method::DManhattan => "D^M",
    }
}

/// Anything the CLI can print.
pub trait Report {
    fn to_json(&self) -> Value;
    fn to_csv(&self) -> String;
    fn to_text(&self) -> String;
}

/// Renders a report. Output is a pure function of the report.
pub fn write_result(report: &dyn Report, format: OutputFormat) -> Vec<u8> {
    match format {
        OutputFormat::Json => {
            let mut out = serde_json::to_vec_pretty(&report.to_json()).expect("json value");
            out.push(b'\n');
            out
        }
        OutputFormat::Csv => report.to_csv().into_bytes(),
        OutputFormat::Text => report.to_text().into_bytes(),
    }
}

fn group_labels(groups: &[Vec<usize>], labels: &[String]) -> Value {
    groups
        .iter()
        .map(|g| g.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>())
        .collect()
}

impl Report for AggregationResult {
    fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .alternatives
            .iter()
            .enumerate()
            .map(|(i, label)| {
                json!({
                    "label": label,
                    "score": self.score_vector.scores[i],
                    "scaled": self.scaled.as_ref().map(|s| s.values[i]),
                    "rank": self.ranking.dense_ranks[i],
                })
            })
            .collect();
        json!({
            "method": self.score_vector.method,
            "direction": self.score_vector.direction,
            "alternatives": rows,
            "tie_groups": group_labels(&self.ranking.tie_groups, &self.alternatives),
            "all_tied": self.scaled.as_ref().map(|s| s.all_tied),
            "warnings": self.warnings,
        })
    }

    fn to_csv(&self) -> String {
        let rows = self.alternatives.iter().enumerate().map(|(i, label)| {
            vec![
                label.clone(),
                self.score_vector.scores[i].to_string(),
                self.scaled
                    .as_ref()
                    .map_or_else(String::new, |s| s.values[i].to_string()),
                self.ranking.dense_ranks[i].to_string(),
            ]
        });
        csv_string(&["alternative", "score", "scaled", "rank"], rows)
    }

    fn to_text(&self) -> String {
        let header = score_header(self.score_vector.method);
        let rows: Vec<Vec<String>> = self
            .alternatives
            .iter()
            .enumerate()
            .map(|(i, label)| {
                let mut row = vec![label.clone(), fixed(self.score_vector.scores[i], SCORE_DP)];
                if let Some(s) = &self.scaled {
                    row.push(fixed(s.values[i], 0));
                }
                row.push(self.ranking.dense_ranks[i].to_string());
                row
            })
            .collect();
        let headers: Vec<&str> = if self.scaled.is_some() {
            vec!["Alternative", header, "scaled [0-100]", "Rank"]
        } else {
            vec!["Alternative", header, "Rank"]
        };
        let mut out = text_table(&headers, &rows);
        let _ = writeln!(
            out,
            "\nRanking: {}",
            self.ranking.describe(&self.alternatives)
        );
        if self.scaled.as_ref().is_some_and(|s| s.all_tied) {
            out.push_str("All alternatives are tied.\n");
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}

impl Report for ComparisonReport {
    fn to_json(&self) -> Value {
        let results: Vec<Value> = self
            .outcomes
            .iter()
            .map(|o| match &o.outcome {
                Ok(run) => json!({
                    "method": o.method,
                    "direction": run.scores.direction,
                    "scores": run.scores.scores,
                    "ranks": run.ranking.dense_ranks,
                    "tie_groups": group_labels(&run.ranking.tie_groups, &self.alternatives),
                }),
                Err(e) => json!({ "method": o.method, "error": e }),
            })
            .collect();
        json!({
            "alternatives": self.alternatives,
            "methods": self.methods,
            "results": results,
            "agreement": self.agreement,
        })
    }

    fn to_csv(&self) -> String {
        let mut header = vec!["alternative"];
        header.extend(self.methods.iter().map(|m| m.name()));
        let rows = self
            .alternatives
            .iter()
            .zip(self.rank_table())
            .map(|(label, ranks)| {
                std::iter::once(label.clone())
                    .chain(
                        ranks
                            .iter()
                            .map(|r| r.map_or_else(String::new, |r| r.to_string())),
                    )
                    .collect()
            });
        csv_string(&header, rows)
    }

    fn to_text(&self) -> String {
        let mut headers = vec!["Alternative"];
        headers.extend(self.methods.iter().map(|m| m.name()));
        let rows: Vec<Vec<String>> = self
            .alternatives
            .iter()
            .zip(self.rank_table())
            .map(|(label, ranks)| {
                std::iter::once(label.clone())
                    .chain(
                        ranks
                            .iter()
                            .map(|r| r.map_or_else(|| "-".into(), |r| r.to_string())),
                    )
                    .collect()
            })
            .collect();
        let mut out = text_table(&headers, &rows);
        out.push('\n');
        for o in &self.outcomes {
            match &o.outcome {
                Ok(run) => {
                    let _ = writeln!(
                        out,
                        "{}: {}",
                        o.method,
                        run.ranking.describe(&self.alternatives)
                    );
                }
                Err(e) => {
                    let _ = writeln!(out, "{}: error: {e}", o.method);
                }
            }
        }
        if !self.agreement.is_empty() {
            out.push_str("\nAgreement:\n");
            for g in &self.agreement {
                let verdict = match g.agree {
                    Some(true) => "agree",
                    Some(false) => "disagree",
                    None => "n/a",
                };
                let _ = writeln!(out, "  {} vs {}: {verdict}", g.a, g.b);
            }
        }
        out
    }
}

fn maps_text(report: &InvarianceReport) -> Option<String> {
    let ce = report.first_counterexample.as_ref()?;
    let labels = ce.transformed.criteria();
    let maps = ce
        .maps
        .iter()
        .zip(labels)
        .map(|(m, l)| {
            let b = m.intercept();
            let sign = if b.is_sign_negative() { '-' } else { '+' };
            format!("{l}: p -> {} * p {sign} {}", m.slope(), b.abs())
        })
        .collect::<Vec<_>>()
        .join("; ");
    let alts = ce.transformed.alternatives();
    Some(format!(
        "counterexample (trial {}):\n  maps:   {maps}\n  before: {}\n  after:  {}\n",
        ce.trial,
        ce.ranking_before.describe(alts),
        ce.ranking_after.describe(alts),
    ))
}

impl Report for InvarianceReport {
    fn to_json(&self) -> Value {
        let counterexample = self.first_counterexample.as_ref().map(|ce| {
            json!({
                "trial": ce.trial,
                "maps": ce.maps,
                "transformed": {
                    "criteria": ce.transformed.criteria(),
                    "alternatives": ce.transformed.alternatives(),
                    "values": ce.transformed.rows(),
                },
                "tie_groups_before": group_labels(&ce.ranking_before.tie_groups, ce.transformed.alternatives()),
                "tie_groups_after": group_labels(&ce.ranking_after.tie_groups, ce.transformed.alternatives()),
            })
        });
        json!({
            "method": self.method,
            "trials": self.trials,
            "violations": self.violations,
            "skipped": self.skipped,
            "exhausted": self.exhausted,
            "seed": self.seed,
            "first_counterexample": counterexample,
        })
    }

    fn to_csv(&self) -> String {
        [self.clone()].to_csv()
    }

    fn to_text(&self) -> String {
        let rows = vec![
            vec!["method".into(), self.method.to_string()],
            vec!["trials".into(), self.trials.to_string()],
            vec!["violations".into(), self.violations.to_string()],
            vec!["skipped".into(), self.skipped.to_string()],
            vec!["exhausted".into(), self.exhausted.to_string()],
            vec!["seed".into(), self.seed.to_string()],
        ];
        let mut out = text_table(&["field", "value"], &rows);
        if let Some(ce) = maps_text(self) {
            out.push_str(&ce);
        }
        out
    }
}

impl Report for [InvarianceReport] {
    fn to_json(&self) -> Value {
        self.iter().map(Report::to_json).collect()
    }

    fn to_csv(&self) -> String {
        let rows = self.iter().map(|r| {
            vec![
                r.method.to_string(),
                r.trials.to_string(),
                r.violations.to_string(),
                r.skipped.to_string(),
                r.exhausted.to_string(),
                r.seed.to_string(),
                r.first_counterexample
                    .as_ref()
                    .map_or_else(String::new, |c| c.trial.to_string()),
            ]
        });
        csv_string(
            &[
                "method",
                "trials",
                "violations",
                "skipped",
                "exhausted",
                "seed",
                "first_violation_trial",
            ],
            rows,
        )
    }

    fn to_text(&self) -> String {
        self.iter()
            .map(Report::to_text)
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl Report for Vec<InvarianceReport> {
    fn to_json(&self) -> Value {
        self.as_slice().to_json()
    }

    fn to_csv(&self) -> String {
        self.as_slice().to_csv()
    }

    fn to_text(&self) -> String {
        self.as_slice().to_text()
    }
}

impl Report for ComparabilityReport {
    fn to_json(&self) -> Value {
        let pairs: Vec<Value> = self
            .violating_pairs
            .iter()
            .map(|&(a, b)| {
                json!([
                    self.per_criterion[a].criterion,
                    self.per_criterion[b].criterion
                ])
            })
            .collect();
        json!({
            "comparable": self.comparable,
            "per_criterion": self.per_criterion,
            "violating_pairs": pairs,
        })
    }

    fn to_csv(&self) -> String {
        let rows = self.per_criterion.iter().map(|c| {
            vec![
                c.criterion.clone(),
                c.min.to_string(),
                c.max.to_string(),
                c.range.to_string(),
            ]
        });
        csv_string(&["criterion", "min", "max", "range"], rows)
    }

    fn to_text(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .per_criterion
            .iter()
            .map(|c| {
                vec![
                    c.criterion.clone(),
                    c.min.to_string(),
                    c.max.to_string(),
                    c.range.to_string(),
                ]
            })
            .collect();
        let mut out = text_table(&["Criterion", "min", "max", "range"], &rows);
        if self.comparable {
            out.push_str(
                "\nScales are comparable: all criteria share the same minimum and maximum.\n",
            );
        } else {
            let pairs = self
                .violating_pairs
                .iter()
                .map(|&(a, b)| {
                    format!(
                        "({}, {})",
                        self.per_criterion[a].criterion, self.per_criterion[b].criterion
                    )
                })
                .collect::<Vec<_>>()
                .join(", ");
            let _ = writeln!(
                out,
                "\nScales are NOT comparable. Differing min/max: {pairs}"
            );
        }
        out
    }
}

impl Report for EquilibriumReport {
    fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("plain data")
    }

    fn to_csv(&self) -> String {
        let rows = self
            .horizontal
            .iter()
            .enumerate()
            .map(|(i, r)| vec!["horizontal".into(), i.to_string(), r.to_string()])
            .chain(
                self.vertical
                    .iter()
                    .enumerate()
                    .map(|(j, r)| vec!["vertical".into(), j.to_string(), r.to_string()]),
            );
        csv_string(&["kind", "index", "residual"], rows)
    }

    fn to_text(&self) -> String {
        format!(
            "Equilibrium residuals: max horizontal {:.3e}, max vertical {:.3e}\n",
            self.max_horizontal, self.max_vertical
        )
    }
}

impl Report for CheckReport {
    fn to_json(&self) -> Value {
        json!({
            "comparability": self.comparability.to_json(),
            "equilibrium": self.equilibrium.to_json(),
        })
    }

    fn to_csv(&self) -> String {
        let mut rows: Vec<Vec<String>> = vec![vec![
            "comparable".into(),
            String::new(),
            self.comparability.comparable.to_string(),
        ]];
        for c in &self.comparability.per_criterion {
            rows.push(vec!["min".into(), c.criterion.clone(), c.min.to_string()]);
            rows.push(vec!["max".into(), c.criterion.clone(), c.max.to_string()]);
        }
        for (i, r) in self.equilibrium.horizontal.iter().enumerate() {
            rows.push(vec![
                "horizontal_residual".into(),
                i.to_string(),
                r.to_string(),
            ]);
        }
        for (c, r) in self
            .comparability
            .per_criterion
            .iter()
            .zip(&self.equilibrium.vertical)
        {
            rows.push(vec![
                "vertical_residual".into(),
                c.criterion.clone(),
                r.to_string(),
            ]);
        }
        csv_string(&["item", "key", "value"], rows)
    }

    fn to_text(&self) -> String {
        format!(
            "{}\n{}",
            self.comparability.to_text(),
            self.equilibrium.to_text()
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlotPoint {
    pub criterion: String,
    pub z: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlotSeries {
    pub alternative: String,
    pub points: Vec<PlotPoint>,
    /// Weighted centroid of `points`.
    pub pstar: f64,
}

/// Per-alternative weighted z-points and their barycentre, ready to plot.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlotData {
    pub series: Vec<PlotSeries>,
    /// Smallest and largest plotted coordinate.
    pub z_range: (f64, f64),
}

pub fn emit_plot_data(
    matrix: &PreferenceMatrix,
    w: &WeightVector,
    policy: DegeneratePolicy,
) -> Result<PlotData> {
    w.expect_len(matrix.n_criteria())?;
    let z = z_normalize_with(matrix, policy)?;
    let series: Vec<PlotSeries> = matrix
        .alternatives()
        .iter()
        .zip(z.values())
        .map(|(label, row)| PlotSeries {
            alternative: label.clone(),
            points: matrix
                .criteria()
                .iter()
                .zip(row)
                .zip(w.as_slice())
                .map(|((c, &z), &weight)| PlotPoint {
                    criterion: c.clone(),
                    z,
                    weight,
                })
                .collect(),
            pstar: weighted_sum(row, w.as_slice()),
        })
        .collect();
    let z_range = series
        .iter()
        .flat_map(|s| s.points.iter().map(|p| p.z).chain(std::iter::once(s.pstar)))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
    Ok(PlotData { series, z_range })
}

impl Report for PlotData {
    fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("plain data")
    }

    fn to_csv(&self) -> String {
        let rows = self.series.iter().flat_map(|s| {
            s.points.iter().map(move |p| {
                vec![
                    s.alternative.clone(),
                    p.criterion.clone(),
                    p.z.to_string(),
                    p.weight.to_string(),
                    s.pstar.to_string(),
                ]
            })
        });
        csv_string(&["alternative", "criterion", "z", "weight", "pstar"], rows)
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.series {
            let pts = s
                .points
                .iter()
                .map(|p| format!("{}={} (w {})", p.criterion, fixed(p.z, Z_DP), p.weight))
                .collect::<Vec<_>>()
                .join(", ");
            let _ = writeln!(
                out,
                "{}: {pts} -> P* {}",
                s.alternative,
                fixed(s.pstar, SCORE_DP)
            );
        }
        out
    }
}

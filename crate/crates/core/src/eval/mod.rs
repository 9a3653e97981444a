//! Retrieval metrics, the evaluation harness, the experiment grid and a
//! synthetic genealogy generator.
//!
//! Per query, with `S` the suggestion list and `R` the relevant set:
//!
//! * precision@k = |S[..k] ∩ R| / k (the denominator is always `k`)
//! * recall = |S ∩ R| / |R|
//! * F1 = harmonic mean of precision@k_max and recall, 0 when both are 0
//!
//! Reports macro-average these over queries. Accuracy is AP@k_max.

mod grid;
mod methods;
mod synth;

use std::collections::BTreeSet;
use std::io::{self, Write};
use std::time::Instant;

use rayon::prelude::*;

use crate::ingest::GroundTruth;
use crate::scalar::Scalar;

pub use grid::{run_experiment_grid, write_grid_tsv, GridRow, GridSpec};
pub use methods::{Method, MethodContext};
pub use synth::{generate_synthetic_genealogy, SynthError, SyntheticGenealogy};

/// Cut-offs reported as AP@k columns.
pub const AP_CUTOFFS: [usize; 5] = [1, 2, 3, 5, 10];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryResult {
    pub query: String,
    pub suggested: Vec<String>,
    pub relevant: BTreeSet<String>,
}

impl QueryResult {
    /// Drops the query itself and repeated names from `suggested`.
    pub fn new(query: impl Into<String>, suggested: Vec<String>, relevant: BTreeSet<String>) -> Self {
        let query = query.into();
        let mut seen = BTreeSet::new();
        let suggested = suggested.into_iter().filter(|s| *s != query && seen.insert(s.clone())).collect();
        Self { query, suggested, relevant }
    }

    pub fn covered(&self) -> bool {
        !self.suggested.is_empty()
    }

    fn hits_in(&self, n: usize) -> usize {
        self.suggested.iter().take(n).filter(|s| self.relevant.contains(*s)).count()
    }
}

pub fn precision_at_k<T: Scalar>(result: &QueryResult, k: usize) -> T {
    assert!(k >= 1, "k must be at least 1");
    T::from_ratio(result.hits_in(k) as u64, k as u64)
}

pub fn recall_of<T: Scalar>(result: &QueryResult) -> T {
    if result.relevant.is_empty() {
        return T::zero();
    }
    T::from_ratio(result.hits_in(usize::MAX) as u64, result.relevant.len() as u64)
}

pub fn f1_of<T: Scalar>(result: &QueryResult, k: usize) -> T {
    let p: T = precision_at_k(result, k);
    let r: T = recall_of(result);
    if p + r == T::zero() {
        return T::zero();
    }
    T::from_ratio(2, 1) * p * r / (p + r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalOptions {
    pub k: usize,
    /// Average over covered queries only instead of counting misses as 0.
    pub exclude_uncovered: bool,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self { k: 10, exclude_uncovered: false }
    }
}

/// Macro-averaged metrics in a chosen scalar type.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricSummary<T> {
    pub queries: usize,
    pub covered: usize,
    pub accuracy: T,
    pub f1: T,
    /// Aligned with [`AP_CUTOFFS`].
    pub ap_at: [T; 5],
    pub recall: T,
}

pub fn summarize<T: Scalar>(results: &[QueryResult], options: EvalOptions) -> MetricSummary<T> {
    let covered = results.iter().filter(|r| r.covered()).count();
    let counted: Vec<&QueryResult> =
        results.iter().filter(|r| !options.exclude_uncovered || r.covered()).collect();
    let mean = |f: &dyn Fn(&QueryResult) -> T| -> T {
        if counted.is_empty() {
            return T::zero();
        }
        let sum = counted.iter().fold(T::zero(), |acc, r| acc + f(r));
        sum / T::from_ratio(counted.len() as u64, 1)
    };
    MetricSummary {
        queries: results.len(),
        covered,
        accuracy: mean(&|r| precision_at_k(r, options.k)),
        f1: mean(&|r| f1_of(r, options.k)),
        ap_at: AP_CUTOFFS.map(|k| mean(&|r| precision_at_k(r, k))),
        recall: mean(&|r| recall_of(r)),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationReport {
    pub method: String,
    pub metrics: MetricSummary<f64>,
    pub wall_time_seconds: f64,
}

impl EvaluationReport {
    pub fn covered_pct(&self) -> f64 {
        if self.metrics.queries == 0 {
            0.0
        } else {
            self.metrics.covered as f64 / self.metrics.queries as f64
        }
    }

    pub fn ap(&self, k: usize) -> Option<f64> {
        AP_CUTOFFS.iter().position(|&c| c == k).map(|i| self.metrics.ap_at[i])
    }
}

/// Runs `suggester` on every ground-truth query (in parallel) and scores the
/// top `options.k` of each answer.
pub fn evaluate_method<F>(method: &str, suggester: F, ground_truth: &GroundTruth, options: EvalOptions) -> EvaluationReport
where
    F: Fn(&str) -> Vec<String> + Sync,
{
    let start = Instant::now();
    let results: Vec<QueryResult> = ground_truth
        .entries
        .par_iter()
        .map(|e| {
            let mut suggested = suggester(&e.query);
            suggested.truncate(options.k);
            QueryResult::new(e.query.clone(), suggested, e.synonyms.clone())
        })
        .collect();
    let wall_time_seconds = start.elapsed().as_secs_f64();
    EvaluationReport { method: method.to_string(), metrics: summarize(&results, options), wall_time_seconds }
}

pub const REPORT_COLUMNS: &[&str] = &[
    "accuracy", "f1", "ap@1", "ap@2", "ap@3", "ap@5", "ap@10", "recall", "covered", "covered_pct", "queries", "wall_time_s",
];

pub(crate) fn report_fields(r: &EvaluationReport) -> String {
    let m = &r.metrics;
    let mut cols: Vec<String> = vec![format!("{:.4}", m.accuracy), format!("{:.4}", m.f1)];
    cols.extend(m.ap_at.iter().map(|v| format!("{v:.4}")));
    cols.push(format!("{:.4}", m.recall));
    cols.push(m.covered.to_string());
    cols.push(format!("{:.4}", r.covered_pct()));
    cols.push(m.queries.to_string());
    cols.push(format!("{:.4}", r.wall_time_seconds));
    cols.join("\t")
}

pub fn write_report_tsv<W: Write>(mut w: W, reports: &[EvaluationReport]) -> io::Result<()> {
    writeln!(w, "method\t{}", REPORT_COLUMNS.join("\t"))?;
    for r in reports {
        writeln!(w, "{}\t{}", r.method, report_fields(r))?;
    }
    w.flush()
}

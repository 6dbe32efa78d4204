//! Precision / recall / F-measure and per-category reports.
//!
//! Positives are CONTRADICTION verdicts. Per-category slices follow the
//! detection mode: gold categories in gold mode, predicted categories
//! otherwise. The macro average is the unweighted mean over categories that
//! saw any counts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::baseline::BaselineModel;
use crate::corpus::{ContradictionCategory, Corpus};
use crate::lexicons::Lexicons;
use crate::matchers::{detect_lenient, DetectionMode, Verdict};
use crate::mining::RuleBase;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("cannot evaluate an empty corpus")]
    EmptyCorpus,
}

/// tp / (tp + fp); 0 when the system decided nothing (flagged upstream).
pub fn precision(tp: u64, fp: u64) -> f64 {
    if tp + fp == 0 {
        0.0
    } else {
        tp as f64 / (tp + fp) as f64
    }
}

/// tp / (tp + fn); 0 when there were no gold positives (flagged upstream).
pub fn recall(tp: u64, fn_: u64) -> f64 {
    if tp + fn_ == 0 {
        0.0
    } else {
        tp as f64 / (tp + fn_) as f64
    }
}

/// Harmonic mean 2pr/(p+r); 0 when both inputs are 0.
pub fn f_measure(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

/// Unweighted mean, the macro-average rule.
pub fn macro_average(values: &[f64]) -> f64 {
    if values.is_empty() {
        0.0
    } else {
        values.iter().sum::<f64>() / values.len() as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Counts {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
}

impl Counts {
    pub fn metrics(&self) -> Metrics {
        let p = precision(self.tp, self.fp);
        let r = recall(self.tp, self.fn_);
        Metrics {
            precision: p,
            recall: r,
            f_measure: f_measure(p, r),
        }
    }

    pub fn add(&mut self, other: &Counts) {
        self.tp += other.tp;
        self.fp += other.fp;
        self.fn_ += other.fn_;
    }

    pub fn is_empty(&self) -> bool {
        self.tp + self.fp + self.fn_ == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CategoryReport {
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    #[serde(flatten)]
    pub counts: Counts,
}

impl From<Counts> for CategoryReport {
    fn from(counts: Counts) -> Self {
        let m = counts.metrics();
        CategoryReport {
            precision: m.precision,
            recall: m.recall,
            f_measure: m.f_measure,
            counts,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub mode: DetectionMode,
    pub n_pairs: usize,
    pub per_category: BTreeMap<ContradictionCategory, CategoryReport>,
    pub overall: CategoryReport,
    pub macro_average: Metrics,
    /// Zero-denominator notes: slices whose precision or recall had an
    /// empty denominator and were reported as 0.
    pub flags: Vec<String>,
}

/// Which category slice a pair's outcome is charged to.
fn slice_of(
    mode: DetectionMode,
    gold_category: Option<ContradictionCategory>,
    verdict: &Verdict,
    outcome_positive: bool,
    gold_positive: bool,
) -> ContradictionCategory {
    let fallback = ContradictionCategory::Others;
    match mode {
        DetectionMode::GoldCategory => {
            if gold_positive {
                gold_category.unwrap_or(fallback)
            } else {
                // False positives on unlabeled pairs are charged to the
                // matcher that fired (voting routing).
                verdict.category.unwrap_or(fallback)
            }
        }
        DetectionMode::Classified => verdict.category.unwrap_or(fallback),
        DetectionMode::Voting => {
            if outcome_positive {
                verdict.category.unwrap_or(fallback)
            } else {
                gold_category.unwrap_or(fallback)
            }
        }
    }
}

/// Runs the detector over a corpus and aggregates per-category and overall
/// counts. Returns the verdicts alongside the report so callers can dump
/// them without a second pass.
pub fn evaluate_with_verdicts(
    test: &Corpus,
    rb: &RuleBase,
    model: &BaselineModel,
    lexicons: &Lexicons,
    mode: DetectionMode,
) -> Result<(Report, Vec<Verdict>), EvalError> {
    if test.is_empty() {
        return Err(EvalError::EmptyCorpus);
    }
    let mut per: BTreeMap<ContradictionCategory, Counts> = BTreeMap::new();
    let mut overall = Counts::default();
    let mut verdicts = Vec::with_capacity(test.len());

    for pair in &test.pairs {
        let verdict = detect_lenient(pair, rb, model, lexicons, mode);
        let predicted = verdict.label.is_contradiction();
        let gold = pair.gold.is_contradiction();
        let slice = slice_of(mode, pair.category, &verdict, predicted, gold);
        let counts = per.entry(slice).or_default();
        match (predicted, gold) {
            (true, true) => {
                counts.tp += 1;
                overall.tp += 1;
            }
            (true, false) => {
                counts.fp += 1;
                overall.fp += 1;
            }
            (false, true) => {
                counts.fn_ += 1;
                overall.fn_ += 1;
            }
            (false, false) => {}
        }
        verdicts.push(verdict);
    }

    let mut flags = Vec::new();
    let mut per_category = BTreeMap::new();
    let mut macro_p = Vec::new();
    let mut macro_r = Vec::new();
    let mut macro_f = Vec::new();
    for category in ContradictionCategory::ALL {
        let counts = per.get(&category).copied().unwrap_or_default();
        if counts.is_empty() {
            continue;
        }
        if counts.tp + counts.fp == 0 {
            flags.push(format!("{category}: no positive decisions; precision reported as 0"));
        }
        if counts.tp + counts.fn_ == 0 {
            flags.push(format!("{category}: no gold positives; recall reported as 0"));
        }
        let report = CategoryReport::from(counts);
        macro_p.push(report.precision);
        macro_r.push(report.recall);
        macro_f.push(report.f_measure);
        per_category.insert(category, report);
    }
    if overall.tp + overall.fp == 0 {
        flags.push("overall: no positive decisions; precision reported as 0".into());
    }
    if overall.tp + overall.fn_ == 0 {
        flags.push("overall: no gold positives; recall reported as 0".into());
    }

    let report = Report {
        mode,
        n_pairs: test.len(),
        per_category,
        overall: CategoryReport::from(overall),
        macro_average: Metrics {
            precision: macro_average(&macro_p),
            recall: macro_average(&macro_r),
            f_measure: macro_average(&macro_f),
        },
        flags,
    };
    Ok((report, verdicts))
}

pub fn evaluate(
    test: &Corpus,
    rb: &RuleBase,
    model: &BaselineModel,
    lexicons: &Lexicons,
    mode: DetectionMode,
) -> Result<Report, EvalError> {
    evaluate_with_verdicts(test, rb, model, lexicons, mode).map(|(report, _)| report)
}

pub fn report_to_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// Aligned plain-text table: one row per category, then the macro average
/// and the overall (micro) row. Percentages with two decimals; empty slices
/// print dashes.
pub fn report_to_table(report: &Report) -> String {
    let mut out = String::new();
    let pct = |x: f64| format!("{:.2}", 100.0 * x);
    out.push_str(&format!(
        "{:<12} {:>10} {:>10} {:>10}\n",
        "category", "precision", "recall", "f-measure"
    ));
    for category in ContradictionCategory::ALL {
        match report.per_category.get(&category) {
            Some(r) => out.push_str(&format!(
                "{:<12} {:>10} {:>10} {:>10}\n",
                category.as_str(),
                pct(r.precision),
                pct(r.recall),
                pct(r.f_measure)
            )),
            None => out.push_str(&format!(
                "{:<12} {:>10} {:>10} {:>10}\n",
                category.as_str(),
                "-",
                "-",
                "-"
            )),
        }
    }
    out.push_str(&format!(
        "{:<12} {:>10} {:>10} {:>10}\n",
        "Average",
        pct(report.macro_average.precision),
        pct(report.macro_average.recall),
        pct(report.macro_average.f_measure)
    ));
    out.push_str(&format!(
        "{:<12} {:>10} {:>10} {:>10}\n",
        "Overall",
        pct(report.overall.precision),
        pct(report.overall.recall),
        pct(report.overall.f_measure)
    ));
    out
}

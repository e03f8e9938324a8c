//! Scores the analyzer against a labeled corpus.
//!
//! A manifest lists one program per line as `RELPATH DETECTOR[ LINES]`, where
//! DETECTOR is a detector id or `NONE` and LINES is a comma-separated list.
//! Text after `#` is ignored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::analyze_path;
use crate::detectors::DetectorId;
use crate::knowledge_base::KnowledgeBase;
use crate::report::AnalysisResult;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub file: PathBuf,
    /// `None` for programs that are clean or whose bug is out of static reach.
    pub expected_detector: Option<DetectorId>,
    pub expected_lines: Option<Vec<usize>>,
}

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("{path}:{line}: {message}")]
    Format {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub fn load_manifest(path: &Path) -> Result<Vec<CorpusEntry>, EvalError> {
    let text = std::fs::read_to_string(path).map_err(|source| EvalError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let base = path.parent().unwrap_or(Path::new(""));
    parse_manifest(&text, base).map_err(|(line, message)| EvalError::Format {
        path: path.to_path_buf(),
        line,
        message,
    })
}

/// Parses manifest text, resolving relative paths against `base`. Errors
/// carry the 1-based line number.
pub fn parse_manifest(text: &str, base: &Path) -> Result<Vec<CorpusEntry>, (usize, String)> {
    let mut entries = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let (rel, label, lines) = match fields.as_slice() {
            [rel, label] => (*rel, *label, None),
            [rel, label, lines] => (*rel, *label, Some(*lines)),
            _ => return Err((line_no, "expected 'RELPATH DETECTOR[ LINES]'".into())),
        };
        let expected_detector = if label == "NONE" {
            None
        } else {
            Some(
                label
                    .parse::<DetectorId>()
                    .map_err(|e| (line_no, e.to_string()))?,
            )
        };
        let expected_lines = match lines {
            None => None,
            Some(_) if expected_detector.is_none() => {
                return Err((line_no, "NONE entries cannot list lines".into()))
            }
            Some(list) => Some(
                list.split(',')
                    .map(|n| {
                        n.parse::<usize>()
                            .ok()
                            .filter(|&n| n > 0)
                            .ok_or_else(|| (line_no, format!("invalid line number '{n}'")))
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        if !seen.insert(rel.to_string()) {
            return Err((line_no, format!("duplicate entry for '{rel}'")));
        }
        entries.push(CorpusEntry {
            file: base.join(rel),
            expected_detector,
            expected_lines,
        });
    }
    Ok(entries)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    /// A diagnostic matches the label.
    Tp,
    /// Diagnostics that do not match the label; for NONE entries, one per
    /// diagnostic.
    Fp(usize),
    /// A labeled bug with no diagnostics.
    Fn,
    /// A NONE entry with no diagnostics.
    Clean,
}

pub fn score(entry: &CorpusEntry, result: &AnalysisResult) -> Outcome {
    let diags = &result.diagnostics;
    let Some(expected) = entry.expected_detector else {
        return if diags.is_empty() {
            Outcome::Clean
        } else {
            Outcome::Fp(diags.len())
        };
    };
    let matched = diags.iter().any(|d| {
        d.detector == expected
            && entry
                .expected_lines
                .as_ref()
                .is_none_or(|lines| lines.contains(&d.line))
    });
    if matched {
        Outcome::Tp
    } else if diags.is_empty() {
        Outcome::Fn
    } else {
        Outcome::Fp(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Metrics {
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    /// `None` when its denominator is zero.
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub f1: Option<f64>,
}

impl Metrics {
    pub fn from_counts(tp: usize, fp: usize, fn_: usize) -> Metrics {
        let ratio = |num: usize, den: usize| (den > 0).then(|| num as f64 / den as f64);
        let precision = ratio(tp, tp + fp);
        let recall = ratio(tp, tp + fn_);
        let f1 = match (precision, recall) {
            (Some(p), Some(r)) if p + r > 0.0 => Some(2.0 * p * r / (p + r)),
            _ => None,
        };
        Metrics {
            tp,
            fp,
            fn_,
            precision,
            recall,
            f1,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryResult {
    pub entry: PathBuf,
    pub expected: Option<DetectorId>,
    pub outcome: Outcome,
    pub detectors: Vec<DetectorId>,
    pub timing_ms: f64,
    #[serde(skip)]
    pub result: AnalysisResult,
}

#[derive(Debug, Clone, Serialize)]
pub struct EvalReport {
    #[serde(flatten)]
    pub metrics: Metrics,
    /// True positives per detector.
    pub per_detector: BTreeMap<DetectorId, usize>,
    pub mean_time_ms: f64,
    pub n_files: usize,
    pub entries: Vec<EntryResult>,
}

/// True positives per detector, with every detector present.
pub fn distribution(entries: &[EntryResult]) -> BTreeMap<DetectorId, usize> {
    let mut counts: BTreeMap<DetectorId, usize> =
        DetectorId::ALL.into_iter().map(|d| (d, 0)).collect();
    for e in entries {
        if let (Outcome::Tp, Some(d)) = (e.outcome, e.expected) {
            *counts.entry(d).or_default() += 1;
        }
    }
    counts
}

/// Analyzes every entry in parallel and aggregates the scores. Entries keep
/// manifest order.
pub fn evaluate(
    entries: &[CorpusEntry],
    kb: &KnowledgeBase,
    enabled: &BTreeSet<DetectorId>,
) -> Result<EvalReport, EvalError> {
    let scored: Vec<EntryResult> = entries
        .par_iter()
        .map(|entry| {
            let result =
                analyze_path(&entry.file, kb, enabled).map_err(|source| EvalError::Io {
                    path: entry.file.clone(),
                    source,
                })?;
            let mut detectors: Vec<DetectorId> =
                result.diagnostics.iter().map(|d| d.detector).collect();
            detectors.dedup();
            Ok(EntryResult {
                entry: entry.file.clone(),
                expected: entry.expected_detector,
                outcome: score(entry, &result),
                detectors,
                timing_ms: result.timing_ms,
                result,
            })
        })
        .collect::<Result<_, EvalError>>()?;
    let (mut tp, mut fp, mut fn_) = (0, 0, 0);
    for e in &scored {
        match e.outcome {
            Outcome::Tp => tp += 1,
            Outcome::Fp(n) => fp += n,
            Outcome::Fn => fn_ += 1,
            Outcome::Clean => {}
        }
    }
    let n_files = scored.len();
    let mean_time_ms = if n_files == 0 {
        0.0
    } else {
        scored.iter().map(|e| e.timing_ms).sum::<f64>() / n_files as f64
    };
    Ok(EvalReport {
        metrics: Metrics::from_counts(tp, fp, fn_),
        per_detector: distribution(&scored),
        mean_time_ms,
        n_files,
        entries: scored,
    })
}

fn fmt_metric(m: Option<f64>) -> String {
    m.map_or_else(|| "undefined".to_string(), |v| format!("{v:.3}"))
}

pub fn render_eval_text(report: &EvalReport) -> String {
    let mut out = String::new();
    for e in &report.entries {
        let expected = e.expected.map_or("NONE", DetectorId::as_str);
        let outcome = match e.outcome {
            Outcome::Tp => "TP".to_string(),
            Outcome::Fp(n) => format!("FP x{n}"),
            Outcome::Fn => "FN".to_string(),
            Outcome::Clean => "clean".to_string(),
        };
        let found: Vec<&str> = e.detectors.iter().map(|d| d.as_str()).collect();
        let _ = writeln!(
            out,
            "{} expected {expected} found [{}] {outcome}",
            e.entry.display(),
            found.join(",")
        );
    }
    let m = &report.metrics;
    let _ = writeln!(out, "files: {}", report.n_files);
    let _ = writeln!(out, "TP {} FP {} FN {}", m.tp, m.fp, m.fn_);
    let _ = writeln!(
        out,
        "precision {} recall {} f1 {}",
        fmt_metric(m.precision),
        fmt_metric(m.recall),
        fmt_metric(m.f1)
    );
    let dist: Vec<String> = report
        .per_detector
        .iter()
        .map(|(d, n)| format!("{d}: {n}"))
        .collect();
    let _ = writeln!(out, "distribution: {}", dist.join(", "));
    let _ = writeln!(out, "mean time per file: {:.3} ms", report.mean_time_ms);
    out
}

pub fn render_eval_json(report: &EvalReport) -> String {
    serde_json::to_string(report).expect("report serializes")
}

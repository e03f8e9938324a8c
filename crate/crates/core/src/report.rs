//! Text and JSON renderings of analysis results.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::detectors::{DetectorId, Diagnostic};
use crate::frontend::SyntaxErrorReport;

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisResult {
    pub file: PathBuf,
    /// Empty whenever `syntax_error` is set.
    pub diagnostics: Vec<Diagnostic>,
    pub syntax_error: Option<SyntaxErrorReport>,
    /// Wall-clock time for parsing, extraction and detection.
    pub timing_ms: f64,
}

/// Diagnostics per detector, in catalog order.
pub fn counts_by_detector(results: &[AnalysisResult]) -> BTreeMap<DetectorId, usize> {
    let mut counts = BTreeMap::new();
    for d in results.iter().flat_map(|r| &r.diagnostics) {
        *counts.entry(d.detector).or_insert(0) += 1;
    }
    counts
}

fn sorted(results: &[AnalysisResult]) -> Vec<&AnalysisResult> {
    let mut refs: Vec<&AnalysisResult> = results.iter().collect();
    refs.sort_by(|a, b| a.file.cmp(&b.file));
    refs
}

pub fn render_text(results: &[AnalysisResult]) -> String {
    let mut out = String::new();
    let mut syntax_errors = 0;
    for r in sorted(results) {
        if let Some(err) = &r.syntax_error {
            syntax_errors += 1;
            let _ = writeln!(out, "{err}");
            continue;
        }
        for d in &r.diagnostics {
            let _ = writeln!(
                out,
                "{}:{}:{} [{}/{}] {}",
                d.file.display(),
                d.line,
                d.column,
                d.detector,
                d.pattern_code,
                d.message
            );
        }
    }
    let counts = counts_by_detector(results);
    let total: usize = counts.values().sum();
    let noun = if total == 1 {
        "diagnostic"
    } else {
        "diagnostics"
    };
    let _ = write!(out, "{total} {noun}");
    if total > 0 {
        let parts: Vec<String> = counts.iter().map(|(d, n)| format!("{d}: {n}")).collect();
        let _ = write!(out, " ({})", parts.join(", "));
    }
    out.push('\n');
    if syntax_errors > 0 {
        let noun = if syntax_errors == 1 { "file" } else { "files" };
        let _ = writeln!(out, "{syntax_errors} {noun} with syntax errors");
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonReport {
    pub version: u32,
    pub files: Vec<JsonFile>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonFile {
    pub path: String,
    pub timing_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub syntax_error: Option<JsonSyntaxError>,
    pub diagnostics: Vec<JsonDiagnostic>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonSyntaxError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonDiagnostic {
    pub line: usize,
    pub col: usize,
    pub detector: String,
    pub pattern: String,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JsonOptions {
    /// When false, every `timing_ms` is written as 0 so that repeated runs
    /// produce identical bytes.
    pub include_timing: bool,
}

impl Default for JsonOptions {
    fn default() -> Self {
        JsonOptions {
            include_timing: true,
        }
    }
}

pub fn to_json_report(results: &[AnalysisResult], options: JsonOptions) -> JsonReport {
    let files = sorted(results)
        .into_iter()
        .map(|r| JsonFile {
            path: r.file.display().to_string(),
            timing_ms: if options.include_timing {
                (r.timing_ms * 1000.0).round() / 1000.0
            } else {
                0.0
            },
            syntax_error: r.syntax_error.as_ref().map(|e| JsonSyntaxError {
                line: e.line,
                col: e.column,
                message: e.message.clone(),
            }),
            diagnostics: r
                .diagnostics
                .iter()
                .map(|d| JsonDiagnostic {
                    line: d.line,
                    col: d.column,
                    detector: d.detector.to_string(),
                    pattern: d.pattern_code.to_string(),
                    message: d.message.clone(),
                })
                .collect(),
        })
        .collect();
    JsonReport {
        version: REPORT_VERSION,
        files,
    }
}

pub fn render_json(results: &[AnalysisResult], options: JsonOptions) -> String {
    serde_json::to_string(&to_json_report(results, options)).expect("report serializes")
}

//! Per-file pipeline: read, parse, extract, detect.

use std::collections::BTreeSet;
use std::path::Path;
use std::time::Instant;

use crate::detectors::{run_detectors, Context, DetectorId};
use crate::extraction::{extract, Extraction};
use crate::frontend::{parse_source, SourceFile, SyntaxErrorReport};
use crate::knowledge_base::KnowledgeBase;
use crate::report::AnalysisResult;

pub fn analyze_source(
    file: &SourceFile,
    kb: &KnowledgeBase,
    enabled: &BTreeSet<DetectorId>,
) -> AnalysisResult {
    let start = Instant::now();
    let (diagnostics, syntax_error) = match parse_source(file) {
        Ok(tree) => {
            let extraction = extract(&tree);
            let ctx = Context::new(file, &extraction, kb);
            (run_detectors(&ctx, enabled), None)
        }
        Err(err) => (Vec::new(), Some(err)),
    };
    AnalysisResult {
        file: file.path().to_path_buf(),
        diagnostics,
        syntax_error,
        timing_ms: start.elapsed().as_secs_f64() * 1000.0,
    }
}

/// Reads and analyzes one file. Undecodable text is reported as a syntax
/// error; an unreadable file is an I/O error.
pub fn analyze_path(
    path: &Path,
    kb: &KnowledgeBase,
    enabled: &BTreeSet<DetectorId>,
) -> std::io::Result<AnalysisResult> {
    let bytes = std::fs::read(path)?;
    let start = Instant::now();
    Ok(match SourceFile::from_bytes(path, bytes) {
        Ok(file) => {
            let mut result = analyze_source(&file, kb, enabled);
            result.timing_ms = start.elapsed().as_secs_f64() * 1000.0;
            result
        }
        Err(err) => AnalysisResult {
            file: path.to_path_buf(),
            diagnostics: Vec::new(),
            syntax_error: Some(err),
            timing_ms: start.elapsed().as_secs_f64() * 1000.0,
        },
    })
}

/// Extraction models of a file, for introspection.
pub fn introspect(file: &SourceFile) -> Result<Extraction, SyntaxErrorReport> {
    parse_source(file).map(|tree| extract(&tree))
}

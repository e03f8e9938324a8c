use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use proptest::prelude::*;
use qlint_core::analysis::{analyze_path, analyze_source};
use qlint_core::detectors::DetectorId;
use qlint_core::frontend::SourceFile;
use qlint_core::knowledge_base::KnowledgeBase;
use qlint_core::report::{
    counts_by_detector, render_json, render_text, AnalysisResult, JsonOptions, JsonReport,
};

fn all() -> BTreeSet<DetectorId> {
    DetectorId::ALL.into_iter().collect()
}

fn corpus_results() -> Vec<AnalysisResult> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let kb = KnowledgeBase::bundled();
    let mut paths: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "py"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| analyze_path(p, &kb, &all()).unwrap())
        .collect()
}

fn one(name: &str) -> AnalysisResult {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(name);
    analyze_path(&path, &KnowledgeBase::bundled(), &all()).unwrap()
}

#[test]
fn measured_text() {
    let text = render_text(&[one("measured_control.py")]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].contains(":9:1 [MI/MI.measured-control]"));
    assert!(lines[1].contains(":10:1 [MI/MI.measured-control]"));
    assert_eq!(lines[2], "2 diagnostics (MI: 2)");
}

#[test]
fn json_shapes() {
    let opts = JsonOptions::default();
    let measured: JsonReport =
        serde_json::from_str(&render_json(&[one("measured_control.py")], opts)).unwrap();
    let diags = &measured.files[0].diagnostics;
    assert_eq!(diags.len(), 2);
    assert!(diags.iter().all(|d| d.detector == "MI"));
    let layout: JsonReport =
        serde_json::from_str(&render_json(&[one("duplicate_layout.py")], opts)).unwrap();
    let diags = &layout.files[0].diagnostics;
    assert_eq!(diags.len(), 1);
    assert_eq!(
        (diags[0].detector.as_str(), diags[0].pattern.as_str()),
        ("PE", "PE.same-physical-qubit")
    );
}

#[test]
fn json_round_trip_and_agreement() {
    let results = corpus_results();
    let json = render_json(&results, JsonOptions::default());
    let parsed: JsonReport = serde_json::from_str(&json).unwrap();
    assert_eq!(parsed.version, 1);
    let mut from_json: BTreeMap<String, usize> = BTreeMap::new();
    let mut expected = Vec::new();
    let mut sorted: Vec<&AnalysisResult> = results.iter().collect();
    sorted.sort_by(|a, b| a.file.cmp(&b.file));
    for r in sorted {
        for d in &r.diagnostics {
            expected.push((
                r.file.display().to_string(),
                d.line,
                d.column,
                d.detector.to_string(),
                d.pattern_code.to_string(),
                d.message.clone(),
            ));
        }
    }
    let mut got = Vec::new();
    for f in &parsed.files {
        for d in &f.diagnostics {
            *from_json.entry(d.detector.clone()).or_default() += 1;
            got.push((
                f.path.clone(),
                d.line,
                d.col,
                d.detector.clone(),
                d.pattern.clone(),
                d.message.clone(),
            ));
        }
    }
    assert_eq!(got, expected);
    let from_text: BTreeMap<String, usize> = counts_by_detector(&results)
        .into_iter()
        .map(|(d, n)| (d.to_string(), n))
        .collect();
    assert_eq!(from_json, from_text);
    let footer = render_text(&results);
    let total: usize = from_text.values().sum();
    assert!(footer.contains(&format!("{total} diagnostics (")));
}

#[test]
fn untimed_json_is_reproducible() {
    let opts = JsonOptions {
        include_timing: false,
    };
    let mut results = corpus_results();
    let first = render_json(&results, opts);
    results.reverse();
    let second = render_json(&corpus_results(), opts);
    assert_eq!(first, second);
    assert_eq!(first, render_json(&results, opts));
}

proptest! {
    #[test]
    fn syntax_error_files_have_no_diagnostics(src in "[a-z(\\[:=. 0-9\n]{0,40}") {
        let file = SourceFile::new("p.py", src);
        let r = analyze_source(&file, &KnowledgeBase::bundled(), &all());
        prop_assert!(r.timing_ms >= 0.0);
        if r.syntax_error.is_some() {
            prop_assert!(r.diagnostics.is_empty());
        }
        let json: JsonReport = serde_json::from_str(&render_json(&[r], JsonOptions::default())).unwrap();
        prop_assert_eq!(json.files.len(), 1);
    }
}

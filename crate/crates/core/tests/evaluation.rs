use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use proptest::prelude::*;
use qlint_core::detectors::DetectorId;
use qlint_core::evaluation::{
    evaluate, load_manifest, parse_manifest, CorpusEntry, EvalError, Metrics,
};
use qlint_core::knowledge_base::KnowledgeBase;

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn all() -> BTreeSet<DetectorId> {
    DetectorId::ALL.into_iter().collect()
}

#[test]
fn published_counts_give_published_metrics() {
    let m = Metrics::from_counts(15, 9, 2);
    assert!((m.precision.unwrap() - 0.625).abs() < 1e-3);
    assert!((m.recall.unwrap() - 0.882).abs() < 1e-3);
    assert!((m.f1.unwrap() - 0.731).abs() < 1e-3);
}

#[test]
fn empty_counts_are_undefined() {
    let m = Metrics::from_counts(0, 0, 0);
    assert_eq!((m.precision, m.recall, m.f1), (None, None, None));
    let m = Metrics::from_counts(0, 3, 0);
    assert_eq!((m.precision, m.recall, m.f1), (Some(0.0), None, None));
}

#[test]
fn manifest_lines() {
    let base = Path::new("/c");
    let entries = parse_manifest(
        "# header\nmeasured.py MI 9,10\n\nclean.py NONE  # ok\n",
        base,
    )
    .unwrap();
    assert_eq!(
        entries,
        vec![
            CorpusEntry {
                file: base.join("measured.py"),
                expected_detector: Some(DetectorId::MI),
                expected_lines: Some(vec![9, 10]),
            },
            CorpusEntry {
                file: base.join("clean.py"),
                expected_detector: None,
                expected_lines: None,
            },
        ]
    );
}

#[test]
fn manifest_errors_carry_line_numbers() {
    let base = Path::new("");
    assert_eq!(parse_manifest("a.py MI\na.py PE\n", base).unwrap_err().0, 2);
    assert_eq!(parse_manifest("a.py XX\n", base).unwrap_err().0, 1);
    assert_eq!(parse_manifest("\na.py MI 0\n", base).unwrap_err().0, 2);
    assert_eq!(parse_manifest("a.py NONE 3\n", base).unwrap_err().0, 1);
    assert_eq!(parse_manifest("a.py\n", base).unwrap_err().0, 1);
}

#[test]
fn missing_file_is_an_error() {
    let entries = vec![CorpusEntry {
        file: "/nonexistent/x.py".into(),
        expected_detector: None,
        expected_lines: None,
    }];
    assert!(matches!(
        evaluate(&entries, &KnowledgeBase::bundled(), &all()),
        Err(EvalError::Io { .. })
    ));
}

#[test]
fn single_clean_file() {
    let entries = vec![CorpusEntry {
        file: corpus_dir().join("hello_quantum.py"),
        expected_detector: None,
        expected_lines: None,
    }];
    let report = evaluate(&entries, &KnowledgeBase::bundled(), &all()).unwrap();
    assert_eq!(
        (report.metrics.tp, report.metrics.fp, report.metrics.fn_),
        (0, 0, 0)
    );
}

#[test]
fn bundled_corpus_golden() {
    let entries = load_manifest(&corpus_dir().join("manifest.txt")).unwrap();
    assert!(entries.len() >= 16);
    let report = evaluate(&entries, &KnowledgeBase::bundled(), &all()).unwrap();
    let m = report.metrics;
    assert_eq!((m.tp, m.fp, m.fn_), (20, 0, 1));
    let golden: BTreeMap<DetectorId, usize> = [
        (DetectorId::IG, 3),
        (DetectorId::MI, 1),
        (DetectorId::IS, 3),
        (DetectorId::PE, 4),
        (DetectorId::CM, 3),
        (DetectorId::CE, 3),
        (DetectorId::QE, 2),
        (DetectorId::DO, 1),
    ]
    .into_iter()
    .collect();
    assert_eq!(report.per_detector, golden);
    assert_eq!(report.per_detector.values().sum::<usize>(), m.tp);
    let missed: Vec<_> = report
        .entries
        .iter()
        .filter(|e| e.outcome == qlint_core::evaluation::Outcome::Fn)
        .map(|e| e.entry.file_name().unwrap().to_string_lossy().into_owned())
        .collect();
    assert_eq!(missed, vec!["mi_loop_measure.py"]);
}

#[test]
fn disabled_detector_turns_hits_into_misses() {
    let entries = load_manifest(&corpus_dir().join("manifest.txt")).unwrap();
    let only_mi: BTreeSet<DetectorId> = [DetectorId::MI].into_iter().collect();
    let report = evaluate(&entries, &KnowledgeBase::bundled(), &only_mi).unwrap();
    assert_eq!(
        (report.metrics.tp, report.metrics.fp, report.metrics.fn_),
        (1, 0, 20)
    );
}

proptest! {
    #[test]
    fn f1_equals_common_value(tp in 1usize..500, extra in 0usize..500) {
        let m = Metrics::from_counts(tp, extra, extra);
        let p = m.precision.unwrap();
        prop_assert_eq!(m.recall.unwrap(), p);
        prop_assert!((m.f1.unwrap() - p).abs() < 1e-12);
    }

    #[test]
    fn metrics_are_unit_interval(tp in 0usize..100, fp in 0usize..100, fn_ in 0usize..100) {
        let m = Metrics::from_counts(tp, fp, fn_);
        for v in [m.precision, m.recall, m.f1].into_iter().flatten() {
            prop_assert!((0.0..=1.0).contains(&v));
        }
    }

    #[test]
    fn every_labeled_entry_scores_once(labels in prop::collection::vec(prop::option::of(0usize..8), 1..12)) {
        // Assign random labels to corpus files and check the bookkeeping.
        let files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
            .unwrap()
            .map(|e| e.unwrap().path())
            .filter(|p| p.extension().is_some_and(|e| e == "py"))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let entries: Vec<CorpusEntry> = labels
            .iter()
            .zip(&files)
            .map(|(l, f)| CorpusEntry {
                file: f.clone(),
                expected_detector: l.map(|i| DetectorId::ALL[i]),
                expected_lines: None,
            })
            .collect();
        let report = evaluate(&entries, &KnowledgeBase::bundled(), &all()).unwrap();
        let labeled = entries.iter().filter(|e| e.expected_detector.is_some()).count();
        let labeled_fp = report
            .entries
            .iter()
            .filter(|e| e.expected.is_some() && matches!(e.outcome, qlint_core::evaluation::Outcome::Fp(_)))
            .count();
        prop_assert_eq!(report.metrics.tp + report.metrics.fn_ + labeled_fp, labeled);
    }
}

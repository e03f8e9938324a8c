//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use qlint_core::analysis::{analyze_path, introspect};
use qlint_core::detectors::{DetectorId, Diagnostic};
use qlint_core::evaluation::{evaluate, load_manifest, Metrics, Outcome};
use qlint_core::frontend::SourceFile;
use qlint_core::knowledge_base::KnowledgeBase;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn core_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core")
}

fn corpus(name: &str) -> PathBuf {
    core_dir().join("corpus").join(name)
}

fn all() -> BTreeSet<DetectorId> {
    DetectorId::ALL.into_iter().collect()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn qlint(args: &[&str]) -> Result<(Option<i32>, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_qlint"))
        .args(args)
        .env_remove("QLINT_KB")
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code(), out.stdout))
}

fn quoted(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| format!("'{s}'")).collect()
}

fn introspect_hello() -> Check {
    let path = corpus("hello_quantum.py");
    let start = Instant::now();
    let (code, stdout) = qlint(&["--introspect", path.to_str().unwrap()])?;
    let elapsed = start.elapsed();
    ensure(code == Some(0), format!("exit code {code:?}"))?;
    let text = String::from_utf8(stdout).map_err(|e| e.to_string())?;
    let lines: Vec<&str> = text.lines().collect();
    let tuples = [
        ("simulator", "Aer.get_backend(\"qasm_simulator\")"),
        ("qreg", "QuantumRegister(3)"),
        ("creg", "ClassicalRegister(3)"),
        ("circuit", "QuantumCircuit(qreg,creg)"),
        ("job", "execute(circuit,simulator,shots=1000)"),
        ("result", "job.result()"),
        ("counts", "result.get_counts(circuit)"),
    ];
    let ops = [
        "Aer.get_backend(\"qasm_simulator\")",
        "QuantumRegister(3)",
        "ClassicalRegister(3)",
        "QuantumCircuit(qreg,creg)",
        "circuit.h(0)",
        "circuit.h(2)",
        "circuit.cx(0,1)",
        "circuit.measure([0,1,2],[0,1,2])",
        "execute(circuit,simulator,shots=1000)",
        "job.result()",
        "result.get_counts(circuit)",
        "print(counts)",
    ];
    let want_tuples: Vec<String> = tuples
        .iter()
        .map(|(n, v)| format!("('{n}', '{v}')"))
        .collect();
    ensure(lines.len() == 20, format!("{} output lines", lines.len()))?;
    ensure(lines[..7] == want_tuples[..], "attribute tuples differ")?;
    ensure(
        lines[7].chars().all(|c| c == '=') && !lines[7].is_empty(),
        "missing separator",
    )?;
    ensure(lines[8..] == quoted(&ops)[..], "operation strings differ")?;
    ensure(
        elapsed < Duration::from_secs(1),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!(
        "7 tuples, 12 operations in {:.1} ms",
        elapsed.as_secs_f64() * 1000.0
    ))
}

fn diagnostics(name: &str, kb: &KnowledgeBase) -> Result<Vec<Diagnostic>, String> {
    let result = analyze_path(&corpus(name), kb, &all()).map_err(|e| e.to_string())?;
    ensure(
        result.syntax_error.is_none(),
        format!("{name}: syntax error"),
    )?;
    Ok(result.diagnostics)
}

fn seeded_bugs() -> Check {
    let kb = KnowledgeBase::bundled();
    let summary = |d: &[Diagnostic]| -> Vec<(&str, usize)> {
        d.iter().map(|d| (d.pattern_code, d.line)).collect()
    };
    let measured = diagnostics("measured_control.py", &kb)?;
    ensure(
        summary(&measured) == [("MI.measured-control", 9), ("MI.measured-control", 10)],
        format!("measured: {:?}", summary(&measured)),
    )?;
    let layout = diagnostics("duplicate_layout.py", &kb)?;
    ensure(
        layout.len() == 1
            && layout[0].pattern_code == "PE.same-physical-qubit"
            && layout[0].message.contains("12"),
        format!("layout: {:?}", summary(&layout)),
    )?;
    let pulse = diagnostics("pulse_shiftphase.py", &kb)?;
    let pulse_text =
        std::fs::read_to_string(corpus("pulse_shiftphase.py")).map_err(|e| e.to_string())?;
    let shift_line = pulse_text
        .lines()
        .position(|l| l.contains("shiftphase"))
        .map(|i| i + 1);
    ensure(
        pulse.len() == 1
            && pulse[0].detector == DetectorId::CM
            && Some(pulse[0].line) == shift_line,
        format!("pulse: {:?}", summary(&pulse)),
    )?;
    let tomography = diagnostics("process_tomography.py", &kb)?;
    let tomography_text =
        std::fs::read_to_string(corpus("process_tomography.py")).map_err(|e| e.to_string())?;
    let basis_line = tomography_text
        .lines()
        .position(|l| l.contains("preparation_basis"))
        .map(|i| i + 1);
    ensure(
        tomography.len() == 1
            && tomography[0].detector == DetectorId::CE
            && Some(tomography[0].line) == basis_line,
        format!("tomography: {:?}", summary(&tomography)),
    )?;
    Ok(
        "measured MI@9,10; layout PE 12; pulse CM shiftphase; tomography CE preparation_basis"
            .into(),
    )
}

fn hello_clean() -> Check {
    let kb = KnowledgeBase::bundled();
    let diags = diagnostics("hello_quantum.py", &kb)?;
    let non_do: Vec<_> = diags
        .iter()
        .filter(|d| d.detector != DetectorId::DO)
        .collect();
    ensure(
        non_do.is_empty(),
        format!("{} non-DO diagnostics", non_do.len()),
    )?;
    let do_hits = diags.len();
    ensure(
        do_hits == 0,
        format!("{do_hits} DO diagnostics, golden is 0"),
    )?;
    Ok("0 diagnostics".into())
}

fn published_metrics() -> Check {
    let m = Metrics::from_counts(15, 9, 2);
    let (p, r, f) = (
        m.precision.ok_or("precision undefined")?,
        m.recall.ok_or("recall undefined")?,
        m.f1.ok_or("f1 undefined")?,
    );
    ensure(
        (p - 0.625).abs() < 1e-3 && (r - 0.882).abs() < 1e-3 && (f - 0.731).abs() < 1e-3,
        format!("precision {p:.4} recall {r:.4} f1 {f:.4}"),
    )?;
    Ok(format!("precision {p:.3} recall {r:.3} f1 {f:.3}"))
}

fn corpus_quality() -> Check {
    let entries = load_manifest(&corpus("manifest.txt")).map_err(|e| e.to_string())?;
    ensure(entries.len() >= 16, format!("{} programs", entries.len()))?;
    let report =
        evaluate(&entries, &KnowledgeBase::bundled(), &all()).map_err(|e| e.to_string())?;
    let m = report.metrics;
    let recall = m.recall.unwrap_or(0.0);
    let precision = m.precision.unwrap_or(0.0);
    ensure(recall >= 0.85, format!("recall {recall:.3}"))?;
    ensure(precision >= 0.60, format!("precision {precision:.3}"))?;
    let fired: BTreeSet<DetectorId> = report
        .entries
        .iter()
        .flat_map(|e| e.detectors.iter().copied())
        .collect();
    let silent: Vec<_> = DetectorId::ALL
        .iter()
        .filter(|d| !fired.contains(d))
        .collect();
    ensure(silent.is_empty(), format!("never fired: {silent:?}"))?;
    let none_fp: usize = report
        .entries
        .iter()
        .filter(|e| e.expected.is_none())
        .map(|e| match e.outcome {
            Outcome::Fp(n) => n,
            _ => 0,
        })
        .sum();
    ensure(none_fp == 0, format!("{none_fp} FP on NONE files"))?;
    Ok(format!(
        "{} programs, TP {} FP {} FN {}, precision {precision:.3} recall {recall:.3}",
        report.n_files, m.tp, m.fp, m.fn_
    ))
}

fn corpus_speed() -> Check {
    let dir = core_dir().join("corpus");
    let start = Instant::now();
    let (code, stdout) = qlint(&["--format", "json", dir.to_str().unwrap()])?;
    let elapsed = start.elapsed();
    ensure(
        matches!(code, Some(0) | Some(1)),
        format!("exit code {code:?}"),
    )?;
    let report: qlint_core::report::JsonReport =
        serde_json::from_slice(&stdout).map_err(|e| e.to_string())?;
    let n = report.files.len();
    ensure(n > 0, "no files analyzed")?;
    let mean = report.files.iter().map(|f| f.timing_ms).sum::<f64>() / n as f64;
    ensure(mean <= 100.0, format!("mean {mean:.3} ms per file"))?;
    ensure(
        elapsed < Duration::from_secs(5),
        format!("corpus took {elapsed:?}"),
    )?;
    Ok(format!(
        "{n} files, mean {mean:.3} ms per file, whole run {:.1} ms",
        elapsed.as_secs_f64() * 1000.0
    ))
}

fn extract_fixture(name: &str) -> Result<qlint_core::extraction::Extraction, String> {
    let path = core_dir().join("tests/fixtures").join(name);
    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    introspect(&SourceFile::new(&path, text)).map_err(|e| e.to_string())
}

fn cirq_program() -> Check {
    let ex = extract_fixture("cirq_simulate.py")?;
    let tuples: BTreeSet<(String, String)> = ex
        .attributes
        .entries()
        .iter()
        .map(|e| (e.name.clone(), e.value_rendered.clone()))
        .collect();
    let want: BTreeSet<(String, String)> = [
        ("qubit", "cirq.NamedQubit(\"myqubit\")"),
        ("circuit", "cirq.Circuit(cirq.H(qubit))"),
        ("result", "cirq.Simulator().simulate(circuit)"),
        ("result2", "cirq.measure(qubit,key=\"myqubit\")"),
    ]
    .iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    ensure(tuples == want, format!("tuples {tuples:?}"))?;
    let ops: Vec<&str> = ex
        .operations
        .records
        .iter()
        .map(|r| r.call_rendered.as_str())
        .collect();
    for needed in ["cirq.Simulator().simulate(circuit)", "cirq.Simulator()"] {
        ensure(ops.contains(&needed), format!("missing operation {needed}"))?;
    }
    Ok(format!("4 tuples, {} operations", ops.len()))
}

fn projectq_program() -> Check {
    let ex = extract_fixture("projectq_pipes.py")?;
    let ops: Vec<&str> = ex
        .operations
        .records
        .iter()
        .map(|r| r.call_rendered.as_str())
        .collect();
    for needed in ["MainEngine()", "All(Measure)"] {
        ensure(ops.contains(&needed), format!("missing operation {needed}"))?;
    }
    ensure(
        ops.iter().all(|o| !o.contains('|')),
        "pipe record extracted",
    )?;
    let skipped = ex.coverage.skipped_constructs.len();
    ensure(skipped >= 2, format!("{skipped} skipped constructs"))?;
    Ok(format!(
        "{} operations, {skipped} skipped constructs",
        ops.len()
    ))
}

/// Deterministic permutation of `items` from a seed.
fn shuffled<T: Clone>(items: &[T], mut seed: u64) -> Vec<T> {
    let mut v = items.to_vec();
    for i in (1..v.len()).rev() {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        v.swap(i, (seed % (i as u64 + 1)) as usize);
    }
    v
}

fn deterministic_json() -> Check {
    let src = core_dir().join("corpus");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&src)
        .map_err(|e| e.to_string())?
        .map(|e| e.map(|e| e.path()).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    files.retain(|p| p.extension().is_some_and(|e| e == "py"));
    files.sort();
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let dest = tmp.path().join("corpus");
    let mut outputs = Vec::new();
    for (seed, jobs) in [
        (0x9e37_79b9_7f4a_7c15_u64, "4"),
        (0x2545_f491_4f6c_dd1d, "1"),
    ] {
        if dest.exists() {
            std::fs::remove_dir_all(&dest).map_err(|e| e.to_string())?;
        }
        std::fs::create_dir(&dest).map_err(|e| e.to_string())?;
        for f in shuffled(&files, seed) {
            std::fs::copy(&f, dest.join(f.file_name().unwrap())).map_err(|e| e.to_string())?;
        }
        let (_, stdout) = qlint(&[
            "--format",
            "json",
            "--no-timing",
            "--jobs",
            jobs,
            dest.to_str().unwrap(),
        ])?;
        outputs.push(stdout);
    }
    ensure(!outputs[0].is_empty(), "empty output")?;
    ensure(outputs[0] == outputs[1], "reports differ")?;
    Ok(format!("{} bytes identical across runs", outputs[0].len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("hello-quantum introspection", introspect_hello),
        ("seeded bug programs", seeded_bugs),
        ("hello-quantum clean", hello_clean),
        ("published metrics", published_metrics),
        ("mini-corpus quality", corpus_quality),
        ("corpus speed", corpus_speed),
        ("cirq extraction", cirq_program),
        ("projectq extraction", projectq_program),
        ("deterministic json", deterministic_json),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

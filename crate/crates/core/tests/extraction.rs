use std::collections::BTreeSet;
use std::path::Path;

use proptest::prelude::*;
use qlint_core::extraction::{count_tree_calls, extract, resolve_origin, Extraction};
use qlint_core::frontend::{parse_source, SourceFile};

fn extract_file(rel: &str) -> Extraction {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join(rel);
    let text = std::fs::read_to_string(&path).unwrap();
    let tree = parse_source(&SourceFile::new(&path, text)).unwrap();
    extract(&tree)
}

fn tuples(ex: &Extraction) -> Vec<(String, String)> {
    ex.attributes
        .entries()
        .iter()
        .map(|e| (e.name.clone(), e.value_rendered.clone()))
        .collect()
}

fn calls(ex: &Extraction) -> Vec<String> {
    ex.operations
        .records
        .iter()
        .map(|r| r.call_rendered.clone())
        .collect()
}

fn pairs(items: &[(&str, &str)]) -> Vec<(String, String)> {
    items
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect()
}

#[test]
fn hello_quantum_attributes_and_operations() {
    let ex = extract_file("corpus/hello_quantum.py");
    assert_eq!(
        tuples(&ex),
        pairs(&[
            ("simulator", "Aer.get_backend(\"qasm_simulator\")"),
            ("qreg", "QuantumRegister(3)"),
            ("creg", "ClassicalRegister(3)"),
            ("circuit", "QuantumCircuit(qreg,creg)"),
            ("job", "execute(circuit,simulator,shots=1000)"),
            ("result", "job.result()"),
            ("counts", "result.get_counts(circuit)"),
        ])
    );
    assert_eq!(
        calls(&ex),
        [
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
        ]
    );
    let origin = resolve_origin("counts", &ex.attributes, ex.attributes.len()).unwrap();
    assert_eq!(origin.rendered, "result.get_counts(circuit)");
}

#[test]
fn introspection_layout() {
    let ex = extract_file("corpus/hello_quantum.py");
    let text = ex.to_string();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 7 + 1 + 12);
    assert_eq!(
        lines[0],
        "('simulator', 'Aer.get_backend(\"qasm_simulator\")')"
    );
    assert_eq!(lines[7], "=".repeat(42));
    assert_eq!(lines[19], "'print(counts)'");
}

#[test]
fn layout_dict_rendering() {
    let ex = extract_file("corpus/duplicate_layout.py");
    let layout = ex.attributes.bindings_of("layout").next().unwrap();
    assert_eq!(
        layout.value_rendered,
        "{qreg[0]:12,qreg[1]:11,qreg[2]:13,qreg[3]:17,qreg[4]:14,qreg[5]:12,qreg[6]:6}"
    );
}

#[test]
fn cirq_program_extracts() {
    let ex = extract_file("tests/fixtures/cirq_simulate.py");
    let got: BTreeSet<_> = tuples(&ex).into_iter().collect();
    let want: BTreeSet<_> = pairs(&[
        ("qubit", "cirq.NamedQubit(\"myqubit\")"),
        ("circuit", "cirq.Circuit(cirq.H(qubit))"),
        ("result", "cirq.Simulator().simulate(circuit)"),
        ("result2", "cirq.measure(qubit,key=\"myqubit\")"),
    ])
    .into_iter()
    .collect();
    assert_eq!(got, want);
    assert_eq!(
        calls(&ex),
        [
            "cirq.NamedQubit(\"myqubit\")",
            "cirq.Circuit(cirq.H(qubit))",
            "cirq.H(qubit)",
            "range(10)",
            "cirq.measure(qubit,key=\"myqubit\")",
            "print(result2)",
            "print(circuit)",
            "cirq.Simulator().simulate(circuit)",
            "cirq.Simulator()",
            "print(result2)",
        ]
    );
}

#[test]
fn pipe_operator_statements_are_skipped() {
    let ex = extract_file("tests/fixtures/projectq_pipes.py");
    let got = calls(&ex);
    assert_eq!(
        got,
        [
            "MainEngine()",
            "eng.allocate_qureg(3)",
            "eng.flush()",
            "np.array(eng.backend.cheat()[1])",
            "eng.backend.cheat()",
            "np.abs(amplitudes)",
            "All(Measure)",
        ]
    );
    assert!(got.iter().all(|c| !c.contains('|')));
    assert!(ex.coverage.skipped_constructs.len() >= 2);
    assert_eq!(ex.attributes.bindings_of("amplitudes").count(), 2);
}

#[test]
fn records_cover_every_call_node() {
    for rel in [
        "corpus/hello_quantum.py",
        "corpus/pulse_shiftphase.py",
        "corpus/process_tomography.py",
        "tests/fixtures/cirq_simulate.py",
        "tests/fixtures/projectq_pipes.py",
    ] {
        let path = Path::new(env!("CARGO_MANIFEST_DIR")).join(rel);
        let text = std::fs::read_to_string(&path).unwrap();
        let tree = parse_source(&SourceFile::new(&path, text)).unwrap();
        let ex = extract(&tree);
        assert_eq!(
            ex.operations.records.len() + ex.coverage.skipped_calls,
            count_tree_calls(&tree),
            "{rel}"
        );
    }
}

fn program() -> impl Strategy<Value = String> {
    let name = prop::sample::select(vec!["a", "b", "c", "qc", "reg"]);
    let value = prop_oneof![
        (0u32..50).prop_map(|n| n.to_string()),
        prop::sample::select(vec!["a", "b", "c", "qc", "reg"]).prop_map(str::to_string),
        (0u32..5).prop_map(|n| format!("QuantumRegister({n})")),
        prop::sample::select(vec!["a", "b"]).prop_map(|n| format!("f(g({n}), k=[1, 2])")),
        Just("(1, 'x')".to_string()),
    ];
    let stmt = prop_oneof![
        (name.clone(), value.clone()).prop_map(|(n, v)| format!("{n} = {v}")),
        (name.clone(), value.clone()).prop_map(|(n, v)| format!("{n}.h({v})")),
        (name.clone(), value).prop_map(|(n, v)| format!("for {n} in range({v}):\n    qc.x({n})")),
        name.prop_map(|n| format!("{n} += 1")),
    ];
    prop::collection::vec(stmt, 0..20).prop_map(|s| s.join("\n") + "\n")
}

proptest! {
    #[test]
    fn extraction_invariants(src in program()) {
        let tree = parse_source(&SourceFile::new("p.py", src.clone())).unwrap();
        let ex = extract(&tree);
        prop_assert_eq!(&ex, &extract(&tree));
        for (i, e) in ex.attributes.entries().iter().enumerate() {
            prop_assert_eq!(e.binding_index, i);
            prop_assert!(!e.value_rendered.contains(", ") && !e.value_rendered.contains("( "));
        }
        let top: Vec<_> = ex.operations.records.iter()
            .filter(|r| r.nesting_depth == 0)
            .map(|r| r.span.start)
            .collect();
        prop_assert!(top.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(
            ex.operations.records.len() + ex.coverage.skipped_calls,
            count_tree_calls(&tree)
        );
        for r in &ex.operations.records {
            prop_assert!(!r.callee_path.is_empty());
            if let Some(recv) = &r.receiver {
                prop_assert_eq!(&r.callee_path, &format!("{}.{}", recv, r.method));
            }
        }
        for name in ex.attributes.names() {
            let n = ex.attributes.bindings_of(name).count();
            prop_assert!(n >= 1);
            prop_assert!(resolve_origin(name, &ex.attributes, ex.attributes.len()).is_ok());
        }
    }
}

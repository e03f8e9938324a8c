use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use qlint_core::knowledge_base::{
    load_kb, BackendLimit, DeprecationEntry, GateSpec, KbError, KnowledgeBase, ModuleApi,
    QubitArity,
};

#[test]
fn bundled_gates() {
    let kb = KnowledgeBase::bundled();
    let cx = kb.gate("cx").unwrap();
    assert_eq!(cx.expected_args(), Some(2));
    assert_eq!(cx.control_positions, vec![0]);
    assert_eq!(kb.gate("ccx").unwrap().expected_args(), Some(3));
    assert_eq!(kb.gate("ccx").unwrap().control_positions, vec![0, 1]);
    let rx = kb.gate("rx").unwrap();
    assert_eq!((rx.angle_param_arity, rx.expected_args()), (1, Some(2)));
    assert_eq!(kb.gate("measure").unwrap().expected_args(), Some(2));
    assert_eq!(
        kb.gate("barrier").unwrap().qubit_arity,
        QubitArity::Variadic
    );
}

#[test]
fn bundled_limits() {
    let kb = KnowledgeBase::bundled();
    let aer = kb.limit_for("Aer.get_backend(\"qasm_simulator\")").unwrap();
    assert_eq!(aer.max_qubits, 30);
    let basic = kb
        .limit_for("qiskit.BasicAer.get_backend(\"qasm_simulator\")")
        .unwrap();
    assert_eq!(basic.max_qubits, 24);
    assert!(kb
        .limit_for("MyAer.get_backend(\"qasm_simulator\")")
        .is_none());
}

#[test]
fn bundled_modules_and_imports() {
    let kb = KnowledgeBase::bundled();
    let pulse = kb.module("qiskit.pulse").unwrap();
    assert!(pulse.attributes.contains("ShiftPhase"));
    assert!(!pulse.attributes.contains("shiftphase"));
    assert!(kb.known_imports["qiskit"].contains("QuantumCircuit"));
    assert!(kb.deprecation_for("qc.iden").is_some());
}

#[test]
fn load_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("custom.kb");
    std::fs::write(&path, "version 1\n[gates]\nfoo 2 0 0 1\n").unwrap();
    let kb = load_kb(&path).unwrap();
    assert_eq!(kb.gate("foo").unwrap().control_positions, vec![1]);
    assert!(matches!(
        load_kb(&dir.path().join("missing.kb")),
        Err(KbError::Io(_))
    ));
    std::fs::write(&path, "[gates]\nfoo 2 0 0 1\nfoo 1 0 0 -\n").unwrap();
    assert!(matches!(
        load_kb(&path),
        Err(KbError::Duplicate { line: 3, .. })
    ));
}

#[test]
fn bundled_round_trips() {
    let kb = KnowledgeBase::bundled();
    assert_eq!(KnowledgeBase::parse(&kb.to_string()).unwrap(), kb);
}

fn ident() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_]{0,7}"
}

fn dotted() -> impl Strategy<Value = String> {
    prop::collection::vec(ident(), 1..4).prop_map(|parts| parts.join("."))
}

fn gate() -> impl Strategy<Value = GateSpec> {
    (
        ident(),
        prop::option::of(1usize..5),
        0usize..4,
        0usize..2,
        prop::collection::btree_set(0usize..4, 0..3),
    )
        .prop_map(|(name, qubits, params, clbits, controls)| GateSpec {
            method_name: name,
            qubit_arity: qubits.map_or(QubitArity::Variadic, QubitArity::Fixed),
            angle_param_arity: params,
            clbit_arity: clbits,
            control_positions: controls
                .into_iter()
                .filter(|&c| qubits.is_none_or(|n| c < n))
                .collect(),
        })
}

fn knowledge_base() -> impl Strategy<Value = KnowledgeBase> {
    (
        prop::collection::vec(gate(), 0..6),
        prop::collection::btree_set(ident(), 0..5),
        prop::collection::vec((1usize..100, dotted()), 0..3),
        prop::collection::btree_map(ident(), prop::collection::btree_set(ident(), 1..4), 0..3),
        prop::collection::vec(
            (
                dotted(),
                prop::option::of(dotted()),
                "([a-z0-9]+( [a-z0-9.]+)*)?",
            ),
            0..4,
        ),
        prop::collection::btree_map(dotted(), prop::collection::btree_set(ident(), 1..4), 0..3),
        prop::collection::btree_map(dotted(), prop::collection::btree_set(ident(), 1..4), 0..3),
        prop::collection::btree_set(ident(), 0..3),
    )
        .prop_map(
            |(gates, methods, limits, backends, deps, modules, imports, qasm)| KnowledgeBase {
                gates: gates
                    .into_iter()
                    .map(|g| (g.method_name.clone(), g))
                    .collect::<BTreeMap<_, _>>(),
                circuit_methods: methods,
                limits: limits
                    .into_iter()
                    .map(|(max_qubits, pattern)| BackendLimit {
                        backend_expr_pattern: pattern,
                        max_qubits,
                    })
                    .collect(),
                backends,
                deprecations: deps
                    .into_iter()
                    .map(|(path, replacement, note)| DeprecationEntry {
                        callee_path: path,
                        replacement,
                        note,
                    })
                    .collect(),
                modules: modules
                    .into_iter()
                    .map(|(module_path, attributes)| ModuleApi {
                        module_path,
                        attributes,
                    })
                    .collect(),
                known_imports: imports,
                qasm_unsupported: qasm.into_iter().collect::<BTreeSet<_>>(),
            },
        )
}

proptest! {
    #[test]
    fn serialization_round_trips(kb in knowledge_base()) {
        let text = kb.to_string();
        let parsed = KnowledgeBase::parse(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(parsed, kb);
    }
}

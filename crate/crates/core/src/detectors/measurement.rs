use std::collections::{BTreeMap, BTreeSet};

use super::circuit::{gate_slots, qubit_index};
use super::{Context, DetectorId, Diagnostic};

/// Walks each circuit's records in order, tracking measured qubits, and flags
/// gates that use one of them in a control position.
pub fn detect(ctx: &Context<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    // circuit binding -> qubit -> line of the measuring call
    let mut measured: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
    for record in ctx.records() {
        let Some(circuit) = ctx.circuit_of(record) else {
            continue;
        };
        let state = measured.entry(circuit.binding).or_default();
        let qubits_of = |expr| -> Vec<usize> {
            ctx.bits(expr, record.horizon)
                .into_iter()
                .filter_map(|b| qubit_index(&ctx.circuits, circuit, b))
                .collect()
        };
        match record.method.as_str() {
            "measure" => {
                if let Some(arg) = record.positional_args.first() {
                    let line = ctx.file.line_col(record.span.start).line;
                    for q in qubits_of(&arg.expr) {
                        state.insert(q, line);
                    }
                }
                continue;
            }
            "measure_all" | "measure_active" => {
                if let Some(n) = circuit.declared_qubits {
                    let line = ctx.file.line_col(record.span.start).line;
                    state.extend((0..n).map(|q| (q, line)));
                }
                continue;
            }
            "reset" => {
                if let Some(arg) = record.positional_args.first() {
                    for q in qubits_of(&arg.expr) {
                        state.remove(&q);
                    }
                }
                continue;
            }
            _ => {}
        }
        let Some(spec) = ctx.kb.gate(&record.method) else {
            continue;
        };
        if spec.control_positions.is_empty() || state.is_empty() {
            continue;
        }
        let slots = gate_slots(spec, &record.positional_args);
        let mut hits = BTreeSet::new();
        for &pos in &spec.control_positions {
            if let Some(arg) = slots.qubits.get(pos) {
                hits.extend(
                    qubits_of(&arg.expr)
                        .into_iter()
                        .filter(|q| state.contains_key(q)),
                );
            }
        }
        if let Some(&q) = hits.iter().next() {
            out.push(ctx.diagnostic(
                DetectorId::MI,
                "MI.measured-control",
                record.span,
                format!(
                    "qubit {q} of '{}' is used as a control of {} after being measured on line {}",
                    circuit.name, record.method, state[&q]
                ),
            ));
        }
    }
    out
}

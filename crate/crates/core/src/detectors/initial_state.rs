use std::collections::BTreeSet;

use super::circuit::{clbit_index, gate_slots, qubit_index, Bit, CircuitModel};
use super::{Context, DetectorId, Diagnostic};
use crate::extraction::CallRecord;
use crate::frontend::Expr;

pub fn detect(ctx: &Context<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    index_overflow(ctx, &mut out);
    backend_limits(ctx, &mut out);
    short_classical_registers(ctx, &mut out);
    out
}

/// Qubit and clbit indices past the circuit's declared sizes or past the end
/// of the register they index.
fn index_overflow(ctx: &Context<'_>, out: &mut Vec<Diagnostic>) {
    for record in ctx.records() {
        let Some(circuit) = ctx.circuit_of(record) else {
            continue;
        };
        let Some(spec) = ctx.kb.gate(&record.method) else {
            continue;
        };
        let slots = gate_slots(spec, &record.positional_args);
        let mut problem = None;
        for arg in slots.qubits {
            for bit in ctx.bits(&arg.expr, record.horizon) {
                problem = problem.or_else(|| overflow(ctx, circuit, bit, false, &arg.rendered));
            }
        }
        for arg in slots.clbits {
            for bit in ctx.bits(&arg.expr, record.horizon) {
                problem = problem.or_else(|| overflow(ctx, circuit, bit, true, &arg.rendered));
            }
        }
        if let Some(message) = problem {
            out.push(ctx.diagnostic(
                DetectorId::IS,
                "IS.register-overflow",
                record.span,
                format!("{}: {message}", record.call_rendered),
            ));
        }
    }
}

fn overflow(
    ctx: &Context<'_>,
    circuit: &CircuitModel,
    bit: Bit,
    classical: bool,
    rendered: &str,
) -> Option<String> {
    let kind = if classical { "clbit" } else { "qubit" };
    match bit {
        Bit::Flat(i) => {
            let declared = if classical {
                circuit.declared_clbits
            } else {
                circuit.declared_qubits
            }?;
            (i >= declared).then(|| {
                format!(
                    "{kind} index {i} is out of range for '{}', which declares {declared} {kind}s",
                    circuit.name
                )
            })
        }
        Bit::Reg { reg, index } => {
            let register = ctx.circuits.registers.get(&reg)?;
            let size = register.size?;
            (index >= size).then(|| {
                format!(
                    "'{rendered}' indexes register '{}' of size {size}",
                    register.name
                )
            })
        }
        Bit::Unknown => None,
    }
}

/// Circuit argument and backend expression of a run-like call.
pub(super) fn run_target<'r>(
    ctx: &Context<'_>,
    record: &'r CallRecord,
) -> Option<(&'r Expr, String)> {
    let backend_of = |expr: &Expr| {
        let (value, _) = ctx.value_of(expr, record.horizon);
        crate::extraction::render_canonical(value)
    };
    match record.method.as_str() {
        "execute" | "transpile" => {
            let circuit = &record.positional_args.first()?.expr;
            let backend = record
                .positional_args
                .get(1)
                .map(|a| &a.expr)
                .or_else(|| record.keyword("backend").map(|k| &k.expr))?;
            Some((circuit, backend_of(backend)))
        }
        "run" => {
            let circuit = &record.positional_args.first()?.expr;
            let receiver = record.receiver.as_deref()?;
            let backend = match record.receiver_name() {
                Some(name) => ctx
                    .origin_entry(name, record.horizon)
                    .map(|e| e.value_rendered.clone())
                    .unwrap_or_else(|| receiver.to_string()),
                None => receiver.to_string(),
            };
            Some((circuit, backend))
        }
        _ => None,
    }
}

/// Circuits run on a backend whose measurement limit they reach.
fn backend_limits(ctx: &Context<'_>, out: &mut Vec<Diagnostic>) {
    for record in ctx.records() {
        let Some((circuit_expr, backend)) = run_target(ctx, record) else {
            continue;
        };
        let Some(limit) = ctx.kb.limit_for(&backend) else {
            continue;
        };
        let Some(circuit) = ctx.circuit_arg(circuit_expr, record.horizon) else {
            continue;
        };
        let Some(declared) = circuit.declared_qubits else {
            continue;
        };
        let measures = ctx.records().iter().any(|r| {
            matches!(
                r.method.as_str(),
                "measure" | "measure_all" | "measure_active"
            ) && ctx
                .circuit_of(r)
                .is_some_and(|c| c.binding == circuit.binding)
        });
        if measures && declared >= limit.max_qubits {
            out.push(ctx.diagnostic(
                DetectorId::IS,
                "IS.insufficient-qubits",
                record.span,
                format!(
                    "circuit '{}' declares {declared} qubits and measures them, but {backend} supports fewer than {} qubits",
                    circuit.name, limit.max_qubits
                ),
            ));
        }
    }
}

/// Measure calls naming fewer clbits than qubits, and circuits that measure
/// more distinct qubits than they have clbits.
fn short_classical_registers(ctx: &Context<'_>, out: &mut Vec<Diagnostic>) {
    let mut reported = BTreeSet::new();
    let mut measured: std::collections::BTreeMap<usize, BTreeSet<usize>> = Default::default();
    for record in ctx.records() {
        if record.method != "measure" {
            continue;
        }
        let Some(circuit) = ctx.circuit_of(record) else {
            continue;
        };
        let [qarg, carg] = record.positional_args.as_slice() else {
            continue;
        };
        let qbits = ctx.bits(&qarg.expr, record.horizon);
        let cbits = ctx.bits(&carg.expr, record.horizon);
        if qbits.contains(&Bit::Unknown) || cbits.contains(&Bit::Unknown) {
            continue;
        }
        if cbits.len() < qbits.len() {
            reported.insert(circuit.binding);
            out.push(ctx.diagnostic(
                DetectorId::IS,
                "IS.short-classical-register",
                record.span,
                format!(
                    "{} measures {} qubits into only {} clbits",
                    record.call_rendered,
                    qbits.len(),
                    cbits.len()
                ),
            ));
            continue;
        }
        let Some(declared) = circuit.declared_clbits else {
            continue;
        };
        // An explicit out-of-range clbit is reported as an overflow instead.
        if cbits
            .iter()
            .any(|&b| clbit_index(circuit, b).is_some_and(|i| i >= declared))
        {
            continue;
        }
        let set = measured.entry(circuit.binding).or_default();
        set.extend(
            qbits
                .iter()
                .filter_map(|&b| qubit_index(&ctx.circuits, circuit, b)),
        );
        if set.len() > declared && reported.insert(circuit.binding) {
            out.push(ctx.diagnostic(
                DetectorId::IS,
                "IS.short-classical-register",
                record.span,
                format!(
                    "'{}' measures {} distinct qubits but declares only {declared} clbits",
                    circuit.name,
                    set.len()
                ),
            ));
        }
    }
}

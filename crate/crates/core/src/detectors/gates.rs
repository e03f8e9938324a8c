use std::collections::BTreeSet;

use super::circuit::Bit;
use super::{Context, DetectorId, Diagnostic};
use crate::extraction::CallRecord;
use crate::frontend::ExprKind;
use crate::knowledge_base::QubitArity;

/// Single-qubit gate sets from which any single-qubit unitary can be built.
const UNIVERSAL_1Q: &[&[&str]] = &[
    &["u"],
    &["u3"],
    &["rz", "sx"],
    &["rz", "ry"],
    &["rx", "rz"],
    &["rx", "ry"],
    &["p", "sx"],
    &["u1", "u2"],
];

const ENTANGLERS: &[&str] = &["cx", "cz", "cy", "ecr", "iswap", "rxx", "rzz", "rzx", "cp"];

/// Instructions the transpiler keeps regardless of the basis.
const BASIS_EXEMPT: &[&str] = &[
    "measure",
    "reset",
    "barrier",
    "delay",
    "initialize",
    "unitary",
];

pub fn detect(ctx: &Context<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    unknown_methods(ctx, &mut out);
    custom_gates(ctx, &mut out);
    basis_gates(ctx, &mut out);
    out
}

fn unknown_methods(ctx: &Context<'_>, out: &mut Vec<Diagnostic>) {
    for record in ctx.records() {
        let Some(circuit) = ctx.circuit_of(record) else {
            continue;
        };
        let known = ctx.kb.gate(&record.method).is_some()
            || ctx.kb.circuit_methods.contains(&record.method);
        if !known {
            out.push(ctx.diagnostic(
                DetectorId::IG,
                "IG.unknown-gate",
                record.span,
                format!(
                    "'{}' is not a known gate or method of circuit '{}'",
                    record.method, circuit.name
                ),
            ));
        }
    }
}

/// Appends of gates that are never defined, and of gates built from a
/// circuit with a different number of qubits than the append targets.
fn custom_gates(ctx: &Context<'_>, out: &mut Vec<Diagnostic>) {
    let has_imports = !ctx.extraction.imports.is_empty();
    for record in ctx.records() {
        if record.method != "append" || ctx.circuit_of(record).is_none() {
            continue;
        }
        let Some(gate) = record.positional_args.first() else {
            continue;
        };
        let undefined = match &gate.expr.kind {
            ExprKind::Name(n) => !ctx.extraction.defined_names.contains(n),
            ExprKind::Call { func, .. } => func
                .as_name()
                .is_some_and(|n| !ctx.extraction.defined_names.contains(n)),
            _ => false,
        };
        // Without imports every framework name is unbound, so nothing can be
        // told apart from a missing definition.
        if undefined && has_imports {
            out.push(ctx.diagnostic(
                DetectorId::IG,
                "IG.undefined-custom-gate",
                record.span,
                format!("gate '{}' appended here is never defined", gate.rendered),
            ));
            continue;
        }
        if let Some(message) = arity_mismatch(ctx, record) {
            out.push(ctx.diagnostic(DetectorId::IG, "IG.custom-gate-arity", record.span, message));
        }
    }
}

fn arity_mismatch(ctx: &Context<'_>, record: &CallRecord) -> Option<String> {
    let gate = &record.positional_args.first()?.expr;
    let qargs = record
        .positional_args
        .get(1)
        .map(|a| &a.expr)
        .or_else(|| record.keyword("qargs").map(|k| &k.expr))?;
    let (value, horizon) = ctx.value_of(gate, record.horizon);
    let ExprKind::Call { func, .. } = &value.kind else {
        return None;
    };
    let ExprKind::Attribute {
        value: source,
        attr,
    } = &func.kind
    else {
        return None;
    };
    if !matches!(attr.name.as_str(), "to_gate" | "to_instruction") {
        return None;
    }
    let sub = ctx.circuit_arg(source, horizon)?;
    let width = sub.declared_qubits?;
    let bits = ctx.bits(qargs, record.horizon);
    if bits.contains(&Bit::Unknown) || bits.len() == width {
        return None;
    }
    Some(format!(
        "gate built from '{}' acts on {width} qubits but is appended to {}",
        sub.name,
        bits.len()
    ))
}

/// Gates a circuit uses that a transpile call's `basis_gates` cannot express.
fn basis_gates(ctx: &Context<'_>, out: &mut Vec<Diagnostic>) {
    for record in ctx.records() {
        if record.method != "transpile" || record.receiver.is_some() {
            continue;
        }
        let Some(kw) = record.keyword("basis_gates") else {
            continue;
        };
        let (value, _) = ctx.value_of(&kw.expr, record.horizon);
        let basis: Option<BTreeSet<&str>> = match &value.kind {
            ExprKind::List(elts) | ExprKind::Tuple { elts, .. } | ExprKind::Set(elts) => {
                elts.iter().map(|e| e.as_str_literal()).collect()
            }
            _ => None,
        };
        let Some(basis) = basis else {
            continue;
        };
        let Some(circuit) = record
            .positional_args
            .first()
            .and_then(|a| ctx.circuit_arg(&a.expr, record.horizon))
        else {
            continue;
        };
        let one_qubit_universal = UNIVERSAL_1Q
            .iter()
            .any(|set| set.iter().all(|g| basis.contains(g)));
        let entangling = ENTANGLERS.iter().any(|g| basis.contains(g));
        let mut missing = BTreeSet::new();
        for r in ctx.records() {
            if ctx
                .circuit_of(r)
                .is_none_or(|c| c.binding != circuit.binding)
            {
                continue;
            }
            let Some(spec) = ctx.kb.gate(&r.method) else {
                continue;
            };
            let name = r.method.as_str();
            if basis.contains(name) || BASIS_EXEMPT.contains(&name) {
                continue;
            }
            let multi = match spec.qubit_arity {
                QubitArity::Fixed(n) => n > 1,
                QubitArity::Variadic => true,
            };
            let expressible = one_qubit_universal && (!multi || entangling);
            if !expressible {
                missing.insert(name);
            }
        }
        if !missing.is_empty() {
            let list: Vec<&str> = missing.into_iter().collect();
            let basis_list: Vec<&str> = basis.into_iter().collect();
            out.push(ctx.diagnostic(
                DetectorId::IG,
                "IG.not-in-basis",
                record.span,
                format!(
                    "gate{} {} used by '{}' cannot be expressed in basis_gates [{}]",
                    if list.len() == 1 { "" } else { "s" },
                    list.join(", "),
                    circuit.name,
                    basis_list.join(", ")
                ),
            ));
        }
    }
}

use std::collections::{BTreeMap, BTreeSet};

use super::circuit::{gate_slots, Bit};
use super::{Context, DetectorId, Diagnostic};
use crate::extraction::render_canonical;
use crate::frontend::{Constant, DictItem, Expr, ExprKind, SourceSpan};

/// Keyword arguments that do not fill a gate's parameter or bit slots.
const NON_SLOT_KEYWORDS: &[&str] = &["label", "ctrl_state", "unit"];

pub fn detect(ctx: &Context<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    gate_arguments(ctx, &mut out);
    layouts(ctx, &mut out);
    coupling_maps(ctx, &mut out);
    out
}

fn gate_arguments(ctx: &Context<'_>, out: &mut Vec<Diagnostic>) {
    for record in ctx.records() {
        let Some(circuit) = ctx.circuit_of(record) else {
            continue;
        };
        let Some(spec) = ctx.kb.gate(&record.method) else {
            continue;
        };
        let given = record.positional_args.len()
            + record
                .keyword_args
                .iter()
                .filter(|k| !NON_SLOT_KEYWORDS.contains(&k.name.as_str()))
                .count();
        if let Some(expected) = spec.expected_args() {
            if !record.has_unpacked_args && given != expected {
                out.push(ctx.diagnostic(
                    DetectorId::PE,
                    "PE.incorrect-gate-parameters",
                    record.span,
                    format!(
                        "{} expects {expected} argument{}, got {given}",
                        record.method,
                        if expected == 1 { "" } else { "s" }
                    ),
                ));
                continue;
            }
        }
        let slots = gate_slots(spec, &record.positional_args);
        if let Some(bad) = slots
            .params
            .iter()
            .find(|a| !numeric_like(ctx.value_of(&a.expr, record.horizon).0))
        {
            out.push(ctx.diagnostic(
                DetectorId::PE,
                "PE.incorrect-gate-parameters",
                record.span,
                format!(
                    "angle parameter '{}' of {} is not numeric (value {})",
                    bad.rendered, record.method, bad.origin
                ),
            ));
            continue;
        }
        for arg in slots.qubits {
            let classical = ctx.bits(&arg.expr, record.horizon).into_iter().any(|b| {
                matches!(b, Bit::Reg { reg, .. }
                    if ctx.circuits.registers.get(&reg).is_some_and(|r| r.classical))
            });
            if classical {
                out.push(ctx.diagnostic(
                    DetectorId::PE,
                    "PE.classical-bit-entanglement",
                    record.span,
                    format!(
                        "'{}' is a classical bit but {} on '{}' needs a qubit there",
                        arg.rendered, record.method, circuit.name
                    ),
                ));
                break;
            }
        }
    }
}

/// Whether a value could be an angle: anything except string, bytes, None,
/// bool literals and containers.
fn numeric_like(expr: &Expr) -> bool {
    match &expr.kind {
        ExprKind::Constant(c) => !matches!(
            c,
            Constant::Str(_) | Constant::Bytes(_) | Constant::None | Constant::Bool(_)
        ),
        ExprKind::FString(_)
        | ExprKind::List(_)
        | ExprKind::Tuple { .. }
        | ExprKind::Set(_)
        | ExprKind::Dict(_) => false,
        _ => true,
    }
}

/// Integer values of a layout literal, paired with the rendered virtual qubit.
fn layout_values(expr: &Expr) -> Option<Vec<(String, i64)>> {
    match &expr.kind {
        ExprKind::Dict(items) => items
            .iter()
            .map(|item| match item {
                DictItem::Pair { key, value } => Some((render_canonical(key), value.as_int()?)),
                DictItem::Spread(_) => None,
            })
            .collect(),
        ExprKind::List(elts) => elts
            .iter()
            .enumerate()
            .map(|(i, e)| Some((format!("virtual qubit {i}"), e.as_int()?)))
            .collect(),
        _ => None,
    }
}

fn duplicate_message(values: &[(String, i64)]) -> Option<String> {
    let mut first: BTreeMap<i64, &str> = BTreeMap::new();
    for (virt, phys) in values {
        if let Some(prev) = first.insert(*phys, virt) {
            return Some(format!(
                "physical qubit {phys} is assigned to both {prev} and {virt}"
            ));
        }
    }
    None
}

/// Layout literals that map two virtual qubits to one physical qubit, either
/// bound to a layout-like name or passed as `initial_layout`.
fn layouts(ctx: &Context<'_>, out: &mut Vec<Diagnostic>) {
    let mut reported: BTreeSet<SourceSpan> = BTreeSet::new();
    for entry in ctx.extraction.attributes.entries() {
        if !entry.name.to_ascii_lowercase().contains("layout") {
            continue;
        }
        let Some(message) = layout_values(&entry.value).and_then(|v| duplicate_message(&v)) else {
            continue;
        };
        reported.insert(entry.value.span);
        out.push(ctx.diagnostic(
            DetectorId::PE,
            "PE.same-physical-qubit",
            entry.span,
            format!("layout '{}': {message}", entry.name),
        ));
    }
    for record in ctx.records() {
        let Some(kw) = record.keyword("initial_layout") else {
            continue;
        };
        let (value, _) = ctx.value_of(&kw.expr, record.horizon);
        if reported.contains(&value.span) {
            continue;
        }
        let Some(message) = layout_values(value).and_then(|v| duplicate_message(&v)) else {
            continue;
        };
        reported.insert(value.span);
        out.push(ctx.diagnostic(
            DetectorId::PE,
            "PE.same-physical-qubit",
            record.span,
            format!("initial_layout of {}: {message}", record.method),
        ));
    }
}

fn coupling_maps(ctx: &Context<'_>, out: &mut Vec<Diagnostic>) {
    for record in ctx.records() {
        let Some(kw) = record.keyword("coupling_map") else {
            continue;
        };
        let (value, _) = ctx.value_of(&kw.expr, record.horizon);
        let bad = match &value.kind {
            ExprKind::Constant(c) => !matches!(c, Constant::None),
            ExprKind::Dict(_) | ExprKind::Set(_) | ExprKind::FString(_) => true,
            _ => false,
        };
        if bad {
            out.push(ctx.diagnostic(
                DetectorId::PE,
                "PE.coupling-map-not-list",
                record.span,
                format!(
                    "coupling_map of {} is {}, not a list of qubit pairs",
                    record.method,
                    render_canonical(value)
                ),
            ));
        }
    }
}

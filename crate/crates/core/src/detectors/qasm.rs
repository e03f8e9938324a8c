use super::initial_state::run_target;
use super::{Context, DetectorId, Diagnostic};
use crate::frontend::{Expr, ExprKind};

pub fn detect(ctx: &Context<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    missing_headers(ctx, &mut out);
    qasm_simulator_results(ctx, &mut out);
    out
}

/// QASM text with leading whitespace and `//` comments removed.
fn strip_preamble(text: &str) -> &str {
    let mut rest = text.trim_start();
    while let Some(comment) = rest.strip_prefix("//") {
        rest = comment.split_once('\n').map_or("", |(_, r)| r).trim_start();
    }
    rest
}

fn missing_headers(ctx: &Context<'_>, out: &mut Vec<Diagnostic>) {
    for record in ctx.records() {
        if record.method != "from_qasm_str" {
            continue;
        }
        let Some(arg) = record
            .positional_args
            .first()
            .map(|a| &a.expr)
            .or_else(|| record.keyword("qasm_str").map(|k| &k.expr))
        else {
            continue;
        };
        let Some(text) = ctx.value_of(arg, record.horizon).0.as_str_literal() else {
            continue;
        };
        if !strip_preamble(text).starts_with("OPENQASM") {
            out.push(ctx.diagnostic(
                DetectorId::QE,
                "QE.missing-qasm-header",
                record.span,
                "QASM source passed to from_qasm_str does not start with an OPENQASM version header"
                    .to_string(),
            ));
        }
    }
}

/// Follows result and job expressions back to the run that produced them and
/// returns that run's backend rendering.
fn run_backend(ctx: &Context<'_>, expr: &Expr, horizon: usize, depth: usize) -> Option<String> {
    if depth > 8 {
        return None;
    }
    let (value, horizon) = ctx.value_of(expr, horizon);
    let ExprKind::Call { func, .. } = &value.kind else {
        return None;
    };
    let record = ctx.record_at(value.span)?;
    if let Some((_, backend)) = run_target(ctx, record) {
        return (record.method != "transpile").then_some(backend);
    }
    match &func.kind {
        ExprKind::Attribute { value: inner, attr } if attr.name == "result" => {
            run_backend(ctx, inner, horizon, depth + 1)
        }
        _ => None,
    }
}

fn qasm_simulator_results(ctx: &Context<'_>, out: &mut Vec<Diagnostic>) {
    for record in ctx.records() {
        if !ctx.kb.qasm_unsupported.contains(&record.method) {
            continue;
        }
        let Some(receiver) = &record.receiver_expr else {
            continue;
        };
        let Some(backend) = run_backend(ctx, receiver, record.horizon, 0) else {
            continue;
        };
        if backend.contains("get_backend(\"qasm_simulator\")") {
            out.push(ctx.diagnostic(
                DetectorId::QE,
                "QE.unsupported-on-qasm-simulator",
                record.span,
                format!(
                    "{} is not available from a run on {backend}; use a statevector backend",
                    record.call_rendered
                ),
            ));
        }
    }
}

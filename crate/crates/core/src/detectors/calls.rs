use super::{callee_name, Context, DetectorId, Diagnostic};

pub fn detect(ctx: &Context<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    imports(ctx, &mut out);
    backends(ctx, &mut out);
    preparation_basis(ctx, &mut out);
    out
}

fn imports(ctx: &Context<'_>, out: &mut Vec<Diagnostic>) {
    for import in &ctx.extraction.imports {
        let Some(member) = &import.member else {
            continue;
        };
        let Some(known) = ctx.kb.known_imports.get(&import.module) else {
            continue;
        };
        if member != "*" && !known.contains(member) {
            out.push(ctx.diagnostic(
                DetectorId::CE,
                "CE.import-error",
                import.span,
                format!("cannot import name '{member}' from '{}'", import.module),
            ));
        }
    }
}

/// `get_backend` calls on a known provider naming a backend it lacks.
fn backends(ctx: &Context<'_>, out: &mut Vec<Diagnostic>) {
    for record in ctx.records() {
        if record.method != "get_backend" {
            continue;
        }
        let Some(receiver) = record.receiver.as_deref() else {
            continue;
        };
        let provider = receiver.rsplit('.').next().unwrap_or(receiver);
        let Some(names) = ctx.kb.backends.get(provider) else {
            continue;
        };
        let Some(arg) = record
            .positional_args
            .first()
            .map(|a| &a.expr)
            .or_else(|| record.keyword("name").map(|k| &k.expr))
        else {
            continue;
        };
        let Some(name) = ctx.value_of(arg, record.horizon).0.as_str_literal() else {
            continue;
        };
        if !names.contains(name) {
            out.push(ctx.diagnostic(
                DetectorId::CE,
                "CE.backend-error",
                record.span,
                format!("{provider} has no backend named \"{name}\""),
            ));
        }
    }
}

/// `preparation_basis=PauliMeasurementBasis()`, the one invalid binding of a
/// basis object the detector recognizes.
fn preparation_basis(ctx: &Context<'_>, out: &mut Vec<Diagnostic>) {
    for record in ctx.records() {
        let Some(kw) = record.keyword("preparation_basis") else {
            continue;
        };
        let (value, _) = ctx.value_of(&kw.expr, record.horizon);
        if callee_name(value) != Some("PauliMeasurementBasis") {
            continue;
        }
        let span = ctx.record_at(value.span).map_or(record.span, |r| r.span);
        out.push(ctx.diagnostic(
            DetectorId::CE,
            "CE.object-call-error",
            span,
            format!(
                "PauliMeasurementBasis() is a measurement basis and is invalid as preparation_basis of {}",
                record.method
            ),
        ));
    }
}

use super::{callee_name, Context, DetectorId, Diagnostic};

/// Methods that turn a circuit into something another circuit can append.
const CONVERSIONS: &[&str] = &["to_gate", "to_instruction", "decompose"];

pub fn detect(ctx: &Context<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    module_members(ctx, &mut out);
    circuit_nesting(ctx, &mut out);
    redundant_classical_registers(ctx, &mut out);
    out
}

/// Module path a call's callee lives under, from an import of its root name
/// or, for an unbound root, from the last segment of a known module path.
fn module_member<'k>(
    ctx: &'k Context<'_>,
    callee_path: &str,
    qualified: &str,
) -> Option<(&'k str, String)> {
    for module in &ctx.kb.modules {
        let path = &module.module_path;
        if let Some(rest) = qualified
            .strip_prefix(path.as_str())
            .and_then(|r| r.strip_prefix('.'))
        {
            return Some((path, rest.split('.').next()?.to_string()));
        }
        let last = path.rsplit('.').next().unwrap_or(path);
        if let Some(rest) = callee_path
            .strip_prefix(last)
            .and_then(|r| r.strip_prefix('.'))
        {
            if !ctx.extraction.defined_names.contains(last) {
                return Some((path, rest.split('.').next()?.to_string()));
            }
        }
    }
    None
}

fn module_members(ctx: &Context<'_>, out: &mut Vec<Diagnostic>) {
    for record in ctx.records() {
        let qualified = ctx.qualified_path(record);
        let Some((module, member)) = module_member(ctx, &record.callee_path, &qualified) else {
            continue;
        };
        let api = ctx
            .kb
            .module(module)
            .expect("module came from the knowledge base");
        if !api.attributes.contains(&member) {
            out.push(ctx.diagnostic(
                DetectorId::CM,
                "CM.unrecognized-attribute",
                record.span,
                format!("'{member}' is not a member of module {module}"),
            ));
        }
    }
}

/// A circuit appended to another circuit without first being converted.
fn circuit_nesting(ctx: &Context<'_>, out: &mut Vec<Diagnostic>) {
    for record in ctx.records() {
        if record.method != "append" || ctx.circuit_of(record).is_none() {
            continue;
        }
        let Some(arg) = record.positional_args.first() else {
            continue;
        };
        let Some(inner) = ctx.circuit_arg(&arg.expr, record.horizon) else {
            continue;
        };
        let converted = ctx.records().iter().any(|r| {
            CONVERSIONS.contains(&r.method.as_str())
                && ctx
                    .circuit_of(r)
                    .is_some_and(|c| c.binding == inner.binding)
        });
        if !converted {
            out.push(ctx.diagnostic(
                DetectorId::CM,
                "CM.circuit-interaction",
                record.span,
                format!(
                    "circuit '{}' is appended directly; convert it with to_gate() or decompose() first",
                    inner.name
                ),
            ));
        }
    }
}

fn redundant_classical_registers(ctx: &Context<'_>, out: &mut Vec<Diagnostic>) {
    for entry in ctx.extraction.attributes.entries() {
        if callee_name(&entry.value) != Some("ClassicalRegister") {
            continue;
        }
        if !ctx.extraction.used_after(&entry.name, entry.span.end) {
            out.push(ctx.diagnostic(
                DetectorId::CM,
                "CM.redundant-classical-register",
                entry.span,
                format!(
                    "classical register '{}' is created but never used",
                    entry.name
                ),
            ));
        }
    }
}

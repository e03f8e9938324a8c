use super::{Context, DetectorId, Diagnostic};

pub fn detect(ctx: &Context<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for record in ctx.records() {
        let qualified = ctx.qualified_path(record);
        let Some(entry) = ctx
            .kb
            .deprecation_for(&record.callee_path)
            .or_else(|| ctx.kb.deprecation_for(&qualified))
        else {
            continue;
        };
        let mut message = match &entry.replacement {
            Some(r) => format!("'{}' is deprecated; use '{r}' instead", record.callee_path),
            None => format!("'{}' is deprecated", record.callee_path),
        };
        if !entry.note.is_empty() {
            message.push_str(" (");
            message.push_str(&entry.note);
            message.push(')');
        }
        out.push(ctx.diagnostic(DetectorId::DO, "DO.deprecated-method", record.span, message));
    }
    out
}

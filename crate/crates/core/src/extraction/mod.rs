//! Variable-binding table and call records extracted from a syntax tree.
//!
//! [`QPAttribute`] holds every name binding in source order and
//! [`QPOperation`] every call expression, outer calls before the calls nested
//! inside them. Both are flat per file: scopes are not separated, so a name
//! bound inside a function is visible to later top-level lookups.

mod render;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::frontend::{
    Arg, BinOp, Constant, Expr, ExprKind, SourceSpan, Stmt, StmtKind, SyntaxTree, UnaryOp,
};

pub use render::{quote_str, render_canonical};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ValueKind {
    Constant,
    NameRef,
    CallResult,
    Container,
    Other,
}

impl ValueKind {
    pub fn of(expr: &Expr) -> ValueKind {
        match &expr.kind {
            ExprKind::Constant(_) => ValueKind::Constant,
            ExprKind::UnaryOp {
                op: UnaryOp::Neg | UnaryOp::Pos,
                operand,
            } if matches!(
                operand.kind,
                ExprKind::Constant(Constant::Int(_) | Constant::Float(_) | Constant::Imaginary(_))
            ) =>
            {
                ValueKind::Constant
            }
            ExprKind::Name(_) => ValueKind::NameRef,
            ExprKind::Call { .. } => ValueKind::CallResult,
            ExprKind::List(_) | ExprKind::Tuple { .. } | ExprKind::Set(_) | ExprKind::Dict(_) => {
                ValueKind::Container
            }
            _ => ValueKind::Other,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QPAttributeEntry {
    pub name: String,
    pub value_rendered: String,
    pub value_kind: ValueKind,
    /// Span of the binding statement.
    pub span: SourceSpan,
    pub binding_index: usize,
    pub value: Expr,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct QPAttribute {
    entries: Vec<QPAttributeEntry>,
    index: BTreeMap<String, Vec<usize>>,
}

impl QPAttribute {
    pub fn entries(&self) -> &[QPAttributeEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, binding_index: usize) -> Option<&QPAttributeEntry> {
        self.entries.get(binding_index)
    }

    /// All bindings of `name`, in order.
    pub fn bindings_of(&self, name: &str) -> impl Iterator<Item = &QPAttributeEntry> {
        self.index
            .get(name)
            .into_iter()
            .flatten()
            .map(|&i| &self.entries[i])
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.index.keys().map(String::as_str)
    }

    /// Most recent binding of `name` with index below `at_index`.
    pub fn latest_before(&self, name: &str, at_index: usize) -> Option<&QPAttributeEntry> {
        let list = self.index.get(name)?;
        let pos = list.partition_point(|&i| i < at_index);
        pos.checked_sub(1).map(|p| &self.entries[list[p]])
    }

    pub fn push(&mut self, name: &str, value: &Expr, value_kind: ValueKind, span: SourceSpan) {
        let binding_index = self.entries.len();
        self.index
            .entry(name.to_string())
            .or_default()
            .push(binding_index);
        self.entries.push(QPAttributeEntry {
            name: name.to_string(),
            value_rendered: render_canonical(value),
            value_kind,
            span,
            binding_index,
            value: value.clone(),
        });
    }
}

/// Where a name's value came from after following name-to-name bindings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Origin {
    pub rendered: String,
    pub kind: ValueKind,
    /// Binding that supplied the value; `None` when the chain ended at an
    /// unbound name (an import, a parameter, a loop variable).
    pub binding: Option<usize>,
    pub cycle: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("name '{0}' has no binding before this point")]
pub struct UnknownName(pub String);

/// Follows name-to-name bindings, each looked up as the latest binding before
/// `at_index`, until a binding whose value is not a bare name.
pub fn resolve_origin(
    name: &str,
    attrs: &QPAttribute,
    at_index: usize,
) -> Result<Origin, UnknownName> {
    let mut current = attrs
        .latest_before(name, at_index)
        .ok_or_else(|| UnknownName(name.to_string()))?;
    let mut visited = BTreeSet::new();
    loop {
        if current.value_kind != ValueKind::NameRef {
            return Ok(Origin {
                rendered: current.value_rendered.clone(),
                kind: current.value_kind,
                binding: Some(current.binding_index),
                cycle: false,
            });
        }
        visited.insert(current.name.as_str());
        let next = current.value_rendered.as_str();
        if visited.contains(next) {
            return Ok(Origin {
                rendered: next.to_string(),
                kind: ValueKind::NameRef,
                binding: Some(current.binding_index),
                cycle: true,
            });
        }
        match attrs.latest_before(next, at_index) {
            Some(entry) => current = entry,
            None => {
                return Ok(Origin {
                    rendered: next.to_string(),
                    kind: ValueKind::NameRef,
                    binding: None,
                    cycle: false,
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArgRecord {
    pub rendered: String,
    /// Origin rendering for a bare name, otherwise equal to `rendered`.
    pub origin: String,
    pub expr: Expr,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KeywordArgRecord {
    pub name: String,
    pub rendered: String,
    pub origin: String,
    pub expr: Expr,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CallRecord {
    pub call_rendered: String,
    pub callee_path: String,
    /// Rendered expression the method is called on, for attribute calls.
    pub receiver: Option<String>,
    pub receiver_expr: Option<Expr>,
    /// Last segment of the callee.
    pub method: String,
    pub positional_args: Vec<ArgRecord>,
    pub keyword_args: Vec<KeywordArgRecord>,
    /// Whether the call has `*args` or `**kwargs`, which records omit.
    pub has_unpacked_args: bool,
    pub span: SourceSpan,
    pub nesting_depth: usize,
    /// Number of bindings made before the enclosing statement; lookups for
    /// this call use it as their `at_index`.
    pub horizon: usize,
}

impl CallRecord {
    pub fn keyword(&self, name: &str) -> Option<&KeywordArgRecord> {
        self.keyword_args.iter().find(|k| k.name == name)
    }

    /// Root name of the receiver chain (`qc` for `qc.x.y(...)`).
    pub fn receiver_name(&self) -> Option<&str> {
        let receiver = self.receiver.as_deref()?;
        let end = receiver
            .find(|c: char| !(c.is_alphanumeric() || c == '_'))
            .unwrap_or(receiver.len());
        (end == receiver.len()).then_some(receiver)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct QPOperation {
    pub records: Vec<CallRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImportRecord {
    /// Module path (`qiskit.circuit`) as written, relative dots included.
    pub module: String,
    /// Imported member for `from` imports.
    pub member: Option<String>,
    /// Name bound in the importing file.
    pub bound: String,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedConstruct {
    pub span: SourceSpan,
    pub reason: &'static str,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExtractionCoverage {
    pub skipped_constructs: Vec<SkippedConstruct>,
    /// Call nodes inside skipped constructs that produced no record.
    pub skipped_calls: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Extraction {
    pub attributes: QPAttribute,
    pub operations: QPOperation,
    pub imports: Vec<ImportRecord>,
    /// Every name the file binds by any means (assignments, loop targets,
    /// parameters, definitions, imports).
    pub defined_names: BTreeSet<String>,
    /// Load-context name occurrences as (name, start offset), in source order.
    pub name_uses: Vec<(String, usize)>,
    pub coverage: ExtractionCoverage,
}

impl Extraction {
    /// Whether `name` is read anywhere after byte offset `after`.
    pub fn used_after(&self, name: &str, after: usize) -> bool {
        self.name_uses
            .iter()
            .any(|(n, offset)| n == name && *offset >= after)
    }

    /// Module a locally bound name refers to, when it came from an import.
    pub fn import_target(&self, bound: &str) -> Option<String> {
        self.imports
            .iter()
            .rev()
            .find(|i| i.bound == bound)
            .map(|i| {
                match &i.member {
                    Some(member) => format!("{}.{}", i.module, member),
                    // `import a.b` binds `a`, `import a.b as c` binds `a.b`
                    None if i.module.starts_with(&format!("{}.", i.bound)) => i.bound.clone(),
                    None => i.module.clone(),
                }
            })
    }
}

impl fmt::Display for Extraction {
    /// Tuple block, separator, call block.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in self.attributes.entries() {
            writeln!(f, "({}, {})", py_repr(&e.name), py_repr(&e.value_rendered))?;
        }
        writeln!(f, "{}", "=".repeat(42))?;
        for r in &self.operations.records {
            writeln!(f, "{}", py_repr(&r.call_rendered))?;
        }
        Ok(())
    }
}

/// Python `repr` of a str.
pub fn py_repr(s: &str) -> String {
    let quote = if s.contains('\'') && !s.contains('"') {
        '"'
    } else {
        '\''
    };
    let mut out = String::with_capacity(s.len() + 2);
    out.push(quote);
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if c == quote => {
                out.push('\\');
                out.push(c);
            }
            c => out.push(c),
        }
    }
    out.push(quote);
    out
}

pub fn extract(tree: &SyntaxTree) -> Extraction {
    let mut walker = Walker::default();
    walker.block(&tree.body);
    walker.out
}

#[derive(Default)]
struct Walker {
    out: Extraction,
}

impl Walker {
    fn block(&mut self, body: &[Stmt]) {
        for stmt in body {
            self.stmt(stmt);
        }
    }

    fn stmt(&mut self, stmt: &Stmt) {
        let horizon = self.out.attributes.len();
        match &stmt.kind {
            StmtKind::Expr(e) => {
                if let ExprKind::BinOp { op, .. } = &e.kind {
                    // An operator applied for its side effect, such as
                    // `H | qubits[0]`, is an overloaded-operator call we
                    // cannot model. Calls inside the operands still count.
                    let reason = if *op == BinOp::BitOr {
                        "pipe-operator statement"
                    } else {
                        "operator statement"
                    };
                    self.out.coverage.skipped_constructs.push(SkippedConstruct {
                        span: stmt.span,
                        reason,
                    });
                }
                self.expr(e, horizon);
            }
            StmtKind::Assign { targets, value } => {
                for t in targets {
                    self.target(t, horizon);
                }
                self.expr(value, horizon);
                for t in targets {
                    self.bind_target(t, value, stmt.span);
                }
            }
            StmtKind::AugAssign { target, op, value } => {
                self.target(target, horizon);
                self.expr(value, horizon);
                if let Some(name) = target.as_name() {
                    let combined = Expr::new(
                        ExprKind::BinOp {
                            op: *op,
                            left: Box::new(target.clone()),
                            right: Box::new(value.clone()),
                        },
                        SourceSpan::new(target.span.start, value.span.end),
                    );
                    self.out
                        .name_uses
                        .push((name.to_string(), target.span.start));
                    self.bind(name, &combined, ValueKind::Other, stmt.span);
                }
            }
            StmtKind::AnnAssign {
                target,
                annotation,
                value,
            } => {
                self.target(target, horizon);
                self.expr(annotation, horizon);
                if let Some(value) = value {
                    self.expr(value, horizon);
                    self.bind_target(target, value, stmt.span);
                }
            }
            StmtKind::FunctionDef(def) => {
                for d in &def.decorators {
                    self.expr(d, horizon);
                }
                for p in &def.params {
                    if let Some(a) = &p.annotation {
                        self.expr(a, horizon);
                    }
                    if let Some(d) = &p.default {
                        self.expr(d, horizon);
                    }
                    self.define(&p.name.name);
                }
                if let Some(r) = &def.returns {
                    self.expr(r, horizon);
                }
                self.define(&def.name.name);
                self.block(&def.body);
            }
            StmtKind::ClassDef(def) => {
                for d in &def.decorators {
                    self.expr(d, horizon);
                }
                for b in &def.bases {
                    self.expr(b.value(), horizon);
                }
                self.define(&def.name.name);
                self.block(&def.body);
            }
            StmtKind::For {
                target,
                iter,
                body,
                orelse,
            } => {
                self.target(target, horizon);
                self.expr(iter, horizon);
                self.block(body);
                self.block(orelse);
            }
            StmtKind::While { test, body, orelse } | StmtKind::If { test, body, orelse } => {
                self.expr(test, horizon);
                self.block(body);
                self.block(orelse);
            }
            StmtKind::With { items, body } => {
                for item in items {
                    self.expr(&item.context, horizon);
                    if let Some(t) = &item.target {
                        self.target(t, horizon);
                    }
                }
                self.block(body);
            }
            StmtKind::Try {
                body,
                handlers,
                orelse,
                finalbody,
            } => {
                self.block(body);
                for h in handlers {
                    if let Some(k) = &h.kind {
                        let horizon = self.out.attributes.len();
                        self.expr(k, horizon);
                    }
                    if let Some(n) = &h.name {
                        self.define(&n.name);
                    }
                    self.block(&h.body);
                }
                self.block(orelse);
                self.block(finalbody);
            }
            StmtKind::Import(aliases) => {
                for a in aliases {
                    let bound = match &a.asname {
                        Some(id) => id.name.clone(),
                        None => a.name.split('.').next().unwrap_or(&a.name).to_string(),
                    };
                    self.define(&bound);
                    self.out.imports.push(ImportRecord {
                        module: a.name.clone(),
                        member: None,
                        bound,
                        span: a.span,
                    });
                }
            }
            StmtKind::ImportFrom {
                module,
                level,
                names,
            } => {
                let module = format!("{}{}", ".".repeat(*level), module.as_deref().unwrap_or(""));
                for a in names {
                    let bound = a
                        .asname
                        .as_ref()
                        .map_or_else(|| a.name.clone(), |id| id.name.clone());
                    if a.name != "*" {
                        self.define(&bound);
                    }
                    self.out.imports.push(ImportRecord {
                        module: module.clone(),
                        member: Some(a.name.clone()),
                        bound,
                        span: a.span,
                    });
                }
            }
            StmtKind::Return(e) => {
                if let Some(e) = e {
                    self.expr(e, horizon);
                }
            }
            StmtKind::Raise { exc, cause } => {
                for e in exc.iter().chain(cause) {
                    self.expr(e, horizon);
                }
            }
            StmtKind::Assert { test, msg } => {
                self.expr(test, horizon);
                if let Some(m) = msg {
                    self.expr(m, horizon);
                }
            }
            StmtKind::Delete(targets) => {
                for t in targets {
                    self.expr(t, horizon);
                }
            }
            StmtKind::Global(_)
            | StmtKind::Nonlocal(_)
            | StmtKind::Pass
            | StmtKind::Break
            | StmtKind::Continue => {}
            StmtKind::Opaque { kind, inner } => {
                self.out.coverage.skipped_constructs.push(SkippedConstruct {
                    span: stmt.span,
                    reason: kind.as_str(),
                });
                self.out.coverage.skipped_calls += count_calls(inner);
            }
        }
    }

    /// Records calls and name uses in an assignment-like target; bare names
    /// are stores and contribute nothing here.
    fn target(&mut self, target: &Expr, horizon: usize) {
        match &target.kind {
            ExprKind::Name(n) => self.define(n),
            ExprKind::Tuple { elts, .. } | ExprKind::List(elts) => {
                for e in elts {
                    self.target(e, horizon);
                }
            }
            ExprKind::Starred(e) => self.target(e, horizon),
            _ => self.expr(target, horizon),
        }
    }

    fn bind_target(&mut self, target: &Expr, value: &Expr, span: SourceSpan) {
        match &target.kind {
            ExprKind::Name(n) => self.bind(n, value, ValueKind::of(value), span),
            ExprKind::Tuple { .. } | ExprKind::List(_) => {
                let mut names = Vec::new();
                collect_target_names(target, &mut names);
                for n in names {
                    self.bind(&n, value, ValueKind::Other, span);
                }
            }
            _ => {}
        }
    }

    fn bind(&mut self, name: &str, value: &Expr, kind: ValueKind, span: SourceSpan) {
        self.define(name);
        self.out.attributes.push(name, value, kind, span);
    }

    fn define(&mut self, name: &str) {
        if !self.out.defined_names.contains(name) {
            self.out.defined_names.insert(name.to_string());
        }
    }

    fn expr(&mut self, expr: &Expr, horizon: usize) {
        self.expr_at(expr, horizon, 0);
        let mut walrus = Vec::new();
        expr.walk(&mut |e| {
            if let ExprKind::NamedExpr { target, value } = &e.kind {
                walrus.push((target.name.clone(), value.as_ref().clone(), e.span));
            }
        });
        for (name, value, span) in walrus {
            let kind = ValueKind::of(&value);
            self.bind(&name, &value, kind, span);
        }
    }

    fn expr_at(&mut self, expr: &Expr, horizon: usize, depth: usize) {
        match &expr.kind {
            ExprKind::Name(n) => self.out.name_uses.push((n.clone(), expr.span.start)),
            ExprKind::Call { func, args } => {
                let record = self.call_record(expr, func, args, horizon, depth);
                self.out.operations.records.push(record);
                for child in expr.children() {
                    self.expr_at(child, horizon, depth + 1);
                }
                return;
            }
            ExprKind::Lambda { params, .. } => {
                for p in params {
                    self.define(&p.name.name);
                }
            }
            ExprKind::Comprehension { generators, .. } => {
                for g in generators {
                    let mut names = Vec::new();
                    collect_target_names(&g.target, &mut names);
                    for n in names {
                        self.define(&n);
                    }
                }
            }
            ExprKind::NamedExpr { target, .. } => self.define(&target.name),
            _ => {}
        }
        for child in expr.children() {
            self.expr_at(child, horizon, depth);
        }
    }

    fn call_record(
        &self,
        call: &Expr,
        func: &Expr,
        args: &[Arg],
        horizon: usize,
        depth: usize,
    ) -> CallRecord {
        let attrs = &self.out.attributes;
        let origin_of = |e: &Expr, rendered: &str| match e.as_name() {
            Some(n) => resolve_origin(n, attrs, horizon)
                .map(|o| o.rendered)
                .unwrap_or_else(|_| rendered.to_string()),
            None => rendered.to_string(),
        };
        let (receiver_expr, method) = match &func.kind {
            ExprKind::Attribute { value, attr } => {
                (Some(value.as_ref().clone()), attr.name.clone())
            }
            _ => (None, render_canonical(func)),
        };
        let receiver = receiver_expr.as_ref().map(render_canonical);
        let callee_path = match &receiver {
            Some(r) => format!("{r}.{method}"),
            None => method.clone(),
        };
        let mut positional_args = Vec::new();
        let mut keyword_args = Vec::new();
        let mut has_unpacked_args = false;
        for arg in args {
            match arg {
                Arg::Positional(e) => {
                    let rendered = render_canonical(e);
                    positional_args.push(ArgRecord {
                        origin: origin_of(e, &rendered),
                        rendered,
                        expr: e.clone(),
                    });
                }
                Arg::Keyword { name, value } => {
                    let rendered = render_canonical(value);
                    keyword_args.push(KeywordArgRecord {
                        name: name.name.clone(),
                        origin: origin_of(value, &rendered),
                        rendered,
                        expr: value.clone(),
                    });
                }
                // Unpacked arguments have no fixed position.
                Arg::Starred(_) | Arg::DoubleStarred(_) => has_unpacked_args = true,
            }
        }
        CallRecord {
            call_rendered: render_canonical(call),
            callee_path,
            receiver,
            receiver_expr,
            method,
            positional_args,
            keyword_args,
            has_unpacked_args,
            span: call.span,
            nesting_depth: depth,
            horizon,
        }
    }
}

fn collect_target_names(target: &Expr, out: &mut Vec<String>) {
    match &target.kind {
        ExprKind::Name(n) => out.push(n.clone()),
        ExprKind::Tuple { elts, .. } | ExprKind::List(elts) => {
            for e in elts {
                collect_target_names(e, out);
            }
        }
        ExprKind::Starred(e) => collect_target_names(e, out),
        _ => {}
    }
}

/// Number of call nodes anywhere inside a statement.
pub fn count_calls(stmt: &Stmt) -> usize {
    let mut n = 0;
    for e in stmt.expressions() {
        e.walk(&mut |x| {
            if matches!(x.kind, ExprKind::Call { .. }) {
                n += 1;
            }
        });
    }
    if let StmtKind::Opaque { inner, .. } = &stmt.kind {
        n += count_calls(inner);
    }
    for block in stmt.blocks() {
        n += block.iter().map(count_calls).sum::<usize>();
    }
    n
}

/// Number of call nodes in a tree.
pub fn count_tree_calls(tree: &SyntaxTree) -> usize {
    tree.body.iter().map(count_calls).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::{parse_source, SourceFile};

    fn extract_src(src: &str) -> Extraction {
        extract(&parse_source(&SourceFile::new("t.py", src)).unwrap())
    }

    #[test]
    fn trivial_assignment() {
        let ex = extract_src("x = 1");
        let pairs: Vec<_> = ex
            .attributes
            .entries()
            .iter()
            .map(|e| (e.name.as_str(), e.value_rendered.as_str(), e.value_kind))
            .collect();
        assert_eq!(pairs, [("x", "1", ValueKind::Constant)]);
        assert!(ex.operations.records.is_empty());
    }

    #[test]
    fn origin_follows_name_chains() {
        let ex = extract_src("a = 5\nb = a\nc = b\n");
        let o = resolve_origin("c", &ex.attributes, usize::MAX).unwrap();
        assert_eq!((o.rendered.as_str(), o.cycle), ("5", false));
        assert_eq!(o.binding, Some(0));
        assert!(resolve_origin("zz", &ex.attributes, usize::MAX).is_err());
        // before `a` is bound there is nothing to resolve
        assert!(resolve_origin("a", &ex.attributes, 0).is_err());
    }

    // Hand walk: at the end `a` resolves to its second binding `a = a`,
    // whose target is `a` itself, already visited.
    #[test]
    fn self_reference_reports_cycle() {
        let ex = extract_src("a = '1'\na = a\n");
        let o = resolve_origin("a", &ex.attributes, usize::MAX).unwrap();
        assert_eq!((o.rendered.as_str(), o.cycle), ("a", true));
        let o = resolve_origin("a", &ex.attributes, 1).unwrap();
        assert_eq!((o.rendered.as_str(), o.cycle), ("\"1\"", false));
    }

    #[test]
    fn two_name_cycle_terminates() {
        let ex = extract_src("a = b\nb = a\n");
        let o = resolve_origin("b", &ex.attributes, usize::MAX).unwrap();
        assert!(o.cycle);
        assert_eq!(o.rendered, "b");
    }

    #[test]
    fn chain_ending_in_unbound_name() {
        let ex = extract_src("b = np\n");
        let o = resolve_origin("b", &ex.attributes, usize::MAX).unwrap();
        assert_eq!((o.rendered.as_str(), o.binding), ("np", None));
    }

    #[test]
    fn rebinding_and_unpacking() {
        let ex = extract_src("x = 1\nx += 2\na, (b, *c) = f()\ny: int = 3\nz: int\n");
        let names: Vec<_> = ex
            .attributes
            .entries()
            .iter()
            .map(|e| &e.name[..])
            .collect();
        assert_eq!(names, ["x", "x", "a", "b", "c", "y"]);
        assert_eq!(ex.attributes.bindings_of("x").count(), 2);
        let aug = &ex.attributes.entries()[1];
        assert_eq!(
            (aug.value_rendered.as_str(), aug.value_kind),
            ("x+2", ValueKind::Other)
        );
        assert!(ex.attributes.entries()[2..5]
            .iter()
            .all(|e| e.value_kind == ValueKind::Other && e.value_rendered == "f()"));
        let idx: Vec<_> = ex
            .attributes
            .entries()
            .iter()
            .map(|e| e.binding_index)
            .collect();
        assert_eq!(idx, [0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn nested_calls_follow_their_parent() {
        let ex = extract_src("r = a.b(c(d()), e())\nf()\n");
        let calls: Vec<_> = ex
            .operations
            .records
            .iter()
            .map(|r| (r.call_rendered.as_str(), r.nesting_depth))
            .collect();
        assert_eq!(
            calls,
            [
                ("a.b(c(d()),e())", 0),
                ("c(d())", 1),
                ("d()", 2),
                ("e()", 1),
                ("f()", 0)
            ]
        );
        let outer = &ex.operations.records[0];
        assert_eq!(outer.callee_path, "a.b");
        assert_eq!(outer.receiver.as_deref(), Some("a"));
        assert_eq!(outer.method, "b");
    }

    #[test]
    fn arguments_carry_origins() {
        let ex = extract_src("n = 3\nm = n\nqc = QuantumCircuit(m, 2, name=m)\n");
        let r = &ex.operations.records[0];
        let pos: Vec<_> = r
            .positional_args
            .iter()
            .map(|a| (a.rendered.as_str(), a.origin.as_str()))
            .collect();
        assert_eq!(pos, [("m", "3"), ("2", "2")]);
        assert_eq!(r.keyword("name").unwrap().origin, "3");
        assert_eq!(r.horizon, 2);
    }

    #[test]
    fn blocks_are_walked_once_per_lexical_occurrence() {
        let src = "\
def f(a):
    g(a)
for i in range(3):
    h(i)
while x():
    pass
with ctx() as c:
    k()
try:
    t()
except E as e:
    u()
";
        let ex = extract_src(src);
        let calls: Vec<_> = ex
            .operations
            .records
            .iter()
            .map(|r| r.call_rendered.as_str())
            .collect();
        assert_eq!(
            calls,
            ["g(a)", "range(3)", "h(i)", "x()", "ctx()", "k()", "t()", "u()"]
        );
        for n in ["f", "a", "i", "c", "e"] {
            assert!(ex.defined_names.contains(n), "{n}");
        }
    }

    #[test]
    fn opaque_statements_are_counted_not_recorded() {
        let ex = extract_src("async def f():\n    await g(h())\nx = 1\n");
        assert!(ex.operations.records.is_empty());
        assert_eq!(ex.coverage.skipped_constructs.len(), 1);
        assert_eq!(ex.coverage.skipped_calls, 2);
    }

    #[test]
    fn imports_are_recorded() {
        let ex = extract_src(
            "import numpy as np\nimport qiskit.pulse\nfrom qiskit import Aer, execute as ex\n",
        );
        let got: Vec<_> = ex
            .imports
            .iter()
            .map(|i| (i.module.as_str(), i.member.as_deref(), i.bound.as_str()))
            .collect();
        assert_eq!(
            got,
            [
                ("numpy", None, "np"),
                ("qiskit.pulse", None, "qiskit"),
                ("qiskit", Some("Aer"), "Aer"),
                ("qiskit", Some("execute"), "ex"),
            ]
        );
    }

    #[test]
    fn repr_matches_python() {
        assert_eq!(py_repr("abc"), "'abc'");
        assert_eq!(py_repr("f(\"x\")"), "'f(\"x\")'");
        assert_eq!(py_repr("it's"), "\"it's\"");
        assert_eq!(py_repr("it's \"x\""), "'it\\'s \"x\"'");
    }
}

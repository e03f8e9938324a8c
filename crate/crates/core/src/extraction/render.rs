//! Canonical, whitespace-free rendering of expressions.
//!
//! Commas, colons and parentheses carry no surrounding spaces, string literals
//! are always double-quoted, and binary operators are written without spaces.
//! Keyword operators (`and`, `not`, `in`, `is`, `if`/`else`, `lambda`, `for`)
//! keep single spaces so the output stays readable as Python. Parentheses are
//! reintroduced only where precedence requires them.

use std::fmt::Write;

use crate::frontend::{
    Arg, BinOp, BoolOp, ComprehensionKind, Constant, DictItem, Expr, ExprKind, Param, ParamKind,
    UnaryOp,
};

pub fn render_canonical(expr: &Expr) -> String {
    let mut out = String::new();
    write_expr(&mut out, expr, Prec::Lowest);
    out
}

/// Renders a string as a double-quoted Python literal.
pub fn quote_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 || c as u32 == 0x7f => {
                let _ = write!(out, "\\x{:02x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn quote_bytes(bytes: &[u8]) -> String {
    let mut out = String::from("b\"");
    for &b in bytes {
        match b {
            b'"' => out.push_str("\\\""),
            b'\\' => out.push_str("\\\\"),
            b'\n' => out.push_str("\\n"),
            b'\r' => out.push_str("\\r"),
            b'\t' => out.push_str("\\t"),
            0x20..=0x7e => out.push(b as char),
            _ => {
                let _ = write!(out, "\\x{b:02x}");
            }
        }
    }
    out.push('"');
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Lowest,
    Lambda,
    IfExp,
    Or,
    And,
    Not,
    Compare,
    BitOr,
    BitXor,
    BitAnd,
    Shift,
    Arith,
    Term,
    Unary,
    Power,
    Await,
    Atom,
}

fn binop_prec(op: BinOp) -> Prec {
    match op {
        BinOp::BitOr => Prec::BitOr,
        BinOp::BitXor => Prec::BitXor,
        BinOp::BitAnd => Prec::BitAnd,
        BinOp::LShift | BinOp::RShift => Prec::Shift,
        BinOp::Add | BinOp::Sub => Prec::Arith,
        BinOp::Mult | BinOp::MatMult | BinOp::Div | BinOp::FloorDiv | BinOp::Mod => Prec::Term,
        BinOp::Pow => Prec::Power,
    }
}

fn expr_prec(expr: &Expr) -> Prec {
    match &expr.kind {
        ExprKind::Lambda { .. } => Prec::Lambda,
        ExprKind::IfExp { .. } => Prec::IfExp,
        ExprKind::BoolOp { op: BoolOp::Or, .. } => Prec::Or,
        ExprKind::BoolOp {
            op: BoolOp::And, ..
        } => Prec::And,
        ExprKind::UnaryOp {
            op: UnaryOp::Not, ..
        } => Prec::Not,
        ExprKind::Compare { .. } => Prec::Compare,
        ExprKind::BinOp { op, .. } => binop_prec(*op),
        ExprKind::UnaryOp { .. } => Prec::Unary,
        ExprKind::Await(_) => Prec::Await,
        // Tuples, yields and walrus expressions parenthesize themselves;
        // starred items only occur where no parentheses are allowed.
        _ => Prec::Atom,
    }
}

/// Writes `expr`, parenthesizing it when it binds more loosely than `min`.
fn write_expr(out: &mut String, expr: &Expr, min: Prec) {
    let needs_parens = expr_prec(expr) < min;
    if needs_parens {
        out.push('(');
    }
    write_bare(out, expr);
    if needs_parens {
        out.push(')');
    }
}

fn write_seq(out: &mut String, elts: &[Expr]) {
    for (i, e) in elts.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write_expr(out, e, Prec::Lambda);
    }
}

fn write_bare(out: &mut String, expr: &Expr) {
    match &expr.kind {
        ExprKind::Name(n) => out.push_str(n),
        ExprKind::Constant(c) => write_constant(out, c),
        ExprKind::FString(body) => {
            out.push_str("f\"");
            out.push_str(body);
            out.push('"');
        }
        ExprKind::Attribute { value, attr } => {
            // `1 .real` needs the space; every other base binds tightly.
            let int_base = matches!(value.kind, ExprKind::Constant(Constant::Int(_)));
            write_expr(out, value, Prec::Atom);
            if int_base {
                out.push(' ');
            }
            out.push('.');
            out.push_str(&attr.name);
        }
        ExprKind::Subscript { value, index } => {
            write_expr(out, value, Prec::Atom);
            out.push('[');
            match &index.kind {
                ExprKind::Tuple { elts, .. }
                    if !elts.is_empty()
                        && !elts.iter().any(|e| matches!(e.kind, ExprKind::Starred(_))) =>
                {
                    write_seq(out, elts);
                    if elts.len() == 1 {
                        out.push(',');
                    }
                }
                _ => write_expr(out, index, Prec::IfExp),
            }
            out.push(']');
        }
        ExprKind::Slice { lower, upper, step } => {
            if let Some(e) = lower {
                write_expr(out, e, Prec::IfExp);
            }
            out.push(':');
            if let Some(e) = upper {
                write_expr(out, e, Prec::IfExp);
            }
            if let Some(e) = step {
                out.push(':');
                write_expr(out, e, Prec::IfExp);
            }
        }
        ExprKind::Call { func, args } => {
            write_expr(out, func, Prec::Atom);
            out.push('(');
            for (i, arg) in args.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_arg(out, arg);
            }
            out.push(')');
        }
        ExprKind::List(elts) => {
            out.push('[');
            write_seq(out, elts);
            out.push(']');
        }
        ExprKind::Tuple { elts, .. } => {
            out.push('(');
            write_seq(out, elts);
            if elts.len() == 1 {
                out.push(',');
            }
            out.push(')');
        }
        ExprKind::Set(elts) => {
            out.push('{');
            write_seq(out, elts);
            out.push('}');
        }
        ExprKind::Dict(items) => {
            out.push('{');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                match item {
                    DictItem::Pair { key, value } => {
                        write_expr(out, key, Prec::IfExp);
                        out.push(':');
                        write_expr(out, value, Prec::Lambda);
                    }
                    DictItem::Spread(e) => {
                        out.push_str("**");
                        write_expr(out, e, Prec::BitOr);
                    }
                }
            }
            out.push('}');
        }
        ExprKind::BinOp { op, left, right } => {
            let prec = binop_prec(*op);
            // `**` is right-associative; everything else associates left.
            let (lmin, rmin) = if *op == BinOp::Pow {
                (Prec::Await, Prec::Unary)
            } else {
                (prec, next_prec(prec))
            };
            write_expr(out, left, lmin);
            out.push_str(op.symbol());
            write_expr(out, right, rmin);
        }
        ExprKind::UnaryOp { op, operand } => match op {
            UnaryOp::Not => {
                out.push_str("not ");
                write_expr(out, operand, Prec::Not);
            }
            UnaryOp::Neg | UnaryOp::Pos | UnaryOp::Invert => {
                out.push(match op {
                    UnaryOp::Neg => '-',
                    UnaryOp::Pos => '+',
                    _ => '~',
                });
                write_expr(out, operand, Prec::Unary);
            }
        },
        ExprKind::BoolOp { op, values } => {
            let (word, prec) = match op {
                BoolOp::And => (" and ", Prec::And),
                BoolOp::Or => (" or ", Prec::Or),
            };
            for (i, v) in values.iter().enumerate() {
                if i > 0 {
                    out.push_str(word);
                }
                write_expr(out, v, next_prec(prec));
            }
        }
        ExprKind::Compare {
            left,
            ops,
            comparators,
        } => {
            write_expr(out, left, Prec::BitOr);
            for (op, right) in ops.iter().zip(comparators) {
                let sym = op.symbol();
                if sym.chars().all(|c| c.is_ascii_alphabetic() || c == ' ') {
                    out.push(' ');
                    out.push_str(sym);
                    out.push(' ');
                } else {
                    out.push_str(sym);
                }
                write_expr(out, right, Prec::BitOr);
            }
        }
        ExprKind::IfExp { test, body, orelse } => {
            write_expr(out, body, Prec::Or);
            out.push_str(" if ");
            write_expr(out, test, Prec::Or);
            out.push_str(" else ");
            write_expr(out, orelse, Prec::IfExp);
        }
        ExprKind::Lambda { params, body } => {
            out.push_str("lambda");
            if !params.is_empty() {
                out.push(' ');
                write_params(out, params);
            }
            out.push(':');
            write_expr(out, body, Prec::Lambda);
        }
        ExprKind::Comprehension {
            kind,
            element,
            value,
            generators,
        } => {
            let (open, close) = match kind {
                ComprehensionKind::List => ('[', ']'),
                ComprehensionKind::Set | ComprehensionKind::Dict => ('{', '}'),
                ComprehensionKind::Generator => ('(', ')'),
            };
            out.push(open);
            write_expr(out, element, Prec::IfExp);
            if let Some(v) = value {
                out.push(':');
                write_expr(out, v, Prec::IfExp);
            }
            for g in generators {
                out.push_str(if g.is_async { " async for " } else { " for " });
                write_target(out, &g.target);
                out.push_str(" in ");
                write_expr(out, &g.iter, Prec::Or);
                for cond in &g.ifs {
                    out.push_str(" if ");
                    write_expr(out, cond, Prec::Or);
                }
            }
            out.push(close);
        }
        ExprKind::Starred(e) => {
            out.push('*');
            write_expr(out, e, Prec::BitOr);
        }
        ExprKind::Await(e) => {
            out.push_str("await ");
            write_expr(out, e, Prec::Atom);
        }
        ExprKind::Yield(e) => {
            out.push_str("(yield");
            if let Some(e) = e {
                out.push(' ');
                write_expr(out, e, Prec::Lowest);
            }
            out.push(')');
        }
        ExprKind::YieldFrom(e) => {
            out.push_str("(yield from ");
            write_expr(out, e, Prec::IfExp);
            out.push(')');
        }
        ExprKind::NamedExpr { target, value } => {
            out.push('(');
            out.push_str(&target.name);
            out.push_str(":=");
            write_expr(out, value, Prec::IfExp);
            out.push(')');
        }
    }
}

fn next_prec(p: Prec) -> Prec {
    match p {
        Prec::Lowest => Prec::Lambda,
        Prec::Lambda => Prec::IfExp,
        Prec::IfExp => Prec::Or,
        Prec::Or => Prec::And,
        Prec::And => Prec::Not,
        Prec::Not => Prec::Compare,
        Prec::Compare => Prec::BitOr,
        Prec::BitOr => Prec::BitXor,
        Prec::BitXor => Prec::BitAnd,
        Prec::BitAnd => Prec::Shift,
        Prec::Shift => Prec::Arith,
        Prec::Arith => Prec::Term,
        Prec::Term => Prec::Unary,
        Prec::Unary => Prec::Power,
        Prec::Power => Prec::Await,
        Prec::Await | Prec::Atom => Prec::Atom,
    }
}

/// Loop and comprehension targets: a bare tuple keeps no parentheses.
fn write_target(out: &mut String, target: &Expr) {
    match &target.kind {
        ExprKind::Tuple {
            elts,
            parenthesized: false,
        } => {
            write_seq(out, elts);
            if elts.len() == 1 {
                out.push(',');
            }
        }
        _ => write_expr(out, target, Prec::BitOr),
    }
}

fn write_arg(out: &mut String, arg: &Arg) {
    match arg {
        Arg::Positional(e) => write_expr(out, e, Prec::Lambda),
        Arg::Keyword { name, value } => {
            out.push_str(&name.name);
            out.push('=');
            write_expr(out, value, Prec::Lambda);
        }
        Arg::Starred(e) => {
            out.push('*');
            write_expr(out, e, Prec::BitOr);
        }
        Arg::DoubleStarred(e) => {
            out.push_str("**");
            write_expr(out, e, Prec::BitOr);
        }
    }
}

fn write_params(out: &mut String, params: &[Param]) {
    let mut first = true;
    let mut sep = |out: &mut String| {
        if !std::mem::take(&mut first) {
            out.push(',');
        }
    };
    let mut star_written = false;
    for (i, p) in params.iter().enumerate() {
        if p.kind == ParamKind::KeywordOnly && !star_written {
            sep(out);
            out.push('*');
            star_written = true;
        }
        sep(out);
        match p.kind {
            ParamKind::VarPositional => {
                out.push('*');
                star_written = true;
            }
            ParamKind::VarKeyword => out.push_str("**"),
            _ => {}
        }
        out.push_str(&p.name.name);
        if let Some(d) = &p.default {
            out.push('=');
            write_expr(out, d, Prec::IfExp);
        }
        let next_positional_only = params
            .get(i + 1)
            .is_some_and(|n| n.kind == ParamKind::PositionalOnly);
        if p.kind == ParamKind::PositionalOnly && !next_positional_only {
            sep(out);
            out.push('/');
        }
    }
}

fn write_constant(out: &mut String, c: &Constant) {
    match c {
        Constant::Int(digits) => out.push_str(digits),
        Constant::Float(text) => out.push_str(text),
        Constant::Imaginary(text) => {
            out.push_str(text);
            out.push('j');
        }
        Constant::Str(s) => out.push_str(&quote_str(s)),
        Constant::Bytes(b) => out.push_str(&quote_bytes(b)),
        Constant::Bool(true) => out.push_str("True"),
        Constant::Bool(false) => out.push_str("False"),
        Constant::None => out.push_str("None"),
        Constant::Ellipsis => out.push_str("..."),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::{parse_source, SourceFile, StmtKind};

    fn render(src: &str) -> String {
        let tree = parse_source(&SourceFile::new("t.py", src)).unwrap();
        match &tree.body[0].kind {
            StmtKind::Expr(e) => render_canonical(e),
            StmtKind::Assign { value, .. } => render_canonical(value),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn calls_drop_whitespace_and_normalize_quotes() {
        assert_eq!(
            render("execute(circuit, simulator, shots=1000)"),
            "execute(circuit,simulator,shots=1000)"
        );
        assert_eq!(
            render("Aer.get_backend('qasm_simulator')"),
            "Aer.get_backend(\"qasm_simulator\")"
        );
        assert_eq!(
            render("circuit.measure([0, 1, 2], [0, 1, 2])"),
            "circuit.measure([0,1,2],[0,1,2])"
        );
        assert_eq!(render("f(*a, **kw)"), "f(*a,**kw)");
        assert_eq!(render("'it\\'s \"x\"'"), r#""it's \"x\"""#);
    }

    #[test]
    fn containers_and_subscripts() {
        assert_eq!(render("{qreg[0]: 12, 'a': b}"), "{qreg[0]:12,\"a\":b}");
        assert_eq!(render("(1,)"), "(1,)");
        assert_eq!(render("x = 1, 2"), "(1,2)");
        assert_eq!(render("a[1:2, ::3]"), "a[1:2,::3]");
        assert_eq!(render("{1, 2}"), "{1,2}");
        assert_eq!(
            render("[k for k in range(3) if k]"),
            "[k for k in range(3) if k]"
        );
    }

    #[test]
    fn operators_keep_needed_parentheses_only() {
        assert_eq!(render("(a + b) * c"), "(a+b)*c");
        assert_eq!(render("a + (b * c)"), "a+b*c");
        assert_eq!(render("a - (b - c)"), "a-(b-c)");
        assert_eq!(render("(a ** b) ** c"), "(a**b)**c");
        assert_eq!(render("a ** b ** c"), "a**b**c");
        assert_eq!(render("-x ** 2"), "-x**2");
        assert_eq!(render("(-x) ** 2"), "(-x)**2");
        assert_eq!(render("not a and b"), "not a and b");
        assert_eq!(render("x if c else y"), "x if c else y");
        assert_eq!(render("a is not None"), "a is not None");
        assert_eq!(render("a <= b"), "a<=b");
        assert_eq!(render("lambda x, y=2: x"), "lambda x,y=2:x");
        assert_eq!(render("lambda a, /, b, *, c: a"), "lambda a,/,b,*,c:a");
        assert_eq!(render("lambda *a, c: a"), "lambda *a,c:a");
        assert_eq!(
            render("f(lambda: 1, k=lambda: 2)"),
            "f(lambda:1,k=lambda:2)"
        );
        assert_eq!(render("np.pi / 2"), "np.pi/2");
    }

    #[test]
    fn constants() {
        assert_eq!(render("3"), "3");
        assert_eq!(render("0x10"), "16");
        assert_eq!(render("1_000.5"), "1000.5");
        assert_eq!(render("None"), "None");
        assert_eq!(render("b'\\x00a'"), "b\"\\x00a\"");
    }
}

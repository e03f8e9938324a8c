//! Syntax tree for the supported Python 3 subset.
//!
//! Nodes own their children and carry byte spans. Constructs the analyzer has
//! no use for (async blocks, `match`) are kept as [`StmtKind::Opaque`] so that
//! extraction can count what it skipped.

use super::source::SourceSpan;

#[derive(Debug, Clone, PartialEq)]
pub struct SyntaxTree {
    pub body: Vec<Stmt>,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stmt {
    pub kind: StmtKind,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StmtKind {
    Expr(Expr),
    Assign {
        targets: Vec<Expr>,
        value: Expr,
    },
    AugAssign {
        target: Expr,
        op: BinOp,
        value: Expr,
    },
    AnnAssign {
        target: Expr,
        annotation: Expr,
        value: Option<Expr>,
    },
    FunctionDef(Box<FunctionDef>),
    ClassDef(Box<ClassDef>),
    For {
        target: Expr,
        iter: Expr,
        body: Vec<Stmt>,
        orelse: Vec<Stmt>,
    },
    While {
        test: Expr,
        body: Vec<Stmt>,
        orelse: Vec<Stmt>,
    },
    If {
        test: Expr,
        body: Vec<Stmt>,
        orelse: Vec<Stmt>,
    },
    With {
        items: Vec<WithItem>,
        body: Vec<Stmt>,
    },
    Try {
        body: Vec<Stmt>,
        handlers: Vec<ExceptHandler>,
        orelse: Vec<Stmt>,
        finalbody: Vec<Stmt>,
    },
    Import(Vec<Alias>),
    ImportFrom {
        module: Option<String>,
        level: usize,
        names: Vec<Alias>,
    },
    Return(Option<Expr>),
    Raise {
        exc: Option<Expr>,
        cause: Option<Expr>,
    },
    Assert {
        test: Expr,
        msg: Option<Expr>,
    },
    Delete(Vec<Expr>),
    Global(Vec<Identifier>),
    Nonlocal(Vec<Identifier>),
    Pass,
    Break,
    Continue,
    /// A parsed statement outside the supported node set.
    Opaque {
        kind: OpaqueKind,
        inner: Box<Stmt>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpaqueKind {
    AsyncFunction,
    AsyncFor,
    AsyncWith,
    Match,
}

impl OpaqueKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OpaqueKind::AsyncFunction => "async def",
            OpaqueKind::AsyncFor => "async for",
            OpaqueKind::AsyncWith => "async with",
            OpaqueKind::Match => "match",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Identifier {
    pub name: String,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FunctionDef {
    pub name: Identifier,
    pub decorators: Vec<Expr>,
    pub params: Vec<Param>,
    pub returns: Option<Expr>,
    pub body: Vec<Stmt>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassDef {
    pub name: Identifier,
    pub decorators: Vec<Expr>,
    pub bases: Vec<Arg>,
    pub body: Vec<Stmt>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    Normal,
    /// Before a `/` marker.
    PositionalOnly,
    /// After `*` or `*args`.
    KeywordOnly,
    /// `*args`
    VarPositional,
    /// `**kwargs`
    VarKeyword,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Param {
    pub name: Identifier,
    pub kind: ParamKind,
    pub annotation: Option<Expr>,
    pub default: Option<Expr>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WithItem {
    pub context: Expr,
    pub target: Option<Expr>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExceptHandler {
    pub kind: Option<Expr>,
    pub name: Option<Identifier>,
    pub body: Vec<Stmt>,
    pub span: SourceSpan,
}

/// `import a.b as c` / `from m import a as c`.
#[derive(Debug, Clone, PartialEq)]
pub struct Alias {
    pub name: String,
    pub asname: Option<Identifier>,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Name(String),
    Constant(Constant),
    /// f-string; the body is kept verbatim without interpreting the fields.
    FString(String),
    Attribute {
        value: Box<Expr>,
        attr: Identifier,
    },
    Subscript {
        value: Box<Expr>,
        index: Box<Expr>,
    },
    Slice {
        lower: Option<Box<Expr>>,
        upper: Option<Box<Expr>>,
        step: Option<Box<Expr>>,
    },
    Call {
        func: Box<Expr>,
        args: Vec<Arg>,
    },
    List(Vec<Expr>),
    Tuple {
        elts: Vec<Expr>,
        parenthesized: bool,
    },
    Set(Vec<Expr>),
    Dict(Vec<DictItem>),
    BinOp {
        op: BinOp,
        left: Box<Expr>,
        right: Box<Expr>,
    },
    UnaryOp {
        op: UnaryOp,
        operand: Box<Expr>,
    },
    BoolOp {
        op: BoolOp,
        values: Vec<Expr>,
    },
    Compare {
        left: Box<Expr>,
        ops: Vec<CmpOp>,
        comparators: Vec<Expr>,
    },
    IfExp {
        test: Box<Expr>,
        body: Box<Expr>,
        orelse: Box<Expr>,
    },
    Lambda {
        params: Vec<Param>,
        body: Box<Expr>,
    },
    Comprehension {
        kind: ComprehensionKind,
        element: Box<Expr>,
        /// Only for dict comprehensions.
        value: Option<Box<Expr>>,
        generators: Vec<Generator>,
    },
    Starred(Box<Expr>),
    Await(Box<Expr>),
    Yield(Option<Box<Expr>>),
    YieldFrom(Box<Expr>),
    NamedExpr {
        target: Identifier,
        value: Box<Expr>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Constant {
    /// Decimal digits of the value, sign excluded; kept as text so large
    /// literals survive.
    Int(String),
    /// Source text with underscores removed.
    Float(String),
    Imaginary(String),
    Str(String),
    Bytes(Vec<u8>),
    Bool(bool),
    None,
    Ellipsis,
}

impl Constant {
    pub fn as_int(&self) -> Option<i64> {
        match self {
            Constant::Int(digits) => digits.parse().ok(),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Arg {
    Positional(Expr),
    Keyword {
        name: Identifier,
        value: Expr,
    },
    /// `*expr`
    Starred(Expr),
    /// `**expr`
    DoubleStarred(Expr),
}

impl Arg {
    pub fn value(&self) -> &Expr {
        match self {
            Arg::Positional(e) | Arg::Starred(e) | Arg::DoubleStarred(e) => e,
            Arg::Keyword { value, .. } => value,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DictItem {
    Pair { key: Expr, value: Expr },
    Spread(Expr),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComprehensionKind {
    List,
    Set,
    Dict,
    Generator,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    pub target: Expr,
    pub iter: Expr,
    pub ifs: Vec<Expr>,
    pub is_async: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mult,
    MatMult,
    Div,
    FloorDiv,
    Mod,
    Pow,
    LShift,
    RShift,
    BitOr,
    BitXor,
    BitAnd,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mult => "*",
            BinOp::MatMult => "@",
            BinOp::Div => "/",
            BinOp::FloorDiv => "//",
            BinOp::Mod => "%",
            BinOp::Pow => "**",
            BinOp::LShift => "<<",
            BinOp::RShift => ">>",
            BinOp::BitOr => "|",
            BinOp::BitXor => "^",
            BinOp::BitAnd => "&",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Not,
    Neg,
    Pos,
    Invert,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolOp {
    And,
    Or,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmpOp {
    Eq,
    NotEq,
    Lt,
    LtE,
    Gt,
    GtE,
    Is,
    IsNot,
    In,
    NotIn,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Eq => "==",
            CmpOp::NotEq => "!=",
            CmpOp::Lt => "<",
            CmpOp::LtE => "<=",
            CmpOp::Gt => ">",
            CmpOp::GtE => ">=",
            CmpOp::Is => "is",
            CmpOp::IsNot => "is not",
            CmpOp::In => "in",
            CmpOp::NotIn => "not in",
        }
    }
}

impl Expr {
    pub fn new(kind: ExprKind, span: SourceSpan) -> Self {
        Self { kind, span }
    }

    pub fn as_name(&self) -> Option<&str> {
        match &self.kind {
            ExprKind::Name(n) => Some(n),
            _ => None,
        }
    }

    pub fn as_constant(&self) -> Option<&Constant> {
        match &self.kind {
            ExprKind::Constant(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_str_literal(&self) -> Option<&str> {
        match &self.kind {
            ExprKind::Constant(Constant::Str(s)) => Some(s),
            _ => None,
        }
    }

    /// Integer value of a literal, including a unary minus in front of one.
    pub fn as_int(&self) -> Option<i64> {
        match &self.kind {
            ExprKind::Constant(c) => c.as_int(),
            ExprKind::UnaryOp {
                op: UnaryOp::Neg,
                operand,
            } => operand.as_int().map(|v| -v),
            ExprKind::UnaryOp {
                op: UnaryOp::Pos,
                operand,
            } => operand.as_int(),
            _ => None,
        }
    }

    /// Dotted path for `a`, `a.b`, `a.b.c`; `None` if any segment is not a name.
    pub fn dotted_path(&self) -> Option<String> {
        match &self.kind {
            ExprKind::Name(n) => Some(n.clone()),
            ExprKind::Attribute { value, attr } => {
                let mut base = value.dotted_path()?;
                base.push('.');
                base.push_str(&attr.name);
                Some(base)
            }
            _ => None,
        }
    }

    /// Direct child expressions in source order.
    pub fn children(&self) -> Vec<&Expr> {
        let mut out = Vec::new();
        match &self.kind {
            ExprKind::Name(_) | ExprKind::Constant(_) | ExprKind::FString(_) => {}
            ExprKind::Attribute { value, .. } => out.push(value.as_ref()),
            ExprKind::Subscript { value, index } => {
                out.push(value.as_ref());
                out.push(index.as_ref());
            }
            ExprKind::Slice { lower, upper, step } => {
                out.extend(lower.as_deref());
                out.extend(upper.as_deref());
                out.extend(step.as_deref());
            }
            ExprKind::Call { func, args } => {
                out.push(func.as_ref());
                out.extend(args.iter().map(Arg::value));
            }
            ExprKind::List(elts) | ExprKind::Set(elts) | ExprKind::Tuple { elts, .. } => {
                out.extend(elts.iter())
            }
            ExprKind::Dict(items) => {
                for item in items {
                    match item {
                        DictItem::Pair { key, value } => {
                            out.push(key);
                            out.push(value);
                        }
                        DictItem::Spread(e) => out.push(e),
                    }
                }
            }
            ExprKind::BinOp { left, right, .. } => {
                out.push(left.as_ref());
                out.push(right.as_ref());
            }
            ExprKind::UnaryOp { operand, .. } => out.push(operand.as_ref()),
            ExprKind::BoolOp { values, .. } => out.extend(values.iter()),
            ExprKind::Compare {
                left, comparators, ..
            } => {
                out.push(left.as_ref());
                out.extend(comparators.iter());
            }
            ExprKind::IfExp { test, body, orelse } => {
                out.push(body.as_ref());
                out.push(test.as_ref());
                out.push(orelse.as_ref());
            }
            ExprKind::Lambda { params, body } => {
                for p in params {
                    out.extend(p.default.as_ref());
                }
                out.push(body.as_ref());
            }
            ExprKind::Comprehension {
                element,
                value,
                generators,
                ..
            } => {
                out.push(element.as_ref());
                out.extend(value.as_deref());
                for g in generators {
                    out.push(&g.target);
                    out.push(&g.iter);
                    out.extend(g.ifs.iter());
                }
            }
            ExprKind::Starred(e) | ExprKind::Await(e) | ExprKind::YieldFrom(e) => {
                out.push(e.as_ref())
            }
            ExprKind::Yield(e) => out.extend(e.as_deref()),
            ExprKind::NamedExpr { value, .. } => out.push(value.as_ref()),
        }
        out
    }

    /// Pre-order traversal over this expression and all descendants.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        f(self);
        for child in self.children() {
            child.walk(f);
        }
    }
}

impl Stmt {
    /// Expressions held directly by this statement (not by nested statements).
    pub fn expressions(&self) -> Vec<&Expr> {
        let mut out = Vec::new();
        match &self.kind {
            StmtKind::Expr(e) => out.push(e),
            StmtKind::Assign { targets, value } => {
                out.extend(targets.iter());
                out.push(value);
            }
            StmtKind::AugAssign { target, value, .. } => {
                out.push(target);
                out.push(value);
            }
            StmtKind::AnnAssign {
                target,
                annotation,
                value,
            } => {
                out.push(target);
                out.push(annotation);
                out.extend(value.as_ref());
            }
            StmtKind::FunctionDef(def) => {
                out.extend(def.decorators.iter());
                for p in &def.params {
                    out.extend(p.annotation.as_ref());
                    out.extend(p.default.as_ref());
                }
                out.extend(def.returns.as_ref());
            }
            StmtKind::ClassDef(def) => {
                out.extend(def.decorators.iter());
                out.extend(def.bases.iter().map(Arg::value));
            }
            StmtKind::For { target, iter, .. } => {
                out.push(target);
                out.push(iter);
            }
            StmtKind::While { test, .. } | StmtKind::If { test, .. } => out.push(test),
            StmtKind::With { items, .. } => {
                for item in items {
                    out.push(&item.context);
                    out.extend(item.target.as_ref());
                }
            }
            StmtKind::Try { handlers, .. } => {
                for h in handlers {
                    out.extend(h.kind.as_ref());
                }
            }
            StmtKind::Return(e) => out.extend(e.as_ref()),
            StmtKind::Raise { exc, cause } => {
                out.extend(exc.as_ref());
                out.extend(cause.as_ref());
            }
            StmtKind::Assert { test, msg } => {
                out.push(test);
                out.extend(msg.as_ref());
            }
            StmtKind::Delete(targets) => out.extend(targets.iter()),
            StmtKind::Import(_)
            | StmtKind::ImportFrom { .. }
            | StmtKind::Global(_)
            | StmtKind::Nonlocal(_)
            | StmtKind::Pass
            | StmtKind::Break
            | StmtKind::Continue
            | StmtKind::Opaque { .. } => {}
        }
        out
    }

    /// Nested statement blocks in source order.
    pub fn blocks(&self) -> Vec<&[Stmt]> {
        match &self.kind {
            StmtKind::FunctionDef(def) => vec![&def.body],
            StmtKind::ClassDef(def) => vec![&def.body],
            StmtKind::For { body, orelse, .. }
            | StmtKind::While { body, orelse, .. }
            | StmtKind::If { body, orelse, .. } => vec![body, orelse],
            StmtKind::With { body, .. } => vec![body],
            StmtKind::Try {
                body,
                handlers,
                orelse,
                finalbody,
            } => {
                let mut out: Vec<&[Stmt]> = vec![body];
                out.extend(handlers.iter().map(|h| h.body.as_slice()));
                out.push(orelse);
                out.push(finalbody);
                out
            }
            _ => Vec::new(),
        }
    }
}

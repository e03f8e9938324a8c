//! Recursive-descent parser over the token stream from [`super::lexer`].
//!
//! Follows the Python 3.8+ grammar closely enough to accept ordinary programs
//! and reject the usual syntax errors (bad indentation, stray operators,
//! invalid assignment targets, unclosed brackets).

use super::lexer::{is_keyword, Tok, Token};
use super::source::SourceSpan;
use super::tree::*;
use super::ParseError;

type PResult<T> = Result<T, ParseError>;

/// Parses a standalone expression (used for f-string fields).
pub fn parse_expression(tokens: Vec<Token>) -> PResult<Expr> {
    let mut p = Parser {
        tokens,
        pos: 0,
        in_pattern: false,
    };
    let e = p.star_expressions()?;
    match p.tok() {
        Tok::Newline | Tok::EndMarker => Ok(e),
        _ => Err(p.invalid()),
    }
}

pub fn parse_tokens(tokens: Vec<Token>, text_len: usize) -> PResult<SyntaxTree> {
    let mut p = Parser {
        tokens,
        pos: 0,
        in_pattern: false,
    };
    let mut body = Vec::new();
    loop {
        match p.tok() {
            Tok::EndMarker => break,
            Tok::Newline => p.pos += 1,
            Tok::Indent => return Err(p.error_here("unexpected indent")),
            Tok::Error(err) => return Err(err.clone()),
            _ => body.extend(p.statement()?),
        }
    }
    Ok(SyntaxTree {
        body,
        span: SourceSpan::new(0, text_len),
    })
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    /// Inside a `case` pattern, where `as NAME` may follow any sub-pattern.
    in_pattern: bool,
}

/// Lowest binary-operator level an operand may be parsed at.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Level {
    Test,
    BitOr,
}

impl Parser {
    // ---- token helpers ----

    fn tok(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn tok_at(&self, n: usize) -> &Tok {
        let i = (self.pos + n).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn span(&self) -> SourceSpan {
        self.tokens[self.pos].span
    }

    fn prev_end(&self) -> usize {
        if self.pos == 0 {
            0
        } else {
            self.tokens[self.pos - 1].span.end
        }
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn at_op(&self, op: &str) -> bool {
        matches!(self.tok(), Tok::Op(o) if *o == op)
    }

    fn at_kw(&self, kw: &str) -> bool {
        matches!(self.tok(), Tok::Name(n) if n == kw)
    }

    fn eat_op(&mut self, op: &str) -> bool {
        if self.at_op(op) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        if self.at_kw(kw) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn expect_op(&mut self, op: &str) -> PResult<Token> {
        if self.at_op(op) {
            Ok(self.advance())
        } else {
            Err(self.error_here(format!("expected '{op}'")))
        }
    }

    fn expect_kw(&mut self, kw: &str) -> PResult<Token> {
        if self.at_kw(kw) {
            Ok(self.advance())
        } else {
            Err(self.error_here(format!("expected '{kw}'")))
        }
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        if let Tok::Error(err) = self.tok() {
            return err.clone();
        }
        let message = message.into();
        let message = match self.tok() {
            Tok::Indent if message == "invalid syntax" => "unexpected indent".to_string(),
            _ => message,
        };
        ParseError {
            offset: self.span().start,
            message,
        }
    }

    fn invalid(&self) -> ParseError {
        self.error_here("invalid syntax")
    }

    fn identifier(&mut self) -> PResult<Identifier> {
        match self.tok().clone() {
            Tok::Name(n) if !is_keyword(&n) => {
                let t = self.advance();
                Ok(Identifier {
                    name: n,
                    span: t.span,
                })
            }
            _ => Err(self.invalid()),
        }
    }

    fn at_expression_start(&self) -> bool {
        match self.tok() {
            Tok::Name(n) => {
                !is_keyword(n)
                    || matches!(
                        n.as_str(),
                        "None" | "True" | "False" | "not" | "lambda" | "await" | "yield"
                    )
            }
            Tok::Int(_)
            | Tok::Float(_)
            | Tok::Imaginary(_)
            | Tok::Str(_)
            | Tok::Bytes(_)
            | Tok::FString(_) => true,
            Tok::Op(o) => matches!(*o, "(" | "[" | "{" | "-" | "+" | "~" | "..." | "*"),
            _ => false,
        }
    }

    // ---- statements ----

    fn statement(&mut self) -> PResult<Vec<Stmt>> {
        if let Tok::Name(kw) = self.tok().clone() {
            match kw.as_str() {
                "if" => return Ok(vec![self.if_stmt()?]),
                "while" => return Ok(vec![self.while_stmt()?]),
                "for" => return Ok(vec![self.for_stmt()?]),
                "try" => return Ok(vec![self.try_stmt()?]),
                "with" => return Ok(vec![self.with_stmt()?]),
                "def" => return Ok(vec![self.funcdef(Vec::new(), None)?]),
                "class" => return Ok(vec![self.classdef(Vec::new(), None)?]),
                "async" => return Ok(vec![self.async_stmt(Vec::new(), None)?]),
                "match" => {
                    let save = self.pos;
                    match self.match_stmt() {
                        Ok(Some(stmt)) => return Ok(vec![stmt]),
                        Ok(None) | Err(_) => self.pos = save,
                    }
                }
                _ => {}
            }
        }
        if self.at_op("@") {
            return Ok(vec![self.decorated()?]);
        }
        if matches!(self.tok(), Tok::Indent) {
            return Err(self.error_here("unexpected indent"));
        }
        self.simple_stmts()
    }

    fn simple_stmts(&mut self) -> PResult<Vec<Stmt>> {
        let mut out = vec![self.simple_stmt()?];
        while self.eat_op(";") {
            if matches!(self.tok(), Tok::Newline) {
                break;
            }
            out.push(self.simple_stmt()?);
        }
        match self.tok() {
            Tok::Newline => {
                self.advance();
                Ok(out)
            }
            Tok::EndMarker => Ok(out),
            _ => Err(self.invalid()),
        }
    }

    fn simple_stmt(&mut self) -> PResult<Stmt> {
        let start = self.span().start;
        let kind = if let Tok::Name(kw) = self.tok().clone() {
            match kw.as_str() {
                "pass" => {
                    self.advance();
                    Some(StmtKind::Pass)
                }
                "break" => {
                    self.advance();
                    Some(StmtKind::Break)
                }
                "continue" => {
                    self.advance();
                    Some(StmtKind::Continue)
                }
                "return" => {
                    self.advance();
                    let value = if self.at_expression_start() {
                        Some(self.star_expressions()?)
                    } else {
                        None
                    };
                    Some(StmtKind::Return(value))
                }
                "raise" => {
                    self.advance();
                    let (mut exc, mut cause) = (None, None);
                    if self.at_expression_start() {
                        exc = Some(self.test()?);
                        if self.eat_kw("from") {
                            cause = Some(self.test()?);
                        }
                    }
                    Some(StmtKind::Raise { exc, cause })
                }
                "global" | "nonlocal" => {
                    self.advance();
                    let mut names = vec![self.identifier()?];
                    while self.eat_op(",") {
                        names.push(self.identifier()?);
                    }
                    Some(if kw == "global" {
                        StmtKind::Global(names)
                    } else {
                        StmtKind::Nonlocal(names)
                    })
                }
                "del" => {
                    self.advance();
                    let targets = self.expr_list(Level::BitOr)?;
                    for t in &targets {
                        validate_target(t, TargetCtx::Delete)?;
                    }
                    Some(StmtKind::Delete(targets))
                }
                "assert" => {
                    self.advance();
                    let test = self.test()?;
                    let msg = if self.eat_op(",") {
                        Some(self.test()?)
                    } else {
                        None
                    };
                    Some(StmtKind::Assert { test, msg })
                }
                "import" => Some(self.import_stmt()?),
                "from" => Some(self.import_from()?),
                _ => None,
            }
        } else {
            None
        };
        let kind = match kind {
            Some(k) => k,
            None => self.expr_stmt()?,
        };
        Ok(Stmt {
            kind,
            span: SourceSpan::new(start, self.prev_end()),
        })
    }

    fn expr_stmt(&mut self) -> PResult<StmtKind> {
        let first = if self.at_kw("yield") {
            self.yield_expr()?
        } else {
            self.star_expressions()?
        };
        if self.at_op("=") {
            let mut exprs = vec![first];
            while self.eat_op("=") {
                let next = if self.at_kw("yield") {
                    self.yield_expr()?
                } else {
                    self.star_expressions()?
                };
                exprs.push(next);
            }
            let value = exprs.pop().unwrap();
            for t in &exprs {
                validate_target(t, TargetCtx::Assign)?;
            }
            return Ok(StmtKind::Assign {
                targets: exprs,
                value,
            });
        }
        if let Tok::Op(op) = self.tok() {
            if let Some(bin) = aug_op(op) {
                match &first.kind {
                    ExprKind::Name(_) | ExprKind::Attribute { .. } | ExprKind::Subscript { .. } => {
                    }
                    _ => {
                        return Err(ParseError {
                            offset: first.span.start,
                            message: format!(
                                "'{}' is an illegal expression for augmented assignment",
                                describe(&first)
                            ),
                        })
                    }
                }
                self.advance();
                let value = if self.at_kw("yield") {
                    self.yield_expr()?
                } else {
                    self.star_expressions()?
                };
                return Ok(StmtKind::AugAssign {
                    target: first,
                    op: bin,
                    value,
                });
            }
        }
        if self.at_op(":") {
            match &first.kind {
                ExprKind::Name(_) | ExprKind::Attribute { .. } | ExprKind::Subscript { .. } => {}
                _ => {
                    return Err(ParseError {
                        offset: first.span.start,
                        message: "only single target (not tuple) can be annotated".into(),
                    })
                }
            }
            self.advance();
            let annotation = self.test()?;
            let value = if self.eat_op("=") {
                Some(if self.at_kw("yield") {
                    self.yield_expr()?
                } else {
                    self.star_expressions()?
                })
            } else {
                None
            };
            return Ok(StmtKind::AnnAssign {
                target: first,
                annotation,
                value,
            });
        }
        Ok(StmtKind::Expr(first))
    }

    fn dotted_name(&mut self) -> PResult<(String, SourceSpan)> {
        let first = self.identifier()?;
        let mut name = first.name;
        let mut span = first.span;
        while self.at_op(".") {
            self.advance();
            let part = self.identifier()?;
            name.push('.');
            name.push_str(&part.name);
            span = span.cover(part.span);
        }
        Ok((name, span))
    }

    fn import_stmt(&mut self) -> PResult<StmtKind> {
        self.expect_kw("import")?;
        let mut names = Vec::new();
        loop {
            let (name, mut span) = self.dotted_name()?;
            let asname = if self.eat_kw("as") {
                let id = self.identifier()?;
                span = span.cover(id.span);
                Some(id)
            } else {
                None
            };
            names.push(Alias { name, asname, span });
            if !self.eat_op(",") {
                break;
            }
        }
        Ok(StmtKind::Import(names))
    }

    fn import_from(&mut self) -> PResult<StmtKind> {
        self.expect_kw("from")?;
        let mut level = 0;
        loop {
            if self.eat_op(".") {
                level += 1;
            } else if self.eat_op("...") {
                level += 3;
            } else {
                break;
            }
        }
        let module = if self.at_kw("import") {
            if level == 0 {
                return Err(self.invalid());
            }
            None
        } else {
            Some(self.dotted_name()?.0)
        };
        self.expect_kw("import")?;
        let mut names = Vec::new();
        if self.at_op("*") {
            let t = self.advance();
            names.push(Alias {
                name: "*".into(),
                asname: None,
                span: t.span,
            });
            return Ok(StmtKind::ImportFrom {
                module,
                level,
                names,
            });
        }
        let parenthesized = self.eat_op("(");
        loop {
            let id = self.identifier()?;
            let mut span = id.span;
            let asname = if self.eat_kw("as") {
                let a = self.identifier()?;
                span = span.cover(a.span);
                Some(a)
            } else {
                None
            };
            names.push(Alias {
                name: id.name,
                asname,
                span,
            });
            if !self.eat_op(",") {
                break;
            }
            if parenthesized && self.at_op(")") {
                break;
            }
        }
        if parenthesized {
            self.expect_op(")")?;
        }
        Ok(StmtKind::ImportFrom {
            module,
            level,
            names,
        })
    }

    /// Parses `':' block` after a compound-statement header.
    fn block(&mut self, header: &str) -> PResult<Vec<Stmt>> {
        self.expect_op(":")?;
        if !matches!(self.tok(), Tok::Newline) {
            return self.simple_stmts();
        }
        self.advance();
        if !matches!(self.tok(), Tok::Indent) {
            return Err(self.error_here(format!(
                "expected an indented block after '{header}' statement"
            )));
        }
        self.advance();
        let mut body = Vec::new();
        loop {
            match self.tok() {
                Tok::Dedent => {
                    self.advance();
                    break;
                }
                Tok::EndMarker => break,
                Tok::Newline => {
                    self.advance();
                }
                _ => body.extend(self.statement()?),
            }
        }
        Ok(body)
    }

    fn if_stmt(&mut self) -> PResult<Stmt> {
        let start = self.advance().span.start;
        let test = self.named_expr()?;
        let body = self.block("if")?;
        let orelse = if self.at_kw("elif") {
            vec![self.if_stmt()?]
        } else if self.eat_kw("else") {
            self.block("else")?
        } else {
            Vec::new()
        };
        Ok(Stmt {
            kind: StmtKind::If { test, body, orelse },
            span: SourceSpan::new(start, self.prev_end()),
        })
    }

    fn while_stmt(&mut self) -> PResult<Stmt> {
        let start = self.advance().span.start;
        let test = self.named_expr()?;
        let body = self.block("while")?;
        let orelse = if self.eat_kw("else") {
            self.block("else")?
        } else {
            Vec::new()
        };
        Ok(Stmt {
            kind: StmtKind::While { test, body, orelse },
            span: SourceSpan::new(start, self.prev_end()),
        })
    }

    fn for_stmt(&mut self) -> PResult<Stmt> {
        let start = self.advance().span.start;
        let target = self.target_list()?;
        self.expect_kw("in")?;
        let iter = self.star_expressions()?;
        let body = self.block("for")?;
        let orelse = if self.eat_kw("else") {
            self.block("else")?
        } else {
            Vec::new()
        };
        Ok(Stmt {
            kind: StmtKind::For {
                target,
                iter,
                body,
                orelse,
            },
            span: SourceSpan::new(start, self.prev_end()),
        })
    }

    /// `for` / comprehension targets: expressions at bitwise-or level so that
    /// the following `in` is not taken as a comparison.
    fn target_list(&mut self) -> PResult<Expr> {
        let start = self.span().start;
        let mut elts = self.expr_list(Level::BitOr)?;
        let target = if elts.len() == 1 && !self.trailing_comma_before() {
            elts.pop().unwrap()
        } else {
            Expr::new(
                ExprKind::Tuple {
                    elts,
                    parenthesized: false,
                },
                SourceSpan::new(start, self.prev_end()),
            )
        };
        validate_target(&target, TargetCtx::Assign)?;
        Ok(target)
    }

    fn trailing_comma_before(&self) -> bool {
        self.pos > 0 && matches!(self.tokens[self.pos - 1].tok, Tok::Op(","))
    }

    fn try_stmt(&mut self) -> PResult<Stmt> {
        let start = self.advance().span.start;
        let body = self.block("try")?;
        let mut handlers = Vec::new();
        while self.at_kw("except") {
            let h_start = self.advance().span.start;
            let mut kind = None;
            let mut name = None;
            if !self.at_op(":") {
                kind = Some(self.test()?);
                if self.eat_op(",") {
                    // `except A, B:` is Python 2 syntax
                    return Err(ParseError {
                        offset: self.prev_end() - 1,
                        message: "multiple exception types must be parenthesized".into(),
                    });
                }
                if self.eat_kw("as") {
                    name = Some(self.identifier()?);
                }
            }
            let h_body = self.block("except")?;
            handlers.push(ExceptHandler {
                kind,
                name,
                body: h_body,
                span: SourceSpan::new(h_start, self.prev_end()),
            });
        }
        let orelse = if !handlers.is_empty() && self.eat_kw("else") {
            self.block("else")?
        } else {
            Vec::new()
        };
        let finalbody = if self.eat_kw("finally") {
            self.block("finally")?
        } else {
            Vec::new()
        };
        if handlers.is_empty() && finalbody.is_empty() {
            return Err(self.error_here("expected 'except' or 'finally' block"));
        }
        Ok(Stmt {
            kind: StmtKind::Try {
                body,
                handlers,
                orelse,
                finalbody,
            },
            span: SourceSpan::new(start, self.prev_end()),
        })
    }

    fn with_stmt(&mut self) -> PResult<Stmt> {
        let start = self.advance().span.start;
        let mut items = Vec::new();
        // Parenthesized item lists: `with (a as b, c):`
        let save = self.pos;
        if self.at_op("(") {
            self.advance();
            match self.with_items(true) {
                Ok(list) if self.at_op(")") && matches!(self.tok_at(1), Tok::Op(":")) => {
                    self.advance();
                    items = list;
                }
                _ => self.pos = save,
            }
        }
        if items.is_empty() {
            items = self.with_items(false)?;
        }
        let body = self.block("with")?;
        Ok(Stmt {
            kind: StmtKind::With { items, body },
            span: SourceSpan::new(start, self.prev_end()),
        })
    }

    fn with_items(&mut self, allow_trailing: bool) -> PResult<Vec<WithItem>> {
        let mut items = Vec::new();
        loop {
            let context = self.test()?;
            let target = if self.eat_kw("as") {
                let t = self.star_target()?;
                validate_target(&t, TargetCtx::Assign)?;
                Some(t)
            } else {
                None
            };
            items.push(WithItem { context, target });
            if !self.eat_op(",") {
                break;
            }
            if allow_trailing && self.at_op(")") {
                break;
            }
        }
        Ok(items)
    }

    fn star_target(&mut self) -> PResult<Expr> {
        if self.at_op("*") {
            let start = self.advance().span.start;
            let inner = self.bitor()?;
            return Ok(Expr::new(
                ExprKind::Starred(Box::new(inner)),
                SourceSpan::new(start, self.prev_end()),
            ));
        }
        self.bitor()
    }

    fn decorated(&mut self) -> PResult<Stmt> {
        let start = self.span().start;
        let mut decorators = Vec::new();
        while self.eat_op("@") {
            decorators.push(self.named_expr()?);
            if !matches!(self.tok(), Tok::Newline) {
                return Err(self.invalid());
            }
            self.advance();
        }
        if self.at_kw("def") {
            self.funcdef(decorators, Some(start))
        } else if self.at_kw("class") {
            self.classdef(decorators, Some(start))
        } else if self.at_kw("async") {
            self.async_stmt(decorators, Some(start))
        } else {
            Err(self.invalid())
        }
    }

    fn async_stmt(&mut self, decorators: Vec<Expr>, start: Option<usize>) -> PResult<Stmt> {
        let kw_start = self.advance().span.start;
        let start = start.unwrap_or(kw_start);
        let (kind, inner) = if self.at_kw("def") {
            (OpaqueKind::AsyncFunction, self.funcdef(decorators, None)?)
        } else if !decorators.is_empty() {
            return Err(self.invalid());
        } else if self.at_kw("for") {
            (OpaqueKind::AsyncFor, self.for_stmt()?)
        } else if self.at_kw("with") {
            (OpaqueKind::AsyncWith, self.with_stmt()?)
        } else {
            return Err(self.invalid());
        };
        Ok(Stmt {
            kind: StmtKind::Opaque {
                kind,
                inner: Box::new(inner),
            },
            span: SourceSpan::new(start, self.prev_end()),
        })
    }

    fn funcdef(&mut self, decorators: Vec<Expr>, start: Option<usize>) -> PResult<Stmt> {
        let def_start = self.expect_kw("def")?.span.start;
        let start = start.unwrap_or(def_start);
        let name = self.identifier()?;
        self.expect_op("(")?;
        let params = self.params(")", true)?;
        self.expect_op(")")?;
        let returns = if self.eat_op("->") {
            Some(self.test()?)
        } else {
            None
        };
        let body = self.block("def")?;
        Ok(Stmt {
            kind: StmtKind::FunctionDef(Box::new(FunctionDef {
                name,
                decorators,
                params,
                returns,
                body,
            })),
            span: SourceSpan::new(start, self.prev_end()),
        })
    }

    fn classdef(&mut self, decorators: Vec<Expr>, start: Option<usize>) -> PResult<Stmt> {
        let class_start = self.expect_kw("class")?.span.start;
        let start = start.unwrap_or(class_start);
        let name = self.identifier()?;
        let bases = if self.eat_op("(") {
            let args = self.arglist()?;
            self.expect_op(")")?;
            args
        } else {
            Vec::new()
        };
        let body = self.block("class")?;
        Ok(Stmt {
            kind: StmtKind::ClassDef(Box::new(ClassDef {
                name,
                decorators,
                bases,
                body,
            })),
            span: SourceSpan::new(start, self.prev_end()),
        })
    }

    /// Parameter list up to (not including) `close`.
    fn params(&mut self, close: &str, annotations: bool) -> PResult<Vec<Param>> {
        let mut params: Vec<Param> = Vec::new();
        let mut seen_default = false;
        let mut seen_star = false;
        while !self.at_op(close) {
            if self.eat_op("/") {
                if params.is_empty() || seen_star {
                    return Err(self.invalid());
                }
                for p in &mut params {
                    p.kind = ParamKind::PositionalOnly;
                }
            } else if self.at_op("**") {
                self.advance();
                let name = self.identifier()?;
                let annotation = self.annotation(annotations)?;
                params.push(Param {
                    name,
                    kind: ParamKind::VarKeyword,
                    annotation,
                    default: None,
                });
            } else if self.at_op("*") {
                self.advance();
                seen_star = true;
                if self.at_op(",") || self.at_op(close) {
                    // bare `*` marks keyword-only parameters
                } else {
                    let name = self.identifier()?;
                    let annotation = self.annotation(annotations)?;
                    params.push(Param {
                        name,
                        kind: ParamKind::VarPositional,
                        annotation,
                        default: None,
                    });
                }
            } else {
                let name = self.identifier()?;
                let annotation = self.annotation(annotations)?;
                let default = if self.eat_op("=") {
                    if !seen_star {
                        seen_default = true;
                    }
                    Some(self.test()?)
                } else {
                    if seen_default && !seen_star {
                        return Err(ParseError {
                            offset: name.span.start,
                            message: "non-default argument follows default argument".into(),
                        });
                    }
                    None
                };
                params.push(Param {
                    name,
                    kind: if seen_star {
                        ParamKind::KeywordOnly
                    } else {
                        ParamKind::Normal
                    },
                    annotation,
                    default,
                });
            }
            if !self.eat_op(",") {
                break;
            }
        }
        Ok(params)
    }

    fn annotation(&mut self, allowed: bool) -> PResult<Option<Expr>> {
        if allowed && self.eat_op(":") {
            Ok(Some(self.test()?))
        } else {
            Ok(None)
        }
    }

    /// `match` statement; `Ok(None)` means the line is not a match statement.
    fn match_stmt(&mut self) -> PResult<Option<Stmt>> {
        let start = self.advance().span.start;
        if !self.at_expression_start() {
            return Ok(None);
        }
        let subject = self.star_expressions()?;
        if !self.at_op(":") || !matches!(self.tok_at(1), Tok::Newline) {
            return Ok(None);
        }
        self.advance();
        self.advance();
        if !matches!(self.tok(), Tok::Indent) {
            return Ok(None);
        }
        self.advance();
        let mut cases = Vec::new();
        while self.at_kw("case") {
            let case_start = self.advance().span.start;
            self.in_pattern = true;
            let pattern = self.pattern();
            self.in_pattern = false;
            let pattern = pattern?;
            let guard = if self.eat_kw("if") {
                Some(self.named_expr()?)
            } else {
                None
            };
            let body = self.block("case")?;
            let test = match guard {
                Some(g) => {
                    let span = pattern.span.cover(g.span);
                    Expr::new(
                        ExprKind::BoolOp {
                            op: BoolOp::And,
                            values: vec![pattern, g],
                        },
                        span,
                    )
                }
                None => pattern,
            };
            cases.push(Stmt {
                kind: StmtKind::If {
                    test,
                    body,
                    orelse: Vec::new(),
                },
                span: SourceSpan::new(case_start, self.prev_end()),
            });
        }
        if cases.is_empty() || !matches!(self.tok(), Tok::Dedent) {
            return Err(self.invalid());
        }
        self.advance();
        let span = SourceSpan::new(start, self.prev_end());
        // Kept as `if subject: <cases>` inside the opaque wrapper.
        let inner = Stmt {
            kind: StmtKind::If {
                test: subject,
                body: cases,
                orelse: Vec::new(),
            },
            span,
        };
        Ok(Some(Stmt {
            kind: StmtKind::Opaque {
                kind: OpaqueKind::Match,
                inner: Box::new(inner),
            },
            span,
        }))
    }

    /// Case patterns are parsed as expressions with an optional `as NAME`.
    fn pattern(&mut self) -> PResult<Expr> {
        let start = self.span().start;
        let mut elts = Vec::new();
        loop {
            let item = self.star_target()?;
            let item = if self.eat_kw("as") {
                let id = self.identifier()?;
                let span = item.span.cover(id.span);
                Expr::new(
                    ExprKind::NamedExpr {
                        target: id,
                        value: Box::new(item),
                    },
                    span,
                )
            } else {
                item
            };
            elts.push(item);
            if !self.eat_op(",") || self.at_op(":") || self.at_kw("if") {
                break;
            }
        }
        if elts.len() == 1 && !self.trailing_comma_before() {
            return Ok(elts.pop().unwrap());
        }
        Ok(Expr::new(
            ExprKind::Tuple {
                elts,
                parenthesized: false,
            },
            SourceSpan::new(start, self.prev_end()),
        ))
    }

    // ---- expressions ----

    /// Comma-separated expressions at the given level, no trailing tuple
    /// wrapping. Stops before a trailing comma's follower if it cannot start
    /// an expression.
    fn expr_list(&mut self, level: Level) -> PResult<Vec<Expr>> {
        let mut out = vec![self.star_or(level)?];
        while self.at_op(",") {
            self.advance();
            if !self.at_expression_start() {
                break;
            }
            out.push(self.star_or(level)?);
        }
        Ok(out)
    }

    fn star_or(&mut self, level: Level) -> PResult<Expr> {
        if self.at_op("*") {
            let start = self.advance().span.start;
            let inner = self.bitor()?;
            return Ok(Expr::new(
                ExprKind::Starred(Box::new(inner)),
                SourceSpan::new(start, self.prev_end()),
            ));
        }
        match level {
            Level::Test => self.named_expr(),
            Level::BitOr => self.bitor(),
        }
    }

    /// Expression list that becomes an unparenthesized tuple when it has a
    /// comma.
    fn star_expressions(&mut self) -> PResult<Expr> {
        let start = self.span().start;
        let mut elts = self.expr_list(Level::Test)?;
        if elts.len() == 1 && !self.trailing_comma_before() {
            return Ok(elts.pop().unwrap());
        }
        Ok(Expr::new(
            ExprKind::Tuple {
                elts,
                parenthesized: false,
            },
            SourceSpan::new(start, self.prev_end()),
        ))
    }

    fn yield_expr(&mut self) -> PResult<Expr> {
        let start = self.expect_kw("yield")?.span.start;
        if self.eat_kw("from") {
            let value = self.test()?;
            return Ok(Expr::new(
                ExprKind::YieldFrom(Box::new(value)),
                SourceSpan::new(start, self.prev_end()),
            ));
        }
        let value = if self.at_expression_start() {
            Some(Box::new(self.star_expressions()?))
        } else {
            None
        };
        Ok(Expr::new(
            ExprKind::Yield(value),
            SourceSpan::new(start, self.prev_end()),
        ))
    }

    fn named_expr(&mut self) -> PResult<Expr> {
        if let Tok::Name(n) = self.tok() {
            if !is_keyword(n) && matches!(self.tok_at(1), Tok::Op(":=")) {
                let target = self.identifier()?;
                self.advance();
                let value = self.test()?;
                let span = target.span.cover(value.span);
                return Ok(Expr::new(
                    ExprKind::NamedExpr {
                        target,
                        value: Box::new(value),
                    },
                    span,
                ));
            }
        }
        self.test()
    }

    fn test(&mut self) -> PResult<Expr> {
        let expr = self.test_inner()?;
        if self.in_pattern && self.at_kw("as") {
            self.advance();
            let target = self.identifier()?;
            let span = expr.span.cover(target.span);
            return Ok(Expr::new(
                ExprKind::NamedExpr {
                    target,
                    value: Box::new(expr),
                },
                span,
            ));
        }
        Ok(expr)
    }

    fn test_inner(&mut self) -> PResult<Expr> {
        if self.at_kw("lambda") {
            return self.lambda();
        }
        let body = self.or_test()?;
        if self.at_kw("if") {
            self.advance();
            let test = self.or_test()?;
            self.expect_kw("else")?;
            let orelse = self.test()?;
            let span = body.span.cover(orelse.span);
            return Ok(Expr::new(
                ExprKind::IfExp {
                    test: Box::new(test),
                    body: Box::new(body),
                    orelse: Box::new(orelse),
                },
                span,
            ));
        }
        Ok(body)
    }

    fn lambda(&mut self) -> PResult<Expr> {
        let start = self.expect_kw("lambda")?.span.start;
        let params = self.params(":", false)?;
        self.expect_op(":")?;
        let body = self.test()?;
        Ok(Expr::new(
            ExprKind::Lambda {
                params,
                body: Box::new(body),
            },
            SourceSpan::new(start, self.prev_end()),
        ))
    }

    fn or_test(&mut self) -> PResult<Expr> {
        self.bool_chain("or", BoolOp::Or, Self::and_test)
    }

    fn and_test(&mut self) -> PResult<Expr> {
        self.bool_chain("and", BoolOp::And, Self::not_test)
    }

    fn bool_chain(
        &mut self,
        kw: &str,
        op: BoolOp,
        next: fn(&mut Self) -> PResult<Expr>,
    ) -> PResult<Expr> {
        let first = next(self)?;
        if !self.at_kw(kw) {
            return Ok(first);
        }
        let mut values = vec![first];
        while self.eat_kw(kw) {
            values.push(next(self)?);
        }
        let span = values[0].span.cover(values.last().unwrap().span);
        Ok(Expr::new(ExprKind::BoolOp { op, values }, span))
    }

    fn not_test(&mut self) -> PResult<Expr> {
        if self.at_kw("not") {
            let start = self.advance().span.start;
            let operand = self.not_test()?;
            return Ok(Expr::new(
                ExprKind::UnaryOp {
                    op: UnaryOp::Not,
                    operand: Box::new(operand),
                },
                SourceSpan::new(start, self.prev_end()),
            ));
        }
        self.comparison()
    }

    fn comp_op(&mut self) -> Option<CmpOp> {
        let op = match self.tok() {
            Tok::Op("==") => CmpOp::Eq,
            Tok::Op("!=") => CmpOp::NotEq,
            Tok::Op("<") => CmpOp::Lt,
            Tok::Op("<=") => CmpOp::LtE,
            Tok::Op(">") => CmpOp::Gt,
            Tok::Op(">=") => CmpOp::GtE,
            Tok::Name(n) if n == "in" => CmpOp::In,
            Tok::Name(n) if n == "is" => {
                if matches!(self.tok_at(1), Tok::Name(m) if m == "not") {
                    self.advance();
                    CmpOp::IsNot
                } else {
                    CmpOp::Is
                }
            }
            Tok::Name(n) if n == "not" && matches!(self.tok_at(1), Tok::Name(m) if m == "in") => {
                self.advance();
                CmpOp::NotIn
            }
            _ => return None,
        };
        self.advance();
        Some(op)
    }

    fn comparison(&mut self) -> PResult<Expr> {
        let left = self.bitor()?;
        let mut ops = Vec::new();
        let mut comparators = Vec::new();
        while let Some(op) = self.comp_op() {
            ops.push(op);
            comparators.push(self.bitor()?);
        }
        if ops.is_empty() {
            return Ok(left);
        }
        let span = left.span.cover(comparators.last().unwrap().span);
        Ok(Expr::new(
            ExprKind::Compare {
                left: Box::new(left),
                ops,
                comparators,
            },
            span,
        ))
    }

    fn binary_level(
        &mut self,
        table: &[(&str, BinOp)],
        next: fn(&mut Self) -> PResult<Expr>,
    ) -> PResult<Expr> {
        let mut left = next(self)?;
        loop {
            let op = match self.tok() {
                Tok::Op(o) => table.iter().find(|(s, _)| s == o).map(|(_, b)| *b),
                _ => None,
            };
            let Some(op) = op else { break };
            self.advance();
            let right = next(self)?;
            let span = left.span.cover(right.span);
            left = Expr::new(
                ExprKind::BinOp {
                    op,
                    left: Box::new(left),
                    right: Box::new(right),
                },
                span,
            );
        }
        Ok(left)
    }

    fn bitor(&mut self) -> PResult<Expr> {
        self.binary_level(&[("|", BinOp::BitOr)], Self::bitxor)
    }

    fn bitxor(&mut self) -> PResult<Expr> {
        self.binary_level(&[("^", BinOp::BitXor)], Self::bitand)
    }

    fn bitand(&mut self) -> PResult<Expr> {
        self.binary_level(&[("&", BinOp::BitAnd)], Self::shift)
    }

    fn shift(&mut self) -> PResult<Expr> {
        self.binary_level(&[("<<", BinOp::LShift), (">>", BinOp::RShift)], Self::arith)
    }

    fn arith(&mut self) -> PResult<Expr> {
        self.binary_level(&[("+", BinOp::Add), ("-", BinOp::Sub)], Self::term)
    }

    fn term(&mut self) -> PResult<Expr> {
        self.binary_level(
            &[
                ("*", BinOp::Mult),
                ("/", BinOp::Div),
                ("//", BinOp::FloorDiv),
                ("%", BinOp::Mod),
                ("@", BinOp::MatMult),
            ],
            Self::factor,
        )
    }

    fn factor(&mut self) -> PResult<Expr> {
        let op = match self.tok() {
            Tok::Op("-") => Some(UnaryOp::Neg),
            Tok::Op("+") => Some(UnaryOp::Pos),
            Tok::Op("~") => Some(UnaryOp::Invert),
            _ => None,
        };
        if let Some(op) = op {
            let start = self.advance().span.start;
            let operand = self.factor()?;
            return Ok(Expr::new(
                ExprKind::UnaryOp {
                    op,
                    operand: Box::new(operand),
                },
                SourceSpan::new(start, self.prev_end()),
            ));
        }
        self.power()
    }

    fn power(&mut self) -> PResult<Expr> {
        let base = if self.at_kw("await") {
            let start = self.advance().span.start;
            let inner = self.primary()?;
            Expr::new(
                ExprKind::Await(Box::new(inner)),
                SourceSpan::new(start, self.prev_end()),
            )
        } else {
            self.primary()?
        };
        if self.eat_op("**") {
            let exponent = self.factor()?;
            let span = base.span.cover(exponent.span);
            return Ok(Expr::new(
                ExprKind::BinOp {
                    op: BinOp::Pow,
                    left: Box::new(base),
                    right: Box::new(exponent),
                },
                span,
            ));
        }
        Ok(base)
    }

    fn primary(&mut self) -> PResult<Expr> {
        let mut expr = self.atom()?;
        loop {
            if self.at_op("(") {
                self.advance();
                let args = self.arglist()?;
                self.expect_op(")")?;
                let span = SourceSpan::new(expr.span.start, self.prev_end());
                expr = Expr::new(
                    ExprKind::Call {
                        func: Box::new(expr),
                        args,
                    },
                    span,
                );
            } else if self.at_op("[") {
                self.advance();
                let index = self.subscript_list()?;
                self.expect_op("]")?;
                let span = SourceSpan::new(expr.span.start, self.prev_end());
                expr = Expr::new(
                    ExprKind::Subscript {
                        value: Box::new(expr),
                        index: Box::new(index),
                    },
                    span,
                );
            } else if self.at_op(".") {
                self.advance();
                let attr = self.identifier()?;
                let span = expr.span.cover(attr.span);
                expr = Expr::new(
                    ExprKind::Attribute {
                        value: Box::new(expr),
                        attr,
                    },
                    span,
                );
            } else {
                break;
            }
        }
        Ok(expr)
    }

    fn arglist(&mut self) -> PResult<Vec<Arg>> {
        let mut args = Vec::new();
        let mut seen_keyword = false;
        while !self.at_op(")") {
            if self.at_op("**") {
                self.advance();
                args.push(Arg::DoubleStarred(self.test()?));
                seen_keyword = true;
            } else if self.at_op("*") {
                self.advance();
                args.push(Arg::Starred(self.test()?));
            } else if matches!(self.tok(), Tok::Name(n) if !is_keyword(n))
                && matches!(self.tok_at(1), Tok::Op("="))
            {
                let name = self.identifier()?;
                self.advance();
                let value = self.test()?;
                args.push(Arg::Keyword { name, value });
                seen_keyword = true;
            } else {
                let value = self.named_expr()?;
                if self.at_kw("for") || self.at_kw("async") {
                    let generators = self.comp_for()?;
                    let span = SourceSpan::new(value.span.start, self.prev_end());
                    let genexp = Expr::new(
                        ExprKind::Comprehension {
                            kind: ComprehensionKind::Generator,
                            element: Box::new(value),
                            value: None,
                            generators,
                        },
                        span,
                    );
                    args.push(Arg::Positional(genexp));
                } else {
                    if seen_keyword {
                        return Err(ParseError {
                            offset: value.span.start,
                            message: "positional argument follows keyword argument".into(),
                        });
                    }
                    args.push(Arg::Positional(value));
                }
            }
            if !self.eat_op(",") {
                break;
            }
        }
        Ok(args)
    }

    fn subscript_list(&mut self) -> PResult<Expr> {
        let start = self.span().start;
        let first = self.subscript()?;
        if !self.at_op(",") {
            return Ok(first);
        }
        let mut elts = vec![first];
        while self.eat_op(",") {
            if self.at_op("]") {
                break;
            }
            elts.push(self.subscript()?);
        }
        Ok(Expr::new(
            ExprKind::Tuple {
                elts,
                parenthesized: false,
            },
            SourceSpan::new(start, self.prev_end()),
        ))
    }

    fn subscript(&mut self) -> PResult<Expr> {
        let start = self.span().start;
        let lower = if self.at_op(":") {
            None
        } else if self.at_op("*") {
            return self.star_or(Level::Test);
        } else {
            let e = self.named_expr()?;
            if !self.at_op(":") {
                return Ok(e);
            }
            Some(Box::new(e))
        };
        self.expect_op(":")?;
        let upper = if self.at_op(":") || self.at_op("]") || self.at_op(",") {
            None
        } else {
            Some(Box::new(self.test()?))
        };
        let step = if self.eat_op(":") {
            if self.at_op("]") || self.at_op(",") {
                None
            } else {
                Some(Box::new(self.test()?))
            }
        } else {
            None
        };
        Ok(Expr::new(
            ExprKind::Slice { lower, upper, step },
            SourceSpan::new(start, self.prev_end()),
        ))
    }

    fn comp_for(&mut self) -> PResult<Vec<Generator>> {
        let mut generators = Vec::new();
        loop {
            let is_async = self.eat_kw("async");
            if !self.at_kw("for") {
                if is_async {
                    return Err(self.invalid());
                }
                break;
            }
            self.advance();
            let target = self.target_list()?;
            self.expect_kw("in")?;
            let iter = self.or_test()?;
            let mut ifs = Vec::new();
            while self.eat_kw("if") {
                ifs.push(self.or_test()?);
            }
            generators.push(Generator {
                target,
                iter,
                ifs,
                is_async,
            });
        }
        Ok(generators)
    }

    fn atom(&mut self) -> PResult<Expr> {
        let start = self.span().start;
        match self.tok().clone() {
            Tok::Name(n) => match n.as_str() {
                "None" => {
                    let t = self.advance();
                    Ok(Expr::new(ExprKind::Constant(Constant::None), t.span))
                }
                "True" | "False" => {
                    let t = self.advance();
                    Ok(Expr::new(
                        ExprKind::Constant(Constant::Bool(n == "True")),
                        t.span,
                    ))
                }
                _ if is_keyword(&n) => Err(self.invalid()),
                _ => {
                    let t = self.advance();
                    Ok(Expr::new(ExprKind::Name(n), t.span))
                }
            },
            Tok::Int(v) => {
                let t = self.advance();
                Ok(Expr::new(ExprKind::Constant(Constant::Int(v)), t.span))
            }
            Tok::Float(v) => {
                let t = self.advance();
                Ok(Expr::new(ExprKind::Constant(Constant::Float(v)), t.span))
            }
            Tok::Imaginary(v) => {
                let t = self.advance();
                Ok(Expr::new(
                    ExprKind::Constant(Constant::Imaginary(v)),
                    t.span,
                ))
            }
            Tok::Str(_) | Tok::Bytes(_) | Tok::FString(_) => self.strings(),
            Tok::Op("...") => {
                let t = self.advance();
                Ok(Expr::new(ExprKind::Constant(Constant::Ellipsis), t.span))
            }
            Tok::Op("(") => self.paren(start),
            Tok::Op("[") => self.list_display(start),
            Tok::Op("{") => self.brace_display(start),
            Tok::Indent => Err(self.error_here("unexpected indent")),
            _ => Err(self.invalid()),
        }
    }

    /// Adjacent string literals concatenate.
    fn strings(&mut self) -> PResult<Expr> {
        let start = self.span().start;
        let mut text = String::new();
        let mut bytes: Option<Vec<u8>> = None;
        let mut is_fstring = false;
        let mut saw_str = false;
        loop {
            match self.tok().clone() {
                Tok::Str(s) => {
                    saw_str = true;
                    text.push_str(&s);
                }
                Tok::FString(s) => {
                    saw_str = true;
                    is_fstring = true;
                    text.push_str(&s);
                }
                Tok::Bytes(b) => bytes.get_or_insert_with(Vec::new).extend(b),
                _ => break,
            }
            if saw_str && bytes.is_some() {
                return Err(ParseError {
                    offset: start,
                    message: "cannot mix bytes and nonbytes literals".into(),
                });
            }
            self.advance();
        }
        let span = SourceSpan::new(start, self.prev_end());
        let kind = match bytes {
            Some(b) => ExprKind::Constant(Constant::Bytes(b)),
            None if is_fstring => ExprKind::FString(text),
            None => ExprKind::Constant(Constant::Str(text)),
        };
        Ok(Expr::new(kind, span))
    }

    fn paren(&mut self, start: usize) -> PResult<Expr> {
        self.advance();
        if self.eat_op(")") {
            return Ok(Expr::new(
                ExprKind::Tuple {
                    elts: Vec::new(),
                    parenthesized: true,
                },
                SourceSpan::new(start, self.prev_end()),
            ));
        }
        if self.at_kw("yield") {
            let y = self.yield_expr()?;
            self.expect_op(")")?;
            return Ok(y);
        }
        let first = self.star_or(Level::Test)?;
        if self.at_kw("for") || self.at_kw("async") {
            let generators = self.comp_for()?;
            self.expect_op(")")?;
            return Ok(Expr::new(
                ExprKind::Comprehension {
                    kind: ComprehensionKind::Generator,
                    element: Box::new(first),
                    value: None,
                    generators,
                },
                SourceSpan::new(start, self.prev_end()),
            ));
        }
        if self.eat_op(")") {
            if let ExprKind::Starred(_) = first.kind {
                return Err(ParseError {
                    offset: first.span.start,
                    message: "cannot use starred expression here".into(),
                });
            }
            return Ok(first);
        }
        let mut elts = vec![first];
        while self.eat_op(",") {
            if self.at_op(")") {
                break;
            }
            elts.push(self.star_or(Level::Test)?);
        }
        self.expect_op(")")?;
        Ok(Expr::new(
            ExprKind::Tuple {
                elts,
                parenthesized: true,
            },
            SourceSpan::new(start, self.prev_end()),
        ))
    }

    fn list_display(&mut self, start: usize) -> PResult<Expr> {
        self.advance();
        if self.eat_op("]") {
            return Ok(Expr::new(
                ExprKind::List(Vec::new()),
                SourceSpan::new(start, self.prev_end()),
            ));
        }
        let first = self.star_or(Level::Test)?;
        if self.at_kw("for") || self.at_kw("async") {
            let generators = self.comp_for()?;
            self.expect_op("]")?;
            return Ok(Expr::new(
                ExprKind::Comprehension {
                    kind: ComprehensionKind::List,
                    element: Box::new(first),
                    value: None,
                    generators,
                },
                SourceSpan::new(start, self.prev_end()),
            ));
        }
        let mut elts = vec![first];
        while self.eat_op(",") {
            if self.at_op("]") {
                break;
            }
            elts.push(self.star_or(Level::Test)?);
        }
        self.expect_op("]")?;
        Ok(Expr::new(
            ExprKind::List(elts),
            SourceSpan::new(start, self.prev_end()),
        ))
    }

    fn brace_display(&mut self, start: usize) -> PResult<Expr> {
        self.advance();
        if self.eat_op("}") {
            return Ok(Expr::new(
                ExprKind::Dict(Vec::new()),
                SourceSpan::new(start, self.prev_end()),
            ));
        }
        // dict
        let first_item = if self.eat_op("**") {
            Some(DictItem::Spread(self.bitor()?))
        } else {
            None
        };
        let (first_key, is_dict) = match first_item {
            Some(item) => (Err(item), true),
            None => {
                let key = self.star_or(Level::Test)?;
                let is_dict = self.at_op(":");
                (Ok(key), is_dict)
            }
        };
        if is_dict {
            let first = match first_key {
                Err(item) => item,
                Ok(key) => {
                    self.expect_op(":")?;
                    let value = self.test()?;
                    if self.at_kw("for") || self.at_kw("async") {
                        let generators = self.comp_for()?;
                        self.expect_op("}")?;
                        return Ok(Expr::new(
                            ExprKind::Comprehension {
                                kind: ComprehensionKind::Dict,
                                element: Box::new(key),
                                value: Some(Box::new(value)),
                                generators,
                            },
                            SourceSpan::new(start, self.prev_end()),
                        ));
                    }
                    DictItem::Pair { key, value }
                }
            };
            let mut items = vec![first];
            while self.eat_op(",") {
                if self.at_op("}") {
                    break;
                }
                if self.eat_op("**") {
                    items.push(DictItem::Spread(self.bitor()?));
                } else {
                    let key = self.test()?;
                    self.expect_op(":")?;
                    let value = self.test()?;
                    items.push(DictItem::Pair { key, value });
                }
            }
            self.expect_op("}")?;
            return Ok(Expr::new(
                ExprKind::Dict(items),
                SourceSpan::new(start, self.prev_end()),
            ));
        }
        let first = first_key.unwrap_or_else(|_| unreachable!());
        if self.at_kw("for") || self.at_kw("async") {
            let generators = self.comp_for()?;
            self.expect_op("}")?;
            return Ok(Expr::new(
                ExprKind::Comprehension {
                    kind: ComprehensionKind::Set,
                    element: Box::new(first),
                    value: None,
                    generators,
                },
                SourceSpan::new(start, self.prev_end()),
            ));
        }
        let mut elts = vec![first];
        while self.eat_op(",") {
            if self.at_op("}") {
                break;
            }
            elts.push(self.star_or(Level::Test)?);
        }
        self.expect_op("}")?;
        Ok(Expr::new(
            ExprKind::Set(elts),
            SourceSpan::new(start, self.prev_end()),
        ))
    }
}

fn aug_op(op: &str) -> Option<BinOp> {
    Some(match op {
        "+=" => BinOp::Add,
        "-=" => BinOp::Sub,
        "*=" => BinOp::Mult,
        "@=" => BinOp::MatMult,
        "/=" => BinOp::Div,
        "//=" => BinOp::FloorDiv,
        "%=" => BinOp::Mod,
        "**=" => BinOp::Pow,
        "<<=" => BinOp::LShift,
        ">>=" => BinOp::RShift,
        "|=" => BinOp::BitOr,
        "^=" => BinOp::BitXor,
        "&=" => BinOp::BitAnd,
        _ => return None,
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum TargetCtx {
    Assign,
    Delete,
}

fn describe(e: &Expr) -> &'static str {
    match &e.kind {
        ExprKind::Call { .. } => "function call",
        ExprKind::Constant(Constant::None) => "None",
        ExprKind::Constant(Constant::Bool(true)) => "True",
        ExprKind::Constant(Constant::Bool(false)) => "False",
        ExprKind::Constant(Constant::Ellipsis) => "ellipsis",
        ExprKind::Constant(_) | ExprKind::FString(_) => "literal",
        ExprKind::BinOp { .. } | ExprKind::UnaryOp { .. } => "expression",
        ExprKind::BoolOp { .. } => "expression",
        ExprKind::Compare { .. } => "comparison",
        ExprKind::IfExp { .. } => "conditional expression",
        ExprKind::Lambda { .. } => "lambda",
        ExprKind::Comprehension { kind, .. } => match kind {
            ComprehensionKind::List => "list comprehension",
            ComprehensionKind::Set => "set comprehension",
            ComprehensionKind::Dict => "dict comprehension",
            ComprehensionKind::Generator => "generator expression",
        },
        ExprKind::Dict(_) => "dict literal",
        ExprKind::Set(_) => "set display",
        ExprKind::Await(_) => "await expression",
        ExprKind::Yield(_) | ExprKind::YieldFrom(_) => "yield expression",
        ExprKind::NamedExpr { .. } => "named expression",
        ExprKind::Tuple { .. } => "tuple",
        ExprKind::List(_) => "list",
        ExprKind::Starred(_) => "starred",
        ExprKind::Slice { .. } => "slice",
        ExprKind::Name(_) | ExprKind::Attribute { .. } | ExprKind::Subscript { .. } => "name",
    }
}

fn validate_target(e: &Expr, ctx: TargetCtx) -> PResult<()> {
    match &e.kind {
        ExprKind::Name(_) | ExprKind::Attribute { .. } | ExprKind::Subscript { .. } => Ok(()),
        ExprKind::Tuple { elts, .. } | ExprKind::List(elts) => {
            for elt in elts {
                validate_target(elt, ctx)?;
            }
            Ok(())
        }
        ExprKind::Starred(inner) if ctx == TargetCtx::Assign => validate_target(inner, ctx),
        _ => {
            let verb = match ctx {
                TargetCtx::Assign => "assign to",
                TargetCtx::Delete => "delete",
            };
            Err(ParseError {
                offset: e.span.start,
                message: format!("cannot {verb} {}", describe(e)),
            })
        }
    }
}

//! Source files, tokenizer, and parser for Python-syntax quantum programs.

mod lexer;
mod parser;
pub mod source;
pub mod tree;

use std::fmt;
use std::path::PathBuf;

pub use lexer::{first_lex_error, is_keyword, tokenize, Tok, Token};
pub use source::{LineCol, SourceFile, SourceSpan};
pub use tree::*;

/// Parser-internal error: a byte offset and message, before line mapping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

/// A file that failed to parse. Such files are excluded from analysis.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct SyntaxErrorReport {
    pub path: PathBuf,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for SyntaxErrorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}: syntax error: {}",
            self.path.display(),
            self.line,
            self.column,
            self.message
        )
    }
}

pub fn parse_source(file: &SourceFile) -> Result<SyntaxTree, SyntaxErrorReport> {
    let to_report = |err: ParseError| {
        let pos = file.line_col(err.offset);
        SyntaxErrorReport {
            path: file.path().to_path_buf(),
            line: pos.line,
            column: pos.column,
            message: err.message,
        }
    };
    let tokens = tokenize(file.text());
    parser::parse_tokens(tokens, file.text().len()).map_err(to_report)
}

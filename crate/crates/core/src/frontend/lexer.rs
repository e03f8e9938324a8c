//! Tokenizer producing logical-line tokens with INDENT/DEDENT markers.

use super::source::SourceSpan;
use super::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Name(String),
    Int(String),
    Float(String),
    Imaginary(String),
    Str(String),
    Bytes(Vec<u8>),
    FString(String),
    Op(&'static str),
    Newline,
    Indent,
    Dedent,
    /// Tokenization stopped here; reported when the parser reaches it so that
    /// earlier parse errors take precedence.
    Error(ParseError),
    EndMarker,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

pub const KEYWORDS: &[&str] = &[
    "False", "None", "True", "and", "as", "assert", "async", "await", "break", "class", "continue",
    "def", "del", "elif", "else", "except", "finally", "for", "from", "global", "if", "import",
    "in", "is", "lambda", "nonlocal", "not", "or", "pass", "raise", "return", "try", "while",
    "with", "yield",
];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

// Longest first so that prefix matching picks the longest operator.
const OPERATORS: &[&str] = &[
    "**=", "//=", ">>=", "<<=", "...", "->", ":=", "**", "//", "<<", ">>", "<=", ">=", "==", "!=",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "@=", "+", "-", "*", "/", "%", "@", "&", "|",
    "^", "~", "<", ">", "(", ")", "[", "]", "{", "}", ",", ":", ".", ";", "=",
];

/// Tokenizes the whole text. A lexical error ends the stream with a
/// [`Tok::Error`] followed by [`Tok::EndMarker`].
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut lexer = Lexer::new(text);
    match lexer.run() {
        Ok(()) => {}
        Err(err) => {
            let at = err.offset;
            lexer.push(Tok::Error(err), at, at);
            let end = lexer.bytes.len();
            lexer.push(Tok::EndMarker, end, end);
        }
    }
    lexer.tokens
}

/// First lexical error in the text, if any.
pub fn first_lex_error(tokens: &[Token]) -> Option<&ParseError> {
    tokens.iter().find_map(|t| match &t.tok {
        Tok::Error(e) => Some(e),
        _ => None,
    })
}

struct Lexer<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    tokens: Vec<Token>,
    indents: Vec<usize>,
    brackets: Vec<(u8, usize)>,
    at_line_start: bool,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        // A leading BOM is not part of the program.
        let pos = if text.starts_with('\u{feff}') { 3 } else { 0 };
        Self {
            text,
            bytes: text.as_bytes(),
            pos,
            tokens: Vec::new(),
            indents: vec![0],
            brackets: Vec::new(),
            at_line_start: true,
        }
    }

    fn err(&self, offset: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            offset,
            message: message.into(),
        }
    }

    fn push(&mut self, tok: Tok, start: usize, end: usize) {
        self.tokens.push(Token {
            tok,
            span: SourceSpan::new(start, end),
        });
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn peek_at(&self, n: usize) -> Option<u8> {
        self.bytes.get(self.pos + n).copied()
    }

    fn current_char(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn run(&mut self) -> Result<(), ParseError> {
        loop {
            if self.at_line_start && self.brackets.is_empty() {
                self.at_line_start = false;
                if self.handle_indentation()? {
                    continue;
                }
            }
            let Some(c) = self.peek() else { break };
            match c {
                b' ' | b'\t' | b'\x0c' => self.pos += 1,
                b'#' => self.skip_comment(),
                b'\n' | b'\r' => {
                    let start = self.pos;
                    self.consume_newline();
                    if self.brackets.is_empty() {
                        self.push(Tok::Newline, start, start + 1);
                        self.at_line_start = true;
                    }
                }
                b'\\' => {
                    let start = self.pos;
                    self.pos += 1;
                    match self.peek() {
                        Some(b'\n') | Some(b'\r') => self.consume_newline(),
                        None => return Err(self.err(start, "unexpected EOF while parsing")),
                        _ => {
                            return Err(self.err(
                                start + 1,
                                "unexpected character after line continuation character",
                            ))
                        }
                    }
                }
                b'0'..=b'9' => self.number()?,
                b'.' if matches!(self.peek_at(1), Some(b'0'..=b'9')) => self.number()?,
                b'"' | b'\'' => self.string(self.pos, "")?,
                _ => {
                    let ch = self.current_char().unwrap_or('\0');
                    if ch == '_' || ch.is_alphabetic() {
                        self.name_or_prefixed_string()?;
                    } else {
                        self.operator()?;
                    }
                }
            }
        }
        if let Some(&(open, offset)) = self.brackets.last() {
            return Err(self.err(offset, format!("'{}' was never closed", open as char)));
        }
        let end = self.bytes.len();
        if !matches!(
            self.tokens.last().map(|t| &t.tok),
            None | Some(Tok::Newline) | Some(Tok::Dedent)
        ) {
            self.push(Tok::Newline, end, end);
        }
        while self.indents.len() > 1 {
            self.indents.pop();
            self.push(Tok::Dedent, end, end);
        }
        self.push(Tok::EndMarker, end, end);
        Ok(())
    }

    fn consume_newline(&mut self) {
        if self.peek() == Some(b'\r') {
            self.pos += 1;
            if self.peek() == Some(b'\n') {
                self.pos += 1;
            }
        } else {
            self.pos += 1;
        }
    }

    fn skip_comment(&mut self) {
        while let Some(c) = self.peek() {
            if c == b'\n' || c == b'\r' {
                break;
            }
            self.pos += 1;
        }
    }

    /// Measures the indentation of a new line. Returns true when the line was
    /// blank or comment-only and has been consumed entirely.
    fn handle_indentation(&mut self) -> Result<bool, ParseError> {
        let line_start = self.pos;
        let mut width = 0usize;
        // A continuation inside the indentation: the first non-zero column
        // before a backslash decides the level.
        let mut continued_width = 0usize;
        while let Some(c) = self.peek() {
            match c {
                b' ' => width += 1,
                b'\t' => width = (width / 8 + 1) * 8,
                b'\x0c' => width = 0,
                b'\\' if matches!(self.peek_at(1), Some(b'\n' | b'\r')) => {
                    if continued_width == 0 {
                        continued_width = width;
                    }
                    self.pos += 1;
                    self.consume_newline();
                    continue;
                }
                _ => break,
            }
            self.pos += 1;
        }
        if continued_width != 0 {
            width = continued_width;
        }
        match self.peek() {
            None => return Ok(false),
            Some(b'#') => {
                self.skip_comment();
                if self.peek().is_some() {
                    self.consume_newline();
                }
                self.at_line_start = true;
                return Ok(true);
            }
            Some(b'\n') | Some(b'\r') => {
                self.consume_newline();
                self.at_line_start = true;
                return Ok(true);
            }
            _ => {}
        }
        let current = *self.indents.last().unwrap();
        if width > current {
            self.indents.push(width);
            self.push(Tok::Indent, line_start, self.pos);
        } else if width < current {
            while *self.indents.last().unwrap() > width {
                self.indents.pop();
                self.push(Tok::Dedent, self.pos, self.pos);
            }
            if *self.indents.last().unwrap() != width {
                return Err(self.err(
                    self.pos,
                    "unindent does not match any outer indentation level",
                ));
            }
        }
        Ok(false)
    }

    fn operator(&mut self) -> Result<(), ParseError> {
        let start = self.pos;
        let rest = &self.text[start..];
        let Some(op) = OPERATORS.iter().find(|op| rest.starts_with(**op)) else {
            let ch = self.current_char().unwrap_or('\0');
            return Err(self.err(start, format!("invalid character '{ch}'")));
        };
        let open_close = op.as_bytes()[0];
        match open_close {
            b'(' | b'[' | b'{' if op.len() == 1 => self.brackets.push((open_close, start)),
            b')' | b']' | b'}' if op.len() == 1 => {
                let expected = match open_close {
                    b')' => b'(',
                    b']' => b'[',
                    _ => b'{',
                };
                match self.brackets.pop() {
                    None => {
                        return Err(self.err(start, format!("unmatched '{}'", open_close as char)))
                    }
                    Some((open, _)) if open != expected => {
                        return Err(self.err(
                            start,
                            format!(
                                "closing parenthesis '{}' does not match opening parenthesis '{}'",
                                open_close as char, open as char
                            ),
                        ))
                    }
                    Some(_) => {}
                }
            }
            _ => {}
        }
        self.pos += op.len();
        self.push(Tok::Op(op), start, self.pos);
        Ok(())
    }

    fn name_or_prefixed_string(&mut self) -> Result<(), ParseError> {
        let start = self.pos;
        while let Some(ch) = self.current_char() {
            if ch == '_' || ch.is_alphanumeric() {
                self.pos += ch.len_utf8();
            } else {
                break;
            }
        }
        let word = &self.text[start..self.pos];
        if matches!(self.peek(), Some(b'"') | Some(b'\'')) {
            let lower = word.to_ascii_lowercase();
            if matches!(
                lower.as_str(),
                "r" | "u" | "b" | "f" | "br" | "rb" | "fr" | "rf"
            ) {
                return self.string(start, &lower);
            }
        }
        self.push(Tok::Name(word.to_string()), start, self.pos);
        Ok(())
    }

    fn number(&mut self) -> Result<(), ParseError> {
        let start = self.pos;
        let radix = match (self.peek(), self.peek_at(1)) {
            (Some(b'0'), Some(b'x' | b'X')) => 16,
            (Some(b'0'), Some(b'o' | b'O')) => 8,
            (Some(b'0'), Some(b'b' | b'B')) => 2,
            _ => 10,
        };
        if radix != 10 {
            self.pos += 2;
            let digits_start = self.pos;
            while let Some(c) = self.peek() {
                if c == b'_' || (c as char).is_digit(radix) {
                    self.pos += 1;
                } else {
                    break;
                }
            }
            let digits: String = self.text[digits_start..self.pos]
                .chars()
                .filter(|c| *c != '_')
                .collect();
            if digits.is_empty() {
                return Err(self.err(start, "invalid numeric literal"));
            }
            self.reject_trailing_name_char(start)?;
            let value = u128::from_str_radix(&digits, radix)
                .map(|v| v.to_string())
                .unwrap_or_else(|_| self.text[start..self.pos].to_string());
            self.push(Tok::Int(value), start, self.pos);
            return Ok(());
        }

        let mut is_float = false;
        self.digits();
        if self.peek() == Some(b'.') {
            is_float = true;
            self.pos += 1;
            self.digits();
        }
        if matches!(self.peek(), Some(b'e' | b'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if matches!(self.peek(), Some(b'0'..=b'9')) {
                is_float = true;
                self.digits();
            } else {
                self.pos = save;
            }
        }
        let raw: String = self.text[start..self.pos]
            .chars()
            .filter(|c| *c != '_')
            .collect();
        if matches!(self.peek(), Some(b'j' | b'J')) {
            self.pos += 1;
            self.reject_trailing_name_char(start)?;
            self.push(Tok::Imaginary(raw), start, self.pos);
            return Ok(());
        }
        self.reject_trailing_name_char(start)?;
        if is_float {
            self.push(Tok::Float(raw), start, self.pos);
        } else {
            if raw.len() > 1 && raw.starts_with('0') && raw.bytes().any(|b| b != b'0') {
                return Err(self.err(
                    start,
                    "leading zeros in decimal integer literals are not permitted",
                ));
            }
            let value = raw.parse::<u128>().map(|v| v.to_string()).unwrap_or(raw);
            self.push(Tok::Int(value), start, self.pos);
        }
        Ok(())
    }

    fn digits(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() || c == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn reject_trailing_name_char(&self, start: usize) -> Result<(), ParseError> {
        match self.current_char() {
            Some(ch) if ch == '_' || ch.is_alphanumeric() => {
                Err(self.err(start, "invalid decimal literal"))
            }
            _ => Ok(()),
        }
    }

    /// Lexes a string literal whose (lowercased) prefix has already been read;
    /// `start` is the offset of the prefix.
    fn string(&mut self, start: usize, prefix: &str) -> Result<(), ParseError> {
        let quote = self.peek().unwrap();
        let triple = self.peek_at(1) == Some(quote) && self.peek_at(2) == Some(quote);
        let quote_len = if triple { 3 } else { 1 };
        self.pos += quote_len;
        let body_start = self.pos;
        let raw = prefix.contains('r');
        loop {
            let Some(c) = self.peek() else {
                return Err(self.unterminated(start, triple));
            };
            if c == b'\\' {
                self.pos += 1;
                if self.peek().is_some() {
                    let ch = self.current_char().unwrap();
                    self.pos += ch.len_utf8();
                }
                continue;
            }
            if c == quote {
                if !triple {
                    break;
                }
                if self.peek_at(1) == Some(quote) && self.peek_at(2) == Some(quote) {
                    break;
                }
            }
            if !triple && (c == b'\n' || c == b'\r') {
                return Err(self.unterminated(start, false));
            }
            let ch = self.current_char().unwrap();
            self.pos += ch.len_utf8();
        }
        let raw_body = &self.text[body_start..self.pos];
        // Python reads source with universal newlines.
        let normalized;
        let body = if raw_body.contains('\r') {
            normalized = raw_body.replace("\r\n", "\n").replace('\r', "\n");
            normalized.as_str()
        } else {
            raw_body
        };
        self.pos += quote_len;
        let end = self.pos;
        if prefix.contains('f') {
            validate_fstring(body, raw).map_err(|message| self.err(start, message))?;
            self.push(Tok::FString(body.to_string()), start, end);
        } else if prefix.contains('b') {
            if let Some(ch) = body.chars().find(|c| !c.is_ascii()) {
                return Err(self.err(
                    start,
                    format!("bytes can only contain ASCII literal characters (found '{ch}')"),
                ));
            }
            let value = if raw {
                body.as_bytes().to_vec()
            } else {
                unescape(body, true)
                    .map_err(|m| self.err(start, m))?
                    .chars()
                    .map(|c| c as u32 as u8)
                    .collect()
            };
            self.push(Tok::Bytes(value), start, end);
        } else {
            let value = if raw {
                body.to_string()
            } else {
                unescape(body, false).map_err(|m| self.err(start, m))?
            };
            self.push(Tok::Str(value), start, end);
        }
        Ok(())
    }

    fn unterminated(&self, start: usize, triple: bool) -> ParseError {
        if triple {
            self.err(start, "unterminated triple-quoted string literal")
        } else {
            self.err(start, "unterminated string literal")
        }
    }
}

/// Interprets backslash escapes of a non-raw string body. Unknown escapes are
/// kept verbatim, as Python does. In bytes mode each char of the result is one
/// byte value and `\u`, `\U`, `\N` are not escapes.
fn unescape(body: &str, bytes: bool) -> Result<String, String> {
    let mut out = String::with_capacity(body.len());
    let mut chars = body.chars().peekable();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        let Some(next) = chars.next() else {
            out.push('\\');
            break;
        };
        match next {
            '\n' => {}
            '\r' => {
                if chars.peek() == Some(&'\n') {
                    chars.next();
                }
            }
            '\\' => out.push('\\'),
            '\'' => out.push('\''),
            '"' => out.push('"'),
            'a' => out.push('\x07'),
            'b' => out.push('\x08'),
            'f' => out.push('\x0c'),
            'n' => out.push('\n'),
            'r' => out.push('\r'),
            't' => out.push('\t'),
            'v' => out.push('\x0b'),
            '0'..='7' => {
                let mut value = next.to_digit(8).unwrap();
                for _ in 0..2 {
                    match chars.peek().and_then(|c| c.to_digit(8)) {
                        Some(d) => {
                            value = value * 8 + d;
                            chars.next();
                        }
                        None => break,
                    }
                }
                let value = if bytes { value & 0xff } else { value };
                out.extend(char::from_u32(value));
            }
            'x' | 'u' | 'U' if next == 'x' || !bytes => {
                let width = match next {
                    'x' => 2,
                    'u' => 4,
                    _ => 8,
                };
                let hex: String = chars.clone().take(width).collect();
                let value = (hex.len() == width && hex.chars().all(|c| c.is_ascii_hexdigit()))
                    .then(|| u32::from_str_radix(&hex, 16).ok())
                    .flatten();
                let Some(value) = value else {
                    return Err(format!("(unicode error) truncated \\{next} escape"));
                };
                if value > 0x10ffff {
                    return Err("(unicode error) illegal Unicode character".to_string());
                }
                // Lone surrogates are valid in Python strings but not in Rust.
                out.push(char::from_u32(value).unwrap_or('\u{fffd}'));
                for _ in 0..width {
                    chars.next();
                }
            }
            'N' if !bytes => {
                if chars.peek() != Some(&'{') {
                    return Err("(unicode error) malformed \\N character escape".to_string());
                }
                // Named characters are kept symbolically; no name table here.
                let mut name = String::new();
                let mut closed = false;
                for ch in chars.by_ref() {
                    name.push(ch);
                    if ch == '}' {
                        closed = true;
                        break;
                    }
                }
                if !closed || name.len() <= 2 {
                    return Err("(unicode error) malformed \\N character escape".to_string());
                }
                out.push_str("\\N");
                out.push_str(&name);
            }
            other => {
                out.push('\\');
                out.push(other);
            }
        }
    }
    Ok(out)
}

/// Checks the replacement fields of an f-string body: balanced braces,
/// non-empty expressions that parse, valid conversions, nested format specs.
fn validate_fstring(body: &str, raw: bool) -> Result<(), String> {
    let chars: Vec<char> = body.chars().collect();
    let mut i = 0;
    validate_fstring_literal(&chars, &mut i, raw, false, 0)
}

fn validate_fstring_literal(
    chars: &[char],
    i: &mut usize,
    raw: bool,
    in_spec: bool,
    depth: usize,
) -> Result<(), String> {
    while *i < chars.len() {
        match chars[*i] {
            '\\' if !raw && chars.get(*i + 1) == Some(&'N') && chars.get(*i + 2) == Some(&'{') => {
                // A named escape's braces are not a replacement field.
                while *i < chars.len() && chars[*i] != '}' {
                    *i += 1;
                }
                *i += 1;
            }
            '{' if chars.get(*i + 1) == Some(&'{') && !in_spec => *i += 2,
            '{' => {
                if depth >= 2 {
                    return Err("f-string: expressions nested too deeply".into());
                }
                *i += 1;
                validate_fstring_field(chars, i, raw, depth)?;
            }
            '}' if in_spec => return Ok(()),
            '}' if chars.get(*i + 1) == Some(&'}') => *i += 2,
            '}' => return Err("f-string: single '}' is not allowed".into()),
            _ => *i += 1,
        }
    }
    if in_spec {
        return Err("f-string: expecting '}'".into());
    }
    Ok(())
}

fn validate_fstring_field(
    chars: &[char],
    i: &mut usize,
    raw: bool,
    depth: usize,
) -> Result<(), String> {
    let start = *i;
    let mut nesting: Vec<char> = Vec::new();
    let mut quote: Option<char> = None;
    while *i < chars.len() {
        let c = chars[*i];
        if let Some(q) = quote {
            if c == q {
                quote = None;
            }
            *i += 1;
            continue;
        }
        match c {
            '\\' => return Err("f-string expression part cannot include a backslash".into()),
            '#' => return Err("f-string expression part cannot include '#'".into()),
            '\'' | '"' => quote = Some(c),
            '(' | '[' | '{' => nesting.push(c),
            ')' | ']' | '}' if !nesting.is_empty() => {
                let open = nesting.pop().unwrap();
                let expected = match c {
                    ')' => '(',
                    ']' => '[',
                    _ => '{',
                };
                if open != expected {
                    return Err(format!(
                        "f-string: closing parenthesis '{c}' does not match opening parenthesis '{open}'"
                    ));
                }
            }
            '!' if nesting.is_empty() && chars.get(*i + 1) != Some(&'=') => break,
            ':' | '}' if nesting.is_empty() => break,
            '=' if nesting.is_empty()
                && !matches!(chars.get(*i + 1), Some('='))
                && !matches!(chars.get(i.wrapping_sub(1)), Some('=' | '!' | '<' | '>')) =>
            {
                break
            }
            _ => {}
        }
        *i += 1;
    }
    if quote.is_some() {
        return Err("f-string: unterminated string".into());
    }
    if *i >= chars.len() {
        return Err("f-string: expecting '}'".into());
    }
    let expr: String = chars[start..*i].iter().collect();
    if expr.trim().is_empty() {
        return Err("f-string: empty expression not allowed".into());
    }
    let wrapped = format!("({expr})");
    let tokens = tokenize(&wrapped);
    if super::parser::parse_expression(tokens).is_err() {
        return Err("f-string: invalid syntax".into());
    }
    if chars[*i] == '=' {
        *i += 1;
        while chars.get(*i).is_some_and(|c| c.is_whitespace()) {
            *i += 1;
        }
    }
    if *i < chars.len() && chars[*i] == '!' {
        *i += 1;
        match chars.get(*i) {
            Some('r' | 's' | 'a') => *i += 1,
            _ => {
                return Err(
                    "f-string: invalid conversion character: expected 's', 'r', or 'a'".into(),
                )
            }
        }
    }
    if *i < chars.len() && chars[*i] == ':' {
        *i += 1;
        validate_fstring_literal(chars, i, raw, true, depth + 1)?;
    }
    if chars.get(*i) != Some(&'}') {
        return Err("f-string: expecting '}'".into());
    }
    *i += 1;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<Tok> {
        let tokens = tokenize(src);
        assert!(first_lex_error(&tokens).is_none(), "{src:?}");
        tokens.into_iter().map(|t| t.tok).collect()
    }

    fn lex_err(src: &str) -> ParseError {
        first_lex_error(&tokenize(src))
            .cloned()
            .expect("lexical error")
    }

    #[test]
    fn indentation_produces_indent_and_dedent() {
        let toks = kinds("if x:\n    y\nz\n");
        assert_eq!(
            toks,
            vec![
                Tok::Name("if".into()),
                Tok::Name("x".into()),
                Tok::Op(":"),
                Tok::Newline,
                Tok::Indent,
                Tok::Name("y".into()),
                Tok::Newline,
                Tok::Dedent,
                Tok::Name("z".into()),
                Tok::Newline,
                Tok::EndMarker,
            ]
        );
    }

    #[test]
    fn newlines_inside_brackets_are_ignored() {
        let toks = kinds("f(1,\n  2)\n");
        assert!(!toks[..toks.len() - 2].contains(&Tok::Newline));
    }

    #[test]
    fn string_escapes_and_prefixes() {
        assert_eq!(kinds(r#"'a\'b'"#)[0], Tok::Str("a'b".into()));
        assert_eq!(kinds(r#"r'a\n'"#)[0], Tok::Str("a\\n".into()));
        assert_eq!(kinds(r#"b'\x41'"#)[0], Tok::Bytes(b"A".to_vec()));
        assert_eq!(kinds(r#"f'{x}'"#)[0], Tok::FString("{x}".into()));
        assert_eq!(kinds("'''a\nb'''")[0], Tok::Str("a\nb".into()));
    }

    #[test]
    fn numbers_are_normalized() {
        assert_eq!(kinds("0x10")[0], Tok::Int("16".into()));
        assert_eq!(kinds("1_000")[0], Tok::Int("1000".into()));
        assert_eq!(kinds("1.5e-3")[0], Tok::Float("1.5e-3".into()));
        assert_eq!(kinds("2j")[0], Tok::Imaginary("2".into()));
        assert_eq!(kinds("x.5")[1], Tok::Float(".5".into()));
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(lex_err("circuit.h(0").offset, 9);
        assert_eq!(lex_err("s = \"abc").offset, 4);
        assert_eq!(lex_err("x = 1 $ 2").offset, 6);
        lex_err("x = 012");
        lex_err("f(]");
        lex_err(r"'\x4'");
        lex_err(r"'\N'");
    }

    #[test]
    fn fstring_fields_are_validated() {
        kinds(r#"f'{x!r:>{width}} {{literal}} {d["k"]} {a == b} {x=} {y = !r}'"#);
        kinds(r"f'{a}\N{DEGREE SIGN}'");
        lex_err("f'{}'");
        lex_err("f'{x!q}'");
        lex_err("f'{x'");
        lex_err("f'}'");
        lex_err("f'{a b}'");
        lex_err("f'{f(()}'");
    }
}

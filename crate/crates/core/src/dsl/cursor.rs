use std::fmt;

use super::lexer::{punct_text, Span, Token, TokenKind};
use crate::diag::{Diagnostic, SourceSpan};

/// A syntax error at a single token, with the set of things that would have
/// been accepted there.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntaxError {
    pub code: &'static str,
    pub span: Span,
    pub expected: Vec<String>,
    pub found: String,
    pub note: Option<String>,
}

impl SyntaxError {
    pub fn line(&self) -> u32 {
        self.span.start.line
    }

    pub fn col(&self) -> u32 {
        self.span.start.col
    }

    pub(crate) fn custom(code: &'static str, span: Span, note: impl Into<String>) -> Self {
        SyntaxError {
            code,
            span,
            expected: Vec::new(),
            found: String::new(),
            note: Some(note.into()),
        }
    }

    pub(crate) fn to_diagnostic(&self, file: &str) -> Diagnostic {
        Diagnostic::error(
            self.code,
            self.to_string(),
            Some(to_source_span(file, self.span)),
        )
    }
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(note) = &self.note {
            return f.write_str(note);
        }
        match self.expected.as_slice() {
            [] => write!(f, "unexpected {}", self.found),
            [one] => write!(f, "expected {one}, found {}", self.found),
            many => {
                let (last, rest) = many.split_last().expect("non-empty");
                write!(
                    f,
                    "expected one of {} or {last}, found {}",
                    rest.join(", "),
                    self.found
                )
            }
        }
    }
}

impl std::error::Error for SyntaxError {}

pub(crate) fn to_source_span(file: &str, span: Span) -> SourceSpan {
    SourceSpan::new(
        file,
        (span.start.line, span.start.col),
        (span.end.line, span.end.col),
    )
}

pub(crate) struct Cursor<'t> {
    toks: &'t [Token],
    pos: usize,
}

impl<'t> Cursor<'t> {
    /// `toks` must end with an `Eof` token.
    pub fn new(toks: &'t [Token]) -> Self {
        debug_assert!(matches!(toks.last().map(|t| &t.kind), Some(TokenKind::Eof)));
        Cursor { toks, pos: 0 }
    }

    pub fn kind(&self) -> &'t TokenKind {
        &self.toks[self.pos].kind
    }

    pub fn nth(&self, n: usize) -> &'t TokenKind {
        let i = (self.pos + n).min(self.toks.len() - 1);
        &self.toks[i].kind
    }

    pub fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    /// Span of the most recently consumed token.
    pub fn prev_span(&self) -> Span {
        self.toks[self.pos.saturating_sub(1)].span
    }

    pub fn at_eof(&self) -> bool {
        matches!(self.kind(), TokenKind::Eof)
    }

    pub fn bump(&mut self) -> &'t Token {
        let t = &self.toks[self.pos];
        if !matches!(t.kind, TokenKind::Eof) {
            self.pos += 1;
        }
        t
    }

    pub fn at_kw(&self, kw: &str) -> bool {
        matches!(self.kind(), TokenKind::Ident(s) if s == kw)
    }

    pub fn at(&self, kind: &TokenKind) -> bool {
        self.kind() == kind
    }

    pub fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.at(kind) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn eat_kw(&mut self, kw: &str) -> bool {
        if self.at_kw(kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn error(&self, expected: &[&str]) -> SyntaxError {
        SyntaxError {
            code: "PAR001",
            span: self.span(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.kind().to_string(),
            note: None,
        }
    }

    pub fn expect(&mut self, kind: &TokenKind) -> Result<Span, SyntaxError> {
        if self.at(kind) {
            Ok(self.bump().span)
        } else {
            Err(self.error(&[&format!("`{}`", punct_text(kind))]))
        }
    }

    pub fn expect_kw(&mut self, kw: &str) -> Result<Span, SyntaxError> {
        if self.at_kw(kw) {
            Ok(self.bump().span)
        } else {
            Err(self.error(&[&format!("`{kw}`")]))
        }
    }

    pub fn ident(&mut self, what: &str) -> Result<(String, Span), SyntaxError> {
        match self.kind() {
            TokenKind::Ident(s) => {
                let s = s.clone();
                Ok((s, self.bump().span))
            }
            _ => Err(self.error(&[what])),
        }
    }

    pub fn string(&mut self, what: &str) -> Result<(String, Span), SyntaxError> {
        match self.kind() {
            TokenKind::Str(s) => {
                let s = s.clone();
                Ok((s, self.bump().span))
            }
            _ => Err(self.error(&[what])),
        }
    }

    /// Reads an identifier and maps it through `table`; unknown words
    /// produce PAR005 listing the accepted spellings.
    pub fn keyword_value<T: Copy>(
        &mut self,
        what: &str,
        table: &[(&str, T)],
    ) -> Result<T, SyntaxError> {
        let expected: Vec<String> = table.iter().map(|(k, _)| format!("`{k}`")).collect();
        match self.kind() {
            TokenKind::Ident(s) => match table.iter().find(|(k, _)| k == s) {
                Some((_, v)) => {
                    self.bump();
                    Ok(*v)
                }
                None => Err(SyntaxError {
                    code: "PAR005",
                    span: self.span(),
                    expected,
                    found: format!("unknown {what} `{s}`"),
                    note: None,
                }),
            },
            _ => Err(SyntaxError {
                code: "PAR001",
                span: self.span(),
                expected,
                found: self.kind().to_string(),
                note: None,
            }),
        }
    }

    /// Skips tokens until `stop` accepts the current one (or end of input).
    pub fn skip_until(&mut self, stop: impl Fn(&Cursor<'t>) -> bool) {
        while !self.at_eof() && !stop(self) {
            self.bump();
        }
    }
}

//! Textual front end: one DSL per viewpoint plus the correspondence file.
//!
//! Every parser returns a [`Parsed`] carrying either a model that satisfies
//! the model constructors, or `None` together with at least one error.
//! Parsers resynchronise at statement boundaries so one run can report
//! several problems.

pub(crate) mod cursor;
pub mod lexer;
mod parse_corr;
mod parse_data;
mod parse_logic;
mod parse_nav;
mod parse_ui;
mod print;

use std::collections::BTreeMap;

pub use cursor::SyntaxError;
pub use parse_corr::parse_correspondences;
pub use parse_data::parse_data;
pub use parse_logic::parse_logic;
pub use parse_nav::parse_navigation;
pub use parse_ui::parse_ui;
pub use print::{print_correspondences, print_data, print_logic, print_navigation, print_ui};

use crate::diag::{has_errors, sort_diagnostics, Diagnostic, SourceSpan};
use crate::model::{ElementId, SourceMap};
use cursor::{to_source_span, Cursor};
use lexer::{tokenize, Span, Token};

/// Result of parsing one DSL file.
#[derive(Debug, Clone)]
pub struct Parsed<T> {
    pub model: Option<T>,
    pub diagnostics: Vec<Diagnostic>,
    pub sources: SourceMap,
}

impl<T> Parsed<T> {
    pub fn is_ok(&self) -> bool {
        self.model.is_some()
    }
}

/// Shared state of a single parse run.
pub(crate) struct ParseRun<'t> {
    pub c: Cursor<'t>,
    pub file: String,
    pub diags: Vec<Diagnostic>,
    pub sources: SourceMap,
}

impl<'t> ParseRun<'t> {
    pub fn new(tokens: &'t [Token], file: &str, lex_diags: Vec<Diagnostic>) -> Self {
        ParseRun {
            c: Cursor::new(tokens),
            file: file.to_string(),
            diags: lex_diags,
            sources: BTreeMap::new(),
        }
    }

    pub fn report(&mut self, e: SyntaxError) {
        self.diags.push(e.to_diagnostic(&self.file));
    }

    pub fn error_at(&mut self, code: &'static str, span: Span, message: impl Into<String>) {
        let d = Diagnostic::error(code, message, Some(to_source_span(&self.file, span)));
        self.diags.push(d);
    }

    pub fn source_span(&self, span: Span) -> SourceSpan {
        to_source_span(&self.file, span)
    }

    /// Span from `start` to the last consumed token.
    pub fn since(&self, start: Span) -> Span {
        let end = self.c.prev_span().end;
        Span {
            start: start.start,
            end: if end >= start.start { end } else { start.end },
        }
    }

    pub fn record(&mut self, id: &ElementId, span: Span) {
        let s = self.source_span(span);
        self.sources.insert(id.clone(), s);
    }

    pub fn finish<T>(mut self, build: impl FnOnce() -> Option<T>) -> Parsed<T> {
        sort_diagnostics(&mut self.diags);
        let model = if has_errors(&self.diags) {
            None
        } else {
            build()
        };
        if model.is_none() && !has_errors(&self.diags) {
            self.diags.push(Diagnostic::error(
                "PAR001",
                "model could not be constructed",
                Some(SourceSpan::new(self.file.clone(), (1, 1), (1, 1))),
            ));
        }
        Parsed {
            model,
            diagnostics: self.diags,
            sources: self.sources,
        }
    }
}

pub(crate) fn lex(text: &str, file: &str) -> (Vec<Token>, Vec<Diagnostic>) {
    let (tokens, errs) = tokenize(text);
    let diags = errs
        .into_iter()
        .map(|e| Diagnostic::error(e.code, e.message, Some(to_source_span(file, e.span))))
        .collect();
    (tokens, diags)
}

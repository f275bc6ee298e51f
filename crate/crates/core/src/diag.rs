//! Diagnostics shared by the parsers, the validator and the CLI.
//!
//! Every code emitted anywhere in the crate is listed in [`REGISTRY`]; the
//! test suite checks this.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
    Info,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
            Severity::Info => "info",
        })
    }
}

/// 1-based source region. `end_*` points at the last character covered.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SourceSpan {
    pub file: String,
    pub start_line: u32,
    pub start_col: u32,
    pub end_line: u32,
    pub end_col: u32,
}

impl SourceSpan {
    pub fn new(file: impl Into<String>, start: (u32, u32), end: (u32, u32)) -> Self {
        debug_assert!(start <= end);
        SourceSpan {
            file: file.into(),
            start_line: start.0,
            start_col: start.1,
            end_line: end.0,
            end_col: end.1,
        }
    }

    fn key(&self) -> (&str, u32, u32) {
        (&self.file, self.start_line, self.start_col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: &'static str,
    pub message: String,
    pub span: Option<SourceSpan>,
}

impl Diagnostic {
    pub fn error(code: &'static str, message: impl Into<String>, span: Option<SourceSpan>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            code,
            message: message.into(),
            span,
        }
    }

    pub fn warning(
        code: &'static str,
        message: impl Into<String>,
        span: Option<SourceSpan>,
    ) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            code,
            message: message.into(),
            span,
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    /// `file:line:col: severity CODE message`
    pub fn to_human(&self) -> String {
        match &self.span {
            Some(s) => format!(
                "{}:{}:{}: {} {} {}",
                s.file, s.start_line, s.start_col, self.severity, self.code, self.message
            ),
            None => format!(
                "<model>:0:0: {} {} {}",
                self.severity, self.code, self.message
            ),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (file, line, col) = match &self.span {
            Some(s) => (
                serde_json::Value::from(s.file.clone()),
                serde_json::Value::from(s.start_line),
                serde_json::Value::from(s.start_col),
            ),
            None => (
                serde_json::Value::Null,
                serde_json::Value::Null,
                serde_json::Value::Null,
            ),
        };
        serde_json::json!({
            "code": self.code,
            "severity": self.severity,
            "message": self.message,
            "file": file,
            "line": line,
            "col": col,
        })
    }
}

/// Orders by (file, line, column); diagnostics without a span go last.
/// Stable, so equal positions keep emission order.
pub fn sort_diagnostics(diags: &mut [Diagnostic]) {
    diags.sort_by(|a, b| match (&a.span, &b.span) {
        (Some(x), Some(y)) => x.key().cmp(&y.key()),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => Ordering::Equal,
    });
}

pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(Diagnostic::is_error)
}

/// Every diagnostic code the toolchain can emit, with its severity and a
/// short description.
pub const REGISTRY: &[(&str, Severity, &str)] = &[
    ("PAR001", Severity::Error, "unexpected token"),
    ("PAR002", Severity::Error, "unterminated string or comment"),
    ("PAR003", Severity::Error, "invalid character"),
    ("PAR004", Severity::Error, "invalid number literal"),
    ("PAR005", Severity::Error, "unknown keyword value"),
    (
        "PAR006",
        Severity::Error,
        "correspondence endpoint in the wrong model",
    ),
    (
        "PAR007",
        Severity::Error,
        "top-level UI element is not a container",
    ),
    ("PAR008", Severity::Error, "invalid escape sequence"),
    ("NAM001", Severity::Error, "duplicate view or flow name"),
    ("NAM002", Severity::Error, "duplicate member name in entity"),
    ("NAM003", Severity::Error, "duplicate entity name"),
    ("NAM004", Severity::Error, "duplicate UI element name"),
    ("NAM005", Severity::Error, "duplicate rule name"),
    (
        "NAM006",
        Severity::Error,
        "duplicate action node name in rule",
    ),
    ("NAM007", Severity::Error, "duplicate correspondence name"),
    (
        "NAM008",
        Severity::Error,
        "duplicate attribute or parameter name",
    ),
    ("NAM010", Severity::Error, "no entry view"),
    ("NAM011", Severity::Error, "more than one entry view"),
    ("VAL100", Severity::Error, "flow endpoint does not exist"),
    (
        "VAL101",
        Severity::Warning,
        "guard path not resolvable against the environment shape",
    ),
    ("VAL102", Severity::Error, "entry view does not exist"),
    (
        "VAL110",
        Severity::Error,
        "reference target entity does not exist",
    ),
    (
        "VAL111",
        Severity::Error,
        "declared operation collides with an implicit CRUD operation",
    ),
    (
        "VAL120",
        Severity::Error,
        "UI containment is not a forest of containers",
    ),
    ("VAL121", Severity::Error, "basic UI element has children"),
    (
        "VAL130",
        Severity::Error,
        "rule body has no entry node or duplicate node names",
    ),
    (
        "VAL131",
        Severity::Error,
        "action node unreachable from the rule entry",
    ),
    (
        "VAL132",
        Severity::Error,
        "control flow targets a missing action node",
    ),
    (
        "VAL200",
        Severity::Error,
        "ViewMainContainer endpoints are not a view and a top-level container",
    ),
    (
        "VAL201",
        Severity::Error,
        "view has more than one main container",
    ),
    ("VAL202", Severity::Warning, "view has no main container"),
    (
        "VAL203",
        Severity::Warning,
        "container is main container of several views",
    ),
    ("VAL204", Severity::Error, "duplicate correspondence name"),
    (
        "VAL210",
        Severity::Error,
        "AttributeLabel endpoints are not a property and a label",
    ),
    (
        "VAL220",
        Severity::Error,
        "ActionDataOperation endpoints do not match",
    ),
    (
        "VAL230",
        Severity::Error,
        "ElementEntityBinding endpoints are not a container and an entity",
    ),
    (
        "VAL231",
        Severity::Error,
        "NavItemFlow endpoints are not a navigation item and a flow leaving its view",
    ),
    (
        "VAL240",
        Severity::Error,
        "navigate action names a missing flow",
    ),
    (
        "VAL241",
        Severity::Error,
        "event target is missing or not interactive",
    ),
    ("VAL242", Severity::Error, "rule scope view does not exist"),
    (
        "VAL243",
        Severity::Error,
        "data action names a missing entity or operation",
    ),
    (
        "VAL244",
        Severity::Error,
        "data action has the wrong number of arguments",
    ),
    (
        "VAL245",
        Severity::Error,
        "UI update names a missing element",
    ),
];

pub fn lookup(code: &str) -> Option<(Severity, &'static str)> {
    REGISTRY
        .iter()
        .find(|(c, _, _)| *c == code)
        .map(|(_, s, d)| (*s, *d))
}

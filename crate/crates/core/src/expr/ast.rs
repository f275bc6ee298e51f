use std::fmt;

/// Comparison operators of the condition language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CompareOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl CompareOp {
    pub const ALL: [CompareOp; 6] = [
        CompareOp::Eq,
        CompareOp::Ne,
        CompareOp::Lt,
        CompareOp::Le,
        CompareOp::Gt,
        CompareOp::Ge,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            CompareOp::Eq => "==",
            CompareOp::Ne => "!=",
            CompareOp::Lt => "<",
            CompareOp::Le => "<=",
            CompareOp::Gt => ">",
            CompareOp::Ge => ">=",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Literal {
    Str(String),
    Int(i64),
    Float(f64),
    Bool(bool),
    Null,
}

/// A dotted access path such as `state.count`. Never empty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path(Vec<String>);

impl Path {
    /// Panics on an empty segment list.
    pub fn new<I, S>(segments: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let segments: Vec<String> = segments.into_iter().map(Into::into).collect();
        assert!(!segments.is_empty(), "path needs at least one segment");
        Path(segments)
    }

    pub fn segments(&self) -> &[String] {
        &self.0
    }

    pub fn root(&self) -> &str {
        &self.0[0]
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join("."))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Operand {
    Literal(Literal),
    Path(Path),
}

/// Boolean condition tree shared by navigation guards, control-flow
/// conditions and data-operation arguments.
///
/// `And`/`Or` always hold at least two children. A bare `Operand` is true
/// exactly when it evaluates to the boolean `true`.
#[derive(Debug, Clone, PartialEq)]
pub enum ConditionExpr {
    Or(Vec<ConditionExpr>),
    And(Vec<ConditionExpr>),
    Not(Box<ConditionExpr>),
    Compare {
        op: CompareOp,
        lhs: Operand,
        rhs: Operand,
    },
    Operand(Operand),
}

impl ConditionExpr {
    pub fn path<I, S>(segments: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        ConditionExpr::Operand(Operand::Path(Path::new(segments)))
    }

    pub fn literal(lit: Literal) -> Self {
        ConditionExpr::Operand(Operand::Literal(lit))
    }

    pub fn negation(inner: ConditionExpr) -> Self {
        ConditionExpr::Not(Box::new(inner))
    }

    pub fn compare(op: CompareOp, lhs: Operand, rhs: Operand) -> Self {
        ConditionExpr::Compare { op, lhs, rhs }
    }

    /// Checks the arity invariant of `And`/`Or` throughout the tree.
    pub fn is_well_formed(&self) -> bool {
        match self {
            ConditionExpr::Or(xs) | ConditionExpr::And(xs) => {
                xs.len() >= 2 && xs.iter().all(ConditionExpr::is_well_formed)
            }
            ConditionExpr::Not(inner) => inner.is_well_formed(),
            ConditionExpr::Compare { .. } | ConditionExpr::Operand(_) => true,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            ConditionExpr::Or(_) => 1,
            ConditionExpr::And(_) => 2,
            ConditionExpr::Not(_) => 3,
            ConditionExpr::Compare { .. } | ConditionExpr::Operand(_) => 4,
        }
    }
}

pub(crate) fn write_string_literal(f: &mut impl fmt::Write, s: &str) -> fmt::Result {
    f.write_char('"')?;
    for c in s.chars() {
        match c {
            '"' => f.write_str("\\\"")?,
            '\\' => f.write_str("\\\\")?,
            '\n' => f.write_str("\\n")?,
            '\t' => f.write_str("\\t")?,
            '\r' => f.write_str("\\r")?,
            c => f.write_char(c)?,
        }
    }
    f.write_char('"')
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Str(s) => write_string_literal(f, s),
            Literal::Int(i) => write!(f, "{i}"),
            // Debug keeps a decimal point or exponent, so the lexer reads it
            // back as a float.
            Literal::Float(x) => write!(f, "{x:?}"),
            Literal::Bool(b) => write!(f, "{b}"),
            Literal::Null => f.write_str("null"),
        }
    }
}

impl fmt::Display for Operand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operand::Literal(l) => l.fmt(f),
            Operand::Path(p) => p.fmt(f),
        }
    }
}

/// Canonical source form: single spaces, parentheses only where the tree
/// shape would otherwise be lost.
impl fmt::Display for ConditionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, e: &ConditionExpr, min: u8) -> fmt::Result {
            if e.precedence() <= min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            ConditionExpr::Or(xs) | ConditionExpr::And(xs) => {
                let (sep, prec) = match self {
                    ConditionExpr::Or(_) => (" or ", 1),
                    _ => (" and ", 2),
                };
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(sep)?;
                    }
                    child(f, x, prec)?;
                }
                Ok(())
            }
            ConditionExpr::Not(inner) => {
                f.write_str("not ")?;
                // `not not x` parses back as nested Not, so only and/or need parens.
                child(f, inner, 2)
            }
            ConditionExpr::Compare { op, lhs, rhs } => write!(f, "{lhs} {} {rhs}", op.symbol()),
            ConditionExpr::Operand(o) => o.fmt(f),
        }
    }
}

use super::ast::{CompareOp, ConditionExpr, Literal, Operand, Path};
use crate::dsl::cursor::{Cursor, SyntaxError};
use crate::dsl::lexer::{tokenize, TokenKind};

/// Words that cannot appear as path segments inside an expression.
pub const RESERVED: [&str; 6] = ["and", "or", "not", "true", "false", "null"];

/// Parses a standalone condition. The whole input must be consumed.
pub fn parse_expr(text: &str) -> Result<ConditionExpr, SyntaxError> {
    let (toks, errs) = tokenize(text);
    if let Some(e) = errs.first() {
        return Err(SyntaxError::custom(e.code, e.span, e.message.clone()));
    }
    let mut c = Cursor::new(&toks);
    let expr = parse_condition(&mut c)?;
    if !c.at_eof() {
        return Err(c.error(&["`and`", "`or`", "end of input"]));
    }
    Ok(expr)
}

/// Parses one expression and stops at the first token that cannot extend it.
pub(crate) fn parse_condition(c: &mut Cursor<'_>) -> Result<ConditionExpr, SyntaxError> {
    parse_or(c)
}

fn parse_or(c: &mut Cursor<'_>) -> Result<ConditionExpr, SyntaxError> {
    let first = parse_and(c)?;
    if !c.at_kw("or") {
        return Ok(first);
    }
    let mut items = vec![first];
    while c.eat_kw("or") {
        items.push(parse_and(c)?);
    }
    Ok(ConditionExpr::Or(items))
}

fn parse_and(c: &mut Cursor<'_>) -> Result<ConditionExpr, SyntaxError> {
    let first = parse_not(c)?;
    if !c.at_kw("and") {
        return Ok(first);
    }
    let mut items = vec![first];
    while c.eat_kw("and") {
        items.push(parse_not(c)?);
    }
    Ok(ConditionExpr::And(items))
}

fn parse_not(c: &mut Cursor<'_>) -> Result<ConditionExpr, SyntaxError> {
    if c.eat_kw("not") {
        return Ok(ConditionExpr::negation(parse_not(c)?));
    }
    parse_cmp(c)
}

fn compare_op(kind: &TokenKind) -> Option<CompareOp> {
    Some(match kind {
        TokenKind::EqEq => CompareOp::Eq,
        TokenKind::NotEq => CompareOp::Ne,
        TokenKind::Lt => CompareOp::Lt,
        TokenKind::Le => CompareOp::Le,
        TokenKind::Gt => CompareOp::Gt,
        TokenKind::Ge => CompareOp::Ge,
        _ => return None,
    })
}

fn parse_cmp(c: &mut Cursor<'_>) -> Result<ConditionExpr, SyntaxError> {
    if c.at(&TokenKind::LParen) {
        c.bump();
        let inner = parse_or(c)?;
        c.expect(&TokenKind::RParen)?;
        if compare_op(c.kind()).is_some() {
            return Err(SyntaxError::custom(
                "PAR001",
                c.span(),
                "a parenthesized condition cannot be compared; operands must be literals or paths",
            ));
        }
        return Ok(inner);
    }
    let lhs = parse_operand(c)?;
    let Some(op) = compare_op(c.kind()) else {
        return Ok(ConditionExpr::Operand(lhs));
    };
    c.bump();
    let rhs = parse_operand(c)?;
    if compare_op(c.kind()).is_some() {
        return Err(SyntaxError::custom(
            "PAR001",
            c.span(),
            "comparisons are non-associative; use `and` to chain them",
        ));
    }
    Ok(ConditionExpr::Compare { op, lhs, rhs })
}

const OPERAND_EXPECTED: &[&str] = &["literal", "path", "`(`", "`not`"];

fn parse_operand(c: &mut Cursor<'_>) -> Result<Operand, SyntaxError> {
    let lit = match c.kind() {
        TokenKind::Str(s) => Literal::Str(s.clone()),
        TokenKind::Int(i) => Literal::Int(*i),
        TokenKind::Float(x) => Literal::Float(*x),
        TokenKind::Ident(s) if s == "true" => Literal::Bool(true),
        TokenKind::Ident(s) if s == "false" => Literal::Bool(false),
        TokenKind::Ident(s) if s == "null" => Literal::Null,
        TokenKind::Ident(s) if !RESERVED.contains(&s.as_str()) => {
            return parse_path(c).map(Operand::Path);
        }
        _ => return Err(c.error(OPERAND_EXPECTED)),
    };
    c.bump();
    Ok(Operand::Literal(lit))
}

fn path_segment(c: &mut Cursor<'_>) -> Result<String, SyntaxError> {
    match c.kind() {
        TokenKind::Ident(s) if !RESERVED.contains(&s.as_str()) => {
            let s = s.clone();
            c.bump();
            Ok(s)
        }
        _ => Err(c.error(&["identifier"])),
    }
}

fn parse_path(c: &mut Cursor<'_>) -> Result<Path, SyntaxError> {
    let mut segs = vec![path_segment(c)?];
    while c.eat(&TokenKind::Dot) {
        segs.push(path_segment(c)?);
    }
    Ok(Path::new(segs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> ConditionExpr {
        parse_expr(s).unwrap_or_else(|e| panic!("{s}: {e}"))
    }

    #[test]
    fn precedence_and_over_or() {
        assert_eq!(
            p("a or b and c"),
            ConditionExpr::Or(vec![
                ConditionExpr::path(["a"]),
                ConditionExpr::And(vec![ConditionExpr::path(["b"]), ConditionExpr::path(["c"])]),
            ])
        );
    }

    #[test]
    fn not_binds_tighter_than_and() {
        assert_eq!(
            p("not state.loggedIn"),
            ConditionExpr::negation(ConditionExpr::path(["state", "loggedIn"]))
        );
        assert_eq!(
            p("not a and b"),
            ConditionExpr::And(vec![
                ConditionExpr::negation(ConditionExpr::path(["a"])),
                ConditionExpr::path(["b"])
            ])
        );
    }

    #[test]
    fn comparison_literals() {
        assert_eq!(
            p("x.y >= -2.5"),
            ConditionExpr::compare(
                CompareOp::Ge,
                Operand::Path(Path::new(["x", "y"])),
                Operand::Literal(Literal::Float(-2.5))
            )
        );
        assert_eq!(
            p(r#"name == "R\"ome""#),
            ConditionExpr::compare(
                CompareOp::Eq,
                Operand::Path(Path::new(["name"])),
                Operand::Literal(Literal::Str("R\"ome".into()))
            )
        );
    }

    #[test]
    fn comparisons_are_non_associative() {
        let e = parse_expr("a == b == c").unwrap_err();
        assert_eq!(e.code, "PAR001");
        assert_eq!((e.line(), e.col()), (1, 8));
    }

    #[test]
    fn syntax_error_reports_expected_set() {
        let e = parse_expr("a and").unwrap_err();
        assert_eq!(e.expected, vec!["literal", "path", "`(`", "`not`"]);
        assert_eq!(e.found, "end of file");
        assert!(parse_expr("(a").is_err());
        assert!(parse_expr("a b").is_err());
        assert!(parse_expr("x.and").is_err());
        assert!(parse_expr("(a or b) == true").is_err());
    }

    #[test]
    fn parentheses_keep_nesting() {
        assert_eq!(
            p("a and (b and c)"),
            ConditionExpr::And(vec![
                ConditionExpr::path(["a"]),
                ConditionExpr::And(vec![ConditionExpr::path(["b"]), ConditionExpr::path(["c"])]),
            ])
        );
        assert_eq!(p("((a))"), ConditionExpr::path(["a"]));
    }

    #[test]
    fn print_is_canonical() {
        for src in [
            "a or b and c",
            "(a or b) and c",
            "not (a and b)",
            "not not a",
            "a and (b and c)",
            "x.y != null",
            "s == \"q\\\\\\\"\"",
            "f < 1.0 or f > 1e20",
        ] {
            assert_eq!(p(src).to_string(), src);
        }
        assert_eq!(p("( a  or b)and c").to_string(), "(a or b) and c");
    }
}

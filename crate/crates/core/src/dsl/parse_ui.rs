use std::collections::{BTreeMap, BTreeSet};

use super::cursor::SyntaxError;
use super::lexer::TokenKind;
use super::{lex, ParseRun, Parsed};
use crate::model::{ElementId, ElementKind, ModelKind, UiElement, UiModel};

/// Parses a `.ui` file. Elements are `kind name [attr="v", ...]`; containers
/// take a `{ ... }` block of children, basic elements take none.
///
/// ```text
/// container homeMain {
///   label title [text="Welcome"]
///   button addButton [text="Add"]
/// }
/// ```
pub fn parse_ui(text: &str, file: &str) -> Parsed<UiModel> {
    let (tokens, lex_diags) = lex(text, file);
    let mut run = ParseRun::new(&tokens, file, lex_diags);
    let mut roots = Vec::new();
    let mut names = BTreeSet::new();

    while !run.c.at_eof() {
        let start = run.c.span();
        match element(&mut run, &mut names) {
            Ok(Some(e)) => {
                if !e.kind.is_container() {
                    let span = run.since(start);
                    run.error_at(
                        "PAR007",
                        span,
                        format!("top-level element `{}` must be a container", e.name()),
                    );
                }
                roots.push(e);
            }
            Ok(None) => {}
            Err(e) => {
                run.report(e);
                run.c.bump();
                run.c.skip_until(|c| at_kind(c));
            }
        }
    }
    run.finish(|| UiModel::new(roots).ok())
}

fn at_kind(c: &super::cursor::Cursor<'_>) -> bool {
    matches!(c.kind(), TokenKind::Ident(s) if ElementKind::from_keyword(s).is_some())
}

const KIND_NAMES: [&str; 11] = [
    "`button`",
    "`label`",
    "`map`",
    "`image`",
    "`navigationItem`",
    "`textInput`",
    "`listItems`",
    "`grid`",
    "`menu`",
    "`navigationBar`",
    "`container`",
];

/// Parses one element. Errors inside a container body are reported and
/// recovered there; `Ok(None)` means the element was dropped after recovery.
fn element(
    run: &mut ParseRun<'_>,
    names: &mut BTreeSet<String>,
) -> Result<Option<UiElement>, SyntaxError> {
    let start = run.c.span();
    let kind = match run.c.kind() {
        TokenKind::Ident(s) => match ElementKind::from_keyword(s) {
            Some(k) => k,
            None => {
                let mut e = run.c.error(&KIND_NAMES);
                e.code = "PAR005";
                e.found = format!("unknown element kind `{s}`");
                return Err(e);
            }
        },
        _ => return Err(run.c.error(&KIND_NAMES)),
    };
    run.c.bump();
    let (name, _) = run.c.ident("element name")?;
    let id = ElementId::simple(ModelKind::UI, &name);
    let mut attributes = BTreeMap::new();
    if run.c.eat(&TokenKind::LBracket) {
        if !run.c.at(&TokenKind::RBracket) {
            loop {
                let (key, kspan) = run.c.ident("attribute name")?;
                run.c.expect(&TokenKind::Assign)?;
                let (value, _) = run.c.string("attribute value")?;
                if attributes.insert(key.clone(), value).is_some() {
                    run.error_at(
                        "NAM008",
                        kspan,
                        format!("duplicate attribute `{key}` on `{name}`"),
                    );
                }
                if !run.c.eat(&TokenKind::Comma) {
                    break;
                }
            }
        }
        run.c.expect(&TokenKind::RBracket)?;
    }
    let header = run.since(start);
    if !names.insert(name.clone()) {
        run.error_at("NAM004", header, format!("duplicate UI element `{name}`"));
    }

    let mut children = Vec::new();
    let mut ok = true;
    if kind.is_container() {
        run.c.expect(&TokenKind::LBrace)?;
        loop {
            if run.c.eat(&TokenKind::RBrace) {
                break;
            }
            if run.c.at_eof() {
                return Err(run.c.error(&["`}`"]));
            }
            match element(run, names) {
                Ok(Some(child)) => children.push(child),
                Ok(None) => ok = false,
                Err(e) => {
                    ok = false;
                    run.report(e);
                    run.c.bump();
                    run.c.skip_until(|c| at_kind(c) || c.at(&TokenKind::RBrace));
                }
            }
        }
    } else if run.c.at(&TokenKind::LBrace) {
        return Err(SyntaxError::custom(
            "PAR001",
            run.c.span(),
            format!("basic element `{name}` cannot have children"),
        ));
    }
    let span = run.since(start);
    run.record(&id, span);
    Ok(ok.then_some(UiElement {
        id,
        kind,
        children,
        attributes,
    }))
}

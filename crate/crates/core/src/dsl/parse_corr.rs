use std::collections::BTreeSet;

use super::cursor::{Cursor, SyntaxError};
use super::lexer::TokenKind;
use super::{lex, ParseRun, Parsed};
use crate::model::{Correspondence, CorrespondenceType, ElementId, ModelKind};

const CTYPES: [(&str, CorrespondenceType); 5] = [
    ("ViewMainContainer", CorrespondenceType::ViewMainContainer),
    ("AttributeLabel", CorrespondenceType::AttributeLabel),
    (
        "ActionDataOperation",
        CorrespondenceType::ActionDataOperation,
    ),
    (
        "ElementEntityBinding",
        CorrespondenceType::ElementEntityBinding,
    ),
    ("NavItemFlow", CorrespondenceType::NavItemFlow),
];

const KINDS: [(&str, ModelKind); 4] = [
    ("Navigation", ModelKind::Navigation),
    ("Data", ModelKind::Data),
    ("UI", ModelKind::UI),
    ("BusinessLogic", ModelKind::BusinessLogic),
];

/// Parses a `.corr` file, one link per statement:
///
/// ```text
/// correspond ViewMainContainer homeMain <-> Navigation:home UI:homeScreen
/// ```
pub fn parse_correspondences(text: &str, file: &str) -> Parsed<Vec<Correspondence>> {
    let (tokens, lex_diags) = lex(text, file);
    let mut run = ParseRun::new(&tokens, file, lex_diags);
    let mut out = Vec::new();
    let mut names = BTreeSet::new();

    while !run.c.at_eof() {
        let start = run.c.span();
        match corr_decl(&mut run.c) {
            Ok(Ok(corr)) => {
                let span = run.since(start);
                if !names.insert(corr.name().to_string()) {
                    run.error_at(
                        "NAM007",
                        span,
                        format!("duplicate correspondence `{}`", corr.name()),
                    );
                }
                run.record(&corr.id, span);
                out.push(corr);
            }
            Ok(Err(msg)) => {
                let span = run.since(start);
                run.error_at("PAR006", span, msg);
            }
            Err(e) => {
                run.report(e);
                run.c.bump();
                run.c.skip_until(|c| c.at_kw("correspond"));
            }
        }
    }
    run.finish(|| Some(out))
}

fn qualified_id(c: &mut Cursor<'_>) -> Result<ElementId, SyntaxError> {
    let kind = c.keyword_value("model kind", &KINDS)?;
    c.expect(&TokenKind::Colon)?;
    let mut segs = vec![c.ident("identifier")?.0];
    while c.eat(&TokenKind::Dot) {
        segs.push(c.ident("identifier")?.0);
    }
    Ok(ElementId::new(kind, segs).expect("lexer identifiers are valid"))
}

/// Outer error: syntax. Inner error: endpoints in the wrong models.
fn corr_decl(c: &mut Cursor<'_>) -> Result<Result<Correspondence, String>, SyntaxError> {
    c.expect_kw("correspond")?;
    let ctype = c.keyword_value("correspondence type", &CTYPES)?;
    let (name, _) = c.ident("correspondence name")?;
    c.expect(&TokenKind::BiArrow)?;
    let left = qualified_id(c)?;
    let right = qualified_id(c)?;
    Ok(Correspondence::new(&name, ctype, left, right).map_err(|e| e.to_string()))
}

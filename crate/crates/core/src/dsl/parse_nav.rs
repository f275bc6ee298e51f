use std::collections::BTreeMap;

use super::cursor::SyntaxError;
use super::lexer::{Span, TokenKind};
use super::{lex, ParseRun, Parsed};
use crate::expr::parse_condition;
use crate::model::{ElementId, ModelKind, NavigationFlow, NavigationModel, View};

/// Parses a `.nav` file:
///
/// ```text
/// view home "Home" entry
/// flow toList: home -> list when session.ready == true
/// ```
pub fn parse_navigation(text: &str, file: &str) -> Parsed<NavigationModel> {
    let (tokens, lex_diags) = lex(text, file);
    let mut run = ParseRun::new(&tokens, file, lex_diags);
    let mut views: Vec<(View, Span)> = Vec::new();
    let mut flows: Vec<(NavigationFlow, Span)> = Vec::new();
    let mut entries: Vec<(String, Span)> = Vec::new();

    while !run.c.at_eof() {
        let start = run.c.span();
        let result = if run.c.at_kw("view") {
            view_decl(&mut run).map(|(v, entry)| {
                let span = run.since(start);
                if let Some(entry_span) = entry {
                    entries.push((v.name.clone(), entry_span));
                }
                views.push((v, span));
            })
        } else if run.c.at_kw("flow") {
            flow_decl(&mut run).map(|f| {
                let span = run.since(start);
                flows.push((f, span));
            })
        } else {
            let e = run.c.error(&["`view`", "`flow`"]);
            run.c.bump();
            Err(e)
        };
        if let Err(e) = result {
            run.report(e);
            run.c.skip_until(|c| c.at_kw("view") || c.at_kw("flow"));
        }
    }

    let mut seen: BTreeMap<&str, ()> = BTreeMap::new();
    let names = views
        .iter()
        .map(|(v, s)| (v.name.as_str(), *s))
        .chain(flows.iter().map(|(f, s)| (f.name.as_str(), *s)));
    let mut dups = Vec::new();
    for (name, span) in names {
        if seen.insert(name, ()).is_some() {
            dups.push((name.to_string(), span));
        }
    }
    for (name, span) in dups {
        run.error_at(
            "NAM001",
            span,
            format!("duplicate view or flow name `{name}`"),
        );
    }

    match entries.as_slice() {
        [] => {
            let at = Span {
                start: super::lexer::Pos { line: 1, col: 1 },
                end: super::lexer::Pos { line: 1, col: 1 },
            };
            run.error_at("NAM010", at, "no entry view: mark one view with `entry`");
        }
        [_] => {}
        [_, rest @ ..] => {
            for (name, span) in rest.iter().cloned() {
                run.error_at(
                    "NAM011",
                    span,
                    format!("view `{name}` is a second entry view"),
                );
            }
        }
    }

    for (v, s) in &views {
        run.record(&v.id, *s);
    }
    for (f, s) in &flows {
        run.record(&f.id, *s);
    }
    let entry = entries
        .first()
        .map(|(name, _)| ElementId::simple(ModelKind::Navigation, name));
    run.finish(|| {
        NavigationModel::new(
            views.into_iter().map(|(v, _)| v).collect(),
            flows.into_iter().map(|(f, _)| f).collect(),
            entry,
        )
        .ok()
    })
}

fn view_decl(run: &mut ParseRun<'_>) -> Result<(View, Option<Span>), SyntaxError> {
    run.c.expect_kw("view")?;
    let (name, _) = run.c.ident("view name")?;
    let (title, _) = run.c.string("view title")?;
    let entry = if run.c.at_kw("entry") {
        Some(run.c.bump().span)
    } else {
        None
    };
    Ok((
        View::new(&name, title).expect("lexer identifiers are valid"),
        entry,
    ))
}

fn flow_decl(run: &mut ParseRun<'_>) -> Result<NavigationFlow, SyntaxError> {
    run.c.expect_kw("flow")?;
    let (name, _) = run.c.ident("flow name")?;
    run.c.expect(&TokenKind::Colon)?;
    let (source, _) = run.c.ident("source view")?;
    run.c.expect(&TokenKind::Arrow)?;
    let (target, _) = run.c.ident("target view")?;
    let guard = if run.c.eat_kw("when") {
        Some(parse_condition(&mut run.c)?)
    } else {
        None
    };
    Ok(NavigationFlow::new(&name, &source, &target, guard).expect("lexer identifiers are valid"))
}

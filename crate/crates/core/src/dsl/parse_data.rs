use std::collections::BTreeSet;

use super::cursor::SyntaxError;
use super::lexer::TokenKind;
use super::{lex, ParseRun, Parsed};
use crate::model::{
    Cardinality, DataModel, DataOperation, ElementId, Entity, ModelKind, Param, PrimitiveType,
    Property, Reference,
};

const PTYPES: [(&str, PrimitiveType); 6] = [
    ("string", PrimitiveType::String),
    ("integer", PrimitiveType::Integer),
    ("float", PrimitiveType::Float),
    ("boolean", PrimitiveType::Boolean),
    ("date", PrimitiveType::Date),
    ("url", PrimitiveType::Url),
];

const CARDINALITIES: [(&str, Cardinality); 2] =
    [("one", Cardinality::One), ("many", Cardinality::Many)];

enum Member {
    Prop(Property),
    Op(DataOperation),
    Ref(Reference),
}

impl Member {
    fn name(&self) -> &str {
        match self {
            Member::Prop(p) => &p.name,
            Member::Op(o) => &o.name,
            Member::Ref(r) => &r.name,
        }
    }
}

/// Parses a `.data` file:
///
/// ```text
/// entity City {
///   prop name: string
///   op rate(stars: integer): float
///   ref country: Country one
/// }
/// ```
pub fn parse_data(text: &str, file: &str) -> Parsed<DataModel> {
    let (tokens, lex_diags) = lex(text, file);
    let mut run = ParseRun::new(&tokens, file, lex_diags);
    let mut entities = Vec::new();
    let mut names = BTreeSet::new();

    while !run.c.at_eof() {
        if !run.c.at_kw("entity") {
            let e = run.c.error(&["`entity`"]);
            run.report(e);
            run.c.bump();
            run.c.skip_until(|c| c.at_kw("entity"));
            continue;
        }
        if let Some(entity) = entity_decl(&mut run, &mut names) {
            entities.push(entity);
        }
    }
    run.finish(|| DataModel::new(entities).ok())
}

fn entity_decl(run: &mut ParseRun<'_>, names: &mut BTreeSet<String>) -> Option<Entity> {
    let start = run.c.span();
    let header = (|| {
        run.c.expect_kw("entity")?;
        let (name, _) = run.c.ident("entity name")?;
        run.c.expect(&TokenKind::LBrace)?;
        Ok::<_, SyntaxError>(name)
    })();
    let name = match header {
        Ok(n) => n,
        Err(e) => {
            run.report(e);
            run.c.skip_until(|c| c.at_kw("entity"));
            return None;
        }
    };
    if !names.insert(name.clone()) {
        let span = run.since(start);
        run.error_at("NAM003", span, format!("duplicate entity `{name}`"));
    }
    let entity_id = ElementId::simple(ModelKind::Data, &name);
    let mut members: Vec<Member> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut broken = false;
    loop {
        if run.c.eat(&TokenKind::RBrace) {
            break;
        }
        if run.c.at_eof() || run.c.at_kw("entity") {
            let e = run.c.error(&["`}`"]);
            run.report(e);
            broken = true;
            break;
        }
        let mstart = run.c.span();
        match member(run) {
            Ok(m) => {
                let span = run.since(mstart);
                if !seen.insert(m.name().to_string()) {
                    run.error_at(
                        "NAM002",
                        span,
                        format!("duplicate member `{}` in entity `{name}`", m.name()),
                    );
                }
                run.record(&entity_id.child(m.name()), span);
                members.push(m);
            }
            Err(e) => {
                run.report(e);
                run.c.bump();
                run.c.skip_until(|c| {
                    c.at_kw("prop")
                        || c.at_kw("op")
                        || c.at_kw("ref")
                        || c.at_kw("entity")
                        || c.at(&TokenKind::RBrace)
                });
            }
        }
    }
    let span = run.since(start);
    run.record(&entity_id, span);
    if broken {
        return None;
    }
    let mut props = Vec::new();
    let mut ops = Vec::new();
    let mut refs = Vec::new();
    for m in members {
        match m {
            Member::Prop(p) => props.push(p),
            Member::Op(o) => ops.push(o),
            Member::Ref(r) => refs.push(r),
        }
    }
    // Duplicates were already reported; keep parsing the rest of the file.
    Entity::new(&name, props, ops, refs).ok()
}

fn member(run: &mut ParseRun<'_>) -> Result<Member, SyntaxError> {
    if run.c.eat_kw("prop") {
        let (name, _) = run.c.ident("property name")?;
        run.c.expect(&TokenKind::Colon)?;
        let ptype = run.c.keyword_value("type", &PTYPES)?;
        Ok(Member::Prop(Property { name, ptype }))
    } else if run.c.eat_kw("op") {
        let (name, _) = run.c.ident("operation name")?;
        run.c.expect(&TokenKind::LParen)?;
        let mut params: Vec<Param> = Vec::new();
        if !run.c.at(&TokenKind::RParen) {
            loop {
                let (pname, pspan) = run.c.ident("parameter name")?;
                run.c.expect(&TokenKind::Colon)?;
                let ptype = run.c.keyword_value("type", &PTYPES)?;
                if params.iter().any(|p| p.name == pname) {
                    run.error_at("NAM008", pspan, format!("duplicate parameter `{pname}`"));
                }
                params.push(Param { name: pname, ptype });
                if !run.c.eat(&TokenKind::Comma) {
                    break;
                }
            }
        }
        run.c.expect(&TokenKind::RParen)?;
        let returns = if run.c.eat(&TokenKind::Colon) {
            Some(run.c.keyword_value("type", &PTYPES)?)
        } else {
            None
        };
        Ok(Member::Op(DataOperation::custom(&name, params, returns)))
    } else if run.c.eat_kw("ref") {
        let (name, _) = run.c.ident("reference name")?;
        run.c.expect(&TokenKind::Colon)?;
        let (target, _) = run.c.ident("target entity")?;
        let cardinality = run.c.keyword_value("cardinality", &CARDINALITIES)?;
        Ok(Member::Ref(Reference {
            name,
            target: ElementId::simple(ModelKind::Data, &target),
            cardinality,
        }))
    } else {
        Err(run.c.error(&["`prop`", "`op`", "`ref`", "`}`"]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_entity() {
        let p = parse_data("entity City { prop name: string }", "d.data");
        let m = p.model.expect("parses");
        assert_eq!(m.entities().len(), 1);
        assert_eq!(m.entities()[0].properties[0].ptype, PrimitiveType::String);
    }

    #[test]
    fn empty_file_is_empty_model() {
        let p = parse_data("  // nothing\n", "d.data");
        assert!(p.diagnostics.is_empty());
        assert!(p.model.unwrap().is_empty());
    }

    #[test]
    fn members_of_every_kind() {
        let src = "entity City {\n  prop name: string\n  op rate(stars: integer, note: string): float\n  op ping()\n  ref country: Country one\n}\nentity Country {}\n";
        let m = parse_data(src, "d.data").model.expect("parses");
        let city = m.entity("City").unwrap();
        assert_eq!(city.operations[0].params.len(), 2);
        assert_eq!(city.operations[0].returns, Some(PrimitiveType::Float));
        assert_eq!(city.operations[1].returns, None);
        assert_eq!(city.references[0].cardinality, Cardinality::One);
    }

    #[test]
    fn unknown_type_and_duplicates() {
        let p = parse_data(
            "entity A { prop x: text prop y: integer prop y: string }\nentity A {}\n",
            "d.data",
        );
        assert!(p.model.is_none());
        let codes: Vec<_> = p.diagnostics.iter().map(|d| d.code).collect();
        assert_eq!(codes, vec!["PAR005", "NAM002", "NAM003"]);
    }

    #[test]
    fn crud_names_are_accepted_by_the_parser() {
        // rejected later by validation (VAL111)
        let p = parse_data("entity A { op create() }", "d.data");
        assert!(p.model.is_some());
    }
}

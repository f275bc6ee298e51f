use std::collections::BTreeSet;

use super::cursor::{Cursor, SyntaxError};
use super::lexer::TokenKind;
use super::{lex, ParseRun, Parsed};
use crate::expr::parse_condition;
use crate::model::{
    Action, ActionNode, BusinessLogicModel, Capability, ControlFlow, ControlGraph, EcaRule,
    ElementId, Event, Gesture, ModelKind, UiUpdate,
};

const CAPABILITIES: [(&str, Capability); 4] = [
    ("gps", Capability::Gps),
    ("camera", Capability::Camera),
    ("network", Capability::Network),
    ("battery", Capability::Battery),
];

const UPDATES: [(&str, UiUpdate); 4] = [
    ("setText", UiUpdate::SetText),
    ("show", UiUpdate::Show),
    ("hide", UiUpdate::Hide),
    ("refresh", UiUpdate::Refresh),
];

/// Parses a `.bl` file of event-condition-action rules:
///
/// ```text
/// rule addCity in home on tap addButton do {
///   store: data City.create(form.name, 3) as city -> open if city != null
///   open: goto toDetail
/// }
/// ```
///
/// The first node of a body is its entry.
pub fn parse_logic(text: &str, file: &str) -> Parsed<BusinessLogicModel> {
    let (tokens, lex_diags) = lex(text, file);
    let mut run = ParseRun::new(&tokens, file, lex_diags);
    let mut rules = Vec::new();
    let mut names = BTreeSet::new();

    while !run.c.at_eof() {
        if !run.c.at_kw("rule") {
            let e = run.c.error(&["`rule`"]);
            run.report(e);
            run.c.bump();
            run.c.skip_until(|c| c.at_kw("rule"));
            continue;
        }
        if let Some(rule) = rule_decl(&mut run, &mut names) {
            rules.push(rule);
        }
    }
    run.finish(|| BusinessLogicModel::new(rules).ok())
}

fn at_node_start(c: &Cursor<'_>) -> bool {
    matches!(c.kind(), TokenKind::Ident(_)) && matches!(c.nth(1), TokenKind::Colon)
}

fn rule_decl(run: &mut ParseRun<'_>, names: &mut BTreeSet<String>) -> Option<EcaRule> {
    let start = run.c.span();
    let header = (|| {
        run.c.expect_kw("rule")?;
        let (name, _) = run.c.ident("rule name")?;
        let scope = if run.c.eat_kw("in") {
            let (view, _) = run.c.ident("view name")?;
            Some(ElementId::simple(ModelKind::Navigation, &view))
        } else {
            None
        };
        run.c.expect_kw("on")?;
        let trigger = event(&mut run.c)?;
        run.c.expect_kw("do")?;
        run.c.expect(&TokenKind::LBrace)?;
        Ok::<_, SyntaxError>((name, scope, trigger))
    })();
    let (name, scope, trigger) = match header {
        Ok(h) => h,
        Err(e) => {
            run.report(e);
            run.c.skip_until(|c| c.at_kw("rule"));
            return None;
        }
    };
    if !names.insert(name.clone()) {
        let span = run.since(start);
        run.error_at("NAM005", span, format!("duplicate rule `{name}`"));
    }
    let rule_id = ElementId::simple(ModelKind::BusinessLogic, &name);
    let mut nodes = Vec::new();
    let mut node_names = BTreeSet::new();
    let mut ok = true;
    loop {
        if run.c.eat(&TokenKind::RBrace) {
            break;
        }
        if run.c.at_eof() || run.c.at_kw("rule") && !matches!(run.c.nth(1), TokenKind::Colon) {
            let e = run.c.error(&["`}`"]);
            run.report(e);
            ok = false;
            break;
        }
        let nstart = run.c.span();
        match node(run, &rule_id) {
            Ok(n) => {
                let span = run.since(nstart);
                if !node_names.insert(n.name().to_string()) {
                    run.error_at(
                        "NAM006",
                        span,
                        format!("duplicate action node `{}` in rule `{name}`", n.name()),
                    );
                }
                run.record(&n.id, span);
                nodes.push(n);
            }
            Err(e) => {
                ok = false;
                run.report(e);
                run.c.bump();
                run.c.skip_until(|c| {
                    at_node_start(c) || c.at(&TokenKind::RBrace) || c.at_kw("rule")
                });
            }
        }
    }
    let span = run.since(start);
    run.record(&rule_id, span);
    ok.then_some(EcaRule {
        id: rule_id,
        scope,
        trigger,
        body: ControlGraph { nodes },
    })
}

fn event(c: &mut Cursor<'_>) -> Result<Event, SyntaxError> {
    if c.eat_kw("device") {
        let capability = c.keyword_value("capability", &CAPABILITIES)?;
        let (signal, _) = c.ident("signal name")?;
        return Ok(Event::DeviceCapability { capability, signal });
    }
    if c.eat_kw("app") {
        let (name, _) = c.ident("event name")?;
        return Ok(Event::ApplicationSpecific { name });
    }
    let mut e = c.error(&["`tap`", "`longPress`", "`swipe`", "`device`", "`app`"]);
    let gesture = match c.kind() {
        TokenKind::Ident(s) => match Gesture::from_name(s) {
            Some(g) => g,
            None => {
                e.code = "PAR005";
                return Err(e);
            }
        },
        _ => return Err(e),
    };
    c.bump();
    let (target, _) = c.ident("UI element name")?;
    Ok(Event::UserInteraction {
        gesture,
        target: ElementId::simple(ModelKind::UI, &target),
    })
}

fn bind_as(c: &mut Cursor<'_>) -> Result<Option<String>, SyntaxError> {
    if c.eat_kw("as") {
        Ok(Some(c.ident("binding name")?.0))
    } else {
        Ok(None)
    }
}

fn node(run: &mut ParseRun<'_>, rule: &ElementId) -> Result<ActionNode, SyntaxError> {
    let c = &mut run.c;
    let (name, _) = c.ident("action node name")?;
    c.expect(&TokenKind::Colon)?;
    let action = if c.eat_kw("data") {
        let (entity, _) = c.ident("entity name")?;
        c.expect(&TokenKind::Dot)?;
        let (operation, _) = c.ident("operation name")?;
        c.expect(&TokenKind::LParen)?;
        let mut args = Vec::new();
        if !c.at(&TokenKind::RParen) {
            loop {
                args.push(parse_condition(c)?);
                if !c.eat(&TokenKind::Comma) {
                    break;
                }
            }
        }
        c.expect(&TokenKind::RParen)?;
        Action::DataOp {
            entity: ElementId::simple(ModelKind::Data, &entity),
            operation,
            args,
            bind_as: bind_as(c)?,
        }
    } else if c.eat_kw("ui") {
        let (element, _) = c.ident("UI element name")?;
        let update = c.keyword_value("UI update", &UPDATES)?;
        let value = if update == UiUpdate::SetText {
            Some(parse_condition(c)?)
        } else {
            None
        };
        Action::UiUpdate {
            element: ElementId::simple(ModelKind::UI, &element),
            update,
            value,
        }
    } else if c.eat_kw("goto") {
        let (flow, _) = c.ident("flow name")?;
        Action::Navigate {
            flow: ElementId::simple(ModelKind::Navigation, &flow),
        }
    } else if c.eat_kw("device") {
        let capability = c.keyword_value("capability", &CAPABILITIES)?;
        let (request, _) = c.ident("request name")?;
        Action::DeviceAccess {
            capability,
            request,
            bind_as: bind_as(c)?,
        }
    } else {
        return Err(c.error(&["`data`", "`ui`", "`goto`", "`device`"]));
    };
    let mut outgoing = Vec::new();
    while c.eat(&TokenKind::Arrow) {
        let (target, _) = c.ident("action node name")?;
        let condition = if c.eat_kw("if") {
            Some(parse_condition(c)?)
        } else {
            None
        };
        outgoing.push(ControlFlow {
            target: rule.child(&target),
            condition,
        });
    }
    Ok(ActionNode {
        id: rule.child(&name),
        action,
        outgoing,
    })
}

use std::collections::{BTreeMap, BTreeSet};

use crate::diag::Diagnostic;
use crate::model::{
    Action, BasicKind, CorrespondenceType, ElementId, ElementKind, Event, ModelElement, ModelKind,
    ModelSet,
};

/// Correspondence typing plus the business-logic references into the other
/// models. Checks needing a model absent from `models` are skipped.
pub fn validate_models_cross(models: &ModelSet<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    check_correspondences(models, &mut out);
    check_logic_references(models, &mut out);
    out
}

fn check_correspondences(models: &ModelSet<'_>, out: &mut Vec<Diagnostic>) {
    let mut names = BTreeSet::new();
    // view -> main containers, container -> views, in declaration order
    let mut mains: BTreeMap<ElementId, Vec<ElementId>> = BTreeMap::new();
    let mut main_of: BTreeMap<ElementId, Vec<ElementId>> = BTreeMap::new();

    for c in models.correspondences {
        let span = models.span(&c.id);
        if !names.insert(c.name()) {
            out.push(Diagnostic::error(
                "VAL204",
                format!("duplicate correspondence `{}`", c.name()),
                span.clone(),
            ));
        }
        let (lk, rk) = c.ctype.endpoints();
        if !models.has(lk) || !models.has(rk) {
            continue;
        }
        let left = models.resolve(&c.left);
        let right = models.resolve(&c.right);
        let name = c.name();
        match c.ctype {
            CorrespondenceType::ViewMainContainer => {
                let ok_left = matches!(left, Some(ModelElement::View(_)));
                let ok_right = matches!(right, Some(ModelElement::UiElement(e))
                    if e.kind.is_container() && models.ui.is_some_and(|ui| ui.is_root(&e.id)));
                if !(ok_left && ok_right) {
                    out.push(Diagnostic::error(
                        "VAL200",
                        format!(
                            "`{name}` must link a view to a top-level container, found `{}` and `{}`",
                            c.left, c.right
                        ),
                        span,
                    ));
                    continue;
                }
                let views = main_of.entry(c.right.clone()).or_default();
                let containers = mains.entry(c.left.clone()).or_default();
                if !containers.is_empty() {
                    out.push(Diagnostic::error(
                        "VAL201",
                        format!(
                            "view `{}` already has main container `{}`; `{name}` adds `{}`",
                            c.left.dotted(),
                            containers[0].dotted(),
                            c.right.dotted()
                        ),
                        span.clone(),
                    ));
                }
                if !views.is_empty() && !views.contains(&c.left) {
                    out.push(Diagnostic::warning(
                        "VAL203",
                        format!(
                            "container `{}` is the main container of `{}` and `{}`",
                            c.right.dotted(),
                            views[0].dotted(),
                            c.left.dotted()
                        ),
                        span,
                    ));
                }
                containers.push(c.right.clone());
                views.push(c.left.clone());
            }
            CorrespondenceType::AttributeLabel => {
                let ok = matches!(left, Some(ModelElement::Property(..)))
                    && matches!(right, Some(ModelElement::UiElement(e))
                        if e.kind == ElementKind::Basic(BasicKind::Label));
                if !ok {
                    out.push(Diagnostic::error(
                        "VAL210",
                        format!(
                            "`{name}` must link an entity property to a label, found `{}` and `{}`",
                            c.left, c.right
                        ),
                        span,
                    ));
                }
            }
            CorrespondenceType::ActionDataOperation => {
                let ok = match (left, right) {
                    (
                        Some(ModelElement::Action(
                            _,
                            crate::model::ActionNode {
                                action:
                                    Action::DataOp {
                                        entity, operation, ..
                                    },
                                ..
                            },
                        )),
                        Some(ModelElement::Operation(target, op)),
                    ) => entity == &target.id && operation == op.name(),
                    _ => false,
                };
                if !ok {
                    out.push(Diagnostic::error(
                        "VAL220",
                        format!(
                            "`{name}` must link a data action to the operation it performs, found `{}` and `{}`",
                            c.left, c.right
                        ),
                        span,
                    ));
                }
            }
            CorrespondenceType::ElementEntityBinding => {
                let ok = matches!(left, Some(ModelElement::UiElement(e)) if e.kind.is_container())
                    && matches!(right, Some(ModelElement::Entity(_)));
                if !ok {
                    out.push(Diagnostic::error(
                        "VAL230",
                        format!(
                            "`{name}` must link a container to an entity, found `{}` and `{}`",
                            c.left, c.right
                        ),
                        span,
                    ));
                }
            }
            CorrespondenceType::NavItemFlow => {}
        }
    }

    // NavItemFlow needs the complete main-container table.
    for c in models.correspondences {
        if c.ctype != CorrespondenceType::NavItemFlow
            || !models.has(ModelKind::UI)
            || !models.has(ModelKind::Navigation)
        {
            continue;
        }
        let item = match models.resolve(&c.left) {
            Some(ModelElement::UiElement(e))
                if e.kind == ElementKind::Basic(BasicKind::NavigationItem) =>
            {
                e
            }
            _ => {
                out.push(Diagnostic::error(
                    "VAL231",
                    format!("`{}`: `{}` is not a navigation item", c.name(), c.left),
                    models.span(&c.id),
                ));
                continue;
            }
        };
        let flow = match models.resolve(&c.right) {
            Some(ModelElement::Flow(f)) => f,
            _ => {
                out.push(Diagnostic::error(
                    "VAL231",
                    format!("`{}`: `{}` is not a navigation flow", c.name(), c.right),
                    models.span(&c.id),
                ));
                continue;
            }
        };
        let owners = models
            .ui
            .and_then(|ui| ui.root_of(&item.id))
            .and_then(|root| main_of.get(&root.id))
            .cloned()
            .unwrap_or_default();
        if !owners.contains(&flow.source) {
            let owner_text = if owners.is_empty() {
                "no view".to_string()
            } else {
                owners
                    .iter()
                    .map(|v| format!("`{}`", v.dotted()))
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            out.push(Diagnostic::error(
                "VAL231",
                format!(
                    "`{}`: flow `{}` leaves `{}`, but item `{}` belongs to {owner_text}",
                    c.name(),
                    flow.name,
                    flow.source.dotted(),
                    item.name()
                ),
                models.span(&c.id),
            ));
        }
    }

    if let Some(nav) = models.navigation {
        if models.ui.is_some() {
            for v in nav.views() {
                if !mains.contains_key(&v.id) {
                    out.push(Diagnostic::warning(
                        "VAL202",
                        format!("view `{}` has no main container", v.name),
                        models.span(&v.id),
                    ));
                }
            }
        }
    }
}

fn check_logic_references(models: &ModelSet<'_>, out: &mut Vec<Diagnostic>) {
    let Some(logic) = models.logic else { return };
    for rule in logic.rules() {
        let rule_span = models.span(&rule.id);
        if let (Some(scope), Some(nav)) = (&rule.scope, models.navigation) {
            if nav.view_by_id(scope).is_none() {
                out.push(Diagnostic::error(
                    "VAL242",
                    format!(
                        "rule `{}` is scoped to missing view `{}`",
                        rule.name(),
                        scope.dotted()
                    ),
                    rule_span.clone(),
                ));
            }
        }
        if let (Event::UserInteraction { target, gesture }, Some(ui)) = (&rule.trigger, models.ui) {
            match ui.element(target) {
                Some(e) if e.kind.accepts_gestures() => {}
                Some(e) => out.push(Diagnostic::error(
                    "VAL241",
                    format!(
                        "rule `{}` listens for {} on `{}`, a {} that cannot receive gestures",
                        rule.name(),
                        gesture.as_str(),
                        target.dotted(),
                        e.kind.keyword()
                    ),
                    rule_span.clone(),
                )),
                None => out.push(Diagnostic::error(
                    "VAL241",
                    format!(
                        "rule `{}` listens on missing element `{}`",
                        rule.name(),
                        target.dotted()
                    ),
                    rule_span.clone(),
                )),
            }
        }
        for node in &rule.body.nodes {
            let span = models.span(&node.id);
            match &node.action {
                Action::Navigate { flow } => {
                    if let Some(nav) = models.navigation {
                        if nav.flow_by_id(flow).is_none() {
                            out.push(Diagnostic::error(
                                "VAL240",
                                format!(
                                    "`{}` navigates through missing flow `{}`",
                                    node.id.dotted(),
                                    flow.dotted()
                                ),
                                span,
                            ));
                        }
                    }
                }
                Action::DataOp {
                    entity,
                    operation,
                    args,
                    ..
                } => {
                    let Some(data) = models.data else { continue };
                    let Some(e) = data.entity_by_id(entity) else {
                        out.push(Diagnostic::error(
                            "VAL243",
                            format!(
                                "`{}` uses missing entity `{}`",
                                node.id.dotted(),
                                entity.dotted()
                            ),
                            span,
                        ));
                        continue;
                    };
                    let Some(op) = e.operation(operation) else {
                        out.push(Diagnostic::error(
                            "VAL243",
                            format!(
                                "`{}` calls missing operation `{}.{operation}`",
                                node.id.dotted(),
                                e.name
                            ),
                            span,
                        ));
                        continue;
                    };
                    let want = e.arity(op);
                    if args.len() != want {
                        out.push(Diagnostic::error(
                            "VAL244",
                            format!(
                                "`{}` passes {} argument(s) to `{}.{operation}`, which takes {want}",
                                node.id.dotted(),
                                args.len(),
                                e.name
                            ),
                            span,
                        ));
                    }
                }
                Action::UiUpdate { element, .. } => {
                    if let Some(ui) = models.ui {
                        if ui.element(element).is_none() {
                            out.push(Diagnostic::error(
                                "VAL245",
                                format!(
                                    "`{}` updates missing element `{}`",
                                    node.id.dotted(),
                                    element.dotted()
                                ),
                                span,
                            ));
                        }
                    }
                }
                Action::DeviceAccess { .. } => {}
            }
        }
    }
}

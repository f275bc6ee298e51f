use std::collections::BTreeSet;

use super::EnvShape;
use crate::diag::Diagnostic;
use crate::expr::free_paths;
use crate::model::{
    BusinessLogicModel, DataModel, ElementId, NavigationModel, OperationKind, SourceMap, UiElement,
    UiModel,
};

fn at(sources: &SourceMap, id: &ElementId) -> Option<crate::diag::SourceSpan> {
    sources.get(id).cloned()
}

pub fn validate_navigation(
    model: &NavigationModel,
    sources: &SourceMap,
    env_shape: Option<&EnvShape>,
) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    match model.entry() {
        Some(e) if model.view_by_id(e).is_some() => {}
        Some(e) => out.push(Diagnostic::error(
            "VAL102",
            format!("entry view `{}` does not exist", e.dotted()),
            None,
        )),
        None => out.push(Diagnostic::error(
            "VAL102",
            "navigation model has no entry view",
            None,
        )),
    }
    for f in model.flows() {
        for (end, id) in [("source", &f.source), ("target", &f.target)] {
            if model.view_by_id(id).is_none() {
                out.push(Diagnostic::error(
                    "VAL100",
                    format!("flow `{}` has dangling {end} `{id}`", f.name),
                    at(sources, &f.id),
                ));
            }
        }
        if let (Some(guard), Some(shape)) = (&f.guard, env_shape) {
            for path in free_paths(guard) {
                if !shape.contains(path.root()) {
                    out.push(Diagnostic::warning(
                        "VAL101",
                        format!(
                            "guard of flow `{}` reads `{path}`, but nothing binds `{}`",
                            f.name,
                            path.root()
                        ),
                        at(sources, &f.id),
                    ));
                }
            }
        }
    }
    out
}

pub fn validate_data(model: &DataModel, sources: &SourceMap) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for e in model.entities() {
        for r in &e.references {
            if model.entity_by_id(&r.target).is_none() {
                out.push(Diagnostic::error(
                    "VAL110",
                    format!(
                        "reference `{}.{}` targets missing entity `{}`",
                        e.name,
                        r.name,
                        r.target.dotted()
                    ),
                    at(sources, &e.id.child(&r.name)),
                ));
            }
        }
        for op in &e.operations {
            if OperationKind::crud_from_name(&op.name).is_some() {
                out.push(Diagnostic::error(
                    "VAL111",
                    format!(
                        "operation `{}.{}` collides with the implicit CRUD operation",
                        e.name, op.name
                    ),
                    at(sources, &e.id.child(&op.name)),
                ));
            }
        }
    }
    out
}

pub fn validate_ui(model: &UiModel, sources: &SourceMap) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for root in model.roots() {
        if !root.kind.is_container() {
            out.push(Diagnostic::error(
                "VAL120",
                format!("top-level element `{}` is not a container", root.name()),
                at(sources, &root.id),
            ));
        }
    }
    fn walk(e: &UiElement, sources: &SourceMap, out: &mut Vec<Diagnostic>) {
        if !e.kind.is_container() && !e.children.is_empty() {
            out.push(Diagnostic::error(
                "VAL121",
                format!(
                    "basic element `{}` has {} children",
                    e.name(),
                    e.children.len()
                ),
                at(sources, &e.id),
            ));
        }
        for c in &e.children {
            walk(c, sources, out);
        }
    }
    for root in model.roots() {
        walk(root, sources, &mut out);
    }
    out
}

pub fn validate_logic(model: &BusinessLogicModel, sources: &SourceMap) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for rule in model.rules() {
        let body = &rule.body;
        if body.nodes.is_empty() {
            out.push(Diagnostic::error(
                "VAL130",
                format!("rule `{}` has no actions", rule.name()),
                at(sources, &rule.id),
            ));
            continue;
        }
        let names: BTreeSet<&ElementId> = body.nodes.iter().map(|n| &n.id).collect();
        for n in &body.nodes {
            for flow in &n.outgoing {
                if !names.contains(&flow.target) {
                    out.push(Diagnostic::error(
                        "VAL132",
                        format!(
                            "action `{}` continues to missing action `{}`",
                            n.id.dotted(),
                            flow.target.dotted()
                        ),
                        at(sources, &n.id),
                    ));
                }
            }
        }
        let reachable = body.reachable();
        for (i, n) in body.nodes.iter().enumerate() {
            if !reachable.contains(&i) {
                out.push(Diagnostic::error(
                    "VAL131",
                    format!(
                        "action `{}` is unreachable from entry `{}`",
                        n.id.dotted(),
                        body.nodes[0].name()
                    ),
                    at(sources, &n.id),
                ));
            }
        }
    }
    out
}

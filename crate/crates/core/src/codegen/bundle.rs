use serde_json::{json, Value as J};

use super::{ensure_valid, main_container, GenError};
use crate::model::{Action, EcaRule, Entity, Event, OperationKind, Project, UiElement};
use crate::sim::scenario_event_json;

fn id(e: &crate::model::ElementId) -> J {
    J::String(e.to_string())
}

fn ui_tree(e: &UiElement) -> J {
    json!({
        "id": id(&e.id),
        "name": e.name(),
        "kind": e.kind.keyword(),
        "attributes": e.attributes,
        "children": e.children.iter().map(ui_tree).collect::<Vec<_>>(),
    })
}

fn entity(e: &Entity) -> J {
    let implicit = OperationKind::CRUD
        .iter()
        .filter(|k| !e.operations.iter().any(|o| o.name == k.as_str()))
        .map(|k| {
            json!({
                "id": id(&e.id.child(k.as_str())),
                "name": k.as_str(),
                "kind": k.as_str(),
                "implicit": true,
                "params": [],
                "returns": null,
            })
        });
    let declared = e.operations.iter().map(|o| {
        json!({
            "id": id(&e.id.child(&o.name)),
            "name": o.name,
            "kind": o.kind.as_str(),
            "implicit": false,
            "params": o.params.iter().map(|p| json!({"name": p.name, "type": p.ptype.as_str()})).collect::<Vec<_>>(),
            "returns": o.returns.map(|t| t.as_str()),
        })
    });
    json!({
        "id": id(&e.id),
        "name": e.name,
        "properties": e.properties.iter().map(|p| json!({
            "id": id(&e.id.child(&p.name)),
            "name": p.name,
            "type": p.ptype.as_str(),
        })).collect::<Vec<_>>(),
        "operations": implicit.chain(declared).collect::<Vec<_>>(),
        "references": e.references.iter().map(|r| json!({
            "id": id(&e.id.child(&r.name)),
            "name": r.name,
            "target": id(&r.target),
            "cardinality": r.cardinality.as_str(),
        })).collect::<Vec<_>>(),
    })
}

fn action(a: &Action) -> J {
    match a {
        Action::DataOp {
            entity,
            operation,
            args,
            bind_as,
        } => json!({
            "kind": "dataOp",
            "operation": id(&entity.child(operation)),
            "args": args.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "bindAs": bind_as,
        }),
        Action::UiUpdate {
            element,
            update,
            value,
        } => json!({
            "kind": "uiUpdate",
            "element": id(element),
            "update": update.as_str(),
            "value": value.as_ref().map(|v| v.to_string()),
        }),
        Action::Navigate { flow } => json!({"kind": "navigate", "flow": id(flow)}),
        Action::DeviceAccess {
            capability,
            request,
            bind_as,
        } => json!({
            "kind": "deviceAccess",
            "capability": capability.as_str(),
            "request": request,
            "bindAs": bind_as,
        }),
    }
}

fn trigger(e: &Event) -> J {
    scenario_event_json(e)
}

fn rule(r: &EcaRule) -> J {
    json!({
        "id": id(&r.id),
        "name": r.name(),
        "scope": r.scope.as_ref().map(id),
        "trigger": trigger(&r.trigger),
        "entry": r.body.entry().map(|n| id(&n.id)),
        "nodes": r.body.nodes.iter().map(|n| json!({
            "id": id(&n.id),
            "name": n.name(),
            "action": action(&n.action),
            "next": n.outgoing.iter().map(|f| json!({
                "target": id(&f.target),
                "condition": f.condition.as_ref().map(|c| c.to_string()),
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

/// Joins all models into one resolved JSON document. Object keys are
/// sorted, so regeneration is byte-identical.
pub fn generate_bundle(project: &Project) -> Result<J, GenError> {
    ensure_valid(project)?;
    let nav = &project.navigation;
    let views: Vec<J> = nav
        .views()
        .iter()
        .map(|v| {
            let main = main_container(project, &v.id).and_then(|c| project.ui.element(c));
            let rules: Vec<J> = project
                .logic
                .rules()
                .iter()
                .filter(|r| r.scope.as_ref().is_none_or(|s| *s == v.id))
                .map(|r| id(&r.id))
                .collect();
            json!({
                "id": id(&v.id),
                "name": v.name,
                "title": v.title,
                "entry": nav.entry() == Some(&v.id),
                "mainContainer": main.map(ui_tree),
                "flows": nav.outgoing(&v.id).map(|f| json!({
                    "id": id(&f.id),
                    "name": f.name,
                    "target": id(&f.target),
                    "guard": f.guard.as_ref().map(|g| g.to_string()),
                })).collect::<Vec<_>>(),
                "rules": rules,
            })
        })
        .collect();
    Ok(json!({
        "name": project.name,
        "entryView": nav.entry().map(id),
        "views": views,
        "ui": project.ui.roots().iter().map(ui_tree).collect::<Vec<_>>(),
        "entities": project.data.entities().iter().map(entity).collect::<Vec<_>>(),
        "rules": project.logic.rules().iter().map(rule).collect::<Vec<_>>(),
        "correspondences": project.correspondences.iter().map(|c| json!({
            "id": id(&c.id),
            "name": c.name(),
            "type": c.ctype.as_str(),
            "left": id(&c.left),
            "right": id(&c.right),
        })).collect::<Vec<_>>(),
    }))
}

/// Pretty-printed bundle with a trailing newline.
pub fn bundle_to_string(bundle: &J) -> String {
    serde_json::to_string_pretty(bundle).expect("plain data serializes") + "\n"
}

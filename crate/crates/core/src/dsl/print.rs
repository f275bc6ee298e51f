//! Canonical text form of every model: two-space indentation, one
//! declaration per line, a blank line between top-level blocks.

use std::fmt::Write;

use crate::expr::write_string_literal;
use crate::model::{
    Action, BusinessLogicModel, Correspondence, DataModel, Event, NavigationModel, UiElement,
    UiModel,
};

fn quoted(s: &str) -> String {
    let mut out = String::new();
    write_string_literal(&mut out, s).expect("writing to a String");
    out
}

pub fn print_navigation(model: &NavigationModel) -> String {
    let mut out = String::new();
    for v in model.views() {
        let entry = if model.entry() == Some(&v.id) {
            " entry"
        } else {
            ""
        };
        writeln!(out, "view {} {}{entry}", v.name, quoted(&v.title)).unwrap();
    }
    if !model.views().is_empty() && !model.flows().is_empty() {
        out.push('\n');
    }
    for f in model.flows() {
        write!(
            out,
            "flow {}: {} -> {}",
            f.name,
            f.source.dotted(),
            f.target.dotted()
        )
        .unwrap();
        if let Some(g) = &f.guard {
            write!(out, " when {g}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn print_data(model: &DataModel) -> String {
    let mut out = String::new();
    for (i, e) in model.entities().iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        if e.properties.is_empty() && e.operations.is_empty() && e.references.is_empty() {
            writeln!(out, "entity {} {{}}", e.name).unwrap();
            continue;
        }
        writeln!(out, "entity {} {{", e.name).unwrap();
        for p in &e.properties {
            writeln!(out, "  prop {}: {}", p.name, p.ptype).unwrap();
        }
        for o in &e.operations {
            let params: Vec<String> = o
                .params
                .iter()
                .map(|p| format!("{}: {}", p.name, p.ptype))
                .collect();
            write!(out, "  op {}({})", o.name, params.join(", ")).unwrap();
            if let Some(r) = o.returns {
                write!(out, ": {r}").unwrap();
            }
            out.push('\n');
        }
        for r in &e.references {
            writeln!(
                out,
                "  ref {}: {} {}",
                r.name,
                r.target.dotted(),
                r.cardinality.as_str()
            )
            .unwrap();
        }
        out.push_str("}\n");
    }
    out
}

fn print_element(out: &mut String, e: &UiElement, depth: usize) {
    let indent = "  ".repeat(depth);
    write!(out, "{indent}{} {}", e.kind.keyword(), e.name()).unwrap();
    if !e.attributes.is_empty() {
        let attrs: Vec<String> = e
            .attributes
            .iter()
            .map(|(k, v)| format!("{k}={}", quoted(v)))
            .collect();
        write!(out, " [{}]", attrs.join(", ")).unwrap();
    }
    if e.kind.is_container() {
        if e.children.is_empty() {
            out.push_str(" {}\n");
        } else {
            out.push_str(" {\n");
            for c in &e.children {
                print_element(out, c, depth + 1);
            }
            writeln!(out, "{indent}}}").unwrap();
        }
    } else {
        out.push('\n');
    }
}

pub fn print_ui(model: &UiModel) -> String {
    let mut out = String::new();
    for (i, root) in model.roots().iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        print_element(&mut out, root, 0);
    }
    out
}

fn event_text(e: &Event) -> String {
    match e {
        Event::UserInteraction { gesture, target } => {
            format!("{} {}", gesture.as_str(), target.dotted())
        }
        Event::DeviceCapability { capability, signal } => {
            format!("device {} {signal}", capability.as_str())
        }
        Event::ApplicationSpecific { name } => format!("app {name}"),
    }
}

fn action_text(a: &Action) -> String {
    let bind = |b: &Option<String>| b.as_ref().map(|n| format!(" as {n}")).unwrap_or_default();
    match a {
        Action::DataOp {
            entity,
            operation,
            args,
            bind_as,
        } => {
            let args: Vec<String> = args.iter().map(ToString::to_string).collect();
            format!(
                "data {}.{operation}({}){}",
                entity.dotted(),
                args.join(", "),
                bind(bind_as)
            )
        }
        Action::UiUpdate {
            element,
            update,
            value,
        } => {
            let mut s = format!("ui {} {}", element.dotted(), update.as_str());
            if let Some(v) = value {
                write!(s, " {v}").unwrap();
            }
            s
        }
        Action::Navigate { flow } => format!("goto {}", flow.dotted()),
        Action::DeviceAccess {
            capability,
            request,
            bind_as,
        } => format!("device {} {request}{}", capability.as_str(), bind(bind_as)),
    }
}

pub fn print_logic(model: &BusinessLogicModel) -> String {
    let mut out = String::new();
    for (i, r) in model.rules().iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        write!(out, "rule {}", r.name()).unwrap();
        if let Some(scope) = &r.scope {
            write!(out, " in {}", scope.dotted()).unwrap();
        }
        write!(out, " on {} do", event_text(&r.trigger)).unwrap();
        if r.body.nodes.is_empty() {
            out.push_str(" {}\n");
            continue;
        }
        out.push_str(" {\n");
        for n in &r.body.nodes {
            write!(out, "  {}: {}", n.name(), action_text(&n.action)).unwrap();
            for flow in &n.outgoing {
                write!(out, " -> {}", flow.target.name()).unwrap();
                if let Some(c) = &flow.condition {
                    write!(out, " if {c}").unwrap();
                }
            }
            out.push('\n');
        }
        out.push_str("}\n");
    }
    out
}

pub fn print_correspondences(corrs: &[Correspondence]) -> String {
    let mut out = String::new();
    for c in corrs {
        writeln!(
            out,
            "correspond {} {} <-> {} {}",
            c.ctype,
            c.name(),
            c.left,
            c.right
        )
        .unwrap();
    }
    out
}

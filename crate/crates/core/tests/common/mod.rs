#![allow(dead_code)]

pub mod crud;
pub mod oracle;

use std::collections::BTreeSet;
use std::path::PathBuf;

use mvmob_core::model::{Action, ElementId, Event, Project};

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Compares `actual` with the frozen file; `UPDATE_GOLDEN=1` rewrites it.
pub fn golden(name: &str, actual: &str) {
    let path = golden_dir().join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| {
        panic!(
            "missing golden file {}; run with UPDATE_GOLDEN=1",
            path.display()
        )
    });
    assert!(
        expected == actual,
        "{name} differs from golden file\n--- actual ---\n{actual}"
    );
}

/// Every element id mentioned inside any model body, declarations excluded.
pub fn mentioned_ids(p: &Project) -> BTreeSet<ElementId> {
    let mut out = BTreeSet::new();
    out.extend(p.navigation.entry().cloned());
    for f in p.navigation.flows() {
        out.insert(f.source.clone());
        out.insert(f.target.clone());
    }
    for e in p.data.entities() {
        out.extend(e.references.iter().map(|r| r.target.clone()));
    }
    for r in p.logic.rules() {
        out.extend(r.scope.clone());
        if let Event::UserInteraction { target, .. } = &r.trigger {
            out.insert(target.clone());
        }
        for n in &r.body.nodes {
            out.extend(n.outgoing.iter().map(|f| f.target.clone()));
            match &n.action {
                Action::DataOp {
                    entity, operation, ..
                } => {
                    out.insert(entity.clone());
                    out.insert(entity.child(operation));
                }
                Action::UiUpdate { element, .. } => {
                    out.insert(element.clone());
                }
                Action::Navigate { flow } => {
                    out.insert(flow.clone());
                }
                Action::DeviceAccess { .. } => {}
            }
        }
    }
    for c in &p.correspondences {
        out.insert(c.left.clone());
        out.insert(c.right.clone());
    }
    out
}

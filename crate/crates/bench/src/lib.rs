//! Synthetic projects for the benchmarks.

use std::fmt::Write;

use mvmob_core::manifest::parse_sources;
use mvmob_core::model::{ModelKind, Project};

/// DSL sources of a valid project with `n` views in a ring. View `i` has a
/// main container with a navigation item to view `i+1` and a button that
/// creates an `Item` and moves on. Returned as (kind, file, text).
pub fn ring_sources(n: usize) -> Vec<(ModelKind, String, String)> {
    assert!(n > 0);
    let (mut nav, mut ui, mut bl, mut corr) =
        (String::new(), String::new(), String::new(), String::new());
    for i in 0..n {
        let entry = if i == 0 { " entry" } else { "" };
        writeln!(nav, "view v{i} \"View {i}\"{entry}").unwrap();
    }
    nav.push('\n');
    for i in 0..n {
        let next = (i + 1) % n;
        let guard = if i % 3 == 2 { " when item != null" } else { "" };
        writeln!(nav, "flow f{i}: v{i} -> v{next}{guard}").unwrap();
    }
    for i in 0..n {
        if i > 0 {
            ui.push('\n');
        }
        writeln!(
            ui,
            "container c{i} {{\n  label t{i} [text=\"Title {i}\"]\n  navigationItem n{i} [text=\"Next\"]\n  button b{i} [text=\"Add\"]\n}}"
        )
        .unwrap();
        if i > 0 {
            bl.push('\n');
        }
        writeln!(
            bl,
            "rule r{i} in v{i} on tap n{i} do {{\n  go: goto f{i}\n}}\n\n\
             rule a{i} in v{i} on tap b{i} do {{\n  make: data Item.create(\"x\", {i}) as item -> go\n  go: goto f{i}\n}}"
        )
        .unwrap();
        writeln!(
            corr,
            "correspond ViewMainContainer l{i} <-> Navigation:v{i} UI:c{i}"
        )
        .unwrap();
        writeln!(
            corr,
            "correspond NavItemFlow k{i} <-> UI:n{i} Navigation:f{i}"
        )
        .unwrap();
        writeln!(
            corr,
            "correspond ActionDataOperation d{i} <-> BusinessLogic:a{i}.make Data:Item.create"
        )
        .unwrap();
    }
    let data = "entity Item {\n  prop label: string\n  prop rank: integer\n}\n".to_string();
    vec![
        (ModelKind::Navigation, "ring.nav".into(), nav),
        (ModelKind::Data, "ring.data".into(), data),
        (ModelKind::UI, "ring.ui".into(), ui),
        (ModelKind::BusinessLogic, "ring.bl".into(), bl),
        (ModelKind::Correspondence, "ring.corr".into(), corr),
    ]
}

/// Parsed form of [`ring_sources`].
pub fn ring_project(n: usize) -> Project {
    let (slice, diags) = parse_sources("Ring", &ring_sources(n));
    assert!(diags.is_empty(), "{diags:?}");
    slice.into_project().expect("all four models")
}

use std::collections::BTreeSet;

use mvmob_core::model::{
    ElementId, ModelElement, ModelKind, NavigationFlow, NavigationModel, Project, UiElement, View,
};
use mvmob_core::testkit::{
    random_correspondences, random_data, random_logic, random_navigation, random_ui, rng,
};

fn random_project(seed: u64) -> Project {
    let mut r = rng(seed);
    Project {
        name: "walk".into(),
        navigation: random_navigation(&mut r),
        data: random_data(&mut r),
        ui: random_ui(&mut r),
        logic: random_logic(&mut r),
        correspondences: random_correspondences(&mut r),
        ..Project::default()
    }
}

fn count_ui(e: &UiElement) -> usize {
    1 + e.children.iter().map(count_ui).sum::<usize>()
}

fn expected_count(p: &Project, kind: ModelKind) -> usize {
    match kind {
        ModelKind::Navigation => p.navigation.views().len() + p.navigation.flows().len(),
        ModelKind::Data => p
            .data
            .entities()
            .iter()
            .map(|e| 1 + e.properties.len() + 4 + e.operations.len() + e.references.len())
            .sum(),
        ModelKind::UI => p.ui.roots().iter().map(count_ui).sum(),
        ModelKind::BusinessLogic => p.logic.rules().iter().map(|r| 1 + r.body.nodes.len()).sum(),
        ModelKind::Correspondence => p.correspondences.len(),
    }
}

fn kind_fits(kind: ModelKind, el: &ModelElement<'_>) -> bool {
    match el {
        ModelElement::View(_) | ModelElement::Flow(_) => kind == ModelKind::Navigation,
        ModelElement::Entity(_)
        | ModelElement::Property(..)
        | ModelElement::Operation(..)
        | ModelElement::Reference(..) => kind == ModelKind::Data,
        ModelElement::UiElement(_) => kind == ModelKind::UI,
        ModelElement::Rule(_) | ModelElement::Action(..) => kind == ModelKind::BusinessLogic,
        ModelElement::Correspondence(_) => kind == ModelKind::Correspondence,
    }
}

const KINDS: [ModelKind; 5] = [
    ModelKind::Navigation,
    ModelKind::Data,
    ModelKind::UI,
    ModelKind::BusinessLogic,
    ModelKind::Correspondence,
];

#[test]
fn elements_of_matches_an_independent_walk() {
    for seed in 0..200 {
        let p = random_project(seed);
        for kind in KINDS {
            let ids = p.elements_of(kind);
            assert_eq!(ids.len(), expected_count(&p, kind), "seed {seed} {kind}");
            let distinct: BTreeSet<_> = ids.iter().collect();
            assert_eq!(distinct.len(), ids.len(), "seed {seed} {kind}");
            for id in &ids {
                assert_eq!(id.model(), kind);
                let el = p.resolve(id).unwrap_or_else(|| panic!("seed {seed}: {id}"));
                assert!(kind_fits(kind, &el), "seed {seed}: {id}");
            }
        }
    }
}

#[test]
fn undeclared_ids_do_not_resolve() {
    for seed in 0..50 {
        let p = random_project(seed);
        for kind in KINDS {
            // generated names never contain this segment
            let ghost = ElementId::simple(kind, "zz_ghost");
            assert!(p.resolve(&ghost).is_none());
            for id in p.elements_of(kind) {
                assert!(p.resolve(&id.child("zz_ghost")).is_none(), "{id}");
            }
        }
    }
}

#[test]
fn navigation_examples() {
    let empty = Project::default();
    assert!(empty.elements_of(ModelKind::Navigation).is_empty());

    let nav = NavigationModel::new(
        vec![View::new("a", "A").unwrap(), View::new("b", "B").unwrap()],
        vec![NavigationFlow::new("f", "a", "b", None).unwrap()],
        Some(ElementId::simple(ModelKind::Navigation, "a")),
    )
    .unwrap();
    let p = Project {
        navigation: nav,
        ..Project::default()
    };
    let names: Vec<String> = p
        .elements_of(ModelKind::Navigation)
        .iter()
        .map(|id| id.to_string())
        .collect();
    assert_eq!(names, ["Navigation:a", "Navigation:b", "Navigation:f"]);
    let missing: ElementId = "Navigation:missing".parse().unwrap();
    assert!(p.resolve(&missing).is_none());
    assert!(matches!(
        p.resolve(&"Navigation:f".parse().unwrap()),
        Some(ModelElement::Flow(f)) if f.name == "f"
    ));
}

mod common;

use std::collections::BTreeSet;

use common::crud;
use mvmob_core::analysis::reachable_views;
use mvmob_core::expr::Value;
use mvmob_core::model::{ElementId, Event, Gesture, ModelKind};
use mvmob_core::sim::{deliver, init_state, run, Scenario, Stimulus, TraceKind};
use mvmob_core::testkit::{cityguide, rng};
use rand::Rng;
use serde_json::json;

#[test]
fn crud_sequences_match_reference_store() {
    let p = crud::project();
    for seed in 0..100 {
        let mut r = rng(seed);
        let len = r.gen_range(1..40);
        if let Err(e) = crud::check_sequence(&p, &mut r, len) {
            panic!("seed {seed}: {e}");
        }
    }
}

#[test]
fn read_on_empty_store_binds_null() {
    let p = crud::project();
    let mut s = init_state(&p, &Scenario::default()).unwrap();
    let find = Stimulus::new(Event::ApplicationSpecific {
        name: "find".into(),
    })
    .with("qty", json!(1));
    deliver(&p, &mut s, &find);
    assert_eq!(s.env.get("cur"), Some(&Value::Null));
}

#[test]
fn create_then_read_returns_the_instance() {
    let p = crud::project();
    let mut s = init_state(&p, &Scenario::default()).unwrap();
    let app = |n: &str| Stimulus::new(Event::ApplicationSpecific { name: n.into() });
    deliver(
        &p,
        &mut s,
        &app("mk").with("label", json!("x")).with("qty", json!(3)),
    );
    deliver(&p, &mut s, &app("find").with("qty", json!(3)));
    match s.env.get("cur") {
        Some(Value::Instance(i)) => {
            assert_eq!(i.id, Some(1));
            assert_eq!(i.properties.get("label"), Some(&Value::Str("x".into())));
        }
        other => panic!("{other:?}"),
    }
}

fn random_stimulus<R: Rng>(r: &mut R, targets: &[ElementId]) -> Stimulus {
    if r.gen_bool(0.15) {
        return Stimulus::new(Event::DeviceCapability {
            capability: mvmob_core::model::Capability::Gps,
            signal: "fix".into(),
        })
        .with(
            "position",
            json!({"lat": r.gen_range(0..3) as f64, "lon": 0.0}),
        );
    }
    let target = targets[r.gen_range(0..targets.len())].clone();
    let names = ["Oslo", "Rome", "Nowhere"];
    Stimulus::new(Event::UserInteraction {
        gesture: Gesture::Tap,
        target,
    })
    .with("name", json!(names[r.gen_range(0..names.len())]))
}

#[test]
fn random_cityguide_runs_are_sound() {
    let p = cityguide();
    let base = Scenario::parse(
        &std::fs::read_to_string(
            mvmob_core::testkit::cityguide_dir().join("scenarios/browse-and-detail.scn"),
        )
        .unwrap(),
    )
    .unwrap();
    let reach: BTreeSet<ElementId> = reachable_views(&p.navigation);
    let targets: Vec<ElementId> =
        p.ui.elements()
            .into_iter()
            .filter(|e| e.kind.accepts_gestures())
            .map(|e| e.id.clone())
            .collect();
    for seed in 0..50 {
        let mut r = rng(seed);
        let scenario = Scenario {
            stimuli: (0..r.gen_range(1..20))
                .map(|_| random_stimulus(&mut r, &targets))
                .collect(),
            ..base.clone()
        };
        let (end, trace) = run(&p, &scenario).unwrap();
        let (end2, trace2) = run(&p, &scenario).unwrap();
        assert_eq!(trace, trace2, "seed {seed}");
        assert_eq!(end.to_json(), end2.to_json());

        let mut view = p.navigation.entry().cloned().unwrap();
        for e in &trace {
            if e.kind == TraceKind::Navigated {
                let from = e.detail["from"].as_str().unwrap();
                assert_eq!(from, view.to_string(), "seed {seed}");
                view = e.detail["to"].as_str().unwrap().parse().unwrap();
                assert!(reach.contains(&view), "seed {seed}: {view}");
            }
            assert_ne!(e.kind, TraceKind::BudgetExhausted);
        }
        assert_eq!(end.current_view, view);
        assert_eq!(view.model(), ModelKind::Navigation);
    }
}

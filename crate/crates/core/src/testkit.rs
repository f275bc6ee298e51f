//! Fixtures and random model generators for tests and benches.

use std::collections::BTreeSet;
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::{CompareOp, ConditionExpr, Environment, Literal, Operand, Path, Value};
use crate::manifest::load_project;
use crate::model::{
    Action, ActionNode, BusinessLogicModel, Capability, Cardinality, ControlFlow, ControlGraph,
    Correspondence, CorrespondenceType, DataModel, DataOperation, EcaRule, ElementId, ElementKind,
    Entity, Event, Gesture, ModelKind, NavigationFlow, NavigationModel, Param, PrimitiveType,
    Project, Property, Reference, UiElement, UiModel, UiUpdate, View,
};

/// Directory of the bundled CityGuide example project.
pub fn cityguide_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models/cityguide")
}

/// The CityGuide project, parsed. Panics when the fixture does not parse.
pub fn cityguide() -> Project {
    let loaded = load_project(&cityguide_dir()).expect("fixture readable");
    assert!(
        loaded.parse_ok(),
        "fixture parses: {:?}",
        loaded.diagnostics
    );
    loaded.project().expect("fixture complete")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Words that are keywords somewhere in the DSLs but legal as names.
const CONTEXTUAL: &[&str] = &[
    "view",
    "flow",
    "entry",
    "when",
    "entity",
    "prop",
    "op",
    "ref",
    "one",
    "many",
    "rule",
    "in",
    "on",
    "do",
    "tap",
    "app",
    "device",
    "data",
    "ui",
    "goto",
    "as",
    "if",
    "show",
    "hide",
    "correspond",
    "container",
];

/// Fresh identifier not yet in `used`; sometimes a contextual keyword.
pub fn fresh_name<R: Rng>(rng: &mut R, prefix: &str, used: &mut BTreeSet<String>) -> String {
    loop {
        let name = if rng.gen_bool(0.1) {
            CONTEXTUAL.choose(rng).expect("non-empty").to_string()
        } else {
            format!("{prefix}{}", rng.gen_range(0..1000))
        };
        if used.insert(name.clone()) {
            return name;
        }
    }
}

/// Identifier usable inside expressions: never a reserved word.
fn path_segment<R: Rng>(rng: &mut R) -> String {
    const POOL: &[&str] = &[
        "city", "name", "it", "event", "x", "y", "sight", "lat", "score", "id", "item", "view",
    ];
    POOL.choose(rng).expect("non-empty").to_string()
}

pub fn random_string<R: Rng>(rng: &mut R) -> String {
    const CHARS: &[char] = &[
        'a', 'b', 'Z', ' ', '"', '\\', '\n', '\t', 'é', '→', '0', '-', '/', ':', '{',
    ];
    (0..rng.gen_range(0..8))
        .map(|_| *CHARS.choose(rng).expect("non-empty"))
        .collect()
}

pub fn random_literal<R: Rng>(rng: &mut R) -> Literal {
    match rng.gen_range(0..5) {
        0 => Literal::Str(random_string(rng)),
        1 => Literal::Int(rng.gen_range(-1_000_000..1_000_000)),
        2 => {
            let x: f64 = rng.gen_range(-1e6..1e6);
            Literal::Float(if rng.gen_bool(0.2) {
                x * 1e-12
            } else {
                (x * 100.0).round() / 100.0
            })
        }
        3 => Literal::Bool(rng.gen()),
        _ => Literal::Null,
    }
}

pub fn random_path<R: Rng>(rng: &mut R) -> Path {
    Path::new(
        (0..rng.gen_range(1..4))
            .map(|_| path_segment(rng))
            .collect::<Vec<_>>(),
    )
}

pub fn random_operand<R: Rng>(rng: &mut R) -> Operand {
    if rng.gen_bool(0.5) {
        Operand::Path(random_path(rng))
    } else {
        Operand::Literal(random_literal(rng))
    }
}

/// Random well-formed condition of nesting depth at most `depth`.
pub fn random_expr<R: Rng>(rng: &mut R, depth: u32) -> ConditionExpr {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        return if rng.gen_bool(0.75) {
            let op = *CompareOp::ALL.choose(rng).expect("non-empty");
            ConditionExpr::compare(op, random_operand(rng), random_operand(rng))
        } else {
            ConditionExpr::Operand(random_operand(rng))
        };
    }
    match rng.gen_range(0..3) {
        0 => ConditionExpr::negation(random_expr(rng, depth - 1)),
        k => {
            let xs = (0..rng.gen_range(2..4))
                .map(|_| random_expr(rng, depth - 1))
                .collect();
            if k == 1 {
                ConditionExpr::And(xs)
            } else {
                ConditionExpr::Or(xs)
            }
        }
    }
}

/// Random values for the paths the expression generators use. Instances
/// nest up to three levels so multi-segment paths can resolve.
pub fn random_environment<R: Rng>(rng: &mut R) -> Environment {
    fn value<R: Rng>(rng: &mut R, depth: u32) -> Value {
        match rng.gen_range(0..if depth == 0 { 6 } else { 7 }) {
            0 => Value::Null,
            1 => Value::Bool(rng.gen()),
            2 => Value::Int(rng.gen_range(-3..4)),
            3 => Value::Float(rng.gen_range(-3..4) as f64 / 2.0),
            4 => Value::Str(
                ["", "a", "b", "2024-01-01"]
                    .choose(rng)
                    .expect("non-empty")
                    .to_string(),
            ),
            5 => Value::Date(
                chrono::NaiveDate::from_ymd_opt(2024, 1, rng.gen_range(1..3)).expect("valid date"),
            ),
            _ => {
                let mut inst = crate::expr::Instance {
                    entity: ["City", "Sight"]
                        .choose(rng)
                        .expect("non-empty")
                        .to_string(),
                    id: if rng.gen_bool(0.8) {
                        Some(rng.gen_range(1..3))
                    } else {
                        None
                    },
                    properties: Default::default(),
                    references: Default::default(),
                };
                for _ in 0..rng.gen_range(0..5) {
                    inst.properties
                        .insert(path_segment(rng), value(rng, depth - 1));
                }
                Value::Instance(Box::new(inst))
            }
        }
    }
    let mut env = Environment::new();
    for _ in 0..rng.gen_range(0..8) {
        env.bind(path_segment(rng), value(rng, 3));
    }
    env
}

fn maybe<R: Rng, T>(rng: &mut R, p: f64, f: impl FnOnce(&mut R) -> T) -> Option<T> {
    if rng.gen_bool(p) {
        Some(f(rng))
    } else {
        None
    }
}

/// Random syntactically valid navigation model. Endpoints may dangle.
pub fn random_navigation<R: Rng>(rng: &mut R) -> NavigationModel {
    let mut used = BTreeSet::new();
    let views: Vec<View> = (0..rng.gen_range(1..7))
        .map(|_| {
            View::new(&fresh_name(rng, "v", &mut used), random_string(rng)).expect("valid name")
        })
        .collect();
    let names: Vec<String> = views.iter().map(|v| v.name.clone()).collect();
    let flows = (0..rng.gen_range(0..9))
        .map(|_| {
            let name = fresh_name(rng, "f", &mut used);
            let src = names.choose(rng).expect("non-empty").clone();
            let tgt = names.choose(rng).expect("non-empty").clone();
            NavigationFlow::new(&name, &src, &tgt, maybe(rng, 0.4, |r| random_expr(r, 2)))
                .expect("valid names")
        })
        .collect();
    let entry = views.choose(rng).map(|v| v.id.clone());
    NavigationModel::new(views, flows, entry).expect("unique names")
}

/// Random graph for reachability checks: views `v0..`, entry `v0`,
/// endpoints always resolve.
pub fn random_nav_graph<R: Rng>(
    rng: &mut R,
    max_views: usize,
    max_flows: usize,
) -> NavigationModel {
    let n = rng.gen_range(1..=max_views);
    let views: Vec<View> = (0..n)
        .map(|i| View::new(&format!("v{i}"), format!("V{i}")).expect("valid"))
        .collect();
    let flows = (0..rng.gen_range(0..=max_flows))
        .map(|i| {
            let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let guard = maybe(rng, 0.3, |r| random_expr(r, 1));
            NavigationFlow::new(&format!("f{i}"), &format!("v{s}"), &format!("v{t}"), guard)
                .expect("valid")
        })
        .collect();
    NavigationModel::new(
        views,
        flows,
        Some(ElementId::simple(ModelKind::Navigation, "v0")),
    )
    .expect("unique")
}

/// Random data model. Reference targets may dangle; declared operation
/// names avoid the CRUD names.
pub fn random_data<R: Rng>(rng: &mut R) -> DataModel {
    let mut entity_names = BTreeSet::new();
    let names: Vec<String> = (0..rng.gen_range(0..5))
        .map(|_| fresh_name(rng, "E", &mut entity_names))
        .collect();
    let entities = names
        .iter()
        .map(|name| {
            let mut used: BTreeSet<String> = ["create", "read", "update", "delete"]
                .map(String::from)
                .into();
            let props = (0..rng.gen_range(0..5))
                .map(|_| Property {
                    name: fresh_name(rng, "p", &mut used),
                    ptype: *PrimitiveType::ALL.choose(rng).expect("non-empty"),
                })
                .collect();
            let ops = (0..rng.gen_range(0..3))
                .map(|_| {
                    let op = fresh_name(rng, "o", &mut used);
                    let mut pnames = BTreeSet::new();
                    let params = (0..rng.gen_range(0..3))
                        .map(|_| Param {
                            name: fresh_name(rng, "a", &mut pnames),
                            ptype: *PrimitiveType::ALL.choose(rng).expect("non-empty"),
                        })
                        .collect();
                    let returns = maybe(rng, 0.5, |r| {
                        *PrimitiveType::ALL.choose(r).expect("non-empty")
                    });
                    DataOperation::custom(&op, params, returns)
                })
                .collect();
            let refs = (0..rng.gen_range(0..3))
                .map(|_| Reference {
                    name: fresh_name(rng, "r", &mut used),
                    target: ElementId::simple(
                        ModelKind::Data,
                        names.choose(rng).map(String::as_str).unwrap_or("Missing"),
                    ),
                    cardinality: if rng.gen() {
                        Cardinality::One
                    } else {
                        Cardinality::Many
                    },
                })
                .collect();
            Entity::new(name, props, ops, refs).expect("distinct members")
        })
        .collect();
    DataModel::new(entities).expect("unique entities")
}

fn random_element<R: Rng>(
    rng: &mut R,
    depth: u32,
    used: &mut BTreeSet<String>,
    container: bool,
) -> UiElement {
    let kinds: Vec<ElementKind> = ElementKind::ALL
        .into_iter()
        .filter(|k| !container || k.is_container())
        .filter(|k| depth > 0 || !k.is_container() || container)
        .collect();
    let kind = *kinds.choose(rng).expect("non-empty");
    let name = fresh_name(rng, "e", used);
    let mut el = match kind {
        ElementKind::Basic(b) => UiElement::basic(&name, b),
        ElementKind::Container(c) => {
            let children = if depth == 0 {
                Vec::new()
            } else {
                (0..rng.gen_range(0..4))
                    .map(|_| random_element(rng, depth - 1, used, false))
                    .collect()
            };
            UiElement::container(&name, c, children)
        }
    }
    .expect("valid name");
    for _ in 0..rng.gen_range(0..3) {
        let mut keys = el.attributes.keys().cloned().collect();
        let key = fresh_name(rng, "k", &mut keys);
        el = el.with_attr(&key, random_string(rng));
    }
    el
}

/// Random UI forest whose roots are containers.
pub fn random_ui<R: Rng>(rng: &mut R) -> UiModel {
    let mut used = BTreeSet::new();
    let roots = (0..rng.gen_range(0..4))
        .map(|_| random_element(rng, 3, &mut used, true))
        .collect();
    UiModel::new(roots).expect("unique names")
}

fn random_event<R: Rng>(rng: &mut R) -> Event {
    match rng.gen_range(0..3) {
        0 => Event::UserInteraction {
            gesture: *Gesture::ALL.choose(rng).expect("non-empty"),
            target: ElementId::simple(ModelKind::UI, &format!("e{}", rng.gen_range(0..5))),
        },
        1 => Event::DeviceCapability {
            capability: *Capability::ALL.choose(rng).expect("non-empty"),
            signal: ["fix", "lost", "low"]
                .choose(rng)
                .expect("non-empty")
                .to_string(),
        },
        _ => Event::ApplicationSpecific {
            name: ["start", "resume", "sync"]
                .choose(rng)
                .expect("non-empty")
                .to_string(),
        },
    }
}

fn random_action<R: Rng>(rng: &mut R) -> Action {
    let bind = |r: &mut R| maybe(r, 0.5, path_segment);
    match rng.gen_range(0..4) {
        0 => Action::DataOp {
            entity: ElementId::simple(ModelKind::Data, &format!("E{}", rng.gen_range(0..3))),
            operation: ["create", "read", "update", "delete", "rate"]
                .choose(rng)
                .expect("non-empty")
                .to_string(),
            args: (0..rng.gen_range(0..4))
                .map(|_| random_expr(rng, 1))
                .collect(),
            bind_as: bind(rng),
        },
        1 => {
            let update = *UiUpdate::ALL.choose(rng).expect("non-empty");
            let value = if update == UiUpdate::SetText {
                Some(ConditionExpr::Operand(random_operand(rng)))
            } else {
                None
            };
            Action::UiUpdate {
                element: ElementId::simple(ModelKind::UI, &format!("e{}", rng.gen_range(0..5))),
                update,
                value,
            }
        }
        2 => Action::Navigate {
            flow: ElementId::simple(ModelKind::Navigation, &format!("f{}", rng.gen_range(0..5))),
        },
        _ => Action::DeviceAccess {
            capability: *Capability::ALL.choose(rng).expect("non-empty"),
            request: ["position", "photo", "status"]
                .choose(rng)
                .expect("non-empty")
                .to_string(),
            bind_as: bind(rng),
        },
    }
}

/// Random rule body over nodes `n0..`; edges always resolve.
pub fn random_control_graph<R: Rng>(
    rng: &mut R,
    rule: &ElementId,
    max_nodes: usize,
    max_edges: usize,
) -> ControlGraph {
    let n = rng.gen_range(1..=max_nodes);
    let mut nodes: Vec<ActionNode> = (0..n)
        .map(|i| ActionNode {
            id: rule.child(&format!("n{i}")),
            action: random_action(rng),
            outgoing: Vec::new(),
        })
        .collect();
    for _ in 0..rng.gen_range(0..=max_edges) {
        let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let condition = maybe(rng, 0.5, |r| random_expr(r, 1));
        nodes[s].outgoing.push(ControlFlow {
            target: rule.child(&format!("n{t}")),
            condition,
        });
    }
    ControlGraph { nodes }
}

/// Random logic model. References to other models may dangle.
pub fn random_logic<R: Rng>(rng: &mut R) -> BusinessLogicModel {
    let mut used = BTreeSet::new();
    let rules = (0..rng.gen_range(0..4))
        .map(|_| {
            let id = ElementId::simple(ModelKind::BusinessLogic, &fresh_name(rng, "r", &mut used));
            let body = random_control_graph(rng, &id, 5, 7);
            EcaRule {
                scope: maybe(rng, 0.4, |r| {
                    ElementId::simple(ModelKind::Navigation, &format!("v{}", r.gen_range(0..3)))
                }),
                trigger: random_event(rng),
                body,
                id,
            }
        })
        .collect();
    BusinessLogicModel::new(rules).expect("unique names")
}

fn random_endpoint<R: Rng>(rng: &mut R, kind: ModelKind) -> ElementId {
    let n = rng.gen_range(0..4);
    match kind {
        ModelKind::Navigation => ElementId::simple(kind, &format!("v{n}")),
        ModelKind::UI => ElementId::simple(kind, &format!("e{n}")),
        ModelKind::Data if rng.gen() => ElementId::simple(kind, &format!("E{n}")),
        ModelKind::Data => ElementId::simple(kind, &format!("E{n}")).child("read"),
        ModelKind::BusinessLogic => ElementId::simple(kind, &format!("r{n}")).child("n0"),
        ModelKind::Correspondence => ElementId::simple(kind, &format!("c{n}")),
    }
}

/// Random correspondence list with correctly kinded endpoints.
pub fn random_correspondences<R: Rng>(rng: &mut R) -> Vec<Correspondence> {
    let mut used = BTreeSet::new();
    (0..rng.gen_range(0..6))
        .map(|_| {
            let ctype = *CorrespondenceType::ALL.choose(rng).expect("non-empty");
            let (l, r) = ctype.endpoints();
            let (left, right) = (random_endpoint(rng, l), random_endpoint(rng, r));
            Correspondence::new(&fresh_name(rng, "c", &mut used), ctype, left, right)
                .expect("kinds match")
        })
        .collect()
}

use std::collections::BTreeMap;

use chrono::NaiveDate;
use serde_json::{json, Map};

use super::scenario::{event_json, Scenario, Stimulus};
use super::{SeedError, SimState, Store, TraceEvent, TraceKind, UiState};
use crate::expr::{argument_value, evaluate, ConditionExpr, Environment, Operand, Value};
use crate::model::{
    Action, Cardinality, EcaRule, Entity, Event, OperationKind, PrimitiveType, Project, UiUpdate,
};

/// Node executions allowed per delivered event, across all rules it fires.
pub const STEP_BUDGET: u64 = 10_000;

/// Builds the initial state: entry view, seeded store, resolved bindings and
/// default UI state.
pub fn init_state(project: &Project, scenario: &Scenario) -> Result<SimState, SeedError> {
    let current_view = project
        .navigation
        .entry()
        .cloned()
        .ok_or(SeedError::NoEntryView)?;
    let mut store = Store::new();
    for seed in &scenario.seed {
        let entity = project
            .data
            .entity(&seed.entity)
            .ok_or_else(|| SeedError::UnknownEntity(seed.entity.clone()))?;
        let mut values = BTreeMap::new();
        for (key, raw) in &seed.values {
            values.insert(key.clone(), seed_value(entity, key, raw)?);
        }
        store.insert(&entity.name, values);
    }
    let mut env = Environment::new();
    for (name, raw) in &scenario.bindings {
        env.bind(name.clone(), binding_value(project, &store, name, raw)?);
    }
    let ui_state = project
        .ui
        .elements()
        .into_iter()
        .map(|e| {
            let text = e.attributes.get("text").cloned().unwrap_or_default();
            (
                e.id.clone(),
                UiState {
                    visible: true,
                    text,
                },
            )
        })
        .collect();
    Ok(SimState {
        current_view,
        store,
        env,
        ui_state,
        step: 0,
    })
}

fn json_kind(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Null => "null",
        serde_json::Value::Bool(_) => "boolean",
        serde_json::Value::Number(n) if n.is_i64() => "integer",
        serde_json::Value::Number(_) => "float",
        serde_json::Value::String(_) => "string",
        serde_json::Value::Array(_) => "array",
        serde_json::Value::Object(_) => "object",
    }
    .to_string()
}

fn seed_value(entity: &Entity, key: &str, raw: &serde_json::Value) -> Result<Value, SeedError> {
    let mismatch = |expected: &str| SeedError::TypeMismatch {
        entity: entity.name.clone(),
        property: key.to_string(),
        expected: expected.to_string(),
        found: json_kind(raw),
    };
    if raw.is_null() && (entity.property(key).is_some() || entity.reference(key).is_some()) {
        return Ok(Value::Null);
    }
    if let Some(p) = entity.property(key) {
        use serde_json::Value as J;
        return match (p.ptype, raw) {
            (PrimitiveType::String, J::String(s)) => Ok(Value::Str(s.clone())),
            (PrimitiveType::Integer, J::Number(n)) if n.is_i64() => {
                Ok(Value::Int(n.as_i64().unwrap_or(0)))
            }
            (PrimitiveType::Float, J::Number(n)) => Ok(Value::Float(n.as_f64().unwrap_or(0.0))),
            (PrimitiveType::Boolean, J::Bool(b)) => Ok(Value::Bool(*b)),
            (PrimitiveType::Date, J::String(s)) => NaiveDate::parse_from_str(s, "%Y-%m-%d")
                .map(Value::Date)
                .map_err(|_| mismatch("a date (YYYY-MM-DD)")),
            (PrimitiveType::Url, J::String(s)) => url::Url::parse(s)
                .map(|_| Value::Str(s.clone()))
                .map_err(|_| mismatch("an absolute url")),
            (t, _) => Err(mismatch(t.as_str())),
        };
    }
    match entity.reference(key) {
        Some(r) if r.cardinality == Cardinality::One => match raw.as_i64() {
            Some(id) => Ok(Value::Int(id)),
            None => Err(mismatch("an instance id")),
        },
        Some(_) => Err(mismatch("nothing (many-valued references are not seeded)")),
        None => Err(SeedError::UnknownProperty {
            entity: entity.name.clone(),
            property: key.to_string(),
        }),
    }
}

fn binding_value(
    project: &Project,
    store: &Store,
    name: &str,
    raw: &serde_json::Value,
) -> Result<Value, SeedError> {
    let handle = raw.as_object().and_then(|o| {
        let entity = o.get("$entity")?.as_str()?;
        let id = o.get("$id")?.as_i64()?;
        Some((entity, id))
    });
    let Some((entity, id)) = handle else {
        return Ok(Value::from_json(raw));
    };
    let ent = project
        .data
        .entity(entity)
        .ok_or_else(|| SeedError::UnknownEntity(entity.to_string()))?;
    let row = store
        .get(entity, id)
        .ok_or_else(|| SeedError::UnknownInstance {
            name: name.to_string(),
            entity: entity.to_string(),
            id,
        })?;
    Ok(store.materialize(&project.data, ent, row))
}

/// Runs a whole scenario. Only seeding can fail.
pub fn run(
    project: &Project,
    scenario: &Scenario,
) -> Result<(SimState, Vec<TraceEvent>), SeedError> {
    let mut state = init_state(project, scenario)?;
    let mut trace = Vec::new();
    for stimulus in &scenario.stimuli {
        trace.extend(deliver(project, &mut state, stimulus));
    }
    Ok((state, trace))
}

/// Delivers one stimulus: fires every matching rule in declaration order
/// and returns the trace it produced.
pub fn deliver(project: &Project, state: &mut SimState, stimulus: &Stimulus) -> Vec<TraceEvent> {
    let mut exec = Exec {
        project,
        state,
        payload: &stimulus.payload,
        trace: Vec::new(),
        used: 0,
    };
    let mut detail = Map::new();
    detail.insert("event".into(), event_json(&stimulus.event));
    detail.insert("payload".into(), payload_json(&stimulus.payload));
    exec.emit(
        TraceKind::EventDelivered,
        event_subject(&stimulus.event),
        detail,
    );

    let view = exec.state.current_view.clone();
    let matching: Vec<&EcaRule> = project
        .logic
        .rules()
        .iter()
        .filter(|r| r.trigger == stimulus.event && r.scope.as_ref().is_none_or(|s| *s == view))
        .collect();
    if matching.is_empty() {
        return exec.trace;
    }
    let saved = exec.state.env.unbind("event");
    exec.state
        .env
        .bind("event", Value::from_json(&payload_json(&stimulus.payload)));
    for rule in matching {
        exec.fire(rule);
    }
    exec.state.env.unbind("event");
    if let Some(v) = saved {
        exec.state.env.bind("event", v);
    }
    exec.trace
}

fn payload_json(p: &BTreeMap<String, serde_json::Value>) -> serde_json::Value {
    serde_json::Value::Object(p.iter().map(|(k, v)| (k.clone(), v.clone())).collect())
}

fn event_subject(e: &Event) -> String {
    match e {
        Event::UserInteraction { target, .. } => target.to_string(),
        Event::DeviceCapability { capability, signal } => {
            format!("{}.{signal}", capability.as_str())
        }
        Event::ApplicationSpecific { name } => name.clone(),
    }
}

struct Exec<'a> {
    project: &'a Project,
    state: &'a mut SimState,
    payload: &'a BTreeMap<String, serde_json::Value>,
    trace: Vec<TraceEvent>,
    used: u64,
}

fn detail<const N: usize>(pairs: [(&str, serde_json::Value); N]) -> Map<String, serde_json::Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

impl Exec<'_> {
    fn emit(&mut self, kind: TraceKind, subject: String, detail: Map<String, serde_json::Value>) {
        self.state.step += 1;
        self.trace.push(TraceEvent {
            step: self.state.step,
            kind,
            subject,
            detail,
        });
    }

    fn fire(&mut self, rule: &EcaRule) {
        self.emit(
            TraceKind::RuleFired,
            rule.id.to_string(),
            detail([("rule", json!(rule.name()))]),
        );
        let body = &rule.body;
        let mut cur = if body.nodes.is_empty() { None } else { Some(0) };
        while let Some(i) = cur {
            let node = &body.nodes[i];
            if self.used >= STEP_BUDGET {
                self.emit(
                    TraceKind::BudgetExhausted,
                    rule.id.to_string(),
                    detail([
                        ("budget", json!(STEP_BUDGET)),
                        ("node", json!(node.id.to_string())),
                    ]),
                );
                return;
            }
            self.used += 1;
            self.execute(&node.id.to_string(), &node.action);
            cur = None;
            for edge in &node.outgoing {
                let Some(next) = body.index_of(&edge.target) else {
                    continue;
                };
                let taken = match &edge.condition {
                    None => true,
                    Some(c) => {
                        let result = evaluate(c, &self.state.env);
                        self.emit(
                            TraceKind::ConditionEvaluated,
                            node.id.to_string(),
                            detail([
                                ("condition", json!(c.to_string())),
                                ("target", json!(edge.target.to_string())),
                                ("result", json!(result)),
                            ]),
                        );
                        result
                    }
                };
                if taken {
                    cur = Some(next);
                    break;
                }
            }
        }
    }

    fn done(&mut self, subject: &str, mut d: Map<String, serde_json::Value>, action: &Action) {
        d.insert("action".into(), json!(action.kind_name()));
        self.emit(TraceKind::ActionExecuted, subject.to_string(), d);
    }

    fn skip(&mut self, subject: &str, action: &Action, reason: String) {
        let d = detail([
            ("action", json!(action.kind_name())),
            ("reason", json!(reason)),
        ]);
        self.emit(TraceKind::ActionSkipped, subject.to_string(), d);
    }

    fn bind(&mut self, name: Option<&str>, value: Value) {
        if let Some(n) = name {
            self.state.env.bind(n, value);
        }
    }

    fn execute(&mut self, subject: &str, action: &Action) {
        match action {
            Action::DataOp {
                entity,
                operation,
                args,
                bind_as,
            } => {
                let Some(ent) = self.project.data.entity_by_id(entity) else {
                    return self.skip(
                        subject,
                        action,
                        format!("unknown entity `{}`", entity.dotted()),
                    );
                };
                let Some(op) = ent.operation(operation) else {
                    return self.skip(subject, action, format!("unknown operation `{operation}`"));
                };
                let kind = op.kind();
                match kind {
                    OperationKind::Create => {
                        self.create(subject, action, ent, args, bind_as.as_deref())
                    }
                    OperationKind::Read => {
                        self.read(subject, action, ent, args.first(), bind_as.as_deref())
                    }
                    OperationKind::Update => self.update(subject, action, ent, args),
                    OperationKind::Delete => self.delete(subject, action, ent, args.first()),
                    OperationKind::Custom => {
                        self.bind(bind_as.as_deref(), Value::Null);
                        let d =
                            detail([("entity", json!(ent.name)), ("operation", json!(operation))]);
                        self.done(subject, d, action);
                    }
                }
            }
            Action::UiUpdate {
                element,
                update,
                value,
            } => {
                let text = value
                    .as_ref()
                    .map(|v| match argument_value(v, &self.state.env) {
                        Value::Null => String::new(),
                        other => other.to_string(),
                    })
                    .unwrap_or_default();
                let Some(ui) = self.state.ui_state.get_mut(element) else {
                    return self.skip(
                        subject,
                        action,
                        format!("unknown element `{}`", element.dotted()),
                    );
                };
                let mut d = detail([
                    ("element", json!(element.to_string())),
                    ("update", json!(update.as_str())),
                ]);
                match update {
                    UiUpdate::SetText => {
                        ui.text = text.clone();
                        d.insert("text".into(), json!(text));
                    }
                    UiUpdate::Show => ui.visible = true,
                    UiUpdate::Hide => ui.visible = false,
                    UiUpdate::Refresh => {}
                }
                self.done(subject, d, action);
            }
            Action::Navigate { flow } => {
                let Some(f) = self.project.navigation.flow_by_id(flow) else {
                    return self.skip(subject, action, format!("unknown flow `{}`", flow.dotted()));
                };
                if f.source != self.state.current_view {
                    let reason = format!(
                        "flow `{}` leaves `{}`, not the current view `{}`",
                        f.name,
                        f.source.dotted(),
                        self.state.current_view.dotted()
                    );
                    return self.skip(subject, action, reason);
                }
                if let Some(g) = &f.guard {
                    if !evaluate(g, &self.state.env) {
                        return self.skip(
                            subject,
                            action,
                            format!("guard `{g}` of flow `{}` is false", f.name),
                        );
                    }
                }
                self.done(subject, detail([("flow", json!(flow.to_string()))]), action);
                let from = std::mem::replace(&mut self.state.current_view, f.target.clone());
                let d = detail([
                    ("from", json!(from.to_string())),
                    ("to", json!(f.target.to_string())),
                ]);
                self.emit(TraceKind::Navigated, flow.to_string(), d);
            }
            Action::DeviceAccess {
                capability,
                request,
                bind_as,
            } => {
                let raw = self
                    .payload
                    .get(request)
                    .or_else(|| self.payload.get(capability.as_str()))
                    .cloned()
                    .unwrap_or(serde_json::Value::Null);
                self.bind(bind_as.as_deref(), Value::from_json(&raw));
                let d = detail([
                    ("capability", json!(capability.as_str())),
                    ("request", json!(request)),
                    ("value", raw),
                ]);
                self.done(subject, d, action);
            }
        }
    }

    fn create(
        &mut self,
        subject: &str,
        action: &Action,
        ent: &Entity,
        args: &[ConditionExpr],
        bind_as: Option<&str>,
    ) {
        let values = ent
            .properties
            .iter()
            .zip(args)
            .map(|(p, a)| {
                (
                    p.name.clone(),
                    coerce(p.ptype, argument_value(a, &self.state.env)),
                )
            })
            .collect();
        let id = self.state.store.insert(&ent.name, values);
        let inst = self.instance(ent, id);
        self.bind(bind_as, inst);
        let d = detail([
            ("entity", json!(ent.name)),
            ("operation", json!("create")),
            ("id", json!(id)),
        ]);
        self.done(subject, d, action);
    }

    fn read(
        &mut self,
        subject: &str,
        action: &Action,
        ent: &Entity,
        filter: Option<&ConditionExpr>,
        bind_as: Option<&str>,
    ) {
        let saved = self.state.env.unbind("it");
        let mut found = None;
        for row in self.state.store.instances(&ent.name) {
            let candidate = self.state.store.materialize(&self.project.data, ent, row);
            self.state.env.bind("it", candidate);
            if filter.is_none_or(|f| evaluate(f, &self.state.env)) {
                found = Some(row.id);
                break;
            }
        }
        self.state.env.unbind("it");
        if let Some(v) = saved {
            self.state.env.bind("it", v);
        }
        let value = found
            .map(|id| self.instance(ent, id))
            .unwrap_or(Value::Null);
        self.bind(bind_as, value);
        let d = detail([
            ("entity", json!(ent.name)),
            ("operation", json!("read")),
            ("id", json!(found)),
        ]);
        self.done(subject, d, action);
    }

    fn update(&mut self, subject: &str, action: &Action, ent: &Entity, args: &[ConditionExpr]) {
        let Some(id) = self.target_id(ent, args.first()) else {
            return self.skip(
                subject,
                action,
                format!("no live `{}` instance to update", ent.name),
            );
        };
        let prop = args.get(1).and_then(member_name);
        let value = args
            .get(2)
            .map(|a| argument_value(a, &self.state.env))
            .unwrap_or(Value::Null);
        let stored = match prop.as_deref() {
            Some(p) => match (ent.property(p), ent.reference(p)) {
                (Some(decl), _) => Some((p.to_string(), coerce(decl.ptype, value))),
                (None, Some(r)) if r.cardinality == Cardinality::One => match value {
                    Value::Instance(i) if i.id.is_some() => {
                        Some((p.to_string(), Value::Int(i.id.unwrap_or(0))))
                    }
                    v @ (Value::Int(_) | Value::Null) => Some((p.to_string(), v)),
                    _ => None,
                },
                _ => None,
            },
            None => None,
        };
        let Some((key, value)) = stored else {
            return self.skip(
                subject,
                action,
                format!(
                    "`{}` has no updatable member {:?}",
                    ent.name,
                    prop.unwrap_or_default()
                ),
            );
        };
        self.state.store.set(&ent.name, id, &key, value);
        self.refresh(ent, id);
        let d = detail([
            ("entity", json!(ent.name)),
            ("operation", json!("update")),
            ("id", json!(id)),
            ("property", json!(key)),
        ]);
        self.done(subject, d, action);
    }

    fn delete(
        &mut self,
        subject: &str,
        action: &Action,
        ent: &Entity,
        target: Option<&ConditionExpr>,
    ) {
        let Some(id) = self.target_id(ent, target) else {
            return self.skip(
                subject,
                action,
                format!("no live `{}` instance to delete", ent.name),
            );
        };
        self.state.store.remove(&ent.name, id);
        self.refresh(ent, id);
        let d = detail([
            ("entity", json!(ent.name)),
            ("operation", json!("delete")),
            ("id", json!(id)),
        ]);
        self.done(subject, d, action);
    }

    /// Id of the live instance of `ent` the argument evaluates to.
    fn target_id(&self, ent: &Entity, arg: Option<&ConditionExpr>) -> Option<i64> {
        match argument_value(arg?, &self.state.env) {
            Value::Instance(i) if i.entity == ent.name => {
                let id = i.id?;
                self.state.store.get(&ent.name, id).map(|_| id)
            }
            _ => None,
        }
    }

    fn instance(&self, ent: &Entity, id: i64) -> Value {
        match self.state.store.get(&ent.name, id) {
            Some(row) => self.state.store.materialize(&self.project.data, ent, row),
            None => Value::Null,
        }
    }

    /// Re-reads every binding that holds instance `id` of `ent`; bindings
    /// to a deleted instance become null.
    fn refresh(&mut self, ent: &Entity, id: i64) {
        let fresh = self.instance(ent, id);
        for (_, v) in self.state.env.iter_mut() {
            if matches!(v, Value::Instance(i) if i.entity == ent.name && i.id == Some(id)) {
                *v = fresh.clone();
            }
        }
    }
}

/// Property name given as a string literal or a bare single-segment path.
fn member_name(arg: &ConditionExpr) -> Option<String> {
    match arg {
        ConditionExpr::Operand(Operand::Literal(crate::expr::Literal::Str(s))) => Some(s.clone()),
        ConditionExpr::Operand(Operand::Path(p)) if p.segments().len() == 1 => {
            Some(p.root().to_string())
        }
        _ => None,
    }
}

fn coerce(ptype: PrimitiveType, v: Value) -> Value {
    match (ptype, v) {
        (PrimitiveType::Float, Value::Int(i)) => Value::Float(i as f64),
        (PrimitiveType::Date, Value::Str(s)) => match NaiveDate::parse_from_str(&s, "%Y-%m-%d") {
            Ok(d) => Value::Date(d),
            Err(_) => Value::Str(s),
        },
        (_, v) => v,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse_data, parse_logic, parse_navigation, parse_ui};
    use crate::model::{Gesture, ModelKind};
    use crate::sim::Seed;

    fn project(nav: &str, data: &str, ui: &str, bl: &str) -> Project {
        Project {
            name: "t".into(),
            navigation: parse_navigation(nav, "t.nav").model.unwrap(),
            data: parse_data(data, "t.data").model.unwrap(),
            ui: parse_ui(ui, "t.ui").model.unwrap(),
            logic: parse_logic(bl, "t.bl").model.unwrap(),
            ..Project::default()
        }
    }

    fn tap(name: &str) -> Stimulus {
        Stimulus::new(Event::UserInteraction {
            gesture: Gesture::Tap,
            target: crate::model::ElementId::simple(ModelKind::UI, name),
        })
    }

    fn kinds(trace: &[TraceEvent]) -> Vec<TraceKind> {
        trace.iter().map(|e| e.kind).collect()
    }

    const NAV: &str =
        "view home \"Home\" entry\nview detail \"Detail\"\nflow toDetail: home -> detail\n";
    const DATA: &str = "entity City {\n  prop name: string\n  prop founded: date\n}\n";
    const UI: &str = "container main { button go [text=\"Go\"] label title }";

    #[test]
    fn empty_scenario_starts_at_entry() {
        let p = project(NAV, DATA, UI, "");
        let (s, trace) = run(&p, &Scenario::default()).unwrap();
        assert_eq!(s.current_view.to_string(), "Navigation:home");
        assert!(s.store.is_empty());
        assert!(trace.is_empty());
        assert_eq!(s.step, 0);
        assert_eq!(s.ui_state[&"UI:go".parse().unwrap()].text, "Go");
    }

    #[test]
    fn seeds_get_sequential_ids() {
        let p = project(NAV, DATA, UI, "");
        let mut sc = Scenario::default();
        for n in ["Rome", "Oslo", "Lima"] {
            sc.seed.push(Seed {
                entity: "City".into(),
                values: [("name".to_string(), json!(n))].into_iter().collect(),
            });
        }
        let s = init_state(&p, &sc).unwrap();
        let ids: Vec<i64> = s.store.instances("City").iter().map(|r| r.id).collect();
        assert_eq!(ids, vec![1, 2, 3]);
    }

    #[test]
    fn seed_type_errors() {
        let p = project(NAV, DATA, UI, "");
        let seed = |k: &str, v: serde_json::Value| Scenario {
            seed: vec![Seed {
                entity: "City".into(),
                values: [(k.to_string(), v)].into_iter().collect(),
            }],
            ..Scenario::default()
        };
        assert!(matches!(
            init_state(&p, &seed("name", json!(3))),
            Err(SeedError::TypeMismatch { .. })
        ));
        assert!(matches!(
            init_state(&p, &seed("founded", json!("1st May"))),
            Err(SeedError::TypeMismatch { .. })
        ));
        assert!(matches!(
            init_state(&p, &seed("size", json!(3))),
            Err(SeedError::UnknownProperty { .. })
        ));
        assert!(init_state(&p, &seed("founded", json!("0753-04-21"))).is_ok());
    }

    #[test]
    fn unmatched_event_only_logs_delivery() {
        let p = project(NAV, DATA, UI, "");
        let mut s = init_state(&p, &Scenario::default()).unwrap();
        let before = s.clone();
        let trace = deliver(&p, &mut s, &tap("go"));
        assert_eq!(kinds(&trace), vec![TraceKind::EventDelivered]);
        assert_eq!(s.store, before.store);
        assert_eq!(s.current_view, before.current_view);
    }

    #[test]
    fn create_then_navigate() {
        let bl = "rule r on tap go do { a: data City.create(\"Rome\", \"0753-04-21\") as c -> b\n b: goto toDetail }";
        let p = project(NAV, DATA, UI, bl);
        let mut s = init_state(&p, &Scenario::default()).unwrap();
        let trace = deliver(&p, &mut s, &tap("go"));
        use TraceKind::*;
        assert_eq!(
            kinds(&trace),
            vec![
                EventDelivered,
                RuleFired,
                ActionExecuted,
                ActionExecuted,
                Navigated
            ]
        );
        assert_eq!(s.store.len(), 1);
        assert_eq!(s.current_view.to_string(), "Navigation:detail");
        let founded = crate::expr::Path::new(["c", "founded"]);
        assert_eq!(
            s.env.resolve(&founded),
            Some(Value::Date(NaiveDate::from_ymd_opt(753, 4, 21).unwrap()))
        );
        assert_eq!(
            trace.iter().map(|e| e.step).collect::<Vec<_>>(),
            vec![1, 2, 3, 4, 5]
        );
    }

    #[test]
    fn navigate_from_wrong_view_is_skipped() {
        let bl = "rule r on tap go do { a: goto toDetail -> b\n b: goto toDetail }";
        let p = project(NAV, DATA, UI, bl);
        let mut s = init_state(&p, &Scenario::default()).unwrap();
        let trace = deliver(&p, &mut s, &tap("go"));
        use TraceKind::*;
        assert_eq!(
            kinds(&trace),
            vec![
                EventDelivered,
                RuleFired,
                ActionExecuted,
                Navigated,
                ActionSkipped
            ]
        );
    }

    #[test]
    fn false_guard_blocks_navigation() {
        let nav = "view home \"Home\" entry\nview detail \"Detail\"\nflow toDetail: home -> detail when ok\n";
        let p = project(nav, DATA, UI, "rule r on tap go do { a: goto toDetail }");
        let mut s = init_state(&p, &Scenario::default()).unwrap();
        deliver(&p, &mut s, &tap("go"));
        assert_eq!(s.current_view.to_string(), "Navigation:home");
        s.env.bind("ok", Value::Bool(true));
        deliver(&p, &mut s, &tap("go"));
        assert_eq!(s.current_view.to_string(), "Navigation:detail");
    }

    #[test]
    fn unconditioned_cycle_hits_budget() {
        let bl = "rule r on tap go do { a: ui title refresh -> b\n b: ui title refresh -> a }";
        let p = project(NAV, DATA, UI, bl);
        let mut s = init_state(&p, &Scenario::default()).unwrap();
        let trace = deliver(&p, &mut s, &tap("go"));
        let executed = trace
            .iter()
            .filter(|e| e.kind == TraceKind::ActionExecuted)
            .count();
        assert_eq!(executed, STEP_BUDGET as usize);
        assert_eq!(trace.last().unwrap().kind, TraceKind::BudgetExhausted);
        assert_eq!(trace.len(), STEP_BUDGET as usize + 3);
    }

    #[test]
    fn first_true_edge_wins() {
        let bl = "rule r on tap go do { a: ui title refresh -> b if false -> c if true -> b\n b: ui title hide\n c: ui title setText \"c\" }";
        let p = project(NAV, DATA, UI, bl);
        let mut s = init_state(&p, &Scenario::default()).unwrap();
        let trace = deliver(&p, &mut s, &tap("go"));
        let evaluated = trace
            .iter()
            .filter(|e| e.kind == TraceKind::ConditionEvaluated)
            .count();
        assert_eq!(evaluated, 2);
        let title = s.ui_state[&"UI:title".parse().unwrap()].clone();
        assert!(title.visible);
        assert_eq!(title.text, "c");
    }

    #[test]
    fn crud_round_trip() {
        let bl = "rule mk on app start do { a: data City.create(\"Rome\", null) }\n\
                  rule find on app look do { a: data City.read(it.name == \"Rome\") as c -> b\n\
                  b: data City.update(c, name, \"Roma\") -> d\n d: data City.delete(c) }";
        let p = project(NAV, DATA, UI, bl);
        let app = |n: &str| Stimulus::new(Event::ApplicationSpecific { name: n.into() });
        let mut s = init_state(&p, &Scenario::default()).unwrap();
        let trace = deliver(&p, &mut s, &app("look"));
        assert_eq!(
            trace
                .iter()
                .filter(|e| e.kind == TraceKind::ActionSkipped)
                .count(),
            2
        );
        assert_eq!(s.env.get("c"), Some(&Value::Null));
        deliver(&p, &mut s, &app("start"));
        deliver(&p, &mut s, &app("look"));
        assert!(s.store.is_empty());
        assert_eq!(s.env.get("c"), Some(&Value::Null));
        deliver(&p, &mut s, &app("start"));
        assert_eq!(s.store.instances("City")[0].id, 2);
    }

    #[test]
    fn device_payload_binding() {
        let bl = "rule r on device gps fix do { a: device gps locate as here -> b\n b: ui title setText here.lat }";
        let p = project(NAV, DATA, UI, bl);
        let mut s = init_state(&p, &Scenario::default()).unwrap();
        let st = Stimulus::new(Event::DeviceCapability {
            capability: crate::model::Capability::Gps,
            signal: "fix".into(),
        })
        .with("gps", json!({"lat": 41.9}));
        deliver(&p, &mut s, &st);
        assert_eq!(s.ui_state[&"UI:title".parse().unwrap()].text, "41.9");
        assert!(s.env.get("event").is_none());
    }
}

//! Reference store for checking simulator data operations. Shared with the
//! CLI acceptance suite.

use mvmob_core::dsl::{parse_data, parse_logic, parse_navigation, parse_ui};
use mvmob_core::expr::Value;
use mvmob_core::model::{Event, Project};
use mvmob_core::sim::{deliver, init_state, Scenario, SimState, Stimulus};
use rand::Rng;
use serde_json::json;

const DATA: &str = "entity Item {\n  prop label: string\n  prop qty: integer\n}\n";
const LOGIC: &str = "\
rule mk on app mk do { a: data Item.create(event.label, event.qty) }
rule find on app find do { a: data Item.read(it.qty == event.qty) as cur }
rule bump on app bump do {
  a: data Item.read(it.qty == event.qty) as cur -> b
  b: data Item.update(cur, qty, event.to)
}
rule drop on app drop do {
  a: data Item.read(it.label == event.label) as cur -> b
  b: data Item.delete(cur)
}
";

pub fn project() -> Project {
    Project {
        name: "crud".into(),
        navigation: parse_navigation("view home \"Home\" entry\n", "t.nav")
            .model
            .unwrap(),
        data: parse_data(DATA, "t.data").model.unwrap(),
        ui: parse_ui("container main { label title }", "t.ui")
            .model
            .unwrap(),
        logic: parse_logic(LOGIC, "t.bl").model.unwrap(),
        ..Project::default()
    }
}

/// Rows in insertion order, the next id, and the `cur` binding.
#[derive(Debug, Default)]
struct Reference {
    rows: Vec<(i64, String, i64)>,
    next: i64,
    cur: Option<i64>,
}

impl Reference {
    fn first(&self, pred: impl Fn(&(i64, String, i64)) -> bool) -> Option<i64> {
        self.rows.iter().find(|r| pred(r)).map(|r| r.0)
    }

    fn apply(&mut self, op: &Op) {
        match op {
            Op::Create(label, qty) => {
                self.next += 1;
                self.rows.push((self.next, label.clone(), *qty));
            }
            Op::Find(q) => self.cur = self.first(|r| r.2 == *q),
            Op::Bump(q, to) => {
                self.cur = self.first(|r| r.2 == *q);
                if let Some(id) = self.cur {
                    self.rows.iter_mut().find(|r| r.0 == id).unwrap().2 = *to;
                }
            }
            Op::Drop(label) => {
                self.cur = self.first(|r| &r.1 == label);
                if let Some(id) = self.cur.take() {
                    self.rows.retain(|r| r.0 != id);
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
pub enum Op {
    Create(String, i64),
    Find(i64),
    Bump(i64, i64),
    Drop(String),
}

impl Op {
    fn random<R: Rng>(rng: &mut R) -> Op {
        let label = ["a", "b", "c", "d"][rng.gen_range(0..4)].to_string();
        let qty = rng.gen_range(0..5);
        match rng.gen_range(0..10) {
            0..=3 => Op::Create(label, qty),
            4..=5 => Op::Find(qty),
            6..=7 => Op::Bump(qty, rng.gen_range(0..5)),
            _ => Op::Drop(label),
        }
    }

    fn stimulus(&self) -> Stimulus {
        let app = |n: &str| Stimulus::new(Event::ApplicationSpecific { name: n.into() });
        match self {
            Op::Create(l, q) => app("mk").with("label", json!(l)).with("qty", json!(q)),
            Op::Find(q) => app("find").with("qty", json!(q)),
            Op::Bump(q, to) => app("bump").with("qty", json!(q)).with("to", json!(to)),
            Op::Drop(l) => app("drop").with("label", json!(l)),
        }
    }
}

fn compare(state: &SimState, reference: &Reference) -> Result<(), String> {
    let actual: Vec<(i64, String, i64)> = state
        .store
        .instances("Item")
        .iter()
        .map(|row| {
            let label = match row.values.get("label") {
                Some(Value::Str(s)) => s.clone(),
                other => return Err(format!("row {} label {other:?}", row.id)),
            };
            let qty = match row.values.get("qty") {
                Some(Value::Int(i)) => *i,
                other => return Err(format!("row {} qty {other:?}", row.id)),
            };
            Ok((row.id, label, qty))
        })
        .collect::<Result<_, _>>()?;
    if actual != reference.rows {
        return Err(format!(
            "store {actual:?} != reference {:?}",
            reference.rows
        ));
    }
    let cur = match state.env.get("cur") {
        None | Some(Value::Null) => None,
        Some(Value::Instance(i)) => {
            let row = reference.rows.iter().find(|r| Some(r.0) == i.id);
            let fields = row.map(|r| (Value::Str(r.1.clone()), Value::Int(r.2)));
            let seen = (
                i.properties.get("label").cloned().unwrap_or(Value::Null),
                i.properties.get("qty").cloned().unwrap_or(Value::Null),
            );
            if fields.as_ref() != Some(&seen) {
                return Err(format!("stale binding {i:?}"));
            }
            i.id
        }
        Some(v) => return Err(format!("cur bound to {v:?}")),
    };
    if cur != reference.cur {
        return Err(format!("cur {cur:?} != reference {:?}", reference.cur));
    }
    Ok(())
}

/// Runs `len` random operations from `rng` and compares after every step.
pub fn check_sequence<R: Rng>(p: &Project, rng: &mut R, len: usize) -> Result<(), String> {
    let mut state = init_state(p, &Scenario::default()).map_err(|e| e.to_string())?;
    let mut reference = Reference::default();
    for step in 0..len {
        let op = Op::random(rng);
        deliver(p, &mut state, &op.stimulus());
        reference.apply(&op);
        compare(&state, &reference).map_err(|e| format!("step {step} {op:?}: {e}"))?;
    }
    Ok(())
}

mod common;

use std::collections::BTreeSet;

use common::oracle::{bool_expr, truth_table, VARS};
use mvmob_core::expr::{
    evaluate, free_paths, parse_expr, CompareOp, ConditionExpr, Environment, Literal, Operand,
    Path, Value,
};
use mvmob_core::testkit::{random_environment, random_expr, rng};
use proptest::prelude::*;

fn var(name: &str) -> ConditionExpr {
    ConditionExpr::path([name])
}

#[test]
fn precedence_examples() {
    let e = parse_expr("a or b and c").unwrap();
    assert_eq!(
        e,
        ConditionExpr::Or(vec![var("a"), ConditionExpr::And(vec![var("b"), var("c")])])
    );
    let e = parse_expr("not state.loggedIn").unwrap();
    assert_eq!(
        e,
        ConditionExpr::negation(ConditionExpr::path(["state", "loggedIn"]))
    );
}

#[test]
fn literal_and_integer_examples() {
    assert!(evaluate(
        &parse_expr("true == true").unwrap(),
        &Environment::new()
    ));
    let mut state = mvmob_core::expr::Instance {
        entity: "State".into(),
        id: None,
        properties: Default::default(),
        references: Default::default(),
    };
    state.properties.insert("count".into(), Value::Int(5));
    let env: Environment = [("state".to_string(), Value::Instance(Box::new(state)))]
        .into_iter()
        .collect();
    assert!(evaluate(&parse_expr("state.count > 3").unwrap(), &env));
}

#[test]
fn print_parse_identity_on_random_trees() {
    for seed in 0..500 {
        let e = random_expr(&mut rng(seed), 4);
        assert!(e.is_well_formed());
        let text = e.to_string();
        let back = parse_expr(&text).unwrap_or_else(|err| panic!("seed {seed}: {text}: {err}"));
        assert_eq!(back, e, "seed {seed}: {text}");
        assert_eq!(back.to_string(), text);
    }
}

#[test]
fn truth_table_agreement() {
    for seed in 0..200 {
        let e = bool_expr(&mut rng(10_000 + seed), 4);
        for bits in 0..8u8 {
            let row = [bits & 1 != 0, bits & 2 != 0, bits & 4 != 0];
            let env: Environment = VARS
                .iter()
                .zip(row)
                .map(|(n, b)| (n.to_string(), Value::Bool(b)))
                .collect();
            assert_eq!(
                evaluate(&e, &env),
                truth_table(&e, row),
                "seed {seed} row {row:?}: {e}"
            );
        }
    }
}

// Independent evaluator over mixed scalars and instances.

#[derive(Debug, Clone, PartialEq)]
enum Scalar {
    Null,
    Bool(bool),
    Num(f64),
    Text(String),
    Day(i64),
    Record(String, Option<i64>, Vec<(String, Value)>),
}

fn to_scalar(v: &Value) -> Scalar {
    match v {
        Value::Null => Scalar::Null,
        Value::Bool(b) => Scalar::Bool(*b),
        Value::Int(i) => Scalar::Num(*i as f64),
        Value::Float(x) => Scalar::Num(*x),
        Value::Str(s) => Scalar::Text(s.clone()),
        Value::Date(d) => Scalar::Day(d.signed_duration_since(chrono::NaiveDate::MIN).num_days()),
        Value::Instance(i) => Scalar::Record(
            i.entity.clone(),
            i.id,
            i.properties
                .iter()
                .chain(i.references.iter())
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        ),
    }
}

fn lookup(env: &Environment, p: &Path) -> Option<Scalar> {
    let segs = p.segments();
    let mut cur = to_scalar(env.iter().find(|(k, _)| *k == &segs[0])?.1);
    for (n, seg) in segs.iter().enumerate().skip(1) {
        let Scalar::Record(_, id, fields) = &cur else {
            return None;
        };
        cur = match fields.iter().find(|(k, _)| k == seg) {
            Some((_, v)) => to_scalar(v),
            None if seg == "id" && n == segs.len() - 1 => Scalar::Num((*id)? as f64),
            None => return None,
        };
    }
    Some(cur)
}

fn day_of(s: &str) -> Option<i64> {
    let d = chrono::NaiveDate::parse_from_str(s, "%Y-%m-%d").ok()?;
    Some(d.signed_duration_since(chrono::NaiveDate::MIN).num_days())
}

fn naive(e: &ConditionExpr, env: &Environment) -> bool {
    let operand = |o: &Operand| match o {
        Operand::Path(p) => lookup(env, p),
        Operand::Literal(Literal::Str(s)) => Some(Scalar::Text(s.clone())),
        Operand::Literal(Literal::Int(i)) => Some(Scalar::Num(*i as f64)),
        Operand::Literal(Literal::Float(x)) => Some(Scalar::Num(*x)),
        Operand::Literal(Literal::Bool(b)) => Some(Scalar::Bool(*b)),
        Operand::Literal(Literal::Null) => Some(Scalar::Null),
    };
    match e {
        ConditionExpr::Or(xs) => xs.iter().filter(|x| naive(x, env)).count() > 0,
        ConditionExpr::And(xs) => xs.iter().filter(|x| !naive(x, env)).count() == 0,
        ConditionExpr::Not(x) => !naive(x, env),
        ConditionExpr::Operand(o) => operand(o) == Some(Scalar::Bool(true)),
        ConditionExpr::Compare { op, lhs, rhs } => {
            let (Some(l), Some(r)) = (operand(lhs), operand(rhs)) else {
                return false;
            };
            // numbers and dates as comparable keys; strings stand in for dates
            let key = |a: &Scalar, other: &Scalar| match (a, other) {
                (Scalar::Num(x), Scalar::Num(_)) => Some(*x),
                (Scalar::Day(d), Scalar::Day(_) | Scalar::Text(_)) => Some(*d as f64),
                (Scalar::Text(s), Scalar::Day(_)) => day_of(s).map(|d| d as f64),
                _ => None,
            };
            let ordered = key(&l, &r).zip(key(&r, &l));
            let equal: Option<bool> = match (&l, &r) {
                (Scalar::Null, _) | (_, Scalar::Null) => Some(l == r),
                (Scalar::Bool(a), Scalar::Bool(b)) => Some(a == b),
                (Scalar::Text(a), Scalar::Text(b)) => Some(a == b),
                (Scalar::Record(e1, Some(i1), _), Scalar::Record(e2, Some(i2), _)) => {
                    Some(e1 == e2 && i1 == i2)
                }
                (Scalar::Record(..), Scalar::Record(..)) => Some(l == r),
                _ => ordered.map(|(a, b)| a == b),
            };
            match op {
                CompareOp::Eq => equal == Some(true),
                CompareOp::Ne => equal == Some(false),
                CompareOp::Lt => ordered.is_some_and(|(a, b)| a < b),
                CompareOp::Le => ordered.is_some_and(|(a, b)| a <= b),
                CompareOp::Gt => ordered.is_some_and(|(a, b)| a > b),
                CompareOp::Ge => ordered.is_some_and(|(a, b)| a >= b),
            }
        }
    }
}

#[test]
fn mixed_value_agreement() {
    for seed in 0..200 {
        let mut r = rng(20_000 + seed);
        let e = random_expr(&mut r, 3);
        for _ in 0..8 {
            let env = random_environment(&mut r);
            assert_eq!(
                evaluate(&e, &env),
                naive(&e, &env),
                "seed {seed}: {e}\n{env:?}"
            );
        }
    }
}

fn walk_paths(e: &ConditionExpr, out: &mut BTreeSet<Path>) {
    let mut stack = vec![e];
    while let Some(e) = stack.pop() {
        match e {
            ConditionExpr::Or(xs) | ConditionExpr::And(xs) => stack.extend(xs.iter()),
            ConditionExpr::Not(x) => stack.push(x),
            ConditionExpr::Operand(o) => {
                if let Operand::Path(p) = o {
                    out.insert(p.clone());
                }
            }
            ConditionExpr::Compare { lhs, rhs, .. } => {
                for o in [lhs, rhs] {
                    if let Operand::Path(p) = o {
                        out.insert(p.clone());
                    }
                }
            }
        }
    }
}

#[test]
fn free_paths_examples_and_walker() {
    assert!(free_paths(&parse_expr("true").unwrap()).is_empty());
    let got = free_paths(&parse_expr("a.b == c").unwrap());
    assert_eq!(
        got,
        [Path::new(["a", "b"]), Path::new(["c"])]
            .into_iter()
            .collect()
    );
    for seed in 0..300 {
        let e = random_expr(&mut rng(30_000 + seed), 4);
        let mut want = BTreeSet::new();
        walk_paths(&e, &mut want);
        assert_eq!(free_paths(&e), want, "seed {seed}");
    }
}

proptest! {
    #[test]
    fn de_morgan(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (random_expr(&mut r, 3), random_expr(&mut r, 3));
        let env = random_environment(&mut r);
        let lhs = ConditionExpr::negation(ConditionExpr::And(vec![a.clone(), b.clone()]));
        let rhs = ConditionExpr::Or(vec![ConditionExpr::negation(a), ConditionExpr::negation(b)]);
        prop_assert_eq!(evaluate(&lhs, &env), evaluate(&rhs, &env));
    }

    #[test]
    fn evaluate_is_deterministic(seed in any::<u64>()) {
        let mut r = rng(seed);
        let e = random_expr(&mut r, 4);
        let env = random_environment(&mut r);
        prop_assert_eq!(evaluate(&e, &env), evaluate(&e, &env));
    }
}

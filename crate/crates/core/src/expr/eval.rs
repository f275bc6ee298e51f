use std::cmp::Ordering;
use std::collections::BTreeSet;

use chrono::NaiveDate;

use super::ast::{CompareOp, ConditionExpr, Operand, Path};
use super::value::{Environment, Value};

/// Evaluates a condition. Total: a comparison whose operands cannot be
/// resolved, or whose kinds are incompatible, is simply false.
pub fn evaluate(expr: &ConditionExpr, env: &Environment) -> bool {
    match expr {
        ConditionExpr::Or(xs) => xs.iter().any(|x| evaluate(x, env)),
        ConditionExpr::And(xs) => xs.iter().all(|x| evaluate(x, env)),
        ConditionExpr::Not(inner) => !evaluate(inner, env),
        ConditionExpr::Compare { op, lhs, rhs } => {
            match (operand_value(lhs, env), operand_value(rhs, env)) {
                (Some(l), Some(r)) => compare(*op, &l, &r),
                _ => false,
            }
        }
        ConditionExpr::Operand(o) => matches!(operand_value(o, env), Some(Value::Bool(true))),
    }
}

/// Value of an argument expression: a bare operand yields its value (null
/// when unresolvable), anything else yields its truth value.
pub fn argument_value(expr: &ConditionExpr, env: &Environment) -> Value {
    match expr {
        ConditionExpr::Operand(o) => operand_value(o, env).unwrap_or(Value::Null),
        other => Value::Bool(evaluate(other, env)),
    }
}

pub fn operand_value(op: &Operand, env: &Environment) -> Option<Value> {
    match op {
        Operand::Literal(l) => Some(Value::from_literal(l)),
        Operand::Path(p) => env.resolve(p),
    }
}

fn parse_date(s: &str) -> Option<NaiveDate> {
    NaiveDate::parse_from_str(s, "%Y-%m-%d").ok()
}

/// Orders two values when they are comparable. Strings are compared
/// against dates by parsing them as `YYYY-MM-DD`.
fn ordering(l: &Value, r: &Value) -> Option<Ordering> {
    match (l, r) {
        (Value::Int(a), Value::Int(b)) => Some(a.cmp(b)),
        (Value::Int(a), Value::Float(b)) => (*a as f64).partial_cmp(b),
        (Value::Float(a), Value::Int(b)) => a.partial_cmp(&(*b as f64)),
        (Value::Float(a), Value::Float(b)) => a.partial_cmp(b),
        (Value::Date(a), Value::Date(b)) => Some(a.cmp(b)),
        (Value::Date(a), Value::Str(b)) => parse_date(b).map(|b| a.cmp(&b)),
        (Value::Str(a), Value::Date(b)) => parse_date(a).map(|a| a.cmp(b)),
        _ => None,
    }
}

fn equality(l: &Value, r: &Value) -> Option<bool> {
    match (l, r) {
        (Value::Null, _) | (_, Value::Null) => Some(matches!((l, r), (Value::Null, Value::Null))),
        (Value::Bool(a), Value::Bool(b)) => Some(a == b),
        (Value::Str(a), Value::Str(b)) => Some(a == b),
        (Value::Instance(a), Value::Instance(b)) => Some(match (a.id, b.id) {
            (Some(x), Some(y)) => a.entity == b.entity && x == y,
            _ => a == b,
        }),
        _ => ordering(l, r).map(|o| o == Ordering::Equal),
    }
}

fn compare(op: CompareOp, l: &Value, r: &Value) -> bool {
    match op {
        CompareOp::Eq => equality(l, r).unwrap_or(false),
        CompareOp::Ne => equality(l, r).map(|e| !e).unwrap_or(false),
        CompareOp::Lt => ordering(l, r) == Some(Ordering::Less),
        CompareOp::Le => matches!(ordering(l, r), Some(Ordering::Less | Ordering::Equal)),
        CompareOp::Gt => ordering(l, r) == Some(Ordering::Greater),
        CompareOp::Ge => matches!(ordering(l, r), Some(Ordering::Greater | Ordering::Equal)),
    }
}

/// The path operands occurring anywhere in `expr`.
pub fn free_paths(expr: &ConditionExpr) -> BTreeSet<Path> {
    fn walk(e: &ConditionExpr, out: &mut BTreeSet<Path>) {
        let operand = |o: &Operand, out: &mut BTreeSet<Path>| {
            if let Operand::Path(p) = o {
                out.insert(p.clone());
            }
        };
        match e {
            ConditionExpr::Or(xs) | ConditionExpr::And(xs) => xs.iter().for_each(|x| walk(x, out)),
            ConditionExpr::Not(inner) => walk(inner, out),
            ConditionExpr::Compare { lhs, rhs, .. } => {
                operand(lhs, out);
                operand(rhs, out);
            }
            ConditionExpr::Operand(o) => operand(o, out),
        }
    }
    let mut out = BTreeSet::new();
    walk(expr, &mut out);
    out
}

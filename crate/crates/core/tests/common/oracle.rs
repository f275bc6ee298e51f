//! Independent reference implementations. Shared with the CLI acceptance
//! suite.

use std::collections::BTreeSet;

use mvmob_core::expr::{CompareOp, ConditionExpr, Literal, Operand, Path};
use mvmob_core::model::{ElementId, NavigationModel};
use rand::seq::SliceRandom;
use rand::Rng;

// Truth tables over three boolean variables.

pub const VARS: [&str; 3] = ["a", "b", "c"];

fn bool_operand<R: Rng>(r: &mut R) -> Operand {
    match r.gen_range(0..5) {
        0 => Operand::Literal(Literal::Bool(r.gen())),
        1 => Operand::Literal(Literal::Null),
        _ => Operand::Path(Path::new([*VARS.choose(r).unwrap()])),
    }
}

pub fn bool_expr<R: Rng>(r: &mut R, depth: u32) -> ConditionExpr {
    if depth == 0 || r.gen_bool(0.3) {
        return if r.gen_bool(0.5) {
            ConditionExpr::Operand(bool_operand(r))
        } else {
            let op = *CompareOp::ALL.choose(r).unwrap();
            ConditionExpr::compare(op, bool_operand(r), bool_operand(r))
        };
    }
    match r.gen_range(0..3) {
        0 => ConditionExpr::negation(bool_expr(r, depth - 1)),
        1 => ConditionExpr::And(
            (0..r.gen_range(2..4))
                .map(|_| bool_expr(r, depth - 1))
                .collect(),
        ),
        _ => ConditionExpr::Or(
            (0..r.gen_range(2..4))
                .map(|_| bool_expr(r, depth - 1))
                .collect(),
        ),
    }
}

/// `None` stands for null.
fn table_operand(o: &Operand, row: [bool; 3]) -> Option<Option<bool>> {
    match o {
        Operand::Literal(Literal::Bool(b)) => Some(Some(*b)),
        Operand::Literal(Literal::Null) => Some(None),
        Operand::Literal(_) => unreachable!("generator emits booleans and null only"),
        Operand::Path(p) => {
            let i = VARS.iter().position(|v| *v == p.root()).unwrap();
            Some(Some(row[i]))
        }
    }
}

pub fn truth_table(e: &ConditionExpr, row: [bool; 3]) -> bool {
    match e {
        ConditionExpr::Or(xs) => {
            let mut acc = false;
            for x in xs {
                acc = acc || truth_table(x, row);
            }
            acc
        }
        ConditionExpr::And(xs) => {
            let mut acc = true;
            for x in xs {
                acc = acc && truth_table(x, row);
            }
            acc
        }
        ConditionExpr::Not(x) => !truth_table(x, row),
        ConditionExpr::Operand(o) => table_operand(o, row) == Some(Some(true)),
        ConditionExpr::Compare { op, lhs, rhs } => {
            let (l, r) = (
                table_operand(lhs, row).unwrap(),
                table_operand(rhs, row).unwrap(),
            );
            match op {
                // booleans and null support equality only
                CompareOp::Eq => l == r,
                CompareOp::Ne => l != r,
                _ => false,
            }
        }
    }
}

// Graph reachability.

/// Reachable view names by repeated relaxation of a boolean matrix.
pub fn closure(nav: &NavigationModel) -> BTreeSet<String> {
    let names: Vec<&str> = nav.views().iter().map(|v| v.name.as_str()).collect();
    let idx = |id: &ElementId| names.iter().position(|n| *n == id.name());
    let n = names.len();
    let mut reach = vec![vec![false; n]; n];
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    for f in nav.flows() {
        if let (Some(s), Some(t)) = (idx(&f.source), idx(&f.target)) {
            reach[s][t] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    let entry = nav.entry().and_then(idx).expect("entry");
    (0..n)
        .filter(|j| reach[entry][*j])
        .map(|j| names[j].to_string())
        .collect()
}

/// Views reached by some simple path from the entry, found by listing
/// every simple path explicitly.
pub fn path_enumeration(nav: &NavigationModel) -> BTreeSet<String> {
    let entry = nav.entry().expect("entry").name().to_string();
    let mut seen = BTreeSet::new();
    let mut stack = vec![vec![entry]];
    while let Some(path) = stack.pop() {
        let last = path.last().expect("non-empty").clone();
        seen.insert(last.clone());
        for f in nav.flows().iter().filter(|f| f.source.name() == last) {
            let next = f.target.name().to_string();
            if !path.contains(&next) {
                let mut longer = path.clone();
                longer.push(next);
                stack.push(longer);
            }
        }
    }
    seen
}

use std::collections::BTreeSet;

use super::{summary, AnalysisResult, Finding};
use crate::diag::Severity;
use crate::model::{ControlGraph, Project};

/// Node indices lying on some cycle of a rule body.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CycleClasses {
    /// On a cycle none of whose edges carries a condition.
    pub unconditioned: BTreeSet<usize>,
    /// On any cycle.
    pub cyclic: BTreeSet<usize>,
}

/// Successor lists by index; edges to unknown nodes are dropped.
fn adjacency(body: &ControlGraph, unconditioned_only: bool) -> Vec<Vec<usize>> {
    body.nodes
        .iter()
        .map(|n| {
            n.outgoing
                .iter()
                .filter(|f| !unconditioned_only || f.condition.is_none())
                .filter_map(|f| body.index_of(&f.target))
                .collect()
        })
        .collect()
}

/// `reach[u]` = nodes reachable from `u` in one or more steps.
fn transitive(adj: &[Vec<usize>]) -> Vec<BTreeSet<usize>> {
    (0..adj.len())
        .map(|start| {
            let mut seen = BTreeSet::new();
            let mut stack: Vec<usize> = adj[start].clone();
            while let Some(v) = stack.pop() {
                if seen.insert(v) {
                    stack.extend(adj[v].iter().copied());
                }
            }
            seen
        })
        .collect()
}

pub fn classify_cycles(body: &ControlGraph) -> CycleClasses {
    let on_cycle = |adj: Vec<Vec<usize>>| -> BTreeSet<usize> {
        let reach = transitive(&adj);
        (0..adj.len()).filter(|v| reach[*v].contains(v)).collect()
    };
    CycleClasses {
        unconditioned: on_cycle(adjacency(body, true)),
        cyclic: on_cycle(adjacency(body, false)),
    }
}

/// Strongly connected groups of `nodes` under `adj`, each sorted, ordered by
/// smallest member.
fn components(nodes: &BTreeSet<usize>, adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let reach = transitive(adj);
    let mut left = nodes.clone();
    let mut out = Vec::new();
    while let Some(&v) = left.iter().next() {
        let group: Vec<usize> = left
            .iter()
            .copied()
            .filter(|u| *u == v || (reach[v].contains(u) && reach[*u].contains(&v)))
            .collect();
        for u in &group {
            left.remove(u);
        }
        out.push(group);
    }
    out
}

pub fn guarded_cycle_budget(project: &Project) -> AnalysisResult {
    let mut findings = Vec::new();
    let (mut unguarded, mut guarded) = (0, 0);
    for rule in project.logic.rules() {
        let body = &rule.body;
        let classes = classify_cycles(body);
        let names = |group: &[usize]| {
            group
                .iter()
                .map(|i| format!("`{}`", body.nodes[*i].name()))
                .collect::<Vec<_>>()
                .join(", ")
        };
        for group in components(&classes.cyclic, &adjacency(body, false)) {
            let hot: Vec<usize> = group
                .iter()
                .copied()
                .filter(|i| classes.unconditioned.contains(i))
                .collect();
            let element = body.nodes[group[0]].id.clone();
            if hot.is_empty() {
                guarded += 1;
                findings.push(Finding {
                    element,
                    severity: Severity::Info,
                    message: format!(
                        "conditional cycle through {} in rule `{}`",
                        names(&group),
                        rule.name()
                    ),
                });
            } else {
                unguarded += 1;
                findings.push(Finding {
                    element,
                    severity: Severity::Error,
                    message: format!(
                        "potential non-termination: unconditioned cycle through {} in rule `{}`",
                        names(&hot),
                        rule.name()
                    ),
                });
            }
        }
    }
    AnalysisResult::new(
        "guardedCycleBudget",
        findings,
        summary([
            ("unconditionedCycles", unguarded),
            ("conditionalCycles", guarded),
        ]),
    )
}

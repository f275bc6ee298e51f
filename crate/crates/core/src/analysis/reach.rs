use std::collections::{BTreeSet, VecDeque};

use super::{summary, AnalysisResult, Finding};
use crate::diag::Severity;
use crate::model::{ElementId, NavigationModel, Project};

/// Views reachable from the entry view, treating every flow as traversable
/// whatever its guard ("may-reach").
pub fn reachable_views(nav: &NavigationModel) -> BTreeSet<ElementId> {
    let mut seen = BTreeSet::new();
    let Some(entry) = nav.entry().filter(|e| nav.view_by_id(e).is_some()) else {
        return seen;
    };
    let mut queue = VecDeque::from([entry.clone()]);
    seen.insert(entry.clone());
    while let Some(v) = queue.pop_front() {
        for f in nav.outgoing(&v) {
            if nav.view_by_id(&f.target).is_some() && seen.insert(f.target.clone()) {
                queue.push_back(f.target.clone());
            }
        }
    }
    seen
}

pub fn reachability(project: &Project) -> AnalysisResult {
    let nav = &project.navigation;
    let reachable = reachable_views(nav);
    let findings: Vec<Finding> = nav
        .views()
        .iter()
        .filter(|v| !reachable.contains(&v.id))
        .map(|v| Finding {
            element: v.id.clone(),
            severity: Severity::Error,
            message: format!("view `{}` is unreachable from the entry view", v.name),
        })
        .collect();
    let unreachable = findings.len();
    AnalysisResult::new(
        "reachability",
        findings,
        summary([("reachable", reachable.len()), ("unreachable", unreachable)]),
    )
}

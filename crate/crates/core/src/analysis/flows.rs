use std::collections::BTreeSet;

use super::{reachable_views, summary, AnalysisResult, Finding};
use crate::diag::Severity;
use crate::model::{Action, CorrespondenceType, ElementId, Project};

/// Flows that can be exercised: targets of `goto` actions and right ends of
/// NavItemFlow correspondences.
pub fn exercised_flows(project: &Project) -> BTreeSet<ElementId> {
    let by_action = project
        .logic
        .rules()
        .iter()
        .flat_map(|r| r.body.nodes.iter())
        .filter_map(|n| match &n.action {
            Action::Navigate { flow } => Some(flow.clone()),
            _ => None,
        });
    let by_item = project
        .correspondences
        .iter()
        .filter(|c| c.ctype == CorrespondenceType::NavItemFlow)
        .map(|c| c.right.clone());
    by_action.chain(by_item).collect()
}

pub fn dead_flows(project: &Project) -> AnalysisResult {
    let nav = &project.navigation;
    let reachable = reachable_views(nav);
    let exercised = exercised_flows(project);
    let mut findings = Vec::new();
    let (mut unreferenced, mut stranded) = (0, 0);
    for f in nav.flows() {
        if !exercised.contains(&f.id) {
            unreferenced += 1;
            findings.push(Finding {
                element: f.id.clone(),
                severity: Severity::Warning,
                message: format!(
                    "flow `{}` is used by no navigate action and no navigation item",
                    f.name
                ),
            });
        }
        if !reachable.contains(&f.source) {
            stranded += 1;
            findings.push(Finding {
                element: f.id.clone(),
                severity: Severity::Error,
                message: format!(
                    "flow `{}` leaves unreachable view `{}`",
                    f.name,
                    f.source.dotted()
                ),
            });
        }
    }
    AnalysisResult::new(
        "deadFlows",
        findings,
        summary([
            ("flows", nav.flows().len()),
            ("unreferenced", unreferenced),
            ("unreachableSource", stranded),
        ]),
    )
}

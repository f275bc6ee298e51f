use std::collections::BTreeSet;

use super::{reachable_views, summary, AnalysisResult, Finding};
use crate::diag::Severity;
use crate::model::{ElementId, Event, Project};

pub fn event_coverage(project: &Project) -> AnalysisResult {
    let targeted: BTreeSet<&ElementId> = project
        .logic
        .rules()
        .iter()
        .filter_map(|r| match &r.trigger {
            Event::UserInteraction { target, .. } => Some(target),
            _ => None,
        })
        .collect();
    let mut findings = Vec::new();
    let (mut interactive, mut inert) = (0, 0);
    for e in project.ui.elements() {
        if !e.kind.is_interactive() {
            continue;
        }
        interactive += 1;
        if !targeted.contains(&e.id) {
            inert += 1;
            findings.push(Finding {
                element: e.id.clone(),
                severity: Severity::Warning,
                message: format!(
                    "inert element: no rule reacts to {} `{}`",
                    e.kind.keyword(),
                    e.name()
                ),
            });
        }
    }
    let reachable = reachable_views(&project.navigation);
    let mut stranded = 0;
    for r in project.logic.rules() {
        if let Some(scope) = &r.scope {
            if !reachable.contains(scope) {
                stranded += 1;
                findings.push(Finding {
                    element: r.id.clone(),
                    severity: Severity::Error,
                    message: format!(
                        "rule `{}` is scoped to unreachable view `{}`",
                        r.name(),
                        scope.dotted()
                    ),
                });
            }
        }
    }
    AnalysisResult::new(
        "eventCoverage",
        findings,
        summary([
            ("interactive", interactive),
            ("covered", interactive - inert),
            ("inert", inert),
            ("rules", project.logic.rules().len()),
            ("unreachableScope", stranded),
        ]),
    )
}

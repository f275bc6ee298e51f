//! Pre-deployment static analyses over a valid project.

mod coverage;
mod cycles;
mod flows;
mod reach;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use coverage::event_coverage;
pub use cycles::{classify_cycles, guarded_cycle_budget, CycleClasses};
pub use flows::dead_flows;
pub use reach::{reachability, reachable_views};

use crate::diag::Severity;
use crate::model::{ElementId, Project};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub element: ElementId,
    pub severity: Severity,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisResult {
    pub name: String,
    pub summary: BTreeMap<String, i64>,
    pub findings: Vec<Finding>,
}

impl AnalysisResult {
    /// Sorts findings by element id; ties keep insertion order.
    pub(crate) fn new(
        name: &str,
        mut findings: Vec<Finding>,
        summary: BTreeMap<String, i64>,
    ) -> Self {
        findings.sort_by(|a, b| a.element.cmp(&b.element));
        AnalysisResult {
            name: name.to_string(),
            summary,
            findings,
        }
    }

    pub fn has_errors(&self) -> bool {
        self.findings.iter().any(|f| f.severity == Severity::Error)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AnalysisKind {
    Reachability,
    DeadFlows,
    EventCoverage,
    GuardedCycleBudget,
}

impl AnalysisKind {
    pub const ALL: [AnalysisKind; 4] = [
        AnalysisKind::Reachability,
        AnalysisKind::DeadFlows,
        AnalysisKind::EventCoverage,
        AnalysisKind::GuardedCycleBudget,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AnalysisKind::Reachability => "reachability",
            AnalysisKind::DeadFlows => "deadFlows",
            AnalysisKind::EventCoverage => "eventCoverage",
            AnalysisKind::GuardedCycleBudget => "guardedCycleBudget",
        }
    }

    pub fn run(self, project: &Project) -> AnalysisResult {
        match self {
            AnalysisKind::Reachability => reachability(project),
            AnalysisKind::DeadFlows => dead_flows(project),
            AnalysisKind::EventCoverage => event_coverage(project),
            AnalysisKind::GuardedCycleBudget => guarded_cycle_budget(project),
        }
    }
}

impl fmt::Display for AnalysisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown analysis `{0}` (expected reachability, deadFlows, eventCoverage or guardedCycleBudget)")]
pub struct UnknownAnalysis(pub String);

impl FromStr for AnalysisKind {
    type Err = UnknownAnalysis;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AnalysisKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| UnknownAnalysis(s.to_string()))
    }
}

/// Runs the selected analyses in parallel; results come back ordered by
/// analysis name.
pub fn run_analyses(project: &Project, kinds: &[AnalysisKind]) -> Vec<AnalysisResult> {
    let mut kinds = kinds.to_vec();
    kinds.sort_by_key(|k| k.as_str());
    kinds.dedup();
    std::thread::scope(|scope| {
        let handles: Vec<_> = kinds
            .iter()
            .map(|k| scope.spawn(move || k.run(project)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("analysis passes do not panic"))
            .collect()
    })
}

fn summary<const N: usize>(pairs: [(&str, usize); N]) -> BTreeMap<String, i64> {
    pairs
        .into_iter()
        .map(|(k, v)| (k.to_string(), v as i64))
        .collect()
}

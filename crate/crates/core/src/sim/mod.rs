//! Deterministic interpreter for the business-logic rules, driven by
//! scenario scripts.

mod engine;
mod scenario;
mod store;

use std::collections::BTreeMap;

use serde::Serialize;

pub use engine::{deliver, init_state, run, STEP_BUDGET};
pub use scenario::{event_json as scenario_event_json, Scenario, ScenarioError, Seed, Stimulus};
pub use store::{Store, StoredInstance};

use crate::expr::Environment;
use crate::model::ElementId;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UiState {
    pub visible: bool,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimState {
    pub current_view: ElementId,
    pub store: Store,
    pub env: Environment,
    pub ui_state: BTreeMap<ElementId, UiState>,
    /// Number of trace events emitted so far.
    pub step: u64,
}

impl SimState {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "currentView": self.current_view.to_string(),
            "step": self.step,
            "store": self.store.to_json(),
            "env": self.env.iter().map(|(k, v)| (k.clone(), v.to_json())).collect::<serde_json::Map<_, _>>(),
            "uiState": self.ui_state.iter().map(|(k, v)| (k.to_string(), serde_json::json!(v))).collect::<serde_json::Map<_, _>>(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum TraceKind {
    EventDelivered,
    RuleFired,
    ActionExecuted,
    ConditionEvaluated,
    Navigated,
    ActionSkipped,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceEvent {
    pub step: u64,
    pub kind: TraceKind,
    /// An element id where one exists, otherwise a short event label.
    pub subject: String,
    pub detail: serde_json::Map<String, serde_json::Value>,
}

impl TraceEvent {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

/// One JSON object per line, newline-terminated.
pub fn trace_to_jsonl(trace: &[TraceEvent]) -> String {
    trace.iter().map(|e| e.to_json_line() + "\n").collect()
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SeedError {
    #[error("seed names unknown entity `{0}`")]
    UnknownEntity(String),
    #[error("seed for `{entity}` sets unknown property `{property}`")]
    UnknownProperty { entity: String, property: String },
    #[error("seed for `{entity}.{property}` expects {expected}, found {found}")]
    TypeMismatch {
        entity: String,
        property: String,
        expected: String,
        found: String,
    },
    #[error("project has no entry view")]
    NoEntryView,
    #[error("binding `{name}` refers to missing instance {entity}#{id}")]
    UnknownInstance {
        name: String,
        entity: String,
        id: i64,
    },
}

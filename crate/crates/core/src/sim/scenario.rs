use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::model::{Capability, ElementId, Event, Gesture, ModelKind};

#[derive(Debug, Clone, PartialEq)]
pub struct Seed {
    pub entity: String,
    pub values: BTreeMap<String, serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stimulus {
    pub event: Event,
    /// Bound as `event` while the stimulus is delivered; device requests
    /// read their result from here.
    pub payload: BTreeMap<String, serde_json::Value>,
}

impl Stimulus {
    pub fn new(event: Event) -> Self {
        Stimulus {
            event,
            payload: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: serde_json::Value) -> Self {
        self.payload.insert(key.to_string(), value);
        self
    }
}

/// A scenario script: seed rows, initial bindings and ordered stimuli.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Scenario {
    pub seed: Vec<Seed>,
    /// Raw JSON; objects of the form `{"$entity": E, "$id": n}` resolve to
    /// the seeded instance.
    pub bindings: BTreeMap<String, serde_json::Value>,
    pub stimuli: Vec<Stimulus>,
}

#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error("malformed scenario: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown gesture `{0}`")]
    UnknownGesture(String),
    #[error("unknown capability `{0}`")]
    UnknownCapability(String),
    #[error("invalid event target `{0}`")]
    InvalidTarget(String),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileForm {
    #[serde(default)]
    seed: Vec<SeedForm>,
    #[serde(default)]
    bindings: BTreeMap<String, serde_json::Value>,
    #[serde(default)]
    stimuli: Vec<StimulusForm>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeedForm {
    entity: String,
    #[serde(default)]
    values: BTreeMap<String, serde_json::Value>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StimulusForm {
    event: EventForm,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    payload: BTreeMap<String, serde_json::Value>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase", deny_unknown_fields)]
enum EventForm {
    UserInteraction { gesture: String, target: String },
    DeviceCapability { capability: String, signal: String },
    ApplicationSpecific { name: String },
}

impl EventForm {
    fn into_event(self) -> Result<Event, ScenarioError> {
        Ok(match self {
            EventForm::UserInteraction { gesture, target } => Event::UserInteraction {
                gesture: Gesture::from_name(&gesture)
                    .ok_or(ScenarioError::UnknownGesture(gesture))?,
                target: parse_target(&target)?,
            },
            EventForm::DeviceCapability { capability, signal } => Event::DeviceCapability {
                capability: Capability::from_name(&capability)
                    .ok_or(ScenarioError::UnknownCapability(capability))?,
                signal,
            },
            EventForm::ApplicationSpecific { name } => Event::ApplicationSpecific { name },
        })
    }

    fn from_event(e: &Event) -> Self {
        match e {
            Event::UserInteraction { gesture, target } => EventForm::UserInteraction {
                gesture: gesture.as_str().to_string(),
                target: target.to_string(),
            },
            Event::DeviceCapability { capability, signal } => EventForm::DeviceCapability {
                capability: capability.as_str().to_string(),
                signal: signal.clone(),
            },
            Event::ApplicationSpecific { name } => {
                EventForm::ApplicationSpecific { name: name.clone() }
            }
        }
    }
}

/// Accepts `UI:name` or a bare element name.
fn parse_target(s: &str) -> Result<ElementId, ScenarioError> {
    let bad = || ScenarioError::InvalidTarget(s.to_string());
    let id: ElementId = if s.contains(':') {
        s.parse().map_err(|_| bad())?
    } else {
        ElementId::new(ModelKind::UI, [s]).map_err(|_| bad())?
    };
    if id.model() != ModelKind::UI {
        return Err(bad());
    }
    Ok(id)
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Scenario, ScenarioError> {
        let form: FileForm = serde_json::from_str(text)?;
        let stimuli = form
            .stimuli
            .into_iter()
            .map(|s| {
                Ok(Stimulus {
                    event: s.event.into_event()?,
                    payload: s.payload,
                })
            })
            .collect::<Result<_, ScenarioError>>()?;
        Ok(Scenario {
            seed: form
                .seed
                .into_iter()
                .map(|s| Seed {
                    entity: s.entity,
                    values: s.values,
                })
                .collect(),
            bindings: form.bindings,
            stimuli,
        })
    }

    pub fn to_json_string(&self) -> String {
        let form = FileForm {
            seed: self
                .seed
                .iter()
                .map(|s| SeedForm {
                    entity: s.entity.clone(),
                    values: s.values.clone(),
                })
                .collect(),
            bindings: self.bindings.clone(),
            stimuli: self
                .stimuli
                .iter()
                .map(|s| StimulusForm {
                    event: EventForm::from_event(&s.event),
                    payload: s.payload.clone(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&form).expect("plain data serializes") + "\n"
    }
}

/// JSON form of an event as it appears in scenarios and traces.
pub fn event_json(e: &Event) -> serde_json::Value {
    serde_json::to_value(EventForm::from_event(e)).expect("plain data serializes")
}

use std::collections::{BTreeSet, VecDeque};

use super::{ElementId, ModelError, ModelKind};
use crate::expr::{ArgExpr, ConditionExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gesture {
    Tap,
    LongPress,
    Swipe,
}

impl Gesture {
    pub const ALL: [Gesture; 3] = [Gesture::Tap, Gesture::LongPress, Gesture::Swipe];

    pub fn as_str(self) -> &'static str {
        match self {
            Gesture::Tap => "tap",
            Gesture::LongPress => "longPress",
            Gesture::Swipe => "swipe",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Gesture::ALL.into_iter().find(|g| g.as_str() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Capability {
    Gps,
    Camera,
    Network,
    Battery,
}

impl Capability {
    pub const ALL: [Capability; 4] = [
        Capability::Gps,
        Capability::Camera,
        Capability::Network,
        Capability::Battery,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Capability::Gps => "gps",
            Capability::Camera => "camera",
            Capability::Network => "network",
            Capability::Battery => "battery",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Capability::ALL.into_iter().find(|c| c.as_str() == s)
    }
}

/// What triggers a rule.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Event {
    UserInteraction {
        gesture: Gesture,
        target: ElementId,
    },
    DeviceCapability {
        capability: Capability,
        signal: String,
    },
    ApplicationSpecific {
        name: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UiUpdate {
    SetText,
    Show,
    Hide,
    Refresh,
}

impl UiUpdate {
    pub const ALL: [UiUpdate; 4] = [
        UiUpdate::SetText,
        UiUpdate::Show,
        UiUpdate::Hide,
        UiUpdate::Refresh,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            UiUpdate::SetText => "setText",
            UiUpdate::Show => "show",
            UiUpdate::Hide => "hide",
            UiUpdate::Refresh => "refresh",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        UiUpdate::ALL.into_iter().find(|u| u.as_str() == s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Action {
    DataOp {
        entity: ElementId,
        operation: String,
        args: Vec<ArgExpr>,
        bind_as: Option<String>,
    },
    UiUpdate {
        element: ElementId,
        update: UiUpdate,
        value: Option<ArgExpr>,
    },
    Navigate {
        flow: ElementId,
    },
    DeviceAccess {
        capability: Capability,
        request: String,
        bind_as: Option<String>,
    },
}

impl Action {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Action::DataOp { .. } => "dataOp",
            Action::UiUpdate { .. } => "uiUpdate",
            Action::Navigate { .. } => "navigate",
            Action::DeviceAccess { .. } => "deviceAccess",
        }
    }

    pub fn bind_as(&self) -> Option<&str> {
        match self {
            Action::DataOp { bind_as, .. } | Action::DeviceAccess { bind_as, .. } => {
                bind_as.as_deref()
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ControlFlow {
    pub target: ElementId,
    pub condition: Option<ConditionExpr>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ActionNode {
    pub id: ElementId,
    pub action: Action,
    pub outgoing: Vec<ControlFlow>,
}

impl ActionNode {
    pub fn name(&self) -> &str {
        self.id.name()
    }
}

/// The action graph of a rule. The first node is the entry.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ControlGraph {
    pub nodes: Vec<ActionNode>,
}

impl ControlGraph {
    pub fn entry(&self) -> Option<&ActionNode> {
        self.nodes.first()
    }

    pub fn node(&self, id: &ElementId) -> Option<&ActionNode> {
        self.nodes.iter().find(|n| &n.id == id)
    }

    pub fn index_of(&self, id: &ElementId) -> Option<usize> {
        self.nodes.iter().position(|n| &n.id == id)
    }

    /// Indices reachable from the entry by breadth-first search.
    pub fn reachable(&self) -> BTreeSet<usize> {
        let mut seen = BTreeSet::new();
        if self.nodes.is_empty() {
            return seen;
        }
        let mut queue = VecDeque::from([0usize]);
        seen.insert(0);
        while let Some(i) = queue.pop_front() {
            for flow in &self.nodes[i].outgoing {
                if let Some(j) = self.index_of(&flow.target) {
                    if seen.insert(j) {
                        queue.push_back(j);
                    }
                }
            }
        }
        seen
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EcaRule {
    pub id: ElementId,
    pub scope: Option<ElementId>,
    pub trigger: Event,
    pub body: ControlGraph,
}

impl EcaRule {
    pub fn name(&self) -> &str {
        self.id.name()
    }

    /// Id of the action node `node` inside this rule.
    pub fn node_id(&self, node: &str) -> ElementId {
        self.id.child(node)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BusinessLogicModel {
    rules: Vec<EcaRule>,
}

impl BusinessLogicModel {
    /// Enforces unique rule names and unique node names per rule.
    pub fn new(rules: Vec<EcaRule>) -> Result<Self, ModelError> {
        let mut seen = BTreeSet::new();
        for r in &rules {
            if !seen.insert(r.name()) {
                return Err(ModelError::Duplicate {
                    model: ModelKind::BusinessLogic,
                    name: r.name().to_string(),
                });
            }
            let mut nodes = BTreeSet::new();
            for n in &r.body.nodes {
                if !nodes.insert(&n.id) {
                    return Err(ModelError::Duplicate {
                        model: ModelKind::BusinessLogic,
                        name: n.id.dotted(),
                    });
                }
            }
        }
        Ok(BusinessLogicModel { rules })
    }

    pub fn rules(&self) -> &[EcaRule] {
        &self.rules
    }

    pub fn rule(&self, name: &str) -> Option<&EcaRule> {
        self.rules.iter().find(|r| r.name() == name)
    }

    /// Resolves `BusinessLogic:<rule>.<node>`.
    pub fn action(&self, id: &ElementId) -> Option<(&EcaRule, &ActionNode)> {
        match id.path() {
            [rule, _] if id.model() == ModelKind::BusinessLogic => {
                let r = self.rule(rule)?;
                r.body.node(id).map(|n| (r, n))
            }
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

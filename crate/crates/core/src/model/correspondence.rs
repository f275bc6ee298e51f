use std::fmt;

use super::{ElementId, ModelError, ModelKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CorrespondenceType {
    ViewMainContainer,
    AttributeLabel,
    ActionDataOperation,
    ElementEntityBinding,
    NavItemFlow,
}

impl CorrespondenceType {
    pub const ALL: [CorrespondenceType; 5] = [
        CorrespondenceType::ViewMainContainer,
        CorrespondenceType::AttributeLabel,
        CorrespondenceType::ActionDataOperation,
        CorrespondenceType::ElementEntityBinding,
        CorrespondenceType::NavItemFlow,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CorrespondenceType::ViewMainContainer => "ViewMainContainer",
            CorrespondenceType::AttributeLabel => "AttributeLabel",
            CorrespondenceType::ActionDataOperation => "ActionDataOperation",
            CorrespondenceType::ElementEntityBinding => "ElementEntityBinding",
            CorrespondenceType::NavItemFlow => "NavItemFlow",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        CorrespondenceType::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
    }

    /// Model kinds of the (left, right) endpoints.
    pub fn endpoints(self) -> (ModelKind, ModelKind) {
        use ModelKind::*;
        match self {
            CorrespondenceType::ViewMainContainer => (Navigation, UI),
            CorrespondenceType::AttributeLabel => (Data, UI),
            CorrespondenceType::ActionDataOperation => (BusinessLogic, Data),
            CorrespondenceType::ElementEntityBinding => (UI, Data),
            CorrespondenceType::NavItemFlow => (UI, Navigation),
        }
    }
}

impl fmt::Display for CorrespondenceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A typed, directed link between elements of two viewpoint models.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correspondence {
    pub id: ElementId,
    pub ctype: CorrespondenceType,
    pub left: ElementId,
    pub right: ElementId,
}

impl Correspondence {
    pub fn new(
        name: &str,
        ctype: CorrespondenceType,
        left: ElementId,
        right: ElementId,
    ) -> Result<Self, ModelError> {
        let (l, r) = ctype.endpoints();
        if left.model() != l || right.model() != r {
            return Err(ModelError::EndpointKind {
                ctype,
                left: left.model(),
                right: right.model(),
            });
        }
        Ok(Correspondence {
            id: ElementId::new(ModelKind::Correspondence, [name])?,
            ctype,
            left,
            right,
        })
    }

    pub fn name(&self) -> &str {
        self.id.name()
    }
}

//! In-memory representation of the four viewpoint models, their
//! correspondences, and element identity.

mod correspondence;
mod data;
mod id;
mod logic;
mod navigation;
mod ui;

use std::collections::BTreeMap;

use thiserror::Error;

pub use correspondence::{Correspondence, CorrespondenceType};
pub use data::{
    Cardinality, DataModel, DataOperation, Entity, OperationKind, OperationRef, Param,
    PrimitiveType, Property, Reference,
};
pub use id::{is_identifier, ElementId, ModelKind};
pub use logic::{
    Action, ActionNode, BusinessLogicModel, Capability, ControlFlow, ControlGraph, EcaRule, Event,
    Gesture, UiUpdate,
};
pub use navigation::{NavigationFlow, NavigationModel, View};
pub use ui::{BasicKind, ContainerKind, ElementKind, UiElement, UiModel};

use crate::diag::SourceSpan;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("element path must have at least one segment")]
    EmptyPath,
    #[error("`{0}` is not a valid identifier")]
    InvalidIdentifier(String),
    #[error("unknown model kind `{0}`")]
    UnknownModelKind(String),
    #[error("malformed element id `{0}` (expected Kind:path)")]
    MalformedId(String),
    #[error("unknown keyword `{0}`")]
    UnknownKeyword(String),
    #[error("duplicate name `{name}` in {model} model")]
    Duplicate { model: ModelKind, name: String },
    #[error("{ctype} links {} to {}, found {left} to {right}", .ctype.endpoints().0, .ctype.endpoints().1)]
    EndpointKind {
        ctype: CorrespondenceType,
        left: ModelKind,
        right: ModelKind,
    },
}

/// Where each parsed element was declared. Kept beside the models so
/// structural equality ignores layout.
pub type SourceMap = BTreeMap<ElementId, SourceSpan>;

/// One model per viewpoint plus the correspondences binding them.
#[derive(Debug, Clone, Default)]
pub struct Project {
    pub name: String,
    pub navigation: NavigationModel,
    pub data: DataModel,
    pub ui: UiModel,
    pub logic: BusinessLogicModel,
    pub correspondences: Vec<Correspondence>,
    pub sources: SourceMap,
}

impl PartialEq for Project {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.navigation == other.navigation
            && self.data == other.data
            && self.ui == other.ui
            && self.logic == other.logic
            && self.correspondences == other.correspondences
    }
}

impl Project {
    pub fn models(&self) -> ModelSet<'_> {
        ModelSet {
            navigation: Some(&self.navigation),
            data: Some(&self.data),
            ui: Some(&self.ui),
            logic: Some(&self.logic),
            correspondences: &self.correspondences,
            sources: &self.sources,
        }
    }

    pub fn resolve(&self, id: &ElementId) -> Option<ModelElement<'_>> {
        self.models().resolve(id)
    }

    pub fn elements_of(&self, kind: ModelKind) -> Vec<ElementId> {
        self.models().elements_of(kind)
    }
}

/// Borrowed view over a possibly partial set of models. Absent viewpoints
/// resolve nothing.
#[derive(Debug, Clone, Copy)]
pub struct ModelSet<'a> {
    pub navigation: Option<&'a NavigationModel>,
    pub data: Option<&'a DataModel>,
    pub ui: Option<&'a UiModel>,
    pub logic: Option<&'a BusinessLogicModel>,
    pub correspondences: &'a [Correspondence],
    pub sources: &'a SourceMap,
}

/// A resolved element of any model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelElement<'a> {
    View(&'a View),
    Flow(&'a NavigationFlow),
    Entity(&'a Entity),
    Property(&'a Entity, &'a Property),
    Operation(&'a Entity, OperationRef<'a>),
    Reference(&'a Entity, &'a Reference),
    UiElement(&'a UiElement),
    Rule(&'a EcaRule),
    Action(&'a EcaRule, &'a ActionNode),
    Correspondence(&'a Correspondence),
}

impl<'a> ModelSet<'a> {
    pub fn has(&self, kind: ModelKind) -> bool {
        match kind {
            ModelKind::Navigation => self.navigation.is_some(),
            ModelKind::Data => self.data.is_some(),
            ModelKind::UI => self.ui.is_some(),
            ModelKind::BusinessLogic => self.logic.is_some(),
            ModelKind::Correspondence => true,
        }
    }

    pub fn span(&self, id: &ElementId) -> Option<SourceSpan> {
        self.sources.get(id).cloned()
    }

    /// Looks up the element an id denotes. Dangling ids yield `None`.
    pub fn resolve(&self, id: &ElementId) -> Option<ModelElement<'a>> {
        let path = id.path();
        match id.model() {
            ModelKind::Navigation => {
                let nav = self.navigation?;
                match path {
                    [name] => nav
                        .view(name)
                        .map(ModelElement::View)
                        .or_else(|| nav.flow(name).map(ModelElement::Flow)),
                    _ => None,
                }
            }
            ModelKind::Data => {
                let data = self.data?;
                let entity = data.entity(&path[0])?;
                match &path[1..] {
                    [] => Some(ModelElement::Entity(entity)),
                    [member] => entity
                        .property(member)
                        .map(|p| ModelElement::Property(entity, p))
                        .or_else(|| {
                            entity
                                .operation(member)
                                .map(|o| ModelElement::Operation(entity, o))
                        })
                        .or_else(|| {
                            entity
                                .reference(member)
                                .map(|r| ModelElement::Reference(entity, r))
                        }),
                    _ => None,
                }
            }
            ModelKind::UI => self.ui?.element(id).map(ModelElement::UiElement),
            ModelKind::BusinessLogic => {
                let logic = self.logic?;
                match path {
                    [rule] => logic.rule(rule).map(ModelElement::Rule),
                    [_, _] => logic.action(id).map(|(r, n)| ModelElement::Action(r, n)),
                    _ => None,
                }
            }
            ModelKind::Correspondence => match path {
                [name] => self
                    .correspondences
                    .iter()
                    .find(|c| c.name() == name)
                    .map(ModelElement::Correspondence),
                _ => None,
            },
        }
    }

    /// Every element id declared in the given model, in declaration order.
    /// Entities list their properties, the four implicit CRUD operations,
    /// declared operations and references right after themselves.
    pub fn elements_of(&self, kind: ModelKind) -> Vec<ElementId> {
        match kind {
            ModelKind::Navigation => self
                .navigation
                .map(|nav| {
                    nav.views()
                        .iter()
                        .map(|v| v.id.clone())
                        .chain(nav.flows().iter().map(|f| f.id.clone()))
                        .collect()
                })
                .unwrap_or_default(),
            ModelKind::Data => {
                let mut out = Vec::new();
                for e in self.data.map(DataModel::entities).unwrap_or_default() {
                    out.push(e.id.clone());
                    out.extend(e.properties.iter().map(|p| e.id.child(&p.name)));
                    out.extend(
                        OperationKind::CRUD
                            .iter()
                            .filter(|k| !e.operations.iter().any(|o| o.name == k.as_str()))
                            .map(|k| e.id.child(k.as_str())),
                    );
                    out.extend(e.operations.iter().map(|o| e.id.child(&o.name)));
                    out.extend(e.references.iter().map(|r| e.id.child(&r.name)));
                }
                out
            }
            ModelKind::UI => self
                .ui
                .map(|ui| ui.elements().into_iter().map(|e| e.id.clone()).collect())
                .unwrap_or_default(),
            ModelKind::BusinessLogic => {
                let mut out = Vec::new();
                for r in self
                    .logic
                    .map(BusinessLogicModel::rules)
                    .unwrap_or_default()
                {
                    out.push(r.id.clone());
                    out.extend(r.body.nodes.iter().map(|n| n.id.clone()));
                }
                out
            }
            ModelKind::Correspondence => {
                self.correspondences.iter().map(|c| c.id.clone()).collect()
            }
        }
    }
}

/// Free-function form of [`ModelSet::resolve`] on a full project.
pub fn resolve<'a>(project: &'a Project, id: &ElementId) -> Option<ModelElement<'a>> {
    project.resolve(id)
}

/// Free-function form of [`ModelSet::elements_of`] on a full project.
pub fn elements_of(project: &Project, kind: ModelKind) -> Vec<ElementId> {
    project.elements_of(kind)
}

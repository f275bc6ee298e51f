use std::collections::{BTreeMap, BTreeSet};

use super::{ElementId, ModelError, ModelKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasicKind {
    Button,
    Label,
    Map,
    Image,
    NavigationItem,
    TextInput,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ContainerKind {
    ListItems,
    Grid,
    Menu,
    NavigationBar,
    PlainContainer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementKind {
    Basic(BasicKind),
    Container(ContainerKind),
}

impl ElementKind {
    pub const ALL: [ElementKind; 11] = [
        ElementKind::Basic(BasicKind::Button),
        ElementKind::Basic(BasicKind::Label),
        ElementKind::Basic(BasicKind::Map),
        ElementKind::Basic(BasicKind::Image),
        ElementKind::Basic(BasicKind::NavigationItem),
        ElementKind::Basic(BasicKind::TextInput),
        ElementKind::Container(ContainerKind::ListItems),
        ElementKind::Container(ContainerKind::Grid),
        ElementKind::Container(ContainerKind::Menu),
        ElementKind::Container(ContainerKind::NavigationBar),
        ElementKind::Container(ContainerKind::PlainContainer),
    ];

    /// DSL keyword. The plain container is spelled `container`.
    pub fn keyword(self) -> &'static str {
        match self {
            ElementKind::Basic(BasicKind::Button) => "button",
            ElementKind::Basic(BasicKind::Label) => "label",
            ElementKind::Basic(BasicKind::Map) => "map",
            ElementKind::Basic(BasicKind::Image) => "image",
            ElementKind::Basic(BasicKind::NavigationItem) => "navigationItem",
            ElementKind::Basic(BasicKind::TextInput) => "textInput",
            ElementKind::Container(ContainerKind::ListItems) => "listItems",
            ElementKind::Container(ContainerKind::Grid) => "grid",
            ElementKind::Container(ContainerKind::Menu) => "menu",
            ElementKind::Container(ContainerKind::NavigationBar) => "navigationBar",
            ElementKind::Container(ContainerKind::PlainContainer) => "container",
        }
    }

    pub fn from_keyword(s: &str) -> Option<ElementKind> {
        ElementKind::ALL.into_iter().find(|k| k.keyword() == s)
    }

    pub fn is_container(self) -> bool {
        matches!(self, ElementKind::Container(_))
    }

    /// Elements that user-interaction events may target.
    pub fn accepts_gestures(self) -> bool {
        matches!(
            self,
            ElementKind::Basic(_)
                | ElementKind::Container(
                    ContainerKind::Menu | ContainerKind::NavigationBar | ContainerKind::ListItems
                )
        )
    }

    /// Elements expected to have a rule reacting to them.
    pub fn is_interactive(self) -> bool {
        matches!(
            self,
            ElementKind::Basic(BasicKind::Button | BasicKind::NavigationItem)
                | ElementKind::Container(ContainerKind::ListItems | ContainerKind::Menu)
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UiElement {
    pub id: ElementId,
    pub kind: ElementKind,
    pub children: Vec<UiElement>,
    pub attributes: BTreeMap<String, String>,
}

impl UiElement {
    pub fn basic(name: &str, kind: BasicKind) -> Result<Self, ModelError> {
        Ok(UiElement {
            id: ElementId::new(ModelKind::UI, [name])?,
            kind: ElementKind::Basic(kind),
            children: Vec::new(),
            attributes: BTreeMap::new(),
        })
    }

    pub fn container(
        name: &str,
        kind: ContainerKind,
        children: Vec<UiElement>,
    ) -> Result<Self, ModelError> {
        Ok(UiElement {
            id: ElementId::new(ModelKind::UI, [name])?,
            kind: ElementKind::Container(kind),
            children,
            attributes: BTreeMap::new(),
        })
    }

    pub fn with_attr(mut self, key: &str, value: impl Into<String>) -> Self {
        self.attributes.insert(key.to_string(), value.into());
        self
    }

    pub fn name(&self) -> &str {
        self.id.name()
    }

    /// Pre-order walk over this element and its descendants.
    pub fn walk(&self) -> Vec<&UiElement> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(e) = stack.pop() {
            out.push(e);
            stack.extend(e.children.iter().rev());
        }
        out
    }
}

/// A forest of UI elements whose roots are containers. Element names are
/// unique across the whole forest, so ids are `UI:<name>`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct UiModel {
    roots: Vec<UiElement>,
}

impl UiModel {
    /// Enforces unique element ids. The container-root and childless-basic
    /// rules are checked by validation so hand-built models can be reported
    /// on rather than rejected.
    pub fn new(roots: Vec<UiElement>) -> Result<Self, ModelError> {
        let model = UiModel { roots };
        let mut seen = BTreeSet::new();
        for e in model.elements() {
            if !seen.insert(&e.id) {
                return Err(ModelError::Duplicate {
                    model: ModelKind::UI,
                    name: e.id.dotted(),
                });
            }
        }
        Ok(model)
    }

    pub fn roots(&self) -> &[UiElement] {
        &self.roots
    }

    /// All elements, pre-order, roots in declaration order.
    pub fn elements(&self) -> Vec<&UiElement> {
        self.roots.iter().flat_map(UiElement::walk).collect()
    }

    pub fn element(&self, id: &ElementId) -> Option<&UiElement> {
        if id.model() != ModelKind::UI {
            return None;
        }
        self.elements().into_iter().find(|e| &e.id == id)
    }

    pub fn element_named(&self, name: &str) -> Option<&UiElement> {
        self.elements().into_iter().find(|e| e.name() == name)
    }

    pub fn is_root(&self, id: &ElementId) -> bool {
        self.roots.iter().any(|r| &r.id == id)
    }

    /// The top-level container that (transitively) holds `id`.
    pub fn root_of(&self, id: &ElementId) -> Option<&UiElement> {
        self.roots
            .iter()
            .find(|r| r.walk().iter().any(|e| &e.id == id))
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

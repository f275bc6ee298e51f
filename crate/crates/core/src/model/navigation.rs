use std::collections::BTreeSet;

use super::{ElementId, ModelError, ModelKind};
use crate::expr::ConditionExpr;

#[derive(Debug, Clone, PartialEq)]
pub struct View {
    pub id: ElementId,
    pub name: String,
    pub title: String,
}

impl View {
    pub fn new(name: &str, title: impl Into<String>) -> Result<Self, ModelError> {
        Ok(View {
            id: ElementId::new(ModelKind::Navigation, [name])?,
            name: name.to_string(),
            title: title.into(),
        })
    }
}

/// A directed, optionally guarded transition between two views.
#[derive(Debug, Clone, PartialEq)]
pub struct NavigationFlow {
    pub id: ElementId,
    pub name: String,
    pub source: ElementId,
    pub target: ElementId,
    pub guard: Option<ConditionExpr>,
}

impl NavigationFlow {
    pub fn new(
        name: &str,
        source: &str,
        target: &str,
        guard: Option<ConditionExpr>,
    ) -> Result<Self, ModelError> {
        Ok(NavigationFlow {
            id: ElementId::new(ModelKind::Navigation, [name])?,
            name: name.to_string(),
            source: ElementId::new(ModelKind::Navigation, [source])?,
            target: ElementId::new(ModelKind::Navigation, [target])?,
            guard,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct NavigationModel {
    views: Vec<View>,
    flows: Vec<NavigationFlow>,
    entry: Option<ElementId>,
}

impl NavigationModel {
    /// Views and flows share one namespace. Endpoint and entry resolution is
    /// left to validation.
    pub fn new(
        views: Vec<View>,
        flows: Vec<NavigationFlow>,
        entry: Option<ElementId>,
    ) -> Result<Self, ModelError> {
        let mut seen = BTreeSet::new();
        for name in views
            .iter()
            .map(|v| &v.name)
            .chain(flows.iter().map(|f| &f.name))
        {
            if !seen.insert(name.as_str()) {
                return Err(ModelError::Duplicate {
                    model: ModelKind::Navigation,
                    name: name.clone(),
                });
            }
        }
        Ok(NavigationModel {
            views,
            flows,
            entry,
        })
    }

    pub fn views(&self) -> &[View] {
        &self.views
    }

    pub fn flows(&self) -> &[NavigationFlow] {
        &self.flows
    }

    pub fn entry(&self) -> Option<&ElementId> {
        self.entry.as_ref()
    }

    pub fn view(&self, name: &str) -> Option<&View> {
        self.views.iter().find(|v| v.name == name)
    }

    pub fn flow(&self, name: &str) -> Option<&NavigationFlow> {
        self.flows.iter().find(|f| f.name == name)
    }

    pub fn view_by_id(&self, id: &ElementId) -> Option<&View> {
        match id.path() {
            [name] if id.model() == ModelKind::Navigation => self.view(name),
            _ => None,
        }
    }

    pub fn flow_by_id(&self, id: &ElementId) -> Option<&NavigationFlow> {
        match id.path() {
            [name] if id.model() == ModelKind::Navigation => self.flow(name),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.views.is_empty() && self.flows.is_empty()
    }

    /// Flows leaving `view`, in declaration order.
    pub fn outgoing<'a>(
        &'a self,
        view: &'a ElementId,
    ) -> impl Iterator<Item = &'a NavigationFlow> + 'a {
        self.flows.iter().filter(move |f| &f.source == view)
    }
}

//! Stakeholder viewpoint slices.
//!
//! Each stakeholder role sees a fixed subset of the four viewpoints. A
//! slice keeps exactly those models and the correspondences whose two
//! endpoints both live in a kept model.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::model::{
    BusinessLogicModel, Correspondence, DataModel, ModelKind, ModelSet, NavigationModel, Project,
    SourceMap, UiModel,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stakeholder {
    UiDesigner,
    AppDeveloper,
    BackEndDeveloper,
    InformationArchitect,
    ContentProducer,
    User,
    Customer,
    ProjectManager,
}

impl Stakeholder {
    pub const ALL: [Stakeholder; 8] = [
        Stakeholder::UiDesigner,
        Stakeholder::AppDeveloper,
        Stakeholder::BackEndDeveloper,
        Stakeholder::InformationArchitect,
        Stakeholder::ContentProducer,
        Stakeholder::User,
        Stakeholder::Customer,
        Stakeholder::ProjectManager,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Stakeholder::UiDesigner => "uiDesigner",
            Stakeholder::AppDeveloper => "appDeveloper",
            Stakeholder::BackEndDeveloper => "backEndDeveloper",
            Stakeholder::InformationArchitect => "informationArchitect",
            Stakeholder::ContentProducer => "contentProducer",
            Stakeholder::User => "user",
            Stakeholder::Customer => "customer",
            Stakeholder::ProjectManager => "projectManager",
        }
    }
}

impl fmt::Display for Stakeholder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown stakeholder `{0}`")]
pub struct UnknownStakeholder(pub String);

impl FromStr for Stakeholder {
    type Err = UnknownStakeholder;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Stakeholder::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| UnknownStakeholder(s.to_string()))
    }
}

/// The viewpoints a stakeholder works with.
pub fn viewpoints_of(s: Stakeholder) -> BTreeSet<ModelKind> {
    use ModelKind::*;
    let kinds: &[ModelKind] = match s {
        Stakeholder::UiDesigner | Stakeholder::AppDeveloper => {
            &[Navigation, Data, UI, BusinessLogic]
        }
        Stakeholder::BackEndDeveloper => &[Data, BusinessLogic],
        Stakeholder::InformationArchitect => &[Navigation, Data, UI],
        Stakeholder::ContentProducer => &[Data],
        Stakeholder::User => &[UI],
        Stakeholder::Customer | Stakeholder::ProjectManager => &[Navigation, UI],
    };
    kinds.iter().copied().collect()
}

/// A possibly partial project. Also the in-memory form of a project
/// directory whose manifest omits some models.
#[derive(Debug, Clone, Default)]
pub struct ProjectedSlice {
    pub name: String,
    pub navigation: Option<NavigationModel>,
    pub data: Option<DataModel>,
    pub ui: Option<UiModel>,
    pub logic: Option<BusinessLogicModel>,
    pub correspondences: Vec<Correspondence>,
    pub sources: SourceMap,
}

impl PartialEq for ProjectedSlice {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.navigation == other.navigation
            && self.data == other.data
            && self.ui == other.ui
            && self.logic == other.logic
            && self.correspondences == other.correspondences
    }
}

impl ProjectedSlice {
    pub fn full(project: &Project) -> Self {
        ProjectedSlice {
            name: project.name.clone(),
            navigation: Some(project.navigation.clone()),
            data: Some(project.data.clone()),
            ui: Some(project.ui.clone()),
            logic: Some(project.logic.clone()),
            correspondences: project.correspondences.clone(),
            sources: project.sources.clone(),
        }
    }

    pub fn models(&self) -> ModelSet<'_> {
        ModelSet {
            navigation: self.navigation.as_ref(),
            data: self.data.as_ref(),
            ui: self.ui.as_ref(),
            logic: self.logic.as_ref(),
            correspondences: &self.correspondences,
            sources: &self.sources,
        }
    }

    /// Viewpoints present in this slice.
    pub fn viewpoints(&self) -> BTreeSet<ModelKind> {
        let m = self.models();
        ModelKind::VIEWPOINTS
            .into_iter()
            .filter(|k| m.has(*k))
            .collect()
    }

    /// Converts to a full project when every viewpoint is present.
    #[allow(clippy::result_large_err)]
    pub fn into_project(self) -> Result<Project, Self> {
        match (self.navigation, self.data, self.ui, self.logic) {
            (Some(navigation), Some(data), Some(ui), Some(logic)) => Ok(Project {
                name: self.name,
                navigation,
                data,
                ui,
                logic,
                correspondences: self.correspondences,
                sources: self.sources,
            }),
            (navigation, data, ui, logic) => Err(ProjectedSlice {
                name: self.name,
                navigation,
                data,
                ui,
                logic,
                correspondences: self.correspondences,
                sources: self.sources,
            }),
        }
    }

    /// Keeps only `s`'s viewpoints and the correspondences fully inside them.
    pub fn project(&self, s: Stakeholder) -> ProjectedSlice {
        let keep = viewpoints_of(s);
        let has = |k: ModelKind| keep.contains(&k);
        let correspondences: Vec<Correspondence> = self
            .correspondences
            .iter()
            .filter(|c| {
                let (l, r) = c.ctype.endpoints();
                has(l) && has(r) && self.models().has(l) && self.models().has(r)
            })
            .cloned()
            .collect();
        let sources = self
            .sources
            .iter()
            .filter(|(id, _)| match id.model() {
                ModelKind::Correspondence => correspondences.iter().any(|c| &c.id == *id),
                k => has(k),
            })
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        ProjectedSlice {
            name: self.name.clone(),
            navigation: self
                .navigation
                .clone()
                .filter(|_| has(ModelKind::Navigation)),
            data: self.data.clone().filter(|_| has(ModelKind::Data)),
            ui: self.ui.clone().filter(|_| has(ModelKind::UI)),
            logic: self.logic.clone().filter(|_| has(ModelKind::BusinessLogic)),
            correspondences,
            sources,
        }
    }
}

/// The slice of `project` visible to stakeholder `s`.
pub fn project(project: &Project, s: Stakeholder) -> ProjectedSlice {
    ProjectedSlice::full(project).project(s)
}

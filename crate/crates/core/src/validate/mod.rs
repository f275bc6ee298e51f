//! Semantic checks. Each viewpoint model is first checked on its own
//! (`validate_intra`); the correspondences and cross-model references are
//! checked only once every model passed (`validate_cross`).

mod cross;
mod intra;

use std::collections::BTreeSet;

use serde_json::json;
use thiserror::Error;

pub use cross::validate_models_cross;
pub use intra::{validate_data, validate_logic, validate_navigation, validate_ui};

use crate::diag::{has_errors, sort_diagnostics, Diagnostic};
use crate::model::{
    BusinessLogicModel, DataModel, ModelSet, NavigationModel, Project, SourceMap, UiModel,
};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub diagnostics: Vec<Diagnostic>,
    pub valid: bool,
}

impl ValidationReport {
    /// Sorts by source position and derives `valid`.
    pub fn from_diagnostics(mut diagnostics: Vec<Diagnostic>) -> Self {
        sort_diagnostics(&mut diagnostics);
        let valid = !has_errors(&diagnostics);
        ValidationReport { diagnostics, valid }
    }

    pub fn merge(reports: impl IntoIterator<Item = ValidationReport>) -> Self {
        Self::from_diagnostics(reports.into_iter().flat_map(|r| r.diagnostics).collect())
    }

    pub fn errors(&self) -> impl Iterator<Item = &Diagnostic> {
        self.diagnostics.iter().filter(|d| d.is_error())
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Diagnostic> {
        self.diagnostics.iter().filter(|d| !d.is_error())
    }

    pub fn codes(&self) -> Vec<&'static str> {
        self.diagnostics.iter().map(|d| d.code).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "valid": self.valid,
            "diagnostics": self.diagnostics.iter().map(Diagnostic::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Root binding names a guard may start with. `None` skips the check.
pub type EnvShape = BTreeSet<String>;

/// A single viewpoint model handed to [`validate_intra`].
#[derive(Debug, Clone, Copy)]
pub enum ModelRef<'a> {
    Navigation(&'a NavigationModel),
    Data(&'a DataModel),
    Ui(&'a UiModel),
    Logic(&'a BusinessLogicModel),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct IntraContext<'a> {
    pub sources: Option<&'a SourceMap>,
    pub env_shape: Option<&'a EnvShape>,
}

pub fn validate_intra(model: ModelRef<'_>, ctx: &IntraContext<'_>) -> ValidationReport {
    let empty = SourceMap::new();
    let sources = ctx.sources.unwrap_or(&empty);
    let diags = match model {
        ModelRef::Navigation(m) => validate_navigation(m, sources, ctx.env_shape),
        ModelRef::Data(m) => validate_data(m, sources),
        ModelRef::Ui(m) => validate_ui(m, sources),
        ModelRef::Logic(m) => validate_logic(m, sources),
    };
    ValidationReport::from_diagnostics(diags)
}

/// Names that the business logic can bind and that guards may therefore
/// refer to: every `as` binding, plus `event` for the current payload.
pub fn environment_shape(logic: &BusinessLogicModel) -> EnvShape {
    let mut shape: EnvShape = logic
        .rules()
        .iter()
        .flat_map(|r| r.body.nodes.iter())
        .filter_map(|n| n.action.bind_as().map(str::to_string))
        .collect();
    shape.insert("event".to_string());
    shape
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cross-model validation needs every model to pass on its own first ({errors} intra-model error(s))")]
pub struct PreconditionError {
    pub errors: usize,
}

fn intra_all(models: &ModelSet<'_>) -> ValidationReport {
    let shape = models.logic.map(environment_shape);
    let ctx = IntraContext {
        sources: Some(models.sources),
        env_shape: shape.as_ref(),
    };
    let mut reports = Vec::new();
    if let Some(m) = models.navigation {
        reports.push(validate_intra(ModelRef::Navigation(m), &ctx));
    }
    if let Some(m) = models.data {
        reports.push(validate_intra(ModelRef::Data(m), &ctx));
    }
    if let Some(m) = models.ui {
        reports.push(validate_intra(ModelRef::Ui(m), &ctx));
    }
    if let Some(m) = models.logic {
        reports.push(validate_intra(ModelRef::Logic(m), &ctx));
    }
    ValidationReport::merge(reports)
}

/// Cross-model checks only. Refuses to run when any model fails on its own,
/// so it never reports on elements intra validation already rejected.
pub fn validate_cross(project: &Project) -> Result<ValidationReport, PreconditionError> {
    let models = project.models();
    let intra = intra_all(&models);
    if !intra.valid {
        return Err(PreconditionError {
            errors: intra.errors().count(),
        });
    }
    Ok(ValidationReport::from_diagnostics(validate_models_cross(
        &models,
    )))
}

/// Intra checks for each present model, then cross checks if those passed.
pub fn validate_models(models: &ModelSet<'_>) -> ValidationReport {
    let intra = intra_all(models);
    if !intra.valid {
        return intra;
    }
    let mut diags = intra.diagnostics;
    diags.extend(validate_models_cross(models));
    ValidationReport::from_diagnostics(diags)
}

/// Full two-phase validation of a project.
pub fn validate_project(project: &Project) -> ValidationReport {
    validate_models(&project.models())
}

//! Project directories: the `mvmob.json` manifest and the DSL files it
//! names.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diag::{has_errors, sort_diagnostics, Diagnostic};
use crate::dsl::{
    parse_correspondences, parse_data, parse_logic, parse_navigation, parse_ui, Parsed,
};
use crate::model::{ModelKind, Project, SourceMap};
use crate::projection::ProjectedSlice;

pub const MANIFEST_FILE: &str = "mvmob.json";

/// Paths are relative to the manifest's directory. A missing model entry
/// denotes a slice that omits that viewpoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub navigation: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ui: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub logic: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub correspondences: Option<String>,
}

impl Manifest {
    pub fn path_of(&self, kind: ModelKind) -> Option<&str> {
        match kind {
            ModelKind::Navigation => self.navigation.as_deref(),
            ModelKind::Data => self.data.as_deref(),
            ModelKind::UI => self.ui.as_deref(),
            ModelKind::BusinessLogic => self.logic.as_deref(),
            ModelKind::Correspondence => self.correspondences.as_deref(),
        }
    }

    pub fn set_path(&mut self, kind: ModelKind, path: Option<String>) {
        let slot = match kind {
            ModelKind::Navigation => &mut self.navigation,
            ModelKind::Data => &mut self.data,
            ModelKind::UI => &mut self.ui,
            ModelKind::BusinessLogic => &mut self.logic,
            ModelKind::Correspondence => &mut self.correspondences,
        };
        *slot = path;
    }

    pub fn is_complete(&self) -> bool {
        ModelKind::VIEWPOINTS
            .iter()
            .all(|k| self.path_of(*k).is_some())
    }
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid manifest {}: {source}", path.display())]
    Manifest {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

/// A parsed project directory. Models that failed to parse are absent and
/// their diagnostics are in `diagnostics`.
#[derive(Debug, Clone)]
pub struct LoadedProject {
    pub dir: PathBuf,
    pub manifest: Manifest,
    pub slice: ProjectedSlice,
    pub diagnostics: Vec<Diagnostic>,
}

impl LoadedProject {
    pub fn parse_ok(&self) -> bool {
        !has_errors(&self.diagnostics)
    }

    /// The full project, when the manifest names all four models and all
    /// of them parsed.
    pub fn project(&self) -> Option<Project> {
        if !self.parse_ok() || !self.manifest.is_complete() {
            return None;
        }
        self.slice.clone().into_project().ok()
    }
}

pub fn read_manifest(dir: &Path) -> Result<Manifest, LoadError> {
    let path = dir.join(MANIFEST_FILE);
    let text = fs::read_to_string(&path).map_err(|source| LoadError::Io {
        path: path.clone(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| LoadError::Manifest { path, source })
}

/// Reads the manifest in `dir` and parses every model file it names.
pub fn load_project(dir: &Path) -> Result<LoadedProject, LoadError> {
    let manifest = read_manifest(dir)?;
    let mut texts = Vec::new();
    for kind in ModelKind::VIEWPOINTS
        .into_iter()
        .chain([ModelKind::Correspondence])
    {
        if let Some(rel) = manifest.path_of(kind) {
            let path = dir.join(rel);
            let text =
                fs::read_to_string(&path).map_err(|source| LoadError::Io { path, source })?;
            texts.push((kind, rel.to_string(), text));
        }
    }
    let (slice, diagnostics) = parse_sources(&manifest.name, &texts);
    Ok(LoadedProject {
        dir: dir.to_path_buf(),
        manifest,
        slice,
        diagnostics,
    })
}

/// Parses in-memory sources given as (kind, file name, text).
pub fn parse_sources(
    name: &str,
    texts: &[(ModelKind, String, String)],
) -> (ProjectedSlice, Vec<Diagnostic>) {
    let mut slice = ProjectedSlice {
        name: name.to_string(),
        ..ProjectedSlice::default()
    };
    let mut diags = Vec::new();
    fn take<T>(p: Parsed<T>, diags: &mut Vec<Diagnostic>, sources: &mut SourceMap) -> Option<T> {
        diags.extend(p.diagnostics);
        sources.extend(p.sources);
        p.model
    }
    for (kind, file, text) in texts {
        let s = &mut slice.sources;
        match kind {
            ModelKind::Navigation => {
                slice.navigation = take(parse_navigation(text, file), &mut diags, s)
            }
            ModelKind::Data => slice.data = take(parse_data(text, file), &mut diags, s),
            ModelKind::UI => slice.ui = take(parse_ui(text, file), &mut diags, s),
            ModelKind::BusinessLogic => slice.logic = take(parse_logic(text, file), &mut diags, s),
            ModelKind::Correspondence => {
                slice.correspondences =
                    take(parse_correspondences(text, file), &mut diags, s).unwrap_or_default()
            }
        }
    }
    sort_diagnostics(&mut diags);
    (slice, diags)
}

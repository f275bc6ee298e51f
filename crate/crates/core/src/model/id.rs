use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ModelError;

/// The five kinds of model a project is made of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModelKind {
    Navigation,
    Data,
    UI,
    BusinessLogic,
    Correspondence,
}

impl ModelKind {
    pub const VIEWPOINTS: [ModelKind; 4] = [
        ModelKind::Navigation,
        ModelKind::Data,
        ModelKind::UI,
        ModelKind::BusinessLogic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Navigation => "Navigation",
            ModelKind::Data => "Data",
            ModelKind::UI => "UI",
            ModelKind::BusinessLogic => "BusinessLogic",
            ModelKind::Correspondence => "Correspondence",
        }
    }

    /// Conventional file extension of the DSL file holding this model.
    pub fn extension(self) -> &'static str {
        match self {
            ModelKind::Navigation => "nav",
            ModelKind::Data => "data",
            ModelKind::UI => "ui",
            ModelKind::BusinessLogic => "bl",
            ModelKind::Correspondence => "corr",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Navigation" => Ok(ModelKind::Navigation),
            "Data" => Ok(ModelKind::Data),
            "UI" => Ok(ModelKind::UI),
            "BusinessLogic" => Ok(ModelKind::BusinessLogic),
            "Correspondence" => Ok(ModelKind::Correspondence),
            other => Err(ModelError::UnknownModelKind(other.to_string())),
        }
    }
}

/// Returns true when `s` matches `[A-Za-z_][A-Za-z0-9_]*`.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A model-qualified element reference such as `Data:City.name`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId {
    model: ModelKind,
    path: Vec<String>,
}

impl ElementId {
    pub fn new<I, S>(model: ModelKind, path: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let path: Vec<String> = path.into_iter().map(Into::into).collect();
        if path.is_empty() {
            return Err(ModelError::EmptyPath);
        }
        if let Some(bad) = path.iter().find(|s| !is_identifier(s)) {
            return Err(ModelError::InvalidIdentifier(bad.clone()));
        }
        Ok(ElementId { model, path })
    }

    /// Single-segment id. Panics if `name` is not an identifier; meant for
    /// names that already passed the lexer or a generator.
    pub fn simple(model: ModelKind, name: &str) -> Self {
        ElementId::new(model, [name]).expect("valid identifier")
    }

    /// Appends a segment. Panics if `segment` is not an identifier.
    pub fn child(&self, segment: &str) -> Self {
        assert!(is_identifier(segment), "invalid identifier {segment:?}");
        let mut path = self.path.clone();
        path.push(segment.to_string());
        ElementId {
            model: self.model,
            path,
        }
    }

    pub fn model(&self) -> ModelKind {
        self.model
    }

    pub fn path(&self) -> &[String] {
        &self.path
    }

    /// Dot-joined path without the model prefix.
    pub fn dotted(&self) -> String {
        self.path.join(".")
    }

    /// Last path segment.
    pub fn name(&self) -> &str {
        self.path.last().expect("non-empty path")
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.model, self.path.join("."))
    }
}

impl FromStr for ElementId {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, path) = s
            .split_once(':')
            .ok_or_else(|| ModelError::MalformedId(s.to_string()))?;
        ElementId::new(kind.parse()?, path.split('.'))
    }
}

impl Serialize for ElementId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ElementId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::{ElementId, ModelError, ModelKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimitiveType {
    String,
    Integer,
    Float,
    Boolean,
    Date,
    Url,
}

impl PrimitiveType {
    pub const ALL: [PrimitiveType; 6] = [
        PrimitiveType::String,
        PrimitiveType::Integer,
        PrimitiveType::Float,
        PrimitiveType::Boolean,
        PrimitiveType::Date,
        PrimitiveType::Url,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PrimitiveType::String => "string",
            PrimitiveType::Integer => "integer",
            PrimitiveType::Float => "float",
            PrimitiveType::Boolean => "boolean",
            PrimitiveType::Date => "date",
            PrimitiveType::Url => "url",
        }
    }
}

impl fmt::Display for PrimitiveType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PrimitiveType {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PrimitiveType::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| ModelError::UnknownKeyword(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Property {
    pub name: String,
    pub ptype: PrimitiveType,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperationKind {
    Create,
    Read,
    Update,
    Delete,
    Custom,
}

impl OperationKind {
    pub const CRUD: [OperationKind; 4] = [
        OperationKind::Create,
        OperationKind::Read,
        OperationKind::Update,
        OperationKind::Delete,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            OperationKind::Create => "create",
            OperationKind::Read => "read",
            OperationKind::Update => "update",
            OperationKind::Delete => "delete",
            OperationKind::Custom => "custom",
        }
    }

    pub fn crud_from_name(name: &str) -> Option<OperationKind> {
        OperationKind::CRUD.into_iter().find(|k| k.as_str() == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Param {
    pub name: String,
    pub ptype: PrimitiveType,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataOperation {
    pub name: String,
    pub kind: OperationKind,
    pub params: Vec<Param>,
    pub returns: Option<PrimitiveType>,
}

impl DataOperation {
    pub fn custom(name: &str, params: Vec<Param>, returns: Option<PrimitiveType>) -> Self {
        DataOperation {
            name: name.to_string(),
            kind: OperationKind::Custom,
            params,
            returns,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cardinality {
    One,
    Many,
}

impl Cardinality {
    pub fn as_str(self) -> &'static str {
        match self {
            Cardinality::One => "one",
            Cardinality::Many => "many",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reference {
    pub name: String,
    pub target: ElementId,
    pub cardinality: Cardinality,
}

/// A data entity. Every entity implicitly owns `create`, `read`, `update`
/// and `delete`; `operations` holds the declared ones only.
#[derive(Debug, Clone, PartialEq)]
pub struct Entity {
    pub id: ElementId,
    pub name: String,
    pub properties: Vec<Property>,
    pub operations: Vec<DataOperation>,
    pub references: Vec<Reference>,
}

/// Handle on either a declared or an implicit CRUD operation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OperationRef<'a> {
    Declared(&'a DataOperation),
    Crud(OperationKind),
}

impl OperationRef<'_> {
    pub fn kind(&self) -> OperationKind {
        match self {
            OperationRef::Declared(op) => op.kind,
            OperationRef::Crud(k) => *k,
        }
    }

    pub fn name(&self) -> &str {
        match self {
            OperationRef::Declared(op) => &op.name,
            OperationRef::Crud(k) => k.as_str(),
        }
    }
}

impl Entity {
    /// Member names must be pairwise distinct across properties, operations
    /// and references. Collisions with the implicit CRUD names are reported
    /// by validation, not here.
    pub fn new(
        name: &str,
        properties: Vec<Property>,
        operations: Vec<DataOperation>,
        references: Vec<Reference>,
    ) -> Result<Self, ModelError> {
        let id = ElementId::new(ModelKind::Data, [name])?;
        let mut seen = BTreeSet::new();
        let names = properties
            .iter()
            .map(|p| &p.name)
            .chain(operations.iter().map(|o| &o.name))
            .chain(references.iter().map(|r| &r.name));
        for n in names {
            if !super::is_identifier(n) {
                return Err(ModelError::InvalidIdentifier(n.clone()));
            }
            if !seen.insert(n.as_str()) {
                return Err(ModelError::Duplicate {
                    model: ModelKind::Data,
                    name: format!("{name}.{n}"),
                });
            }
        }
        Ok(Entity {
            id,
            name: name.to_string(),
            properties,
            operations,
            references,
        })
    }

    pub fn property(&self, name: &str) -> Option<&Property> {
        self.properties.iter().find(|p| p.name == name)
    }

    pub fn reference(&self, name: &str) -> Option<&Reference> {
        self.references.iter().find(|r| r.name == name)
    }

    /// Declared operations shadow the implicit CRUD ones.
    pub fn operation(&self, name: &str) -> Option<OperationRef<'_>> {
        self.operations
            .iter()
            .find(|o| o.name == name)
            .map(OperationRef::Declared)
            .or_else(|| OperationKind::crud_from_name(name).map(OperationRef::Crud))
    }

    /// Number of arguments a data action must pass to `op`:
    /// create takes one per property, read a filter, update
    /// (instance, property, value), delete the instance.
    pub fn arity(&self, op: OperationRef<'_>) -> usize {
        match op {
            OperationRef::Declared(d) => d.params.len(),
            OperationRef::Crud(OperationKind::Create) => self.properties.len(),
            OperationRef::Crud(OperationKind::Read) => 1,
            OperationRef::Crud(OperationKind::Update) => 3,
            OperationRef::Crud(OperationKind::Delete) => 1,
            OperationRef::Crud(OperationKind::Custom) => 0,
        }
    }

    pub fn property_id(&self, prop: &str) -> ElementId {
        self.id.child(prop)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DataModel {
    entities: Vec<Entity>,
}

impl DataModel {
    pub fn new(entities: Vec<Entity>) -> Result<Self, ModelError> {
        let mut seen = BTreeSet::new();
        for e in &entities {
            if !seen.insert(e.name.as_str()) {
                return Err(ModelError::Duplicate {
                    model: ModelKind::Data,
                    name: e.name.clone(),
                });
            }
        }
        Ok(DataModel { entities })
    }

    pub fn entities(&self) -> &[Entity] {
        &self.entities
    }

    pub fn entity(&self, name: &str) -> Option<&Entity> {
        self.entities.iter().find(|e| e.name == name)
    }

    pub fn entity_by_id(&self, id: &ElementId) -> Option<&Entity> {
        match id.path() {
            [name] if id.model() == ModelKind::Data => self.entity(name),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entities.is_empty()
    }
}

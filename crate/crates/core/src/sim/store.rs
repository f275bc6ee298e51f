use std::collections::BTreeMap;

use crate::expr::{Instance, Value};
use crate::model::{Cardinality, DataModel, Entity};

/// A stored row. `values` holds properties and `one` references (as the
/// target id); absent keys read as null.
#[derive(Debug, Clone, PartialEq)]
pub struct StoredInstance {
    pub id: i64,
    pub values: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Default)]
struct Table {
    next_id: i64,
    rows: Vec<StoredInstance>,
}

/// Per-entity instance lists with auto-incrementing ids that are never
/// reused.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Store {
    tables: BTreeMap<String, Table>,
}

impl Store {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn instances(&self, entity: &str) -> &[StoredInstance] {
        self.tables
            .get(entity)
            .map(|t| t.rows.as_slice())
            .unwrap_or(&[])
    }

    pub fn get(&self, entity: &str, id: i64) -> Option<&StoredInstance> {
        self.instances(entity).iter().find(|r| r.id == id)
    }

    pub fn len(&self) -> usize {
        self.tables.values().map(|t| t.rows.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn insert(&mut self, entity: &str, values: BTreeMap<String, Value>) -> i64 {
        let table = self.tables.entry(entity.to_string()).or_default();
        table.next_id += 1;
        let id = table.next_id;
        table.rows.push(StoredInstance { id, values });
        id
    }

    pub fn set(&mut self, entity: &str, id: i64, key: &str, value: Value) -> bool {
        let row = self
            .tables
            .get_mut(entity)
            .and_then(|t| t.rows.iter_mut().find(|r| r.id == id));
        match row {
            Some(r) => {
                r.values.insert(key.to_string(), value);
                true
            }
            None => false,
        }
    }

    pub fn remove(&mut self, entity: &str, id: i64) -> bool {
        match self.tables.get_mut(entity) {
            Some(t) => {
                let before = t.rows.len();
                t.rows.retain(|r| r.id != id);
                t.rows.len() != before
            }
            None => false,
        }
    }

    /// Condition-level view of a row. `one` references are resolved a
    /// single level deep; the target's own references stay as ids.
    pub fn materialize(&self, data: &DataModel, entity: &Entity, row: &StoredInstance) -> Value {
        self.view(data, entity, row, true)
    }

    fn view(&self, data: &DataModel, entity: &Entity, row: &StoredInstance, follow: bool) -> Value {
        let field = |k: &str| row.values.get(k).cloned().unwrap_or(Value::Null);
        let properties = entity
            .properties
            .iter()
            .map(|p| (p.name.clone(), field(&p.name)))
            .collect();
        let references = entity
            .references
            .iter()
            .map(|r| {
                let raw = field(&r.name);
                let resolved = match (&raw, r.cardinality, follow) {
                    (Value::Int(id), Cardinality::One, true) => data
                        .entity_by_id(&r.target)
                        .and_then(|t| {
                            self.get(&t.name, *id)
                                .map(|row| self.view(data, t, row, false))
                        })
                        .unwrap_or(Value::Null),
                    _ => raw,
                };
                (r.name.clone(), resolved)
            })
            .collect();
        Value::Instance(Box::new(Instance {
            entity: entity.name.clone(),
            id: Some(row.id),
            properties,
            references,
        }))
    }

    pub fn to_json(&self) -> serde_json::Value {
        self.tables
            .iter()
            .map(|(name, t)| {
                let rows = t
                    .rows
                    .iter()
                    .map(|r| {
                        let mut obj: serde_json::Map<_, _> = r
                            .values
                            .iter()
                            .map(|(k, v)| (k.clone(), v.to_json()))
                            .collect();
                        obj.insert("$id".into(), r.id.into());
                        serde_json::Value::Object(obj)
                    })
                    .collect();
                (name.clone(), serde_json::Value::Array(rows))
            })
            .collect::<serde_json::Map<_, _>>()
            .into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_never_reused() {
        let mut s = Store::new();
        assert_eq!(s.insert("A", BTreeMap::new()), 1);
        assert_eq!(s.insert("A", BTreeMap::new()), 2);
        assert!(s.remove("A", 2));
        assert_eq!(s.insert("A", BTreeMap::new()), 3);
        assert_eq!(s.insert("B", BTreeMap::new()), 1);
        assert_eq!(s.len(), 3);
    }
}

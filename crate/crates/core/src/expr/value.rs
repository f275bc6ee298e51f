use std::collections::BTreeMap;
use std::fmt;

use chrono::NaiveDate;

use super::ast::{Literal, Path};

/// An entity instance as seen by conditions: its properties and resolved
/// references. Payload records from device events use the same shape with
/// no id.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub entity: String,
    pub id: Option<i64>,
    pub properties: BTreeMap<String, Value>,
    pub references: BTreeMap<String, Value>,
}

impl Instance {
    pub fn field(&self, name: &str) -> Option<&Value> {
        self.properties
            .get(name)
            .or_else(|| self.references.get(name))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
    Date(NaiveDate),
    Instance(Box<Instance>),
}

impl Value {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Value::Null => "null",
            Value::Bool(_) => "boolean",
            Value::Int(_) => "integer",
            Value::Float(_) => "float",
            Value::Str(_) => "string",
            Value::Date(_) => "date",
            Value::Instance(_) => "instance",
        }
    }

    pub fn from_literal(lit: &Literal) -> Value {
        match lit {
            Literal::Str(s) => Value::Str(s.clone()),
            Literal::Int(i) => Value::Int(*i),
            Literal::Float(x) => Value::Float(*x),
            Literal::Bool(b) => Value::Bool(*b),
            Literal::Null => Value::Null,
        }
    }

    /// JSON form used in traces and reports. Dates are ISO strings.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Value::Null => serde_json::Value::Null,
            Value::Bool(b) => (*b).into(),
            Value::Int(i) => (*i).into(),
            Value::Float(x) => serde_json::Number::from_f64(*x)
                .map(serde_json::Value::Number)
                .unwrap_or(serde_json::Value::Null),
            Value::Str(s) => s.clone().into(),
            Value::Date(d) => d.format("%Y-%m-%d").to_string().into(),
            Value::Instance(inst) => {
                let mut map = serde_json::Map::new();
                map.insert("$entity".into(), inst.entity.clone().into());
                if let Some(id) = inst.id {
                    map.insert("$id".into(), id.into());
                }
                for (k, v) in inst.properties.iter().chain(inst.references.iter()) {
                    map.insert(k.clone(), v.to_json());
                }
                serde_json::Value::Object(map)
            }
        }
    }

    /// Converts untyped JSON. Objects become id-less records, arrays are
    /// not representable and map to null.
    pub fn from_json(v: &serde_json::Value) -> Value {
        match v {
            serde_json::Value::Null | serde_json::Value::Array(_) => Value::Null,
            serde_json::Value::Bool(b) => Value::Bool(*b),
            serde_json::Value::Number(n) => match n.as_i64() {
                Some(i) => Value::Int(i),
                None => Value::Float(n.as_f64().unwrap_or(0.0)),
            },
            serde_json::Value::String(s) => Value::Str(s.clone()),
            serde_json::Value::Object(map) => Value::Instance(Box::new(Instance {
                entity: String::new(),
                id: None,
                properties: map
                    .iter()
                    .map(|(k, v)| (k.clone(), Value::from_json(v)))
                    .collect(),
                references: BTreeMap::new(),
            })),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Null => f.write_str("null"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Int(i) => write!(f, "{i}"),
            Value::Float(x) => write!(f, "{x:?}"),
            Value::Str(s) => f.write_str(s),
            Value::Date(d) => write!(f, "{}", d.format("%Y-%m-%d")),
            Value::Instance(inst) => match inst.id {
                Some(id) => write!(f, "{}#{id}", inst.entity),
                None => f.write_str("{record}"),
            },
        }
    }
}

/// Named bindings visible to conditions.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Environment {
    bindings: BTreeMap<String, Value>,
}

impl Environment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(&mut self, name: impl Into<String>, value: Value) {
        self.bindings.insert(name.into(), value);
    }

    pub fn unbind(&mut self, name: &str) -> Option<Value> {
        self.bindings.remove(name)
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.bindings.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Value)> {
        self.bindings.iter()
    }

    pub fn iter_mut(&mut self) -> impl Iterator<Item = (&String, &mut Value)> {
        self.bindings.iter_mut()
    }

    /// Follows `path` through bindings, instance properties, references and
    /// the trailing `id` pseudo-property. `None` when any step is missing.
    pub fn resolve(&self, path: &Path) -> Option<Value> {
        let segs = path.segments();
        let mut cur = self.bindings.get(&segs[0])?;
        for (i, seg) in segs[1..].iter().enumerate() {
            match cur {
                Value::Instance(inst) => match inst.field(seg) {
                    Some(v) => cur = v,
                    None if seg == "id" && i + 2 == segs.len() => return inst.id.map(Value::Int),
                    None => return None,
                },
                _ => return None,
            }
        }
        Some(cur.clone())
    }
}

impl FromIterator<(String, Value)> for Environment {
    fn from_iter<T: IntoIterator<Item = (String, Value)>>(iter: T) -> Self {
        Environment {
            bindings: iter.into_iter().collect(),
        }
    }
}

//! Toolchain for four-viewpoint models of data-intensive mobile apps.
//!
//! A project is a navigation model, a data model, a UI model and a
//! business-logic model, each in its own DSL file, tied together by typed
//! correspondences. This crate parses and prints those files, validates
//! each model and the links between them, runs pre-deployment analyses,
//! computes per-stakeholder slices, simulates the business logic against
//! scenario scripts, and generates a resolved JSON bundle and a static
//! hypertext prototype.

pub mod analysis;
pub mod codegen;
pub mod diag;
pub mod dsl;
pub mod expr;
pub mod manifest;
pub mod model;
pub mod projection;
pub mod sim;
#[cfg(any(test, feature = "testkit"))]
pub mod testkit;
pub mod validate;

pub use diag::{Diagnostic, Severity, SourceSpan};
pub use expr::{evaluate, parse_expr, ConditionExpr, Environment, Value};
pub use manifest::{load_project, LoadError, LoadedProject, Manifest};
pub use model::{ElementId, ModelElement, ModelKind, Project};
pub use projection::{project, viewpoints_of, ProjectedSlice, Stakeholder};
pub use validate::{validate_cross, validate_intra, validate_project, ValidationReport};

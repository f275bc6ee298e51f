//! The condition language used by navigation guards, control-flow
//! conditions and data-operation arguments.

mod ast;
mod eval;
mod parse;
mod value;

pub(crate) use ast::write_string_literal;
pub use ast::{CompareOp, ConditionExpr, Literal, Operand, Path};
pub use eval::{argument_value, evaluate, free_paths, operand_value};
pub(crate) use parse::parse_condition;
pub use parse::{parse_expr, RESERVED};
pub use value::{Environment, Instance, Value};

/// Argument of a data operation or UI update. A bare operand denotes a
/// value; any other form is a condition (e.g. the filter of `read`).
pub type ArgExpr = ConditionExpr;

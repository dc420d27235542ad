//! Free-product expressions, their free dimension, and a rewriting
//! normalizer into `M₂ⁿ(ℂ)`, `M₂ⁿ(R)` or `M₂ⁿ(LF_t)`.

mod ast;
mod engine;
mod parser;
mod tables;

pub use ast::{compress, expand, Core, Expr, NormalForm};
pub use engine::{
    default_step_limit, normalize, normalize_str, normalize_with, Normalized, Options, RewriteStep,
    Rule, Strategy,
};
pub use parser::parse;
pub use tables::{
    dyadic_sum_sequence, interpolated_table, matched_power_table, mixed_dyadic_table, TableRow,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FdimError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("{}", match pos { Some(p) => format!("unsupported fragment at byte {p}: {msg}"), None => format!("unsupported fragment: {msg}") })]
    Unsupported { pos: Option<usize>, msg: String },
    #[error("rewriting did not terminate within {limit} steps (stopped at {steps})")]
    Divergence { steps: usize, limit: usize },
}

//! Data instances, positive temporal queries, their evaluation and syntactic classes.

mod class;
mod data;
mod eval;
mod normalize;
mod parse;
mod query;

pub use class::{classify, QueryClass};
pub use data::{DataInstance, ExampleSet, LassoModel};
pub use eval::{eval_data, eval_lasso, lasso_truth};
pub use normalize::normalize_next_diamond;
pub use parse::{parse_query, QueryParseError};
pub use query::Query;

use thiserror::Error;

/// Errors raised by the core data and query layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LogicError {
    #[error("invalid atom name `{0}`")]
    InvalidAtom(String),
    #[error("malformed fact `{0}`")]
    MalformedFact(String),
    #[error("position {at} lies outside the lasso of length {len}")]
    PositionOutOfRange { at: usize, len: usize },
    #[error("lasso loop must be nonempty")]
    EmptyLoop,
    #[error("query contains an until operator; only next/eventually queries can be normalised")]
    HasUntil,
}

/// Keywords that can never be used as atom names.
pub const KEYWORDS: [&str; 6] = ["X", "F", "G", "U", "true", "false"];

/// Checks that `name` is an identifier usable as an atom.
pub fn valid_atom(name: &str) -> bool {
    let mut chars = name.chars();
    let first_ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_');
    first_ok
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !KEYWORDS.contains(&name)
}

//! Comparison semantics, random knowledge bases and property checks.

mod poole;
mod properties;
mod random;

pub use poole::PooleAnswer;
pub use properties::{
    check_properties, check_relation, routes_agree, FormulaPool, PropertyReport, Rule, Violation,
};
pub use random::{random_kb, MAX_RANDOM_DEFAULTS, MAX_RANDOM_DEPTH, MAX_RANDOM_VARS};

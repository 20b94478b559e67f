//! Lexicographic and rational closure of propositional normal defaults.
//!
//! ```
//! use lexclose::{parse_kb, parse_formula, Engine};
//!
//! let engine = Engine::new(parse_kb("bird : flies\npenguin : bird\npenguin : !flies").unwrap());
//! let a = parse_formula("penguin").unwrap();
//! let b = parse_formula("!flies").unwrap();
//! assert!(engine.lex_entails_model(&a, &b).unwrap());
//! ```

pub mod closure_lex;
pub mod closure_rational;
pub mod engine;
pub mod error;
pub mod formula;
pub mod harness;
pub mod kb;
pub mod query;
pub mod ranking;
pub mod sat;

pub use closure_lex::{
    compare_seriousness, seriousness, Base, BasesAnswer, ModelAnswer, SeriousnessTuple,
};
pub use closure_rational::CoarseKey;
pub use engine::Engine;
pub use error::{Error, Result};
pub use formula::{parse_formula, Formula, World};
pub use kb::{parse_kb, violated_defaults, Default, DefaultId, KnowledgeBase};
pub use query::{parse_query, Closure, Explanation, Method, QueryResult};
pub use ranking::{compute_rank_partition, rank_of_formula, PartitionReport, Rank, RankPartition};
pub use sat::{entails, enumerate_worlds, is_satisfiable, is_satisfiable_oracle, SatMode};

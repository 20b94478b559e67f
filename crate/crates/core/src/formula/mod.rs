//! Propositional formulas: the AST, a canonical printer, evaluation, and
//! a compiled form used by the world-enumeration paths.

mod compiled;
mod parser;
mod world;

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

pub(crate) use compiled::{Compiled, VarIndex};
pub use parser::parse_formula;
pub use world::World;

/// A propositional formula. Binary connectives are strictly binary.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(String),
    Const(bool),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

/// `true` when `name` matches `[A-Za-z_][A-Za-z0-9_]*` and is not a keyword.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && name != "true" && name != "false"
}

impl Formula {
    /// Variable constructor.
    ///
    /// Panics if `name` is not a valid identifier; use [`Formula::try_var`]
    /// for untrusted input.
    pub fn var(name: &str) -> Self {
        Self::try_var(name).expect("invalid variable name")
    }

    pub fn try_var(name: &str) -> Result<Self> {
        if is_identifier(name) {
            Ok(Formula::Var(name.to_owned()))
        } else {
            Err(Error::Syntax {
                position: 0,
                message: format!("`{name}` is not a valid identifier"),
            })
        }
    }

    pub fn top() -> Self {
        Formula::Const(true)
    }

    pub fn bottom() -> Self {
        Formula::Const(false)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Self {
        Formula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Self {
        Formula::Or(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: Formula) -> Self {
        Formula::Implies(Box::new(self), Box::new(other))
    }

    pub fn iff(self, other: Formula) -> Self {
        Formula::Iff(Box::new(self), Box::new(other))
    }

    /// The variables occurring in the formula.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    pub(crate) fn collect_variables(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Var(v) => {
                out.insert(v.clone());
            }
            Formula::Const(_) => {}
            Formula::Not(f) => f.collect_variables(out),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => {
                l.collect_variables(out);
                r.collect_variables(out);
            }
        }
    }

    /// Classical two-valued evaluation.
    pub fn evaluate(&self, world: &World) -> Result<bool> {
        Ok(match self {
            Formula::Var(v) => world
                .get(v)
                .ok_or_else(|| Error::UnassignedVariable(v.clone()))?,
            Formula::Const(b) => *b,
            Formula::Not(f) => !f.evaluate(world)?,
            Formula::And(l, r) => l.evaluate(world)? && r.evaluate(world)?,
            Formula::Or(l, r) => l.evaluate(world)? || r.evaluate(world)?,
            Formula::Implies(l, r) => !l.evaluate(world)? || r.evaluate(world)?,
            Formula::Iff(l, r) => l.evaluate(world)? == r.evaluate(world)?,
        })
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Const(_) => 1,
            Formula::Not(f) => 1 + f.size(),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => 1 + l.size() + r.size(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            Formula::Not(_) => 5,
            Formula::Var(_) | Formula::Const(_) => 6,
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Formula, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

/// Prints with the minimum parentheses needed to parse back to the same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prec = self.precedence();
        match self {
            Formula::Var(v) => f.write_str(v),
            Formula::Const(true) => f.write_str("true"),
            Formula::Const(false) => f.write_str("false"),
            Formula::Not(child) => {
                f.write_str("!")?;
                write_child(f, child, child.precedence() < prec)
            }
            Formula::And(l, r) | Formula::Or(l, r) => {
                let op = if matches!(self, Formula::And(..)) {
                    " & "
                } else {
                    " | "
                };
                write_child(f, l, l.precedence() < prec)?;
                f.write_str(op)?;
                write_child(f, r, r.precedence() <= prec)
            }
            Formula::Implies(l, r) | Formula::Iff(l, r) => {
                let op = if matches!(self, Formula::Implies(..)) {
                    " -> "
                } else {
                    " <-> "
                };
                write_child(f, l, l.precedence() <= prec)?;
                f.write_str(op)?;
                write_child(f, r, r.precedence() < prec)
            }
        }
    }
}

impl std::str::FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_formula(s)
    }
}

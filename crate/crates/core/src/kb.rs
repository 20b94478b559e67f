//! Knowledge bases: finite sets of normal defaults and their text format.
//!
//! One default per line, `ANTECEDENT : CONSEQUENT`, or `: CONSEQUENT` when
//! the antecedent is `true`. `#` starts a comment; blank lines are ignored.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{parse_formula, Formula, World};

/// Position of a default in its knowledge base (presentation order).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DefaultId(pub usize);

impl fmt::Display for DefaultId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A normal default `(antecedent : consequent)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Default {
    pub antecedent: Formula,
    pub consequent: Formula,
}

impl Default {
    pub fn new(antecedent: Formula, consequent: Formula) -> Self {
        Self {
            antecedent,
            consequent,
        }
    }

    /// `antecedent -> consequent`, unsimplified.
    pub fn material_counterpart(&self) -> Formula {
        self.antecedent.clone().implies(self.consequent.clone())
    }
}

impl fmt::Display for Default {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.antecedent {
            Formula::Const(true) => write!(f, ": {}", self.consequent),
            a => write!(f, "{a} : {}", self.consequent),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnowledgeBase {
    defaults: Vec<Default>,
    lines: Vec<usize>,
}

impl KnowledgeBase {
    /// Builds a knowledge base, rejecting structurally equal pairs.
    /// Reported line numbers are 1-based positions in `defaults`.
    pub fn new(defaults: Vec<Default>) -> Result<Self> {
        let lines = (1..=defaults.len()).collect();
        Self::with_lines(defaults, lines)
    }

    fn with_lines(defaults: Vec<Default>, lines: Vec<usize>) -> Result<Self> {
        let mut seen: HashMap<&Default, usize> = HashMap::new();
        for (d, &line) in defaults.iter().zip(&lines) {
            if let Some(&first_line) = seen.get(d) {
                return Err(Error::DuplicateDefault {
                    default: d.to_string(),
                    first_line,
                    second_line: line,
                });
            }
            seen.insert(d, line);
        }
        Ok(Self { defaults, lines })
    }

    pub fn len(&self) -> usize {
        self.defaults.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defaults.is_empty()
    }

    pub fn defaults(&self) -> &[Default] {
        &self.defaults
    }

    pub fn get(&self, id: DefaultId) -> Option<&Default> {
        self.defaults.get(id.0)
    }

    /// Source line of a default (1-based).
    pub fn line(&self, id: DefaultId) -> Option<usize> {
        self.lines.get(id.0).copied()
    }

    pub fn ids(&self) -> impl Iterator<Item = DefaultId> + '_ {
        (0..self.defaults.len()).map(DefaultId)
    }

    pub fn iter(&self) -> impl Iterator<Item = (DefaultId, &Default)> {
        self.defaults
            .iter()
            .enumerate()
            .map(|(i, d)| (DefaultId(i), d))
    }

    /// Union of the variables of all defaults.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut vars = BTreeSet::new();
        for d in &self.defaults {
            d.antecedent.collect_variables(&mut vars);
            d.consequent.collect_variables(&mut vars);
        }
        vars
    }

    pub fn materials(&self) -> Vec<Formula> {
        self.defaults
            .iter()
            .map(Default::material_counterpart)
            .collect()
    }
}

impl fmt::Display for KnowledgeBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.defaults {
            writeln!(f, "{d}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for KnowledgeBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_kb(s)
    }
}

fn parse_side(text: &str, line: usize, column_base: usize) -> Result<Formula> {
    parse_formula(text).map_err(|e| match e {
        Error::Syntax { position, message } => Error::KbSyntax {
            line,
            message: format!("column {}: {message}", column_base + position + 1),
        },
        other => other,
    })
}

/// Parses the knowledge-base file format. Defaults keep file order.
pub fn parse_kb(text: &str) -> Result<KnowledgeBase> {
    let mut defaults = Vec::new();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some((left, right)) = content.split_once(':') else {
            return Err(Error::KbSyntax {
                line,
                message: "expected `ANTECEDENT : CONSEQUENT`".into(),
            });
        };
        if right.contains(':') {
            return Err(Error::KbSyntax {
                line,
                message: "more than one `:` separator".into(),
            });
        }
        let antecedent = if left.trim().is_empty() {
            Formula::Const(true)
        } else {
            parse_side(left, line, 0)?
        };
        if right.trim().is_empty() {
            return Err(Error::KbSyntax {
                line,
                message: "missing consequent".into(),
            });
        }
        let consequent = parse_side(right, line, left.len() + 1)?;
        defaults.push(Default::new(antecedent, consequent));
        lines.push(line);
    }
    KnowledgeBase::with_lines(defaults, lines)
}

/// The defaults whose antecedent holds and consequent fails in `world`.
pub fn violated_defaults(world: &World, kb: &KnowledgeBase) -> Result<BTreeSet<DefaultId>> {
    let mut out = BTreeSet::new();
    for (id, d) in kb.iter() {
        if d.antecedent.evaluate(world)? && !d.consequent.evaluate(world)? {
            out.insert(id);
        }
    }
    Ok(out)
}

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A total truth assignment over a finite set of variables.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct World(BTreeMap<String, bool>);

impl World {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, var: &str) -> Option<bool> {
        self.0.get(var).copied()
    }

    pub fn set(&mut self, var: impl Into<String>, value: bool) {
        self.0.insert(var.into(), value);
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, bool)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

impl FromIterator<(String, bool)> for World {
    fn from_iter<I: IntoIterator<Item = (String, bool)>>(iter: I) -> Self {
        World(iter.into_iter().collect())
    }
}

/// `{p, !q, r}`: true variables bare, false ones negated.
impl fmt::Display for World {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (var, value)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if !value {
                f.write_str("!")?;
            }
            f.write_str(var)?;
        }
        f.write_str("}")
    }
}

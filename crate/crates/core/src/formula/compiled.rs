use std::collections::BTreeMap;

use super::{Formula, World};

/// Assigns each variable of a universe a bit position.
#[derive(Debug, Clone, Default)]
pub(crate) struct VarIndex {
    names: Vec<String>,
    positions: BTreeMap<String, usize>,
}

impl VarIndex {
    pub fn new<I: IntoIterator<Item = String>>(names: I) -> Self {
        let mut index = VarIndex::default();
        for name in names {
            index.insert(name);
        }
        index
    }

    pub fn insert(&mut self, name: String) -> usize {
        if let Some(&pos) = self.positions.get(&name) {
            return pos;
        }
        let pos = self.names.len();
        self.positions.insert(name.clone(), pos);
        self.names.push(name);
        pos
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn world(&self, mask: u64) -> World {
        self.names
            .iter()
            .enumerate()
            .map(|(i, name)| (name.clone(), mask >> i & 1 == 1))
            .collect()
    }

    pub fn compile(&self, formula: &Formula) -> Compiled {
        match formula {
            Formula::Var(v) => Compiled::Var(self.positions[v] as u32),
            Formula::Const(b) => Compiled::Const(*b),
            Formula::Not(f) => Compiled::Not(Box::new(self.compile(f))),
            Formula::And(l, r) => {
                Compiled::And(Box::new(self.compile(l)), Box::new(self.compile(r)))
            }
            Formula::Or(l, r) => Compiled::Or(Box::new(self.compile(l)), Box::new(self.compile(r))),
            Formula::Implies(l, r) => Compiled::Or(
                Box::new(Compiled::Not(Box::new(self.compile(l)))),
                Box::new(self.compile(r)),
            ),
            Formula::Iff(l, r) => {
                Compiled::Iff(Box::new(self.compile(l)), Box::new(self.compile(r)))
            }
        }
    }
}

/// A formula whose variables are bit positions in a `u64` assignment.
#[derive(Debug, Clone)]
pub(crate) enum Compiled {
    Var(u32),
    Const(bool),
    Not(Box<Compiled>),
    And(Box<Compiled>, Box<Compiled>),
    Or(Box<Compiled>, Box<Compiled>),
    Iff(Box<Compiled>, Box<Compiled>),
}

impl Compiled {
    pub fn eval(&self, mask: u64) -> bool {
        match self {
            Compiled::Var(i) => mask >> i & 1 == 1,
            Compiled::Const(b) => *b,
            Compiled::Not(f) => !f.eval(mask),
            Compiled::And(l, r) => l.eval(mask) && r.eval(mask),
            Compiled::Or(l, r) => l.eval(mask) || r.eval(mask),
            Compiled::Iff(l, r) => l.eval(mask) == r.eval(mask),
        }
    }
}

//! Tseitin encoding plus a plain DPLL search: unit propagation and
//! splitting on a literal, no learning.

use std::collections::HashMap;

use crate::formula::Formula;

/// A literal: variable index shifted left once, low bit set for negation.
type Lit = u32;

fn pos(var: u32) -> Lit {
    var << 1
}

fn neg(lit: Lit) -> Lit {
    lit ^ 1
}

fn var_of(lit: Lit) -> usize {
    (lit >> 1) as usize
}

#[derive(Default)]
struct Encoder {
    num_vars: u32,
    atoms: HashMap<String, u32>,
    clauses: Vec<Vec<Lit>>,
}

impl Encoder {
    fn fresh(&mut self) -> Lit {
        let v = self.num_vars;
        self.num_vars += 1;
        pos(v)
    }

    /// Returns a literal equisatisfiably standing for `formula`.
    fn encode(&mut self, formula: &Formula) -> Lit {
        match formula {
            Formula::Var(name) => {
                if let Some(&v) = self.atoms.get(name) {
                    return pos(v);
                }
                let lit = self.fresh();
                self.atoms.insert(name.clone(), var_of(lit) as u32);
                lit
            }
            Formula::Const(b) => {
                let lit = self.fresh();
                self.clauses.push(vec![if *b { lit } else { neg(lit) }]);
                lit
            }
            Formula::Not(f) => neg(self.encode(f)),
            Formula::And(l, r) => {
                let (a, b) = (self.encode(l), self.encode(r));
                let x = self.fresh();
                self.clauses.push(vec![neg(x), a]);
                self.clauses.push(vec![neg(x), b]);
                self.clauses.push(vec![x, neg(a), neg(b)]);
                x
            }
            Formula::Or(l, r) => {
                let (a, b) = (self.encode(l), self.encode(r));
                let x = self.fresh();
                self.clauses.push(vec![neg(x), a, b]);
                self.clauses.push(vec![x, neg(a)]);
                self.clauses.push(vec![x, neg(b)]);
                x
            }
            Formula::Implies(l, r) => {
                let (a, b) = (self.encode(l), self.encode(r));
                let x = self.fresh();
                self.clauses.push(vec![neg(x), neg(a), b]);
                self.clauses.push(vec![x, a]);
                self.clauses.push(vec![x, neg(b)]);
                x
            }
            Formula::Iff(l, r) => {
                let (a, b) = (self.encode(l), self.encode(r));
                let x = self.fresh();
                self.clauses.push(vec![neg(x), neg(a), b]);
                self.clauses.push(vec![neg(x), a, neg(b)]);
                self.clauses.push(vec![x, a, b]);
                self.clauses.push(vec![x, neg(a), neg(b)]);
                x
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Value {
    Unset,
    True,
    False,
}

struct Search<'a> {
    clauses: &'a [Vec<Lit>],
    values: Vec<Value>,
    trail: Vec<usize>,
}

enum ClauseState {
    Satisfied,
    Conflict,
    Unit(Lit),
    Open(Lit),
}

impl Search<'_> {
    fn lit_value(&self, lit: Lit) -> Value {
        match (self.values[var_of(lit)], lit & 1 == 1) {
            (Value::Unset, _) => Value::Unset,
            (Value::True, false) | (Value::False, true) => Value::True,
            _ => Value::False,
        }
    }

    fn assign(&mut self, lit: Lit) {
        let v = var_of(lit);
        self.values[v] = if lit & 1 == 0 {
            Value::True
        } else {
            Value::False
        };
        self.trail.push(v);
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let v = self.trail.pop().unwrap();
            self.values[v] = Value::Unset;
        }
    }

    fn clause_state(&self, clause: &[Lit]) -> ClauseState {
        let mut unset = None;
        let mut unset_count = 0;
        for &lit in clause {
            match self.lit_value(lit) {
                Value::True => return ClauseState::Satisfied,
                Value::Unset => {
                    unset_count += 1;
                    unset.get_or_insert(lit);
                }
                Value::False => {}
            }
        }
        match (unset_count, unset) {
            (0, _) => ClauseState::Conflict,
            (1, Some(lit)) => ClauseState::Unit(lit),
            (_, Some(lit)) => ClauseState::Open(lit),
            _ => unreachable!(),
        }
    }

    /// Propagates units to a fixpoint. Returns `false` on conflict.
    fn propagate(&mut self) -> bool {
        loop {
            let mut changed = false;
            for clause in self.clauses {
                match self.clause_state(clause) {
                    ClauseState::Conflict => return false,
                    ClauseState::Unit(lit) => {
                        self.assign(lit);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn solve(&mut self) -> bool {
        if !self.propagate() {
            return false;
        }
        let branch = self
            .clauses
            .iter()
            .find_map(|c| match self.clause_state(c) {
                ClauseState::Open(lit) => Some(lit),
                _ => None,
            });
        let Some(lit) = branch else {
            return true;
        };
        let mark = self.trail.len();
        for choice in [lit, neg(lit)] {
            self.assign(choice);
            if self.solve() {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}

/// Decides joint satisfiability of `formulas`.
pub(crate) fn satisfiable<'a, I>(formulas: I) -> bool
where
    I: IntoIterator<Item = &'a Formula>,
{
    let mut encoder = Encoder::default();
    let roots: Vec<Lit> = formulas.into_iter().map(|f| encoder.encode(f)).collect();
    for root in roots {
        encoder.clauses.push(vec![root]);
    }
    let mut search = Search {
        clauses: &encoder.clauses,
        values: vec![Value::Unset; encoder.num_vars as usize],
        trail: Vec::new(),
    };
    search.solve()
}

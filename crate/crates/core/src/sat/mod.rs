//! Classical satisfiability and entailment.
//!
//! Two independent procedures are provided: exhaustive world enumeration
//! (the oracle, capped at [`ENUMERATION_CAP`] variables) and a DPLL search
//! over a Tseitin encoding (no cap). The rest of the crate uses the DPLL
//! route; the oracle exists so the two can be cross-checked.

mod dpll;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{Formula, VarIndex, World};

/// Maximum number of variables the enumeration routes accept.
pub const ENUMERATION_CAP: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SatMode {
    /// Unit propagation plus splitting.
    #[default]
    Fast,
    /// Truth-table enumeration.
    Oracle,
}

pub(crate) fn check_cap(count: usize) -> Result<()> {
    if count > ENUMERATION_CAP {
        Err(Error::CapExceeded {
            what: "world enumeration",
            cap: ENUMERATION_CAP,
            count,
        })
    } else {
        Ok(())
    }
}

/// Iterator over all assignments to a sorted variable list.
#[derive(Debug, Clone)]
pub struct Worlds {
    vars: Vec<String>,
    next: u64,
    end: u64,
}

impl Iterator for Worlds {
    type Item = World;

    fn next(&mut self) -> Option<World> {
        if self.next >= self.end {
            return None;
        }
        let n = self.vars.len();
        let counter = self.next;
        self.next += 1;
        Some(
            self.vars
                .iter()
                .enumerate()
                .map(|(i, v)| (v.clone(), counter >> (n - 1 - i) & 1 == 1))
                .collect(),
        )
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Worlds {}

/// All `2^|vars|` worlds, variables in lexicographic order, counting in
/// binary with `false` before `true` and the last variable varying fastest.
pub fn enumerate_worlds(vars: &BTreeSet<String>) -> Result<Worlds> {
    check_cap(vars.len())?;
    Ok(Worlds {
        vars: vars.iter().cloned().collect(),
        next: 0,
        end: 1u64 << vars.len(),
    })
}

fn variables_of<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> BTreeSet<String> {
    let mut vars = BTreeSet::new();
    for f in formulas {
        f.collect_variables(&mut vars);
    }
    vars
}

/// Truth-table satisfiability. Fails beyond the enumeration cap.
pub fn is_satisfiable_oracle(formulas: &[Formula]) -> Result<bool> {
    let vars = variables_of(formulas);
    check_cap(vars.len())?;
    let index = VarIndex::new(vars);
    let compiled: Vec<_> = formulas.iter().map(|f| index.compile(f)).collect();
    Ok((0..1u64 << index.len()).any(|mask| compiled.iter().all(|c| c.eval(mask))))
}

/// Joint satisfiability of `formulas`; the empty set is satisfiable.
pub fn is_satisfiable(formulas: &[Formula]) -> bool {
    dpll::satisfiable(formulas)
}

pub(crate) fn satisfiable_refs<'a, I: IntoIterator<Item = &'a Formula>>(formulas: I) -> bool {
    dpll::satisfiable(formulas)
}

pub fn is_satisfiable_with(formulas: &[Formula], mode: SatMode) -> Result<bool> {
    match mode {
        SatMode::Fast => Ok(is_satisfiable(formulas)),
        SatMode::Oracle => is_satisfiable_oracle(formulas),
    }
}

/// `premises ⊨ conclusion`, i.e. `premises ∪ {¬conclusion}` is unsatisfiable.
pub fn entails(premises: &[Formula], conclusion: &Formula) -> bool {
    let negated = conclusion.clone().not();
    !satisfiable_refs(premises.iter().chain(std::iter::once(&negated)))
}

pub fn entails_with(premises: &[Formula], conclusion: &Formula, mode: SatMode) -> Result<bool> {
    let mut all = premises.to_vec();
    all.push(conclusion.clone().not());
    Ok(!is_satisfiable_with(&all, mode)?)
}

use std::collections::HashSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::kb::{Default, KnowledgeBase};
use crate::sat;

pub const MAX_RANDOM_VARS: usize = 8;
pub const MAX_RANDOM_DEFAULTS: usize = 6;
pub const MAX_RANDOM_DEPTH: usize = 6;

const VAR_NAMES: [&str; MAX_RANDOM_VARS] = ["p", "q", "r", "s", "t", "u", "v", "w"];

pub(crate) fn random_formula(rng: &mut ChaCha8Rng, vars: &[&str], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        let v = Formula::var(vars[rng.gen_range(0..vars.len())]);
        return if rng.gen_bool(0.25) { v.not() } else { v };
    }
    let left = random_formula(rng, vars, depth - 1);
    match rng.gen_range(0..9) {
        0 => left.not(),
        1..=3 => left.and(random_formula(rng, vars, depth - 1)),
        4..=5 => left.or(random_formula(rng, vars, depth - 1)),
        6..=7 => left.implies(random_formula(rng, vars, depth - 1)),
        _ => left.iff(random_formula(rng, vars, depth - 1)),
    }
}

/// A reproducible random knowledge base over the first `n_vars` of
/// `p, q, r, s, t, u, v, w`.
///
/// A quarter of the antecedents are `true`. Unsatisfiable antecedents are
/// rejected nine times out of ten, so most defaults get a finite rank but
/// unranked ones still show up.
pub fn random_kb(
    seed: u64,
    n_defaults: usize,
    n_vars: usize,
    max_depth: usize,
) -> Result<KnowledgeBase> {
    if n_vars == 0 || n_vars > MAX_RANDOM_VARS {
        return Err(Error::InvalidParameter(format!(
            "n_vars must be in 1..={MAX_RANDOM_VARS}, got {n_vars}"
        )));
    }
    if n_defaults > MAX_RANDOM_DEFAULTS {
        return Err(Error::InvalidParameter(format!(
            "n_defaults must be at most {MAX_RANDOM_DEFAULTS}, got {n_defaults}"
        )));
    }
    if max_depth > MAX_RANDOM_DEPTH {
        return Err(Error::InvalidParameter(format!(
            "max_depth must be at most {MAX_RANDOM_DEPTH}, got {max_depth}"
        )));
    }
    let vars = &VAR_NAMES[..n_vars];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut defaults = Vec::with_capacity(n_defaults);
    let mut attempts = 0;
    while defaults.len() < n_defaults {
        attempts += 1;
        if attempts > 10_000 {
            return Err(Error::InvalidParameter(format!(
                "could not draw {n_defaults} distinct defaults over {n_vars} variables at depth {max_depth}"
            )));
        }
        let antecedent = if rng.gen_bool(0.25) {
            Formula::top()
        } else {
            random_formula(&mut rng, vars, max_depth)
        };
        if !sat::is_satisfiable(std::slice::from_ref(&antecedent)) && rng.gen_bool(0.9) {
            continue;
        }
        let consequent = random_formula(&mut rng, vars, max_depth);
        let d = Default::new(antecedent, consequent);
        if seen.insert(d.clone()) {
            defaults.push(d);
        }
    }
    KnowledgeBase::new(defaults)
}

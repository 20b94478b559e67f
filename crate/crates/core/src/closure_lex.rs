//! Lexicographic closure.
//!
//! Every world is ranked by the seriousness of the set of defaults it
//! violates: the tuple `<n_0, .., n_k>` counting violations in `D_inf`,
//! `D_{k-1}`, .., `D_0`, compared lexicographically. `a |~ b` holds when
//! all least-serious `a`-worlds satisfy `b`.
//!
//! The same relation is computed a second way, through bases: the subsets
//! of defaults consistent with `a` whose tuple is lexicographically
//! greatest. `a |~ b` holds when every base, together with `a`,
//! classically entails `b`.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::kb::DefaultId;
use crate::ranking::{Rank, RankPartition};
use crate::sat;

/// Maximum knowledge-base size for base enumeration.
pub const BASES_DEFAULT_CAP: usize = 20;
/// Maximum number of bases (or partial bases) kept during the search.
pub const BASES_COUNT_CAP: usize = 10_000;

/// Per-rank counts `<n_0, .., n_k>`: `n_0` for `D_inf`, then `D_{k-1}`
/// down to `D_0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct SeriousnessTuple(Vec<u32>);

impl SeriousnessTuple {
    pub fn new(counts: Vec<u32>) -> Self {
        Self(counts)
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for SeriousnessTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "<{}>", parts.join(","))
    }
}

/// Seriousness tuple of a set of defaults.
pub fn seriousness<I>(defaults: I, partition: &RankPartition) -> Result<SeriousnessTuple>
where
    I: IntoIterator<Item = DefaultId>,
{
    let mut counts = vec![0u32; partition.order() + 1];
    for id in defaults {
        let slot = partition
            .tuple_slot(id)
            .ok_or(Error::ForeignDefault(id.0))?;
        counts[slot] += 1;
    }
    Ok(SeriousnessTuple(counts))
}

/// Lexicographic comparison, highest precedence first.
pub fn compare_seriousness(left: &SeriousnessTuple, right: &SeriousnessTuple) -> Result<Ordering> {
    if left.len() != right.len() {
        return Err(Error::LengthMismatch {
            left: left.len(),
            right: right.len(),
        });
    }
    Ok(left.0.cmp(&right.0))
}

/// A base for some antecedent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Base {
    pub members: Vec<DefaultId>,
    pub tuple: SeriousnessTuple,
}

/// Calls `f` with every `size`-subset of `0..n`, in lexicographic order.
fn for_each_combination(
    n: usize,
    size: usize,
    mut f: impl FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    if size > n {
        return Ok(());
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        f(&idx)?;
        let Some(i) = (0..size).rev().find(|&i| idx[i] != i + n - size) else {
            return Ok(());
        };
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Result of the model-theoretic route.
#[derive(Debug, Clone)]
pub struct ModelAnswer {
    pub verdict: bool,
    /// Violation tuple shared by the minimal antecedent worlds.
    pub tuple: Option<SeriousnessTuple>,
    pub minimal_world_count: usize,
    pub minimal_worlds: Vec<crate::formula::World>,
}

/// Result of the bases route.
#[derive(Debug, Clone)]
pub struct BasesAnswer {
    pub verdict: bool,
    pub bases: Vec<Base>,
}

impl Engine {
    pub fn seriousness<I: IntoIterator<Item = DefaultId>>(
        &self,
        defaults: I,
    ) -> Result<SeriousnessTuple> {
        seriousness(defaults, self.partition())
    }

    /// Lexicographic entailment through the ranked model over all worlds.
    pub fn lex_entails_model(&self, a: &Formula, b: &Formula) -> Result<bool> {
        Ok(self.lex_model(a, b)?.verdict)
    }

    pub fn lex_model(&self, a: &Formula, b: &Formula) -> Result<ModelAnswer> {
        let outcome = self.minimal_worlds(a, b, |t| t.to_vec())?;
        Ok(ModelAnswer {
            verdict: outcome.verdict,
            tuple: outcome.key.map(SeriousnessTuple),
            minimal_world_count: outcome.count,
            minimal_worlds: outcome.worlds,
        })
    }

    /// All bases for `a`. Empty exactly when `a` is unsatisfiable.
    ///
    /// The search walks the rank blocks from highest precedence down. At
    /// each block it keeps every extension of the surviving partial bases
    /// that takes the largest number of that block's defaults while staying
    /// consistent with `a`; lexicographic order makes this exact.
    pub fn compute_bases(&self, a: &Formula) -> Result<Vec<Base>> {
        self.bases_with_cap(a, BASES_COUNT_CAP)
    }

    pub(crate) fn bases_with_cap(&self, a: &Formula, count_cap: usize) -> Result<Vec<Base>> {
        let n = self.kb().len();
        if n > BASES_DEFAULT_CAP {
            return Err(Error::CapExceeded {
                what: "base enumeration (defaults)",
                cap: BASES_DEFAULT_CAP,
                count: n,
            });
        }
        if !sat::satisfiable_refs([a]) {
            return Ok(Vec::new());
        }
        let consistent = |ids: &[DefaultId]| {
            sat::satisfiable_refs(std::iter::once(a).chain(self.materials_of(ids)))
        };

        let mut partials: Vec<Vec<DefaultId>> = vec![Vec::new()];
        let mut counts = Vec::with_capacity(self.tuple_len());
        for level in self.partition().levels_by_precedence() {
            for size in (0..=level.len()).rev() {
                let mut next = Vec::new();
                if size == 0 {
                    next = std::mem::take(&mut partials);
                } else {
                    for partial in &partials {
                        for_each_combination(level.len(), size, |combo| {
                            let mut candidate = partial.clone();
                            candidate.extend(combo.iter().map(|&i| level[i]));
                            if consistent(&candidate) {
                                next.push(candidate);
                                if next.len() > count_cap {
                                    return Err(Error::CapExceeded {
                                        what: "base enumeration (bases)",
                                        cap: count_cap,
                                        count: next.len(),
                                    });
                                }
                            }
                            Ok(())
                        })?;
                    }
                }
                if !next.is_empty() {
                    partials = next;
                    counts.push(size as u32);
                    break;
                }
            }
        }
        let tuple = SeriousnessTuple(counts);
        let mut bases: Vec<Base> = partials
            .into_iter()
            .map(|mut members| {
                members.sort();
                Base {
                    members,
                    tuple: tuple.clone(),
                }
            })
            .collect();
        bases.sort_by(|x, y| x.members.cmp(&y.members));
        if let Some(b) = bases.iter().find(|b| !self.base_is_full_from_rank(a, b)) {
            return Err(Error::Invariant(format!(
                "base {:?} for {a} misses a block at or above rank {}",
                b.members,
                self.rank_of(a)
            )));
        }
        Ok(bases)
    }

    /// Whether `base` contains every block at or above the rank of `a`.
    /// Vacuously true when `a` has no rank.
    pub fn base_is_full_from_rank(&self, a: &Formula, base: &Base) -> bool {
        let start = match self.rank_of(a) {
            Rank::Finite(i) => i,
            Rank::Infinite => return true,
        };
        let blocks = self.partition().blocks().iter().skip(start).flatten();
        blocks
            .chain(self.partition().infinite().iter())
            .all(|id| base.members.contains(id))
    }

    pub fn lex_bases(&self, a: &Formula, b: &Formula) -> Result<BasesAnswer> {
        let bases = self.compute_bases(a)?;
        let negated = b.clone().not();
        let verdict = bases.iter().all(|base| {
            let premises = self.materials_of(&base.members).chain([a, &negated]);
            !sat::satisfiable_refs(premises)
        });
        Ok(BasesAnswer { verdict, bases })
    }

    /// Lexicographic entailment through bases.
    pub fn lex_entails_bases(&self, a: &Formula, b: &Formula) -> Result<bool> {
        Ok(self.lex_bases(a, b)?.verdict)
    }

    /// Lexicographic entailment, except that antecedents without a rank
    /// entail everything.
    pub fn variant_entails(&self, a: &Formula, b: &Formula) -> Result<bool> {
        if self.rank_of(a) == Rank::Infinite {
            Ok(true)
        } else {
            self.lex_entails_model(a, b)
        }
    }

    /// Block sizes in tuple order: `|D_inf|, |D_{k-1}|, .., |D_0|`.
    pub fn level_sizes(&self) -> Vec<u32> {
        self.partition()
            .levels_by_precedence()
            .iter()
            .map(|l| l.len() as u32)
            .collect()
    }
}

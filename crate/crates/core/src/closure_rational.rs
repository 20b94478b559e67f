//! Rational closure, by rank comparison and by the coarse ranked model.

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::kb::DefaultId;
use crate::ranking::Rank;

/// Coarse seriousness of a violation set: only the highest-ranked
/// violated default counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoarseKey {
    /// Violates nothing.
    Clean,
    /// Highest finite rank among the violated defaults.
    Highest(usize),
    /// Violates some default without a rank.
    Infinite,
}

impl CoarseKey {
    /// Key of a seriousness tuple `<n_0, .., n_k>`.
    pub fn of_tuple(tuple: &[u32]) -> Self {
        let order = tuple.len() - 1;
        if tuple[0] > 0 {
            return CoarseKey::Infinite;
        }
        match tuple[1..].iter().position(|&n| n > 0) {
            Some(i) => CoarseKey::Highest(order - 1 - i),
            None => CoarseKey::Clean,
        }
    }
}

impl Engine {
    pub fn coarse_key<I: IntoIterator<Item = DefaultId>>(&self, defaults: I) -> Result<CoarseKey> {
        let tuple = self.seriousness(defaults)?;
        Ok(CoarseKey::of_tuple(tuple.counts()))
    }

    /// `rank(a) < rank(a & !b)`, or `a` has no rank.
    pub fn rational_entails(&self, a: &Formula, b: &Formula) -> bool {
        let rank_a = self.rank_of(a);
        rank_a == Rank::Infinite || self.rank_of(&a.clone().and(b.clone().not())) > rank_a
    }

    /// Rational closure through the model ranking worlds by [`CoarseKey`].
    /// Only defined for antecedents of finite rank.
    pub fn rational_entails_ll_model(&self, a: &Formula, b: &Formula) -> Result<bool> {
        if self.rank_of(a) == Rank::Infinite {
            return Err(Error::NoRankAntecedent(a.to_string()));
        }
        Ok(self.minimal_worlds(a, b, CoarseKey::of_tuple)?.verdict)
    }
}

//! Ranks of formulas and the rank partition of a knowledge base.
//!
//! Starting from `E_0 = D`, a formula has rank `i` when it has no smaller
//! rank and is consistent with the material counterparts of `E_i`.
//! `E_{i+1}` keeps the defaults of `E_i` whose antecedent does not have
//! rank `i`. The chain stops at the first `i` with `E_{i+1} = E_i`; that
//! fixpoint is `D_inf`, the defaults whose antecedents have no rank.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::formula::Formula;
use crate::kb::{DefaultId, KnowledgeBase};
use crate::sat;

/// A finite rank, or no rank at all (greater than every finite rank).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rank {
    Finite(usize),
    Infinite,
}

impl Rank {
    pub fn is_finite(self) -> bool {
        matches!(self, Rank::Finite(_))
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(i) => write!(f, "{i}"),
            Rank::Infinite => f.write_str("none"),
        }
    }
}

/// Serialized as an integer, or the string `"none"`.
impl Serialize for Rank {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Rank::Finite(i) => s.serialize_u64(*i as u64),
            Rank::Infinite => s.serialize_str("none"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankPartition {
    blocks: Vec<Vec<DefaultId>>,
    infinite: Vec<DefaultId>,
    chain: Vec<Vec<DefaultId>>,
    ranks: Vec<Rank>,
    materials: Vec<Formula>,
}

impl RankPartition {
    /// `D_0 .. D_{k-1}`.
    pub fn blocks(&self) -> &[Vec<DefaultId>] {
        &self.blocks
    }

    /// `D_inf`.
    pub fn infinite(&self) -> &[DefaultId] {
        &self.infinite
    }

    /// `E_0 .. E_k`; the last entry is the fixpoint, equal to `D_inf`.
    pub fn chain(&self) -> &[Vec<DefaultId>] {
        &self.chain
    }

    /// The order `k`: number of finite blocks.
    pub fn order(&self) -> usize {
        self.blocks.len()
    }

    /// Rank of the antecedent of a default.
    pub fn rank_of_default(&self, id: DefaultId) -> Option<Rank> {
        self.ranks.get(id.0).copied()
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub(crate) fn material(&self, id: DefaultId) -> &Formula {
        &self.materials[id.0]
    }

    /// Blocks in decreasing precedence: `D_inf, D_{k-1}, .., D_0`.
    pub fn levels_by_precedence(&self) -> Vec<&[DefaultId]> {
        std::iter::once(self.infinite.as_slice())
            .chain(self.blocks.iter().rev().map(Vec::as_slice))
            .collect()
    }

    /// Position of a default's count inside a seriousness tuple:
    /// `0` for `D_inf`, `k - i` for `D_i`.
    pub fn tuple_slot(&self, id: DefaultId) -> Option<usize> {
        self.ranks.get(id.0).map(|r| match r {
            Rank::Infinite => 0,
            Rank::Finite(i) => self.order() - i,
        })
    }

    fn satisfiable_with_level(&self, formula: &Formula, level: usize) -> bool {
        let materials = self.chain[level].iter().map(|id| &self.materials[id.0]);
        sat::satisfiable_refs(std::iter::once(formula).chain(materials))
    }

    /// JSON-friendly view used for explanations.
    pub fn report(&self, kb: &KnowledgeBase) -> PartitionReport {
        PartitionReport {
            order: self.order(),
            defaults: kb.defaults().iter().map(ToString::to_string).collect(),
            ranks: self.ranks.clone(),
            blocks: self.blocks.clone(),
            infinite: self.infinite.clone(),
            chain: self.chain.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PartitionReport {
    pub order: usize,
    pub defaults: Vec<String>,
    pub ranks: Vec<Rank>,
    pub blocks: Vec<Vec<DefaultId>>,
    pub infinite: Vec<DefaultId>,
    pub chain: Vec<Vec<DefaultId>>,
}

pub fn compute_rank_partition(kb: &KnowledgeBase) -> RankPartition {
    let materials = kb.materials();
    let mut ranks = vec![Rank::Infinite; kb.len()];
    let mut chain: Vec<Vec<DefaultId>> = vec![kb.ids().collect()];
    let mut blocks = Vec::new();
    loop {
        let level = blocks.len();
        let current = &chain[level];
        let level_materials: Vec<&Formula> = current.iter().map(|id| &materials[id.0]).collect();
        let (ranked, rest): (Vec<DefaultId>, Vec<DefaultId>) = current.iter().partition(|id| {
            let antecedent = &kb.defaults()[id.0].antecedent;
            sat::satisfiable_refs(
                std::iter::once(antecedent).chain(level_materials.iter().copied()),
            )
        });
        if ranked.is_empty() {
            break;
        }
        for id in &ranked {
            ranks[id.0] = Rank::Finite(level);
        }
        blocks.push(ranked);
        chain.push(rest);
    }
    let infinite = chain.last().cloned().unwrap_or_default();
    RankPartition {
        blocks,
        infinite,
        chain,
        ranks,
        materials,
    }
}

/// Least `i` with `{a} ∪ materials(E_i)` satisfiable, else [`Rank::Infinite`].
pub fn rank_of_formula(a: &Formula, partition: &RankPartition) -> Rank {
    (0..partition.chain.len())
        .find(|&i| partition.satisfiable_with_level(a, i))
        .map_or(Rank::Infinite, Rank::Finite)
}

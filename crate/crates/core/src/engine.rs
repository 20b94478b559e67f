use std::collections::BTreeSet;
use std::sync::OnceLock;

use crate::error::Result;
use crate::formula::{Compiled, Formula, VarIndex, World};
use crate::kb::{DefaultId, KnowledgeBase};
use crate::ranking::{compute_rank_partition, rank_of_formula, Rank, RankPartition};
use crate::sat;

/// Knowledge bases with at most this many variables get their per-world
/// violation tuples cached.
const TABLE_VARS: usize = 16;

/// Explanations list at most this many minimal worlds.
pub const EXPLAIN_LIMIT: usize = 32;

/// A knowledge base together with its rank partition, ready for queries.
///
/// The partition is computed once; every query method is a pure function
/// of the engine and its arguments, so an engine may be shared across
/// threads.
#[derive(Debug)]
pub struct Engine {
    kb: KnowledgeBase,
    partition: RankPartition,
    kb_index: VarIndex,
    antecedents: Vec<Compiled>,
    consequents: Vec<Compiled>,
    slots: Vec<usize>,
    table: OnceLock<Option<Vec<u32>>>,
}

/// Outcome of a minimal-world search in one of the ranked models.
#[derive(Debug, Clone)]
pub(crate) struct MinimalWorlds<K> {
    pub verdict: bool,
    /// Ranking key of the minimal antecedent worlds; `None` when the
    /// antecedent has no world at all.
    pub key: Option<K>,
    pub count: usize,
    pub worlds: Vec<World>,
}

impl Engine {
    pub fn new(kb: KnowledgeBase) -> Self {
        let partition = compute_rank_partition(&kb);
        let kb_index = VarIndex::new(kb.variables());
        let antecedents = kb
            .defaults()
            .iter()
            .map(|d| kb_index.compile(&d.antecedent))
            .collect();
        let consequents = kb
            .defaults()
            .iter()
            .map(|d| kb_index.compile(&d.consequent))
            .collect();
        let slots = kb
            .ids()
            .map(|id| partition.tuple_slot(id).unwrap())
            .collect();
        Self {
            kb,
            partition,
            kb_index,
            antecedents,
            consequents,
            slots,
            table: OnceLock::new(),
        }
    }

    pub fn kb(&self) -> &KnowledgeBase {
        &self.kb
    }

    pub fn partition(&self) -> &RankPartition {
        &self.partition
    }

    pub fn rank_of(&self, a: &Formula) -> Rank {
        rank_of_formula(a, &self.partition)
    }

    /// Length of seriousness tuples for this knowledge base: order + 1.
    pub fn tuple_len(&self) -> usize {
        self.partition.order() + 1
    }

    pub(crate) fn materials_of<'a>(
        &'a self,
        ids: &'a [DefaultId],
    ) -> impl Iterator<Item = &'a Formula> + 'a {
        ids.iter().map(|id| self.partition.material(*id))
    }

    /// Violation tuple of the world `kb_mask` over the knowledge-base variables.
    fn compute_tuple(&self, kb_mask: u64, out: &mut [u32]) {
        out.fill(0);
        for ((ante, cons), &slot) in self
            .antecedents
            .iter()
            .zip(&self.consequents)
            .zip(&self.slots)
        {
            if ante.eval(kb_mask) && !cons.eval(kb_mask) {
                out[slot] += 1;
            }
        }
    }

    fn table(&self) -> Option<&[u32]> {
        self.table
            .get_or_init(|| {
                let n = self.kb_index.len();
                if n > TABLE_VARS {
                    return None;
                }
                let width = self.tuple_len();
                let mut table = vec![0u32; (1usize << n) * width];
                for (mask, row) in table.chunks_mut(width).enumerate() {
                    self.compute_tuple(mask as u64, row);
                }
                Some(table)
            })
            .as_deref()
    }

    /// Finds the antecedent worlds with the least `key` of their violation
    /// tuple and checks the consequent on all of them.
    ///
    /// Worlds range over the knowledge-base variables plus those of `a`
    /// and `b`; extra query variables never change a violation tuple.
    pub(crate) fn minimal_worlds<K, F>(
        &self,
        a: &Formula,
        b: &Formula,
        key_of: F,
    ) -> Result<MinimalWorlds<K>>
    where
        K: Ord + Clone,
        F: Fn(&[u32]) -> K,
    {
        let mut index = self.kb_index.clone();
        let mut extra = BTreeSet::new();
        a.collect_variables(&mut extra);
        b.collect_variables(&mut extra);
        for v in extra {
            index.insert(v);
        }
        sat::check_cap(index.len())?;
        let kb_bits = self.kb_index.len();
        let kb_mask_bits = (1u64 << kb_bits) - 1;
        let (ca, cb) = (index.compile(a), index.compile(b));
        let width = self.tuple_len();
        let table = self.table();
        let mut buf = vec![0u32; width];

        let tuple_of = |mask: u64, buf: &mut Vec<u32>| -> K {
            let kb_mask = mask & kb_mask_bits;
            match table {
                Some(t) => {
                    let start = kb_mask as usize * width;
                    key_of(&t[start..start + width])
                }
                None => {
                    self.compute_tuple(kb_mask, buf);
                    key_of(buf)
                }
            }
        };

        let total = 1u64 << index.len();
        let mut best: Option<K> = None;
        for mask in 0..total {
            if !ca.eval(mask) {
                continue;
            }
            let key = tuple_of(mask, &mut buf);
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
        let Some(best) = best else {
            return Ok(MinimalWorlds {
                verdict: true,
                key: None,
                count: 0,
                worlds: Vec::new(),
            });
        };
        let mut verdict = true;
        let mut count = 0;
        let mut worlds = Vec::new();
        for mask in 0..total {
            if !ca.eval(mask) || tuple_of(mask, &mut buf) != best {
                continue;
            }
            count += 1;
            if !cb.eval(mask) {
                // Put counterexamples first in the explanation.
                if verdict {
                    worlds.clear();
                }
                verdict = false;
                if worlds.len() < EXPLAIN_LIMIT {
                    worlds.push(index.world(mask));
                }
            } else if verdict && worlds.len() < EXPLAIN_LIMIT {
                worlds.push(index.world(mask));
            }
        }
        Ok(MinimalWorlds {
            verdict,
            key: Some(best),
            count,
            worlds,
        })
    }
}

use crate::closure_lex::BASES_DEFAULT_CAP;
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::kb::DefaultId;
use crate::sat;

/// Poole-style answer: ranks ignored, inclusion-maximal consistent subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PooleAnswer {
    pub verdict: bool,
    pub bases: Vec<Vec<DefaultId>>,
}

fn members(mask: u32) -> Vec<DefaultId> {
    (0..32)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| DefaultId(i as usize))
        .collect()
}

impl Engine {
    /// The inclusion-maximal sets of defaults whose material counterparts
    /// are consistent with `a`.
    pub fn inclusion_maximal_subsets(&self, a: &Formula) -> Result<Vec<Vec<DefaultId>>> {
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
        let mut masks: Vec<u32> = (0..1u32 << n).collect();
        masks.sort_by_key(|m| (std::cmp::Reverse(m.count_ones()), *m));
        let mut maximal: Vec<u32> = Vec::new();
        for mask in masks {
            if maximal.iter().any(|&m| mask & m == mask) {
                continue;
            }
            let ids = members(mask);
            if sat::satisfiable_refs(std::iter::once(a).chain(self.materials_of(&ids))) {
                maximal.push(mask);
            }
        }
        let mut out: Vec<_> = maximal.into_iter().map(members).collect();
        out.sort();
        Ok(out)
    }

    pub fn poole(&self, a: &Formula, b: &Formula) -> Result<PooleAnswer> {
        let bases = self.inclusion_maximal_subsets(a)?;
        let negated = b.clone().not();
        let verdict = bases
            .iter()
            .all(|ids| !sat::satisfiable_refs(self.materials_of(ids).chain([a, &negated])));
        Ok(PooleAnswer { verdict, bases })
    }

    pub fn poole_entails(&self, a: &Formula, b: &Formula) -> Result<bool> {
        Ok(self.poole(a, b)?.verdict)
    }
}

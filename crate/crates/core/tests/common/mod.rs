//! Brute-force reference implementations. Everything here goes through
//! explicit truth tables over `Formula` values and touches no engine code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use lexclose::{Formula, KnowledgeBase};

pub type Assignment = BTreeMap<String, bool>;

pub fn eval(f: &Formula, w: &Assignment) -> bool {
    match f {
        Formula::Var(v) => w[v],
        Formula::Const(c) => *c,
        Formula::Not(x) => !eval(x, w),
        Formula::And(x, y) => eval(x, w) && eval(y, w),
        Formula::Or(x, y) => eval(x, w) || eval(y, w),
        Formula::Implies(x, y) => !eval(x, w) || eval(y, w),
        Formula::Iff(x, y) => eval(x, w) == eval(y, w),
    }
}

fn vars_into(f: &Formula, out: &mut BTreeSet<String>) {
    match f {
        Formula::Var(v) => {
            out.insert(v.clone());
        }
        Formula::Const(_) => {}
        Formula::Not(x) => vars_into(x, out),
        Formula::And(x, y) | Formula::Or(x, y) | Formula::Implies(x, y) | Formula::Iff(x, y) => {
            vars_into(x, out);
            vars_into(y, out);
        }
    }
}

/// All assignments to `vars`, in no particular order.
pub fn assignments(vars: &BTreeSet<String>) -> Vec<Assignment> {
    let names: Vec<&String> = vars.iter().collect();
    (0..1u64 << names.len())
        .map(|bits| {
            names
                .iter()
                .enumerate()
                .map(|(i, n)| ((*n).clone(), bits >> i & 1 == 1))
                .collect()
        })
        .collect()
}

pub struct Oracle {
    pub antecedents: Vec<Formula>,
    pub consequents: Vec<Formula>,
    pub kb_vars: BTreeSet<String>,
    /// `rank[i]` is `None` for defaults without a rank.
    pub rank: Vec<Option<usize>>,
    pub order: usize,
}

impl Oracle {
    pub fn new(kb: &KnowledgeBase) -> Self {
        let antecedents: Vec<Formula> =
            kb.defaults().iter().map(|d| d.antecedent.clone()).collect();
        let consequents: Vec<Formula> =
            kb.defaults().iter().map(|d| d.consequent.clone()).collect();
        let mut kb_vars = BTreeSet::new();
        for f in antecedents.iter().chain(&consequents) {
            vars_into(f, &mut kb_vars);
        }
        let mut oracle = Oracle {
            antecedents,
            consequents,
            kb_vars,
            rank: Vec::new(),
            order: 0,
        };
        let n = oracle.antecedents.len();
        let mut rank = vec![None; n];
        let mut current: Vec<usize> = (0..n).collect();
        let mut level = 0;
        loop {
            let next: Vec<usize> = current
                .iter()
                .copied()
                .filter(|&i| !oracle.consistent(&oracle.antecedents[i].clone(), &current))
                .collect();
            if next.len() == current.len() {
                break;
            }
            for &i in &current {
                if !next.contains(&i) {
                    rank[i] = Some(level);
                }
            }
            current = next;
            level += 1;
        }
        oracle.rank = rank;
        oracle.order = level;
        oracle
    }

    fn universe(&self, extra: &[&Formula]) -> BTreeSet<String> {
        let mut vars = self.kb_vars.clone();
        for f in extra {
            vars_into(f, &mut vars);
        }
        vars
    }

    pub fn material_holds(&self, i: usize, w: &Assignment) -> bool {
        !eval(&self.antecedents[i], w) || eval(&self.consequents[i], w)
    }

    /// Whether `a` together with the materials of `ids` has a model.
    pub fn consistent(&self, a: &Formula, ids: &[usize]) -> bool {
        assignments(&self.universe(&[a]))
            .iter()
            .any(|w| eval(a, w) && ids.iter().all(|&i| self.material_holds(i, w)))
    }

    pub fn satisfiable(&self, a: &Formula) -> bool {
        self.consistent(a, &[])
    }

    /// Least `i` with `a` consistent with the defaults of rank at least `i`.
    pub fn rank_of(&self, a: &Formula) -> Option<usize> {
        (0..=self.order).find(|&i| {
            let ids: Vec<usize> = (0..self.rank.len())
                .filter(|&d| self.rank[d].is_none_or(|r| r >= i))
                .collect();
            self.consistent(a, &ids)
        })
    }

    /// Violation counts of a default set: unranked first, then rank
    /// `order - 1` down to rank 0.
    pub fn tuple_of(&self, ids: impl IntoIterator<Item = usize>) -> Vec<u32> {
        let mut t = vec![0u32; self.order + 1];
        for i in ids {
            match self.rank[i] {
                None => t[0] += 1,
                Some(r) => t[self.order - r] += 1,
            }
        }
        t
    }

    pub fn world_tuple(&self, w: &Assignment) -> Vec<u32> {
        self.tuple_of((0..self.rank.len()).filter(|&i| !self.material_holds(i, w)))
    }

    /// Minimal `a`-worlds by violation tuple all satisfy `b`.
    pub fn lex(&self, a: &Formula, b: &Formula) -> bool {
        let worlds: Vec<Assignment> = assignments(&self.universe(&[a, b]))
            .into_iter()
            .filter(|w| eval(a, w))
            .collect();
        let Some(best) = worlds.iter().map(|w| self.world_tuple(w)).min() else {
            return true;
        };
        worlds
            .iter()
            .filter(|w| self.world_tuple(w) == best)
            .all(|w| eval(b, w))
    }

    pub fn rational(&self, a: &Formula, b: &Formula) -> bool {
        match self.rank_of(a) {
            None => true,
            Some(ra) => {
                let exception = a.clone().and(b.clone().not());
                self.rank_of(&exception).is_none_or(|r| r > ra)
            }
        }
    }

    fn subsets(&self) -> impl Iterator<Item = Vec<usize>> {
        let n = self.rank.len();
        (0..1u32 << n).map(move |m| (0..n).filter(|i| m >> i & 1 == 1).collect())
    }

    /// Consistent subsets with the largest tuple, each sorted.
    pub fn bases(&self, a: &Formula) -> Vec<Vec<usize>> {
        let consistent: Vec<Vec<usize>> =
            self.subsets().filter(|s| self.consistent(a, s)).collect();
        let Some(best) = consistent
            .iter()
            .map(|s| self.tuple_of(s.iter().copied()))
            .max()
        else {
            return Vec::new();
        };
        let mut out: Vec<Vec<usize>> = consistent
            .into_iter()
            .filter(|s| self.tuple_of(s.iter().copied()) == best)
            .collect();
        out.sort();
        out
    }

    /// Inclusion-maximal consistent subsets, each sorted.
    pub fn inclusion_maximal(&self, a: &Formula) -> Vec<Vec<usize>> {
        let consistent: Vec<Vec<usize>> =
            self.subsets().filter(|s| self.consistent(a, s)).collect();
        let mut out: Vec<Vec<usize>> = consistent
            .iter()
            .filter(|s| {
                !consistent
                    .iter()
                    .any(|t| t.len() > s.len() && s.iter().all(|x| t.contains(x)))
            })
            .cloned()
            .collect();
        out.sort();
        out
    }

    /// Every `a`-world of every base satisfies `b`.
    fn all_bases_entail(&self, a: &Formula, b: &Formula, bases: &[Vec<usize>]) -> bool {
        let vars = self.universe(&[a, b]);
        bases.iter().all(|s| {
            assignments(&vars)
                .iter()
                .filter(|w| eval(a, w) && s.iter().all(|&i| self.material_holds(i, w)))
                .all(|w| eval(b, w))
        })
    }

    pub fn lex_by_bases(&self, a: &Formula, b: &Formula) -> bool {
        self.all_bases_entail(a, b, &self.bases(a))
    }

    pub fn poole(&self, a: &Formula, b: &Formula) -> bool {
        self.all_bases_entail(a, b, &self.inclusion_maximal(a))
    }

    /// KB-variable worlds grouped by violation tuple.
    pub fn levels(&self) -> BTreeMap<Vec<u32>, Vec<Assignment>> {
        let mut out: BTreeMap<Vec<u32>, Vec<Assignment>> = BTreeMap::new();
        for w in assignments(&self.kb_vars) {
            out.entry(self.world_tuple(&w)).or_default().push(w);
        }
        out
    }
}

pub fn f(text: &str) -> Formula {
    lexclose::parse_formula(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn kb(text: &str) -> KnowledgeBase {
    lexclose::parse_kb(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

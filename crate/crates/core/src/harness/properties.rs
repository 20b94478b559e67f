//! Sampled checks of the KLM rules and rational monotonicity.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::engine::Engine;
use crate::error::Result;
use crate::formula::Formula;
use crate::query::{Closure, Method};
use crate::sat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Reflexivity,
    LeftLogicalEquivalence,
    RightWeakening,
    And,
    Or,
    CautiousMonotonicity,
    RationalMonotonicity,
}

impl Rule {
    pub const ALL: [Rule; 7] = [
        Rule::Reflexivity,
        Rule::LeftLogicalEquivalence,
        Rule::RightWeakening,
        Rule::And,
        Rule::Or,
        Rule::CautiousMonotonicity,
        Rule::RationalMonotonicity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Reflexivity => "reflexivity",
            Rule::LeftLogicalEquivalence => "left logical equivalence",
            Rule::RightWeakening => "right weakening",
            Rule::And => "and",
            Rule::Or => "or",
            Rule::CautiousMonotonicity => "cautious monotonicity",
            Rule::RationalMonotonicity => "rational monotonicity",
        }
    }
}

/// A failed rule instance. `premises` and `conclusion` are the
/// conditional assertions involved, as `a |~ b` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: Rule,
    pub premises: Vec<String>,
    pub conclusion: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub closure: Closure,
    pub samples: usize,
    pub seed: u64,
    /// Per rule, how many sampled instances had their premises satisfied.
    pub applicable: BTreeMap<Rule, usize>,
    pub violations: Vec<Violation>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations_of(&self, rule: Rule) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.rule == rule)
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} closure: {} sampled instances (seed {})",
            self.closure, self.samples, self.seed
        )?;
        for rule in Rule::ALL {
            let applicable = self.applicable.get(&rule).copied().unwrap_or(0);
            let failed = self.violations_of(rule).count();
            let status = if failed == 0 { "ok" } else { "FAIL" };
            writeln!(
                f,
                "  {status:<4} {:<26} {applicable:>5} applicable, {failed} violated",
                rule.name()
            )?;
        }
        for v in &self.violations {
            writeln!(
                f,
                "  counterexample ({}): {} => {}",
                v.rule.name(),
                v.premises.join(", "),
                v.conclusion
            )?;
        }
        if self.passed() {
            writeln!(f, "no violations")
        } else {
            writeln!(f, "{} violations", self.violations.len())
        }
    }
}

/// Formulas for sampling: knowledge-base subformulas and their single
/// negations, combined pairwise with `&` and `|` up to depth 2.
#[derive(Debug, Clone)]
pub struct FormulaPool {
    atoms: Vec<Formula>,
}

impl FormulaPool {
    pub fn for_engine(engine: &Engine) -> Self {
        let mut base: BTreeSet<Formula> = engine
            .kb()
            .variables()
            .iter()
            .map(|v| Formula::var(v))
            .collect();
        base.insert(Formula::top());
        for d in engine.kb().defaults() {
            base.insert(d.antecedent.clone());
            base.insert(d.consequent.clone());
        }
        let mut atoms: BTreeSet<Formula> = BTreeSet::new();
        for f in base {
            let negated = match &f {
                Formula::Not(inner) => (**inner).clone(),
                other => other.clone().not(),
            };
            atoms.insert(f);
            atoms.insert(negated);
        }
        Self {
            atoms: atoms.into_iter().collect(),
        }
    }

    pub fn atoms(&self) -> &[Formula] {
        &self.atoms
    }

    /// Draws a formula of combination depth at most `depth`.
    pub fn sample(&self, rng: &mut ChaCha8Rng, depth: usize) -> Formula {
        if depth == 0 || rng.gen_bool(0.3) {
            return self.atoms.choose(rng).expect("pool is never empty").clone();
        }
        let left = self.sample(rng, depth - 1);
        let right = self.sample(rng, depth - 1);
        let combined = if rng.gen_bool(0.5) {
            left.and(right)
        } else {
            left.or(right)
        };
        if rng.gen_bool(0.15) {
            combined.not()
        } else {
            combined
        }
    }

    /// All pool formulas up to depth 1, for exhaustive query corpora.
    pub fn pairs(&self) -> Vec<Formula> {
        let mut out = self.atoms.clone();
        for (i, x) in self.atoms.iter().enumerate() {
            for y in &self.atoms[i + 1..] {
                out.push(x.clone().and(y.clone()));
                out.push(x.clone().or(y.clone()));
            }
        }
        out
    }
}

/// A classically equivalent rewriting of `f`.
fn equivalent_rewrite(f: &Formula, choice: u8) -> Formula {
    match (choice % 5, f) {
        (0, _) => f.clone().not().not(),
        (1, _) => f.clone().and(f.clone()),
        (2, _) => f.clone().or(Formula::bottom()),
        (3, Formula::And(x, y)) => (**y).clone().and((**x).clone()),
        (3, Formula::Or(x, y)) => (**y).clone().or((**x).clone()),
        (3, Formula::Iff(x, y)) => (**y).clone().iff((**x).clone()),
        (4, Formula::And(x, y)) => (**x).clone().not().or((**y).clone().not()).not(),
        (4, Formula::Or(x, y)) => (**x).clone().not().and((**y).clone().not()).not(),
        (4, Formula::Implies(x, y)) => (**x).clone().not().or((**y).clone()),
        _ => Formula::top().and(f.clone()),
    }
}

/// Number of `c` tried per sampled `(a, b)` for rational monotonicity.
const RM_TRIALS: usize = 8;

struct Relation<'e> {
    engine: &'e Engine,
    closure: Closure,
    memo: HashMap<(Formula, Formula), bool>,
}

impl Relation<'_> {
    fn holds(&mut self, a: &Formula, b: &Formula) -> Result<bool> {
        if let Some(&v) = self.memo.get(&(a.clone(), b.clone())) {
            return Ok(v);
        }
        let v = match self.closure {
            Closure::Lex => self.engine.lex_entails_model(a, b)?,
            Closure::Rational => self.engine.rational_entails(a, b),
            Closure::Variant => self.engine.variant_entails(a, b)?,
            Closure::Poole => self.engine.poole_entails(a, b)?,
        };
        self.memo.insert((a.clone(), b.clone()), v);
        Ok(v)
    }
}

fn assertion(a: &Formula, b: &Formula) -> String {
    format!("{a} |~ {b}")
}

fn not_assertion(a: &Formula, b: &Formula) -> String {
    format!("not {a} |~ {b}")
}

/// Checks the rules for the lexicographic closure.
pub fn check_properties(engine: &Engine, n_samples: usize, seed: u64) -> Result<PropertyReport> {
    check_relation(engine, Closure::Lex, n_samples, seed)
}

/// Samples `n_samples` triples `(a, b, c)` from the formula pool and tests
/// every rule instance they induce against `closure`. Rational monotonicity
/// gets extra `c` candidates per triple.
pub fn check_relation(
    engine: &Engine,
    closure: Closure,
    n_samples: usize,
    seed: u64,
) -> Result<PropertyReport> {
    let pool = FormulaPool::for_engine(engine);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rel = Relation {
        engine,
        closure,
        memo: HashMap::new(),
    };
    let mut applicable: BTreeMap<Rule, usize> = Rule::ALL.iter().map(|r| (*r, 0)).collect();
    let mut violations = Vec::new();

    for _ in 0..n_samples {
        let a = pool.sample(&mut rng, 2);
        let b = pool.sample(&mut rng, 2);
        let c = pool.sample(&mut rng, 2);
        let mut record = |rule: Rule,
                          premises: bool,
                          conclusion: bool,
                          text: &dyn Fn() -> (Vec<String>, String)| {
            if premises {
                *applicable.get_mut(&rule).unwrap() += 1;
                if !conclusion {
                    let (premises, conclusion) = text();
                    violations.push(Violation {
                        rule,
                        premises,
                        conclusion,
                    });
                }
            }
        };

        let ab = rel.holds(&a, &b)?;
        let ac = rel.holds(&a, &c)?;

        record(Rule::Reflexivity, true, rel.holds(&a, &a)?, &|| {
            (vec![], assertion(&a, &a))
        });

        let a2 = equivalent_rewrite(&a, rng.gen());
        let a2b = rel.holds(&a2, &b)?;
        record(Rule::LeftLogicalEquivalence, ab, a2b, &|| {
            (
                vec![assertion(&a, &b), format!("{a} == {a2}")],
                assertion(&a2, &b),
            )
        });
        record(Rule::LeftLogicalEquivalence, a2b, ab, &|| {
            (
                vec![assertion(&a2, &b), format!("{a2} == {a}")],
                assertion(&a, &b),
            )
        });

        let weaker = b.clone().or(c.clone());
        record(
            Rule::RightWeakening,
            ab,
            ab && rel.holds(&a, &weaker)?,
            &|| (vec![assertion(&a, &b)], assertion(&a, &weaker)),
        );
        if ab && sat::entails(std::slice::from_ref(&b), &c) {
            record(Rule::RightWeakening, true, ac, &|| {
                (
                    vec![assertion(&a, &b), format!("{b} |= {c}")],
                    assertion(&a, &c),
                )
            });
        }

        let both = b.clone().and(c.clone());
        if ab && ac {
            record(Rule::And, true, rel.holds(&a, &both)?, &|| {
                (
                    vec![assertion(&a, &b), assertion(&a, &c)],
                    assertion(&a, &both),
                )
            });
            let strengthened = a.clone().and(b.clone());
            record(
                Rule::CautiousMonotonicity,
                true,
                rel.holds(&strengthened, &c)?,
                &|| {
                    (
                        vec![assertion(&a, &b), assertion(&a, &c)],
                        assertion(&strengthened, &c),
                    )
                },
            );
        }

        if ac && rel.holds(&b, &c)? {
            let either = a.clone().or(b.clone());
            record(Rule::Or, true, rel.holds(&either, &c)?, &|| {
                (
                    vec![assertion(&a, &c), assertion(&b, &c)],
                    assertion(&either, &c),
                )
            });
        }

        if ab {
            let mut candidates = vec![c.clone()];
            candidates.extend((1..RM_TRIALS).map(|_| pool.sample(&mut rng, 2)));
            for c in candidates {
                let not_c = c.clone().not();
                if !rel.holds(&a, &not_c)? {
                    let strengthened = a.clone().and(c.clone());
                    record(
                        Rule::RationalMonotonicity,
                        true,
                        rel.holds(&strengthened, &b)?,
                        &|| {
                            (
                                vec![assertion(&a, &b), not_assertion(&a, &not_c)],
                                assertion(&strengthened, &b),
                            )
                        },
                    );
                }
            }
        }
    }

    Ok(PropertyReport {
        closure,
        samples: n_samples,
        seed,
        applicable,
        violations,
    })
}

/// Runs the lexicographic query through both routes and reports whether
/// they agree.
pub fn routes_agree(engine: &Engine, a: &Formula, b: &Formula) -> Result<bool> {
    match engine.lex_entails(a, b, Method::Both) {
        Ok(_) => Ok(true),
        Err(crate::Error::Invariant(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

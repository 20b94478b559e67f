//! Query dispatch and the `QueryResult` report shared by all closures.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::closure_lex::SeriousnessTuple;
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::formula::{parse_formula, Formula, World};
use crate::kb::DefaultId;
use crate::ranking::Rank;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Closure {
    Lex,
    Rational,
    Variant,
    Poole,
}

impl Closure {
    pub const ALL: [Closure; 4] = [
        Closure::Lex,
        Closure::Rational,
        Closure::Variant,
        Closure::Poole,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Closure::Lex => "lex",
            Closure::Rational => "rational",
            Closure::Variant => "variant",
            Closure::Poole => "poole",
        }
    }
}

impl fmt::Display for Closure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Closure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Closure::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown closure `{s}`")))
    }
}

/// Which decision route(s) to run.
///
/// For rational closure, `Model` is the coarse ranked model and `Bases`
/// is rank comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Model,
    Bases,
    #[default]
    Both,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "model" => Ok(Method::Model),
            "bases" => Ok(Method::Bases),
            "both" => Ok(Method::Both),
            _ => Err(Error::InvalidParameter(format!("unknown method `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Explanation {
    /// Least-serious antecedent worlds (counterexamples first when the
    /// verdict is false), truncated to a few entries.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal_worlds: Option<Vec<World>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal_world_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bases: Option<Vec<Vec<DefaultId>>>,
    /// Violation tuple of the minimal antecedent worlds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tuple: Option<SeriousnessTuple>,
    /// Seriousness tuple shared by all bases.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_tuple: Option<SeriousnessTuple>,
    /// Rank of `a & !b`, for rational closure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_of_exception: Option<Rank>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model_verdict: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bases_verdict: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QueryResult {
    pub query: String,
    pub closure: Closure,
    pub verdict: bool,
    pub rank_of_antecedent: Rank,
    pub method: String,
    pub explanation: Explanation,
}

/// Splits `ANTECEDENT |~ CONSEQUENT`.
pub fn parse_query(text: &str) -> Result<(Formula, Formula)> {
    let Some(split) = text.find("|~") else {
        return Err(Error::Syntax {
            position: 0,
            message: "expected `ANTECEDENT |~ CONSEQUENT`".into(),
        });
    };
    let shift = |e: Error, by: usize| match e {
        Error::Syntax { position, message } => Error::Syntax {
            position: position + by,
            message,
        },
        other => other,
    };
    let a = parse_formula(&text[..split])?;
    let b = parse_formula(&text[split + 2..]).map_err(|e| shift(e, split + 2))?;
    Ok((a, b))
}

fn disagreement(closure: Closure, a: &Formula, b: &Formula, model: bool, other: bool) -> Error {
    Error::Invariant(format!(
        "{closure} routes disagree on `{a} |~ {b}`: model says {model}, the other route says {other}"
    ))
}

impl Engine {
    pub fn query(
        &self,
        closure: Closure,
        a: &Formula,
        b: &Formula,
        method: Method,
    ) -> Result<QueryResult> {
        let rank = self.rank_of(a);
        let mut result = QueryResult {
            query: format!("{a} |~ {b}"),
            closure,
            verdict: false,
            rank_of_antecedent: rank,
            method: String::new(),
            explanation: Explanation::default(),
        };
        match closure {
            Closure::Lex => self.fill_lex(&mut result, a, b, method)?,
            Closure::Variant if rank == Rank::Infinite => {
                result.verdict = true;
                result.method = "rank".into();
            }
            Closure::Variant => self.fill_lex(&mut result, a, b, method)?,
            Closure::Rational => self.fill_rational(&mut result, a, b, method)?,
            Closure::Poole => {
                let answer = self.poole(a, b)?;
                result.verdict = answer.verdict;
                result.method = "bases".into();
                result.explanation.bases = Some(answer.bases);
            }
        }
        Ok(result)
    }

    /// Lexicographic query through the chosen route(s).
    pub fn lex_entails(&self, a: &Formula, b: &Formula, method: Method) -> Result<QueryResult> {
        self.query(Closure::Lex, a, b, method)
    }

    fn fill_lex(
        &self,
        result: &mut QueryResult,
        a: &Formula,
        b: &Formula,
        method: Method,
    ) -> Result<()> {
        let model = match method {
            Method::Model | Method::Both => Some(self.lex_model(a, b)?),
            Method::Bases => None,
        };
        let bases = match method {
            Method::Bases | Method::Both => Some(self.lex_bases(a, b)?),
            Method::Model => None,
        };
        let ex = &mut result.explanation;
        if let Some(m) = &model {
            ex.model_verdict = Some(m.verdict);
            ex.tuple = m.tuple.clone();
            ex.minimal_world_count = Some(m.minimal_world_count);
            ex.minimal_worlds = Some(m.minimal_worlds.clone());
        }
        if let Some(bs) = &bases {
            ex.bases_verdict = Some(bs.verdict);
            ex.base_tuple = bs.bases.first().map(|b| b.tuple.clone());
            ex.bases = Some(bs.bases.iter().map(|b| b.members.clone()).collect());
        }
        result.method = match method {
            Method::Model => "model",
            Method::Bases => "bases",
            Method::Both => "both",
        }
        .into();
        match (model, bases) {
            (Some(m), Some(bs)) => {
                if m.verdict != bs.verdict {
                    return Err(disagreement(result.closure, a, b, m.verdict, bs.verdict));
                }
                // The least-serious worlds violate exactly what the bases leave out.
                let complement = bs.bases.first().map(|base| {
                    let sizes = self.level_sizes();
                    let counts = sizes
                        .iter()
                        .zip(base.tuple.counts())
                        .map(|(d, n)| d - n)
                        .collect();
                    SeriousnessTuple::new(counts)
                });
                if complement != m.tuple {
                    return Err(Error::Invariant(format!(
                        "minimal-world tuple {:?} does not complement the base tuple on `{a} |~ {b}`",
                        m.tuple
                    )));
                }
                result.verdict = m.verdict;
            }
            (Some(m), None) => result.verdict = m.verdict,
            (None, Some(bs)) => result.verdict = bs.verdict,
            (None, None) => unreachable!(),
        }
        Ok(())
    }

    fn fill_rational(
        &self,
        result: &mut QueryResult,
        a: &Formula,
        b: &Formula,
        method: Method,
    ) -> Result<()> {
        let by_rank = self.rational_entails(a, b);
        result.explanation.rank_of_exception = Some(self.rank_of(&a.clone().and(b.clone().not())));
        let finite = result.rank_of_antecedent.is_finite();
        match method {
            Method::Bases => {
                result.verdict = by_rank;
                result.method = "rank".into();
            }
            Method::Model => {
                result.verdict = self.rational_entails_ll_model(a, b)?;
                result.explanation.model_verdict = Some(result.verdict);
                result.method = "model".into();
            }
            Method::Both if !finite => {
                result.verdict = by_rank;
                result.method = "rank".into();
            }
            Method::Both => {
                let by_model = self.rational_entails_ll_model(a, b)?;
                if by_model != by_rank {
                    return Err(disagreement(Closure::Rational, a, b, by_model, by_rank));
                }
                result.explanation.model_verdict = Some(by_model);
                result.verdict = by_rank;
                result.method = "both".into();
            }
        }
        Ok(())
    }
}

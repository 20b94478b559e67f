#[path = "../common/mod.rs"]
mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use common::{eval, f, kb, Assignment, Oracle};
use lexclose::harness::{check_properties, check_relation, random_kb, FormulaPool, Rule};
use lexclose::{enumerate_worlds, violated_defaults, Closure, Engine, Formula, Method, Rank};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

struct Case {
    name: String,
    engine: Engine,
    oracle: Oracle,
    queries: Vec<(Formula, Formula)>,
}

impl Case {
    fn new(name: impl Into<String>, text: &str, queries: Vec<(Formula, Formula)>) -> Self {
        let kb = kb(text);
        let oracle = Oracle::new(&kb);
        Case {
            name: name.into(),
            engine: Engine::new(kb),
            oracle,
            queries,
        }
    }
}

const GOLDEN: [(&str, &str); 15] = [
    ("swedes", ": p\n: q"),
    ("musicians", ": p\n: q\n: r"),
    ("exceptions", ": p\n: q\n!p : !q"),
    ("penguins", "p : q\nr : p\nr : !q"),
    ("winged penguins", "b : w\nb : f\np : b\np : !f"),
    ("exceptions again", ": r\n: p\n: q\n!p : !q\n!p : !r"),
    ("typicality", "p : x"),
    ("independence", "p : x\np : !q"),
    ("priority", "p : x\np & q : !x\np : y"),
    ("specificity", "p : x\np & q : !x"),
    ("conflict", "p : x\n: q\nq : !x"),
    ("single", "a : b"),
    ("self-defeating", "e & !b : b"),
    ("conjunction", ": p & q"),
    ("conjunction plus", ": p & q\n: p"),
];

fn query_pool(engine: &Engine, seed: u64, n: usize) -> Vec<(Formula, Formula)> {
    let pool = FormulaPool::for_engine(engine);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![
        (Formula::top(), Formula::bottom()),
        (f("p & !p"), Formula::bottom()),
        (f("fresh"), Formula::top()),
    ];
    while out.len() < n {
        let depth = rng.gen_range(0..=2);
        let a = pool.sample(&mut rng, depth);
        let b = pool.sample(&mut rng, 1);
        out.push((a.clone(), b));
        if out.len() < n {
            out.push((a, Formula::bottom()));
        }
    }
    out
}

fn corpus() -> Vec<Case> {
    let mut cases: Vec<Case> = GOLDEN
        .iter()
        .enumerate()
        .map(|(i, (name, text))| {
            let e = Engine::new(kb(text));
            let queries = query_pool(&e, 1000 + i as u64, 24);
            Case::new(*name, text, queries)
        })
        .collect();
    for seed in 0..200u64 {
        let n_defaults = 1 + (seed % 5) as usize;
        let n_vars = 1 + (seed / 5 % 5) as usize;
        let text = random_kb(seed, n_defaults, n_vars, 2)
            .expect("random kb")
            .to_string();
        let e = Engine::new(kb(&text));
        let queries = query_pool(&e, seed, 24);
        cases.push(Case::new(format!("random#{seed}"), &text, queries));
    }
    cases
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn to_assignment(w: &lexclose::World) -> Assignment {
    w.iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Engine-side level listing: worlds over the KB variables keyed by tuple.
fn engine_levels(e: &Engine) -> BTreeMap<Vec<u32>, Vec<Assignment>> {
    let mut out: BTreeMap<Vec<u32>, Vec<Assignment>> = BTreeMap::new();
    for w in enumerate_worlds(&e.kb().variables()).unwrap() {
        let violated = violated_defaults(&w, e.kb()).unwrap();
        let tuple = e.seriousness(violated).unwrap();
        out.entry(tuple.counts().to_vec())
            .or_default()
            .push(to_assignment(&w));
    }
    out
}

fn check_listing(name: &str, text: &str, expected: &[([u32; 3], &str)]) -> Result<(), String> {
    let e = Engine::new(kb(text));
    let oracle = Oracle::new(e.kb());
    let mut ours = engine_levels(&e);
    let mut reference = oracle.levels();
    for levels in [&mut ours, &mut reference] {
        for ws in levels.values_mut() {
            ws.sort();
        }
    }
    ensure(ours == reference, || {
        format!("{name}: engine levels differ from the oracle")
    })?;
    let total: usize = expected
        .iter()
        .map(|(tuple, desc)| {
            let mut want: Vec<Assignment> = common::assignments(&oracle.kb_vars)
                .into_iter()
                .filter(|w| eval(&f(desc), w))
                .collect();
            want.sort();
            let got = ours.get(&tuple[..]).cloned().unwrap_or_default();
            if got != want {
                return Err(format!(
                    "{name}: level {tuple:?} should hold exactly the {desc} worlds"
                ));
            }
            Ok(want.len())
        })
        .sum::<Result<usize, String>>()?;
    ensure(total == 1 << oracle.kb_vars.len(), || {
        format!("{name}: some worlds fall outside the listed levels")
    })
}

fn golden() -> Check {
    let mut checked = 0;
    let mut lex = |text: &str, a: &str, b: &str, want: bool| -> Result<(), String> {
        let e = Engine::new(kb(text));
        let r = e
            .query(Closure::Lex, &f(a), &f(b), Method::Both)
            .map_err(|err| err.to_string())?;
        checked += 1;
        ensure(r.verdict == want, || {
            format!("{{{text}}}: {a} |~ {b} should be {want}")
        })
    };
    let swedes = ": p\n: q";
    lex(swedes, "!p | !q", "!(p <-> q)", true)?;
    lex(swedes, "true", "p", true)?;
    let musicians = ": p\n: q\n: r";
    lex(musicians, "(!p & !q) | !r", "p & q & !r", true)?;
    let c = "(p & !r) | (!p & r)";
    let d = "(q & r) | (!q & !r)";
    lex(musicians, c, "q", true)?;
    lex(musicians, c, d, false)?;
    lex(musicians, &format!("({c}) & !({d})"), "q", true)?;
    lex(musicians, &format!("({c}) & !({d})"), "p & !r", true)?;
    lex(": p\n: q\n!p : !q", "!p", "!q", true)?;
    let penguins = "p : q\nr : p\nr : !q";
    lex(penguins, "r", "!q", true)?;
    lex(penguins, "p & r", "!q", true)?;
    lex(penguins, "r", "q", false)?;
    lex(penguins, "true", "!r", true)?;
    let winged = "b : w\nb : f\np : b\np : !f";
    lex(winged, "p & (f | !w)", "b", true)?;
    lex(winged, "p & (f | !w)", "b & !f & !w", true)?;
    let again = ": r\n: p\n: q\n!p : !q\n!p : !r";
    lex(again, "!p & q", "!r", true)?;
    lex("p : x", "p & q", "x", true)?;
    lex("p : x\np : !q", "p & q", "x", true)?;
    lex("p : x\np & q : !x\np : y", "p & q", "y", true)?;
    lex("p : x\np & q : !x", "p & q & r", "!x", true)?;
    lex("p : x\n: q\nq : !x", "p & q", "x", true)?;
    lex("a : b", "!b", "!a", true)?;
    lex("a : b", "true", "a -> b", true)?;
    lex("e & !b : b", "e & !b", "b", false)?;
    lex(": p & q", "!p | !q", "p", false)?;
    lex(": p & q\n: p", "!p | !q", "p", true)?;
    lex(": p\n: q", "!p", "q", true)?;
    lex(": p\n: q\n: p <-> q", "!p", "q", false)?;

    let other =
        |closure: Closure, text: &str, a: &str, b: &str, want: bool| -> Result<(), String> {
            let e = Engine::new(kb(text));
            let r = e
                .query(closure, &f(a), &f(b), Method::Both)
                .map_err(|err| err.to_string())?;
            ensure(r.verdict == want, || {
                format!("{closure} {{{text}}}: {a} |~ {b} should be {want}")
            })
        };
    other(Closure::Rational, swedes, "!p | !q", "!(p <-> q)", false)?;
    other(
        Closure::Rational,
        "p : x\np & q : !x\np : y",
        "p & q",
        "y",
        false,
    )?;
    other(Closure::Variant, "e & !b : b", "e & !b", "b", true)?;

    let e = Engine::new(kb(again));
    ensure(e.rank_of(&f("!p & q")) == Rank::Finite(2), || {
        "rank of !p & q should be 2".into()
    })?;

    let e = Engine::new(kb(winged));
    let bases = e
        .compute_bases(&f("p & (f | !w)"))
        .map_err(|err| err.to_string())?;
    let members: Vec<Vec<usize>> = bases
        .iter()
        .map(|b| b.members.iter().map(|d| d.0).collect())
        .collect();
    ensure(members == vec![vec![2, 3]], || {
        format!("winged penguins bases: {members:?}")
    })?;
    let e = Engine::new(kb(musicians));
    let bases = e
        .compute_bases(&f("(!p & !q) | !r"))
        .map_err(|err| err.to_string())?;
    let members: Vec<Vec<usize>> = bases
        .iter()
        .map(|b| b.members.iter().map(|d| d.0).collect())
        .collect();
    ensure(members == vec![vec![0, 1]], || {
        format!("musicians bases: {members:?}")
    })?;

    check_listing(
        "exceptions",
        ": p\n: q\n!p : !q",
        &[
            ([0, 0, 0], "p & q"),
            ([0, 0, 1], "p & !q"),
            ([0, 0, 2], "!p & !q"),
            ([0, 1, 0], "false"),
            ([0, 1, 1], "!p & q"),
            ([0, 1, 2], "false"),
        ],
    )?;
    check_listing(
        "penguins",
        penguins,
        &[
            ([0, 0, 0], "(p -> q) & !r"),
            ([0, 0, 1], "p & !q"),
            ([0, 1, 0], "r & p & q | r & !p & !q"),
            ([0, 1, 1], "false"),
            ([0, 2, 0], "r & q & !p"),
            ([0, 2, 1], "false"),
        ],
    )?;
    Ok(format!(
        "{checked} lexicographic verdicts, 3 other closures, 2 base sets, 2 level listings"
    ))
}

fn routes_agree(corpus: &[Case]) -> Check {
    let mut n = 0;
    for case in corpus {
        for (a, b) in &case.queries {
            let model = case
                .engine
                .lex_entails_model(a, b)
                .map_err(|e| e.to_string())?;
            let bases = case
                .engine
                .lex_entails_bases(a, b)
                .map_err(|e| e.to_string())?;
            let both = case.engine.query(Closure::Lex, a, b, Method::Both);
            ensure(model == bases && both.is_ok(), || {
                format!("{}: {a} |~ {b}: model {model}, bases {bases}", case.name)
            })?;
            ensure(
                model == case.oracle.lex(a, b) && bases == case.oracle.lex_by_bases(a, b),
                || {
                    format!(
                        "{}: {a} |~ {b} disagrees with the brute-force oracle",
                        case.name
                    )
                },
            )?;
            n += 1;
        }
    }
    Ok(format!("{n} queries over {} knowledge bases", corpus.len()))
}

fn rational_routes_agree(corpus: &[Case]) -> Check {
    let mut n = 0;
    for case in corpus {
        for (a, b) in &case.queries {
            if !case.engine.rank_of(a).is_finite() {
                continue;
            }
            let by_rank = case.engine.rational_entails(a, b);
            let by_model = case
                .engine
                .rational_entails_ll_model(a, b)
                .map_err(|e| e.to_string())?;
            ensure(
                by_rank == by_model && by_rank == case.oracle.rational(a, b),
                || {
                    format!(
                        "{}: {a} |~ {b}: rank {by_rank}, model {by_model}",
                        case.name
                    )
                },
            )?;
            n += 1;
        }
    }
    Ok(format!("{n} finite-rank queries"))
}

fn containment(corpus: &[Case]) -> Check {
    let (mut contained, mut strict) = (0, 0);
    for case in corpus {
        for (a, b) in &case.queries {
            let rational = case.engine.rational_entails(a, b);
            let lex = case
                .engine
                .lex_entails_model(a, b)
                .map_err(|e| e.to_string())?;
            let variant = case
                .engine
                .variant_entails(a, b)
                .map_err(|e| e.to_string())?;
            if rational && case.engine.rank_of(a).is_finite() {
                ensure(lex, || {
                    format!("{}: {a} |~ {b} rational but not lexicographic", case.name)
                })?;
                contained += 1;
            }
            ensure(!rational || variant, || {
                format!("{}: {a} |~ {b} rational but not variant", case.name)
            })?;
            if variant && !rational {
                strict += 1;
            }
        }
    }
    Ok(format!(
        "{contained} rational conclusions kept, {strict} variant-only conclusions"
    ))
}

fn rationality(corpus: &[Case]) -> Check {
    let golden = &corpus[..GOLDEN.len()];
    let random = corpus[GOLDEN.len()..].iter().take(50);
    let mut kbs = 0;
    let mut applicable = 0;
    for (i, case) in golden.iter().chain(random).enumerate() {
        let report = check_properties(&case.engine, 500, i as u64).map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("{}:\n{report}", case.name))?;
        applicable += report.applicable.values().sum::<usize>();
        kbs += 1;
    }
    Ok(format!(
        "{kbs} knowledge bases x 500 samples, {applicable} rule instances, no violations"
    ))
}

fn consistency(corpus: &[Case]) -> Check {
    let mut n = 0;
    for case in corpus {
        for (a, _) in &case.queries {
            let lex = case
                .engine
                .lex_entails_model(a, &Formula::bottom())
                .map_err(|e| e.to_string())?;
            ensure(lex == !case.oracle.satisfiable(a), || {
                format!("{}: {a} |~ false is {lex}", case.name)
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} antecedents"))
}

fn poole() -> Check {
    let e = Engine::new(kb(": p\n: q\n: r"));
    let oracle = Oracle::new(e.kb());
    let c = f("(!p & !q) | !r");
    let cases = [
        (c.clone(), f("p"), false),
        (c.clone(), f("p <-> q"), true),
        (c.clone().and(f("!p")), f("p <-> q"), false),
    ];
    for (a, b, want) in &cases {
        let got = e.poole_entails(a, b).map_err(|e| e.to_string())?;
        ensure(got == *want && oracle.poole(a, b) == *want, || {
            format!("poole {a} |~ {b}: got {got}, want {want}")
        })?;
    }
    let report = check_relation(&e, Closure::Poole, 5000, 11).map_err(|e| e.to_string())?;
    let rm = report.violations_of(Rule::RationalMonotonicity).count();
    ensure(rm > 0, || "no rational monotonicity violation found".into())?;
    let first = report
        .violations_of(Rule::RationalMonotonicity)
        .next()
        .unwrap();
    Ok(format!(
        "3 verdicts; {rm} rational monotonicity violations, e.g. {} => {}",
        first.premises.join(", "),
        first.conclusion
    ))
}

fn bases_are_full(corpus: &[Case]) -> Check {
    let mut bases_seen = 0;
    for case in corpus {
        for (a, _) in &case.queries {
            let bases = case.engine.compute_bases(a).map_err(|e| e.to_string())?;
            let members: Vec<Vec<usize>> = bases
                .iter()
                .map(|b| b.members.iter().map(|d| d.0).collect())
                .collect();
            ensure(members == case.oracle.bases(a), || {
                format!("{}: bases for {a} differ from the oracle", case.name)
            })?;
            if let Some(r) = case.oracle.rank_of(a) {
                for base in &members {
                    let missing = (0..case.oracle.rank.len()).find(|&d| {
                        case.oracle.rank[d].is_none_or(|rd| rd >= r) && !base.contains(&d)
                    });
                    ensure(missing.is_none(), || {
                        format!(
                            "{}: base {base:?} for {a} (rank {r}) misses default {missing:?}",
                            case.name
                        )
                    })?;
                }
            }
            bases_seen += members.len();
        }
    }
    Ok(format!("{bases_seen} bases"))
}

fn main() -> ExitCode {
    let started = Instant::now();
    let corpus = corpus();
    let criteria: Vec<Criterion> = vec![
        ("golden corpus", Box::new(golden)),
        ("model and bases agree", Box::new(|| routes_agree(&corpus))),
        (
            "rank comparison and coarse model agree",
            Box::new(|| rational_routes_agree(&corpus)),
        ),
        (
            "rational within lexicographic, variant",
            Box::new(|| containment(&corpus)),
        ),
        (
            "rationality of the lexicographic closure",
            Box::new(|| rationality(&corpus)),
        ),
        (
            "consistency preservation",
            Box::new(|| consistency(&corpus)),
        ),
        ("inclusion-maximal contrast", Box::new(poole)),
        (
            "bases contain the blocks above the antecedent",
            Box::new(|| bases_are_full(&corpus)),
        ),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match check() {
            Ok(detail) => println!("PASS {}. {name}: {detail} ({:.1?})", i + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1?}",
        criteria.len() - failed,
        criteria.len(),
        started.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

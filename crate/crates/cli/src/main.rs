use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lexclose::harness::check_properties;
use lexclose::{parse_kb, parse_query, Closure, DefaultId, Engine, Error, Method, QueryResult};

#[derive(Parser)]
#[command(
    name = "lexclose",
    version,
    about = "Lexicographic and rational closure of normal defaults"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the rank partition and order of a knowledge base.
    Rank {
        kb: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide `ANTECEDENT |~ CONSEQUENT`. Exits 0 when entailed, 1 when not.
    Query {
        kb: PathBuf,
        query: String,
        #[arg(long, value_enum, default_value_t = ClosureArg::Lex)]
        closure: ClosureArg,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        #[arg(long)]
        json: bool,
        /// Show minimal worlds, bases and tuples.
        #[arg(long)]
        explain: bool,
    },
    /// Decide a query under every closure.
    Compare {
        kb: PathBuf,
        query: String,
        #[arg(long)]
        json: bool,
    },
    /// Sample rule instances and check the lexicographic closure against them.
    Selfcheck {
        kb: PathBuf,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ClosureArg {
    Lex,
    Rational,
    Variant,
    Poole,
}

impl From<ClosureArg> for Closure {
    fn from(c: ClosureArg) -> Self {
        match c {
            ClosureArg::Lex => Closure::Lex,
            ClosureArg::Rational => Closure::Rational,
            ClosureArg::Variant => Closure::Variant,
            ClosureArg::Poole => Closure::Poole,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Model,
    Bases,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Model => Method::Model,
            MethodArg::Bases => Method::Bases,
            MethodArg::Both => Method::Both,
        }
    }
}

enum Failure {
    Usage(String),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Engine(Error::CapExceeded { .. }) => 3,
            Failure::Engine(
                Error::Invariant(_) | Error::ForeignDefault(_) | Error::LengthMismatch { .. },
            ) => 4,
            Failure::Engine(_) => 2,
        }
    }
}

fn load(path: &Path) -> Result<Engine, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let kb = parse_kb(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(Engine::new(kb))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn describe(engine: &Engine, ids: &[DefaultId]) -> String {
    let items: Vec<String> = ids
        .iter()
        .map(|id| {
            engine
                .kb()
                .get(*id)
                .map_or_else(|| id.to_string(), ToString::to_string)
        })
        .collect();
    format!("{{ {} }}", items.join(", "))
}

fn render_rank(engine: &Engine) -> String {
    let p = engine.partition();
    let mut out = String::new();
    for (i, block) in p.blocks().iter().enumerate() {
        writeln!(out, "D_{i} = {}", describe(engine, block)).unwrap();
    }
    if !p.infinite().is_empty() {
        writeln!(out, "D_inf = {}", describe(engine, p.infinite())).unwrap();
    }
    writeln!(out, "order {}", p.order()).unwrap();
    out
}

fn render_query(engine: &Engine, r: &QueryResult, explain: bool) -> String {
    let mut out = format!(
        "{} under {} closure: {}\n",
        r.query,
        r.closure,
        if r.verdict {
            "entailed"
        } else {
            "not entailed"
        }
    );
    if !explain {
        return out;
    }
    let ex = &r.explanation;
    writeln!(out, "rank of antecedent: {}", r.rank_of_antecedent).unwrap();
    writeln!(out, "method: {}", r.method).unwrap();
    if let Some(rank) = ex.rank_of_exception {
        writeln!(out, "rank of antecedent & !consequent: {rank}").unwrap();
    }
    if let Some(worlds) = &ex.minimal_worlds {
        let count = ex.minimal_world_count.unwrap_or(worlds.len());
        match &ex.tuple {
            Some(t) => writeln!(out, "minimal worlds ({count}, tuple {t}):").unwrap(),
            None => writeln!(out, "no antecedent worlds").unwrap(),
        }
        for w in worlds {
            writeln!(out, "  {w}").unwrap();
        }
        if count > worlds.len() {
            writeln!(out, "  ... {} more", count - worlds.len()).unwrap();
        }
    }
    if let Some(bases) = &ex.bases {
        match &ex.base_tuple {
            Some(t) => writeln!(out, "bases ({}, tuple {t}):", bases.len()).unwrap(),
            None => writeln!(out, "bases ({}):", bases.len()).unwrap(),
        }
        for b in bases {
            writeln!(out, "  {}", describe(engine, b)).unwrap();
        }
    }
    out
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Rank { kb, json } => {
            let engine = load(&kb)?;
            if json {
                println!("{}", to_json(&engine.partition().report(engine.kb())));
            } else {
                print!("{}", render_rank(&engine));
            }
            Ok(0)
        }
        Command::Query {
            kb,
            query,
            closure,
            method,
            json,
            explain,
        } => {
            let engine = load(&kb)?;
            let (a, b) = parse_query(&query).map_err(|e| Failure::Usage(format!("query: {e}")))?;
            let result = engine.query(closure.into(), &a, &b, method.into())?;
            if json {
                println!("{}", to_json(&result));
            } else {
                print!("{}", render_query(&engine, &result, explain));
            }
            Ok(if result.verdict { 0 } else { 1 })
        }
        Command::Compare { kb, query, json } => {
            let engine = load(&kb)?;
            let (a, b) = parse_query(&query).map_err(|e| Failure::Usage(format!("query: {e}")))?;
            let results = Closure::ALL
                .into_iter()
                .map(|c| engine.query(c, &a, &b, Method::Both))
                .collect::<Result<Vec<_>, _>>()?;
            if json {
                println!("{}", to_json(&results));
            } else {
                println!("{a} |~ {b}");
                for r in &results {
                    println!("  {:<9}{}", r.closure.name(), r.verdict);
                }
            }
            Ok(0)
        }
        Command::Selfcheck {
            kb,
            samples,
            seed,
            json,
        } => {
            let engine = load(&kb)?;
            let report = check_properties(&engine, samples, seed)?;
            if json {
                println!("{}", to_json(&report));
            } else {
                print!("{report}");
            }
            Ok(if report.passed() { 0 } else { 4 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            match &failure {
                Failure::Usage(msg) => eprintln!("error: {msg}"),
                Failure::Engine(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(failure.exit_code())
        }
    }
}

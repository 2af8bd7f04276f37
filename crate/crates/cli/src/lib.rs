//! The `alt1-unify` command line.
//!
//! Exit codes: `0` for an affirmative answer or success, `1` for a negative
//! answer, `2` for usage, parse and budget errors.

use std::ffi::OsString;
use std::io::Write;

use alt1_unify::chains::{Budget, LogicParams};
use alt1_unify::formula::{parse, render, Formula, Substitution};
use alt1_unify::morphisms::ChainMap;
use alt1_unify::simplify::simplify;
use alt1_unify::unification::{admissible, find_ground_unifier, mgu, reduce_unifier, UnifProblem};
use alt1_unify::Error;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "alt1-unify",
    version,
    about = "Unification in the modal logics Alt1 + []^d false"
)]
struct Cli {
    #[command(flatten)]
    options: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Options {
    /// Depth bound d (at least 2).
    #[arg(long, global = true, default_value_t = 2)]
    depth: usize,
    /// Variable count n; defaults to the largest index in the input.
    #[arg(long, global = true)]
    vars: Option<usize>,
    /// Cap on exhaustive search candidates.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Cap on materialized chain spaces.
    #[arg(long, global = true)]
    max_chains: Option<usize>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for candidate enumeration.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether FORMULA has a unifier.
    Check { formula: String },
    /// Decide whether FORMULA is a theorem.
    Valid { formula: String },
    /// Decide whether two formulas are equivalent.
    Equiv { left: String, right: String },
    /// Compute a most general unifier of FORMULA.
    Mgu { formula: String },
    /// Reduce a unifier to one over n variables that is at least as general.
    Reduce {
        formula: String,
        /// The unifier, as `x1:=F; x2:=G`.
        #[arg(long)]
        unifier: String,
        /// Also print the staged chain map.
        #[arg(long)]
        dump_morphism: bool,
    },
    /// Decide whether PREMISE / CONCLUSION is an admissible rule.
    Admissible { premise: String, conclusion: String },
    /// List all chains, or those satisfying FORMULA.
    Chains { formula: Option<String> },
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CliConfig {
    pub params: LogicParams,
    pub json: bool,
}

impl CliConfig {
    /// `n` is `--vars` if given, else the largest variable index among
    /// `formulas` (at least 1).
    fn new(options: &Options, formulas: &[&Formula]) -> Result<Self, Error> {
        let used = formulas.iter().map(|f| f.max_var()).max().unwrap_or(0);
        let n = options.vars.unwrap_or(used.max(1));
        for f in formulas {
            f.check_width(n)?;
        }
        let defaults = Budget::default();
        let budget = Budget {
            max_chains: options.max_chains.unwrap_or(defaults.max_chains),
            max_candidates: options.budget.unwrap_or(defaults.max_candidates),
        };
        let params = LogicParams::new(n, options.depth)?
            .with_budget(budget)
            .with_threads(options.threads);
        Ok(CliConfig {
            params,
            json: options.json,
        })
    }
}

/// Runs one invocation, writing answers to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_YES };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

#[derive(Debug)]
enum Failure {
    Library(Error),
    Io(std::io::Error),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Library(e) => write!(f, "{e}"),
            Failure::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn answer(yes: bool) -> i32 {
    if yes {
        EXIT_YES
    } else {
        EXIT_NO
    }
}

fn emit(out: &mut dyn Write, cfg: &CliConfig, value: Value, text: &str) -> Result<(), Failure> {
    if cfg.json {
        writeln!(out, "{value}")?;
    } else {
        writeln!(out, "{text}")?;
    }
    Ok(())
}

/// `{"x1": ..., "xn": ..., "k": k}`, images rendered as given.
pub fn substitution_json(s: &Substitution) -> Value {
    let mut map = Map::new();
    for (i, image) in s.images().iter().enumerate() {
        map.insert(format!("x{}", i + 1), Value::String(render(image)));
    }
    map.insert("k".into(), json!(s.codomain()));
    Value::Object(map)
}

/// Reads a substitution back from [`substitution_json`].
pub fn substitution_from_json(value: &Value) -> Option<Substitution> {
    let map = value.as_object()?;
    let k = map.get("k")?.as_u64()? as usize;
    let mut images = Vec::new();
    while let Some(image) = map.get(&format!("x{}", images.len() + 1)) {
        images.push(parse(image.as_str()?).ok()?);
    }
    if images.len() + 1 != map.len() {
        return None;
    }
    Substitution::new(k, images).ok()
}

/// Images replaced by short formulas with the same denotation.
fn readable(s: &Substitution, cfg: &CliConfig) -> Result<Substitution, Error> {
    let p = cfg.params.with_vars(s.codomain());
    let space = p.space()?;
    let images = s
        .images()
        .iter()
        .map(|f| Ok(simplify(&space.denote(f)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    Substitution::new(s.codomain(), images)
}

fn morphism_json(m: &ChainMap) -> Value {
    Value::Array(
        m.pairs()
            .into_iter()
            .map(|(a, b)| json!([a.to_string(), b.to_string()]))
            .collect(),
    )
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let options = &cli.options;
    match &cli.command {
        Command::Check { formula } => {
            let phi = parse(formula)?;
            let cfg = CliConfig::new(options, &[&phi])?;
            let u = UnifProblem::new(phi, cfg.params)?;
            let witness = find_ground_unifier(&u)?;
            let value = json!({
                "unifiable": witness.is_some(),
                "witness": witness.as_ref().map(substitution_json),
            });
            let text = match &witness {
                Some(w) => format!("unifiable\nwitness: {w}"),
                None => "not unifiable".into(),
            };
            emit(out, &cfg, value, &text)?;
            Ok(answer(witness.is_some()))
        }
        Command::Valid { formula } => {
            let phi = parse(formula)?;
            let cfg = CliConfig::new(options, &[&phi])?;
            let result = cfg.params.space()?.denote(&phi)?.is_full();
            let text = if result { "valid" } else { "not valid" };
            emit(out, &cfg, json!({ "result": result }), text)?;
            Ok(answer(result))
        }
        Command::Equiv { left, right } => {
            let (a, b) = (parse(left)?, parse(right)?);
            let cfg = CliConfig::new(options, &[&a, &b])?;
            let space = cfg.params.space()?;
            let result = space.denote(&a)? == space.denote(&b)?;
            let text = if result {
                "equivalent"
            } else {
                "not equivalent"
            };
            emit(out, &cfg, json!({ "result": result }), text)?;
            Ok(answer(result))
        }
        Command::Mgu { formula } => {
            let phi = parse(formula)?;
            let cfg = CliConfig::new(options, &[&phi])?;
            let best = mgu(&UnifProblem::new(phi, cfg.params)?)?;
            let value = json!({
                "unifiable": best.is_some(),
                "mgu": best.as_ref().map(substitution_json),
            });
            let text = match &best {
                Some(s) => format!("mgu: {s}"),
                None => "not unifiable".into(),
            };
            emit(out, &cfg, value, &text)?;
            Ok(answer(best.is_some()))
        }
        Command::Reduce {
            formula,
            unifier,
            dump_morphism,
        } => {
            let phi = parse(formula)?;
            let s = Substitution::parse(unifier)?;
            let cfg = CliConfig::new(options, &[&phi])?;
            let u = UnifProblem::new(phi, cfg.params)?;
            let w = match reduce_unifier(&s, &u) {
                Err(Error::NotUnifier) => {
                    emit(out, &cfg, json!({ "unifier": false }), "not a unifier")?;
                    return Ok(EXIT_NO);
                }
                other => other?,
            };
            let (tau, nu) = (readable(&w.tau, &cfg)?, readable(&w.nu, &cfg)?);
            let mut value = json!({
                "unifier": true,
                "tau": substitution_json(&tau),
                "nu": substitution_json(&nu),
            });
            let mut text = format!("tau: {tau}\nnu: {nu}");
            if *dump_morphism {
                value["morphism"] = morphism_json(&w.f);
                for (a, b) in w.f.pairs() {
                    text.push_str(&format!("\n{a} -> {b}"));
                }
            }
            emit(out, &cfg, value, &text)?;
            Ok(EXIT_YES)
        }
        Command::Admissible {
            premise,
            conclusion,
        } => {
            let (a, b) = (parse(premise)?, parse(conclusion)?);
            let cfg = CliConfig::new(options, &[&a, &b])?;
            let result = admissible(&a, &b, &cfg.params)?;
            let text = if result {
                "admissible"
            } else {
                "not admissible"
            };
            emit(out, &cfg, json!({ "result": result }), text)?;
            Ok(answer(result))
        }
        Command::Chains { formula } => {
            let phi = formula.as_deref().map(parse).transpose()?;
            let cfg = CliConfig::new(options, &phi.iter().collect::<Vec<_>>())?;
            let space = cfg.params.space()?;
            let set = match &phi {
                Some(f) => space.denote(f)?,
                None => space.full(),
            };
            let chains = set.to_strings();
            emit(out, &cfg, json!({ "chains": chains }), &chains.join("\n"))?;
            Ok(EXIT_YES)
        }
    }
}

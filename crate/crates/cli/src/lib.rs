//! The `htc` command line: solve, translate, compare and property-test theories.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use htc_core::checker::{
    context_family, equivalent, run_property_suite, stable_equivalent, strong_equiv_sampled,
    EquivReport, PropertyReport, Suite, DEFAULT_CONTEXT_CAP,
};
use htc_core::parser::{parse_theory, print_theory};
use htc_core::semantics::{Compiled, Solver, Valuation, Value, DEFAULT_MAX_INTERPRETATIONS};
use htc_core::syntax::{desugar_aggregates, Theory, Var};
use htc_core::transforms::{eliminate_conditionals, unfold_theory};
use serde::{Deserialize, Serialize};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "htc", version, about = "Here-and-There with constraints: models, translations and checks")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Global {
    /// Upper bound on the number of interpretations to enumerate.
    #[arg(long, global = true, env = "HTC_MAX_INTERPS", default_value_t = DEFAULT_MAX_INTERPRETATIONS)]
    pub max_interps: u64,
    /// Worker threads for enumeration.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the stable models (or HT models) of a theory.
    Solve {
        file: PathBuf,
        /// List HT models instead of stable models.
        #[arg(long)]
        ht: bool,
        #[arg(long)]
        json: bool,
        /// Print at most N models.
        #[arg(long, value_name = "N")]
        models: Option<usize>,
    },
    /// Print a transformed theory.
    Translate {
        file: PathBuf,
        #[arg(long, value_enum)]
        pass: Pass,
    },
    /// Compare two theories and print a JSON report.
    Check {
        a: PathBuf,
        b: PathBuf,
        /// Compare stable models instead of HT models.
        #[arg(long)]
        stable: bool,
        /// Comma-separated variables to project stable models onto.
        #[arg(long, value_name = "CSV", value_delimiter = ',')]
        project: Option<Vec<String>>,
        /// Compare under a family of added contexts.
        #[arg(long)]
        strong: bool,
    },
    /// Run a property suite over a seeded corpus and print a JSON report.
    Props {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Pass {
    Desugar,
    Unfold,
    Delta,
    All,
}

pub type ModelMap = BTreeMap<String, Value>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HtModel {
    pub h: ModelMap,
    pub t: ModelMap,
}

/// JSON output of `solve`: exactly one of the two lists is present.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ht_models: Option<Vec<HtModel>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stable_models: Option<Vec<ModelMap>>,
}

#[derive(Serialize)]
struct ReportDocument<'a, T: Serialize> {
    report: &'a T,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<htc_core::Error> for Failure {
    fn from(e: htc_core::Error) -> Self {
        Failure {
            code: if e.is_budget() { EXIT_BUDGET } else { EXIT_USAGE },
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

fn usage(message: String) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message,
    }
}

fn read_theory(path: &Path) -> Result<Theory, Failure> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    parse_theory(&src).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn visible(v: &Valuation, hidden: &BTreeSet<Var>) -> ModelMap {
    v.pairs()
        .filter(|(x, _)| !hidden.contains(*x))
        .map(|(x, val)| (x.to_string(), val))
        .collect()
}

fn show_map(m: &ModelMap) -> String {
    let items: Vec<String> = m.iter().map(|(k, v)| format!("({k},{v})")).collect();
    format!("{{{}}}", items.join(", "))
}

/// Models of `theory` with variables introduced by desugaring removed.
pub fn solve(theory: &Theory, ht: bool, solver: &Solver) -> htc_core::Result<ModelDocument> {
    let compiled = Compiled::new(theory)?;
    let declared = theory.domain.vars();
    let hidden: BTreeSet<Var> = compiled
        .signature
        .vars()
        .iter()
        .filter(|x| !declared.contains(*x))
        .cloned()
        .collect();
    Ok(if ht {
        let models: BTreeSet<HtModel> = solver
            .ht_models_compiled(&compiled)?
            .iter()
            .map(|i| HtModel {
                h: visible(i.h(), &hidden),
                t: visible(i.t(), &hidden),
            })
            .collect();
        ModelDocument {
            ht_models: Some(models.into_iter().collect()),
            stable_models: None,
        }
    } else {
        let models: BTreeSet<ModelMap> = solver
            .stable_models_compiled(&compiled)?
            .iter()
            .map(|t| visible(t, &hidden))
            .collect();
        ModelDocument {
            ht_models: None,
            stable_models: Some(models.into_iter().collect()),
        }
    })
}

/// Applies a translation pass. `delta` and `all` desugar aggregates first.
pub fn translate(theory: &Theory, pass: Pass) -> htc_core::Result<Theory> {
    match pass {
        Pass::Desugar => desugar_aggregates(theory),
        Pass::Unfold => unfold_theory(theory),
        Pass::Delta => {
            let d = if theory.has_aggregates() {
                desugar_aggregates(theory)?
            } else {
                theory.clone()
            };
            Ok(eliminate_conditionals(&d)?.into_theory())
        }
        Pass::All => {
            let d = unfold_theory(&desugar_aggregates(theory)?)?;
            Ok(eliminate_conditionals(&d)?.into_theory())
        }
    }
}

/// Runs the comparison selected by the flags.
pub fn check(
    a: &Theory,
    b: &Theory,
    stable: bool,
    project: Option<&[String]>,
    strong: bool,
    solver: &Solver,
) -> htc_core::Result<EquivReport> {
    let x: Option<BTreeSet<Var>> = project.map(|p| {
        p.iter()
            .map(|s| s.trim())
            .filter(|s| !s.is_empty())
            .map(Var::new)
            .collect()
    });
    if strong {
        let x = x.unwrap_or_else(|| {
            a.domain
                .vars()
                .intersection(&b.domain.vars())
                .cloned()
                .collect()
        });
        let domain = a.domain.merge(&b.domain)?;
        let contexts = context_family(&domain, &x, DEFAULT_CONTEXT_CAP);
        strong_equiv_sampled(a, b, &x, &contexts, solver)
    } else if stable || x.is_some() {
        stable_equivalent(a, b, x.as_ref(), solver)
    } else {
        equivalent(a, b, solver)
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serialisable")
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let solver = Solver::new(cli.global.max_interps, cli.global.jobs);
    match cli.command {
        Command::Solve {
            file,
            ht,
            json: as_json,
            models,
        } => {
            let theory = read_theory(&file)?;
            let mut doc = solve(&theory, ht, &solver)?;
            let limit = models.unwrap_or(usize::MAX);
            let total = doc
                .stable_models
                .as_ref()
                .map(Vec::len)
                .or(doc.ht_models.as_ref().map(Vec::len))
                .unwrap_or(0);
            if let Some(m) = doc.stable_models.as_mut() {
                m.truncate(limit);
            }
            if let Some(m) = doc.ht_models.as_mut() {
                m.truncate(limit);
            }
            if as_json {
                writeln!(out, "{}", json(&doc))?;
            } else {
                let lines: Vec<String> = match (&doc.stable_models, &doc.ht_models) {
                    (Some(ms), _) => ms.iter().map(show_map).collect(),
                    (_, Some(ms)) => ms
                        .iter()
                        .map(|m| format!("<{}, {}>", show_map(&m.h), show_map(&m.t)))
                        .collect(),
                    _ => Vec::new(),
                };
                for (i, l) in lines.iter().enumerate() {
                    writeln!(out, "Model {}: {l}", i + 1)?;
                }
                writeln!(out, "Models: {total}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Translate { file, pass } => {
            let theory = read_theory(&file)?;
            write!(out, "{}", print_theory(&translate(&theory, pass)?))?;
            Ok(EXIT_OK)
        }
        Command::Check {
            a,
            b,
            stable,
            project,
            strong,
        } => {
            let (ta, tb) = (read_theory(&a)?, read_theory(&b)?);
            let report = check(&ta, &tb, stable, project.as_deref(), strong, &solver)?;
            writeln!(out, "{}", json(&ReportDocument { report: &report }))?;
            Ok(EXIT_OK)
        }
        Command::Props { suite, seed, count } => {
            let suite: Suite = suite.parse()?;
            let report: PropertyReport = run_property_suite(suite, seed, count, &solver)?;
            writeln!(out, "{}", json(&ReportDocument { report: &report }))?;
            Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            })
        }
    }
}

/// Parses `args` (including the program name) and runs the command, returning the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

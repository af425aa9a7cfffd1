//! Command-line front end: configuration parsing, report persistence, and
//! exit-code policy.  This is the only module that touches stdout, files, or
//! the process environment; everything else stays pure.
//!
//! Output contract:
//! - `verify` and `demo` emit JSON Lines — one header record echoing the full
//!   run configuration, then one `check` record per trial ordered by trial
//!   index, with an extra `VIOLATION` record after every violated open
//!   statement.  With `--out` the same bytes go to the file and a CSV margin
//!   summary is written next to it (extension `.csv`); without `--out` the
//!   JSONL goes to stdout.
//! - `hunt` emits a single JSON report (an array when the selector names
//!   several statements) with its wall clock normalized to zero, so a fixed
//!   configuration always produces identical bytes.
//! - Exit codes: 0 = ran to completion (violated conjectures and the demo's
//!   expected violation included — those are results, not errors); 1 = usage
//!   or I/O error; 2 = a proven statement adjudicated as violated, which can
//!   only mean an implementation bug.

use std::fmt;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{
    check_with, demo_example_2_8, CheckResult, StatementId, Status, Verdict, ALL_STATEMENTS,
};
use crate::error::{Error, Result};
use crate::gen::{derive_subseed, sample_instance};
use crate::hunter::{hunt, HuntConfig, HuntReport};
use crate::spectra::TolerancePolicy;

/// Environment variable consulted for the master seed when `--seed` is
/// absent.
pub const SEED_ENV_VAR: &str = "NORMFORGE_SEED";

/// Which subcommand a [`RunConfig`] describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    List,
    Verify,
    Hunt,
    Demo,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Command::List => "list",
            Command::Verify => "verify",
            Command::Hunt => "hunt",
            Command::Demo => "demo",
        };
        f.write_str(s)
    }
}

/// Complete description of one run.  The header record of every report is
/// exactly this structure, so any report can be reproduced from its own
/// first line.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    /// Subcommand to execute.
    pub command: Command,
    /// Statement selector: an id, a status name (`proven`, `conjecture`,
    /// `question`, `counterexample_demo`), or `all`.
    pub statement: String,
    /// Random instances per statement (verify).
    pub trials: usize,
    /// Inclusive dimension range swept round-robin across trials/restarts.
    pub dims: (usize, usize),
    /// Master seed.
    pub seed: u64,
    /// Comparison tolerance.
    pub tol: TolerancePolicy,
    /// Hunt restarts.
    pub restarts: usize,
    /// Hunt steps per restart.
    pub steps: usize,
    /// Hunt initial step size.
    pub step_size: f64,
    /// Output path; `None` writes to stdout.  Not echoed in report headers:
    /// it locates the report without influencing a single result byte.
    #[serde(skip_serializing, default)]
    pub out: Option<PathBuf>,
    /// Worker threads (0 = library default).  Not echoed in report headers:
    /// results are worker-invariant by construction, so byte-identical
    /// reports across worker counts stay byte-identical.
    #[serde(skip_serializing, default)]
    pub workers: usize,
    /// Permit hunting proven statements.
    pub self_test: bool,
}

impl RunConfig {
    /// A configuration with the CLI's defaults for the given subcommand.
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            statement: "all".to_string(),
            trials: 100,
            dims: (2, 4),
            seed: 0,
            tol: TolerancePolicy::default(),
            restarts: 8,
            steps: 200,
            step_size: 0.05,
            out: None,
            workers: 0,
            self_test: false,
        }
    }

    fn dims_list(&self) -> Vec<usize> {
        (self.dims.0..=self.dims.1).collect()
    }
}

// ---------------------------------------------------------------------------
// argument parsing
// ---------------------------------------------------------------------------

#[derive(Parser, Debug)]
#[command(
    name = "normforge",
    about = "Verification and falsification engine for symmetric-norm matrix inequalities",
    version
)]
struct CliArgs {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand, Debug)]
enum CliCommand {
    /// Print the statement registry: id, status, comparison mode, hypothesis.
    List,
    /// Check statements on seeded random instances and report verdicts.
    Verify(VerifyArgs),
    /// Search for violation witnesses by seeded hill climbing.
    Hunt(HuntArgs),
    /// Run the built-in counterexample demonstration.
    Demo(OutputArgs),
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Master seed (falls back to NORMFORGE_SEED, then 0).
    #[arg(long)]
    seed: Option<u64>,
    /// Relative comparison tolerance.
    #[arg(long = "tol-rel")]
    tol_rel: Option<f64>,
    /// Absolute comparison tolerance floor.
    #[arg(long = "tol-abs")]
    tol_abs: Option<f64>,
    /// Worker threads (0 = library default).
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Output path (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Statement id, status name, or "all".
    #[arg(long, default_value = "all")]
    statement: String,
    /// Random instances per statement.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Inclusive dimension range "a..b" (or a single "n").
    #[arg(long, default_value = "2..4")]
    dims: String,
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct HuntArgs {
    /// Statement id, status name, or "all" (open statements need no flag;
    /// proven ones require --self-test).
    #[arg(long)]
    statement: String,
    /// Inclusive dimension range "a..b" (or a single "n").
    #[arg(long, default_value = "2..4")]
    dims: String,
    /// Independent restarts.
    #[arg(long, default_value_t = 8)]
    restarts: usize,
    /// Hill-climbing steps per restart.
    #[arg(long, default_value_t = 200)]
    steps: usize,
    /// Initial perturbation step size.
    #[arg(long = "step-size", default_value_t = 0.05)]
    step_size: f64,
    /// Permit hunting proven statements (regression self-test).
    #[arg(long = "self-test", default_value_t = false)]
    self_test: bool,
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    output: OutputArgs,
}

fn parse_dims(s: &str) -> Result<(usize, usize)> {
    let parse_end = |part: &str| {
        part.trim()
            .parse::<usize>()
            .map_err(|_| Error::Config(format!("invalid dimension '{part}' in '{s}'")))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse_end(a)?, parse_end(b)?),
        None => {
            let n = parse_end(s)?;
            (n, n)
        }
    };
    if lo == 0 || hi < lo {
        return Err(Error::Config(format!(
            "dimension range '{s}' must satisfy 1 <= a <= b"
        )));
    }
    Ok((lo, hi))
}

fn resolve_seed(flag: Option<u64>, env: Option<&str>) -> Result<u64> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match env {
        Some(raw) => raw
            .trim()
            .parse::<u64>()
            .map_err(|_| Error::Config(format!("{SEED_ENV_VAR} must be an unsigned integer, got '{raw}'"))),
        None => Ok(0),
    }
}

fn tolerance(common: &CommonArgs) -> TolerancePolicy {
    let mut tol = TolerancePolicy::default();
    if let Some(rel) = common.tol_rel {
        tol.rel = rel;
    }
    if let Some(abs) = common.tol_abs {
        tol.abs_floor = abs;
    }
    tol
}

/// Parses raw command-line arguments (argv[0] included) plus the seed
/// environment value into a [`RunConfig`].
pub fn parse_args<I, S>(args: I, seed_env: Option<&str>) -> Result<RunConfig>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = CliArgs::try_parse_from(args).map_err(|e| Error::Config(e.to_string()))?;
    config_from(cli, seed_env)
}

fn config_from(cli: CliArgs, seed_env: Option<&str>) -> Result<RunConfig> {
    let cfg = match cli.command {
        CliCommand::List => RunConfig::new(Command::List),
        CliCommand::Verify(a) => RunConfig {
            statement: a.statement,
            trials: a.trials,
            dims: parse_dims(&a.dims)?,
            seed: resolve_seed(a.common.seed, seed_env)?,
            tol: tolerance(&a.common),
            workers: a.common.workers,
            out: a.output.out,
            ..RunConfig::new(Command::Verify)
        },
        CliCommand::Hunt(a) => RunConfig {
            statement: a.statement,
            dims: parse_dims(&a.dims)?,
            seed: resolve_seed(a.common.seed, seed_env)?,
            tol: tolerance(&a.common),
            restarts: a.restarts,
            steps: a.steps,
            step_size: a.step_size,
            self_test: a.self_test,
            workers: a.common.workers,
            out: a.output.out,
            ..RunConfig::new(Command::Hunt)
        },
        CliCommand::Demo(out) => RunConfig {
            out: out.out,
            ..RunConfig::new(Command::Demo)
        },
    };
    Ok(cfg)
}

// ---------------------------------------------------------------------------
// selector
// ---------------------------------------------------------------------------

/// Expands a selector into statement ids: an exact id, a status name, or
/// `all` (registry order in all cases).
pub fn resolve_selector(selector: &str) -> Result<Vec<StatementId>> {
    if selector == "all" {
        return Ok(ALL_STATEMENTS.to_vec());
    }
    let by_status: Vec<StatementId> = ALL_STATEMENTS
        .iter()
        .copied()
        .filter(|id| id.status().to_string() == selector)
        .collect();
    if !by_status.is_empty() {
        return Ok(by_status);
    }
    Ok(vec![selector.parse::<StatementId>()?])
}

// ---------------------------------------------------------------------------
// report records
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct HeaderRecord<'a> {
    record: &'static str,
    #[serde(flatten)]
    config: &'a RunConfig,
}

#[derive(Serialize)]
struct TrialRecord<'a> {
    record: &'static str,
    trial: usize,
    dim: usize,
    #[serde(flatten)]
    result: &'a CheckResult,
}

#[derive(Serialize)]
struct ViolationRecord<'a> {
    record: &'static str,
    statement: &'a str,
    trial: usize,
    dim: usize,
    margin: f64,
}

fn header_line(config: &RunConfig) -> Result<String> {
    Ok(serde_json::to_string(&HeaderRecord { record: "header", config })?)
}

// ---------------------------------------------------------------------------
// run_* operations
// ---------------------------------------------------------------------------

/// One verified trial, ready for emission.
struct Trial {
    statement: StatementId,
    trial: usize,
    dim: usize,
    result: CheckResult,
}

fn run_trials(cfg: &RunConfig, statements: &[StatementId]) -> Result<Vec<Trial>> {
    let dims = cfg.dims_list();
    let mut out = Vec::with_capacity(statements.len() * cfg.trials);
    for &statement in statements {
        let mut results: Vec<(usize, usize, Result<CheckResult>)> = (0..cfg.trials)
            .into_par_iter()
            .map(|trial| {
                let dim = dims[trial % dims.len()];
                let seed = derive_subseed(cfg.seed, &[trial as u64]);
                let result = sample_instance(statement, &[dim], seed)
                    .and_then(|instance| check_with(&instance, &cfg.tol));
                (trial, dim, result)
            })
            .collect();
        results.sort_by_key(|(trial, _, _)| *trial);
        for (trial, dim, result) in results {
            out.push(Trial { statement, trial, dim, result: result? });
        }
    }
    Ok(out)
}

fn render_jsonl(cfg: &RunConfig, trials: &[Trial]) -> Result<String> {
    let mut buf = String::new();
    buf.push_str(&header_line(cfg)?);
    buf.push('\n');
    for t in trials {
        let line = serde_json::to_string(&TrialRecord {
            record: "check",
            trial: t.trial,
            dim: t.dim,
            result: &t.result,
        })?;
        buf.push_str(&line);
        buf.push('\n');
        if t.result.verdict == Verdict::Violated && t.statement.status() != Status::Proven {
            let line = serde_json::to_string(&ViolationRecord {
                record: "VIOLATION",
                statement: t.statement.as_str(),
                trial: t.trial,
                dim: t.dim,
                margin: t.result.margin,
            })?;
            buf.push_str(&line);
            buf.push('\n');
        }
    }
    Ok(buf)
}

fn render_csv(trials: &[Trial]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(["statement_id", "trial", "dim", "function", "margin", "verdict"])
        .map_err(csv_error)?;
    for t in trials {
        let function = t
            .result
            .instance
            .function
            .map(|f| f.to_string())
            .unwrap_or_default();
        writer
            .write_record([
                t.statement.as_str().to_string(),
                t.trial.to_string(),
                t.dim.to_string(),
                function,
                format_float(t.result.margin),
                t.result.verdict.to_string(),
            ])
            .map_err(csv_error)?;
    }
    let bytes = writer.into_inner().map_err(|e| Error::Config(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Config(e.to_string()))
}

fn csv_error(e: csv::Error) -> Error {
    Error::Config(format!("csv serialization failed: {e}"))
}

/// Shortest round-trip float formatting, identical to the JSONL rendering of
/// the same margin.
fn format_float(x: f64) -> String {
    serde_json::to_string(&x).unwrap_or_else(|_| x.to_string())
}

fn csv_path(out: &Path) -> PathBuf {
    let mut path = out.to_path_buf();
    path.set_extension("csv");
    path
}

fn write_output(out: Option<&Path>, body: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, body).map_err(Error::from),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(body.as_bytes()).map_err(Error::from)
        }
    }
}

fn with_worker_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if workers == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot build worker pool: {e}")))?;
    Ok(pool.install(f))
}

fn verify_exit_code(trials: &[Trial]) -> i32 {
    let proven_violated = trials.iter().any(|t| {
        t.result.verdict == Verdict::Violated && t.statement.status() == Status::Proven
    });
    if proven_violated {
        2
    } else {
        0
    }
}

/// Executes a `verify` run: seeded random instances for every selected
/// statement, JSONL + CSV reports, exit code per the violation policy.
pub fn run_verify(cfg: &RunConfig) -> Result<i32> {
    let statements = resolve_selector(&cfg.statement)?;
    let trials = with_worker_pool(cfg.workers, || run_trials(cfg, &statements))??;
    let jsonl = render_jsonl(cfg, &trials)?;
    write_output(cfg.out.as_deref(), &jsonl)?;
    if let Some(out) = &cfg.out {
        std::fs::write(csv_path(out), render_csv(&trials)?)?;
    }
    for t in &trials {
        if t.result.verdict == Verdict::Violated {
            let kind =
                if t.statement.status() == Status::Proven { "PROVEN-VIOLATION" } else { "VIOLATION" };
            eprintln!(
                "{kind}: {} trial {} dim {} margin {}",
                t.statement, t.trial, t.dim, t.result.margin
            );
        }
    }
    Ok(verify_exit_code(&trials))
}

/// Executes a `hunt` run: hill-climbing search on every selected statement,
/// one JSON report (array for several statements).
pub fn run_hunt(cfg: &RunConfig) -> Result<i32> {
    let statements = resolve_selector(&cfg.statement)?;
    let reports = with_worker_pool(cfg.workers, || -> Result<Vec<HuntReport>> {
        statements
            .iter()
            .map(|&statement| {
                let hunt_cfg = HuntConfig {
                    statement,
                    dims: cfg.dims_list(),
                    restarts: cfg.restarts,
                    steps: cfg.steps,
                    step_size: cfg.step_size,
                    seed: cfg.seed,
                    self_test: cfg.self_test,
                    tol: cfg.tol,
                    ..HuntConfig::new(statement, cfg.seed)
                };
                hunt(&hunt_cfg)
            })
            .collect()
    })??;

    let views: Vec<HuntReport> = reports.iter().map(HuntReport::deterministic_view).collect();
    let body = if views.len() == 1 {
        serde_json::to_string_pretty(&views[0])?
    } else {
        serde_json::to_string_pretty(&views)?
    };
    write_output(cfg.out.as_deref(), &(body + "\n"))?;

    let mut exit = 0;
    for report in &reports {
        eprintln!(
            "hunt {}: best margin {} (restart {}, step {}), {} trials, {} ms",
            report.config.statement,
            report.best_margin,
            report.best_restart,
            report.best_step,
            report.trials,
            report.wall_clock_ms
        );
        if report.best.verdict == Verdict::Violated {
            if report.config.statement.status() == Status::Proven {
                eprintln!(
                    "PROVEN-VIOLATION: {} margin {}",
                    report.config.statement, report.best_margin
                );
                exit = 2;
            } else {
                eprintln!(
                    "VIOLATION: {} margin {}",
                    report.config.statement, report.best_margin
                );
            }
        }
    }
    Ok(exit)
}

/// Executes the fixed counterexample demonstration and reports it in the
/// same JSONL shape as `verify`.
pub fn run_demo(cfg: &RunConfig) -> Result<i32> {
    let result = demo_example_2_8()?;
    let trials = vec![Trial {
        statement: StatementId::ex_2_8,
        trial: 0,
        dim: result.instance.dims.iter().sum(),
        result,
    }];
    let mut demo_cfg = cfg.clone();
    demo_cfg.statement = StatementId::ex_2_8.to_string();
    demo_cfg.trials = 1;
    let jsonl = render_jsonl(&demo_cfg, &trials)?;
    write_output(cfg.out.as_deref(), &jsonl)?;
    if let Some(out) = &cfg.out {
        std::fs::write(csv_path(out), render_csv(&trials)?)?;
    }
    let t = &trials[0];
    eprintln!(
        "demo: {} verdict {} margin {}",
        t.statement, t.result.verdict, t.result.margin
    );
    Ok(0)
}

/// The registry listing printed by `list`: one line per statement with id,
/// status, comparison mode, hypothesis, and formula.
pub fn registry_listing() -> String {
    let mut buf = String::new();
    for id in ALL_STATEMENTS {
        buf.push_str(&format!(
            "{} {} {} | {} | {}\n",
            id,
            id.status(),
            id.mode(),
            id.hypothesis(),
            id.formula()
        ));
    }
    buf
}

/// Executes `list`.
pub fn run_list(cfg: &RunConfig) -> Result<i32> {
    write_output(cfg.out.as_deref(), &registry_listing())?;
    Ok(0)
}

/// Dispatches a parsed configuration to its subcommand.
pub fn run(cfg: &RunConfig) -> Result<i32> {
    match cfg.command {
        Command::List => run_list(cfg),
        Command::Verify => run_verify(cfg),
        Command::Hunt => run_hunt(cfg),
        Command::Demo => run_demo(cfg),
    }
}

/// Full entry point: parses `std::env::args` plus the seed environment
/// variable, runs the subcommand, and maps every error to exit code 1 with a
/// message on stderr.
pub fn main_entry() -> i32 {
    let cli = match CliArgs::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version land here too; those print to stdout and
            // exit 0, genuine usage errors go to stderr and exit 1.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let seed_env = std::env::var(SEED_ENV_VAR).ok();
    let cfg = match config_from(cli, seed_env.as_deref()) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    match run(&cfg) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_parse_accepts_ranges_and_single_values() {
        assert_eq!(parse_dims("2..5").unwrap(), (2, 5));
        assert_eq!(parse_dims("3").unwrap(), (3, 3));
        assert!(parse_dims("0..4").is_err());
        assert!(parse_dims("5..2").is_err());
        assert!(parse_dims("x..2").is_err());
    }

    #[test]
    fn seed_resolution_prefers_flag_over_environment() {
        assert_eq!(resolve_seed(Some(7), Some("99")).unwrap(), 7);
        assert_eq!(resolve_seed(None, Some("99")).unwrap(), 99);
        assert_eq!(resolve_seed(None, None).unwrap(), 0);
        assert!(resolve_seed(None, Some("not a number")).is_err());
    }

    #[test]
    fn selector_resolves_ids_statuses_and_all() {
        assert_eq!(resolve_selector("all").unwrap().len(), ALL_STATEMENTS.len());
        assert_eq!(resolve_selector("thm_2_5").unwrap(), vec![StatementId::thm_2_5]);
        let conjectures = resolve_selector("conjecture").unwrap();
        assert_eq!(conjectures.len(), 5);
        assert!(conjectures.contains(&StatementId::eq_2));
        let questions = resolve_selector("question").unwrap();
        assert_eq!(questions.len(), 4);
        assert!(resolve_selector("nonsense").is_err());
    }

    #[test]
    fn listing_contains_required_substrings_and_all_statements() {
        let listing = registry_listing();
        assert!(listing.contains("thm_2_5 proven all_norms"));
        assert!(listing.contains("conj_4 conjecture"));
        assert_eq!(listing.lines().count(), ALL_STATEMENTS.len());
        for id in ALL_STATEMENTS {
            assert!(listing.contains(id.as_str()), "{id} missing from listing");
        }
    }

    #[test]
    fn args_parse_into_expected_config() {
        let cfg = parse_args(
            [
                "normforge", "verify", "--statement", "conj_1", "--trials", "7", "--dims",
                "1..3", "--seed", "5", "--tol-rel", "1e-8", "--workers", "2",
            ],
            None,
        )
        .unwrap();
        assert_eq!(cfg.command, Command::Verify);
        assert_eq!(cfg.statement, "conj_1");
        assert_eq!(cfg.trials, 7);
        assert_eq!(cfg.dims, (1, 3));
        assert_eq!(cfg.seed, 5);
        assert_eq!(cfg.tol.rel, 1e-8);
        assert_eq!(cfg.workers, 2);

        let cfg = parse_args(
            ["normforge", "hunt", "--statement", "q4", "--restarts", "3", "--steps", "9",
             "--step-size", "0.1", "--self-test"],
            Some("123"),
        )
        .unwrap();
        assert_eq!(cfg.command, Command::Hunt);
        assert_eq!(cfg.seed, 123);
        assert_eq!(cfg.restarts, 3);
        assert_eq!(cfg.steps, 9);
        assert_eq!(cfg.step_size, 0.1);
        assert!(cfg.self_test);

        assert!(parse_args(["normforge", "frobnicate"], None).is_err());
    }

    #[test]
    fn verify_reports_are_deterministic_across_worker_counts() {
        let mut cfg = RunConfig::new(Command::Verify);
        cfg.statement = "cor_1_4".to_string();
        cfg.trials = 6;
        cfg.dims = (2, 3);
        cfg.seed = 31;
        let statements = resolve_selector(&cfg.statement).unwrap();
        cfg.workers = 1;
        let one = with_worker_pool(cfg.workers, || run_trials(&cfg, &statements))
            .unwrap()
            .unwrap();
        cfg.workers = 8;
        let eight = with_worker_pool(cfg.workers, || run_trials(&cfg, &statements))
            .unwrap()
            .unwrap();
        let render = |trials: &[Trial]| render_jsonl(&cfg, trials).unwrap();
        assert_eq!(render(&one), render(&eight));
        let csv_one = render_csv(&one).unwrap();
        assert_eq!(csv_one, render_csv(&eight).unwrap());
        assert!(csv_one.starts_with("statement_id,trial,dim,function,margin,verdict\n"));
    }

    #[test]
    fn exit_codes_follow_the_violation_policy() {
        // A demo run's violation is not an error.
        let result = demo_example_2_8().unwrap();
        assert_eq!(result.verdict, Verdict::Violated);
        let trials = vec![Trial {
            statement: StatementId::ex_2_8,
            trial: 0,
            dim: 4,
            result,
        }];
        assert_eq!(verify_exit_code(&trials), 0);
    }

    #[test]
    fn jsonl_headers_echo_the_exact_config() {
        let mut cfg = RunConfig::new(Command::Verify);
        cfg.statement = "eq_1".into();
        cfg.trials = 1;
        cfg.seed = 17;
        let header = header_line(&cfg).unwrap();
        let value: serde_json::Value = serde_json::from_str(&header).unwrap();
        assert_eq!(value["record"], "header");
        assert_eq!(value["command"], "verify");
        assert_eq!(value["statement"], "eq_1");
        assert_eq!(value["seed"], 17);
        // The header round-trips back into a RunConfig.
        let mut map = value.as_object().unwrap().clone();
        map.remove("record");
        let back: RunConfig = serde_json::from_value(serde_json::Value::Object(map)).unwrap();
        assert_eq!(back.statement, cfg.statement);
        assert_eq!(back.seed, cfg.seed);
        assert_eq!(back.dims, cfg.dims);
    }
}

//! Seeded randomized search that tries to *maximize* the violation margin of
//! a statement over its hypothesis class.
//!
//! The search is derivative-free hill climbing: each restart draws a fresh
//! instance, then repeatedly proposes class-preserving perturbations and
//! accepts exactly the strictly improving ones, shrinking the step size
//! geometrically whenever twenty proposals in a row fail to improve.  Margins
//! are piecewise-smooth in the matrix entries (singular values cross), so a
//! cheap, restart-heavy local search is more robust here than gradient
//! methods.
//!
//! Restarts are independent, may run concurrently, and are merged by restart
//! index, so a hunt's outcome is a pure function of its configuration:
//! identical [`HuntConfig`]s produce identical [`HuntReport`]s regardless of
//! the worker count.  Every margin above the anti-noise threshold has already
//! survived the dual-path adjudication inside [`check_with`] before it can be
//! counted as a violation.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{
    check_with, function_need, CheckResult, FunctionNeed, StatementId, Status, Verdict,
    ANTI_NOISE_MARGIN,
};
use crate::error::{Error, Result};
use crate::funcs::ScalarFunction;
use crate::gen::{derive_rng, derive_subseed, perturb_instance, sample_instance};
use crate::spectra::TolerancePolicy;

/// Number of consecutive rejected proposals that triggers one step decay.
pub const DECAY_STREAK: usize = 20;

/// Full configuration of one hunt.  Everything that influences the outcome
/// is in here; the report echoes it back so every run can be reproduced from
/// its own output.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HuntConfig {
    /// Statement to attack.
    pub statement: StatementId,
    /// Dimensions to sweep; restart `r` uses `dims[r % dims.len()]` as the
    /// single-dimension input to the instance sampler (block statements
    /// derive their own partitions from it).
    pub dims: Vec<usize>,
    /// Independent restarts (≥ 1).
    pub restarts: usize,
    /// Hill-climbing steps per restart (0 = evaluate the initial draw only).
    pub steps: usize,
    /// Initial perturbation step size.
    pub step_size: f64,
    /// Geometric decay factor in (0, 1) applied on rejection streaks.
    pub step_decay: f64,
    /// Master seed; all randomness derives from `(seed, restart)` and
    /// `(seed, restart, step)` streams.
    pub seed: u64,
    /// Optional restriction of the scalar-function pool.  `None` keeps the
    /// statement's own sampling; `Some(pool)` overrides the sampled function
    /// with a pool member (after filtering the pool down to functions that
    /// satisfy the statement's hypothesis).
    pub function_pool: Option<Vec<ScalarFunction>>,
    /// Margins above this value count as reportable violations (the verdict
    /// must also be `violated`, i.e. the dual-path recheck must concur).
    pub report_threshold: f64,
    /// Permit hunting proven (or demo) statements as a self-test.
    pub self_test: bool,
    /// Comparison tolerance.
    pub tol: TolerancePolicy,
}

impl HuntConfig {
    /// A reasonable default configuration for the given statement and seed.
    pub fn new(statement: StatementId, seed: u64) -> Self {
        HuntConfig {
            statement,
            dims: vec![2, 3, 4],
            restarts: 8,
            steps: 200,
            step_size: 0.05,
            step_decay: 0.5,
            seed,
            function_pool: None,
            report_threshold: ANTI_NOISE_MARGIN,
            self_test: false,
            tol: TolerancePolicy::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::Config("restarts must be at least 1".into()));
        }
        if self.dims.is_empty() || self.dims.contains(&0) {
            return Err(Error::Config(format!("invalid dims {:?}", self.dims)));
        }
        if !(self.step_size.is_finite() && self.step_size > 0.0) {
            return Err(Error::Config(format!("step size {} must be positive", self.step_size)));
        }
        if !(self.step_decay > 0.0 && self.step_decay < 1.0) {
            return Err(Error::Config(format!(
                "step decay {} must lie strictly inside (0, 1)",
                self.step_decay
            )));
        }
        if !self.report_threshold.is_finite() {
            return Err(Error::Config("report threshold must be finite".into()));
        }
        Ok(())
    }
}

/// Labels of the fixed margin-histogram buckets, in order.
pub const HISTOGRAM_BUCKETS: [&str; 8] = [
    "(-inf,-1e-2]",
    "(-1e-2,-1e-4]",
    "(-1e-4,-1e-6]",
    "(-1e-6,0]",
    "(0,1e-6]",
    "(1e-6,1e-4]",
    "(1e-4,1e-2]",
    "(1e-2,inf)",
];

/// Histogram of every margin evaluated during a hunt, over the fixed
/// [`HISTOGRAM_BUCKETS`] grid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarginHistogram {
    /// Counts per bucket, aligned with [`HISTOGRAM_BUCKETS`].
    pub counts: [u64; 8],
}

impl MarginHistogram {
    fn add(&mut self, margin: f64) {
        let idx = if margin <= -1e-2 {
            0
        } else if margin <= -1e-4 {
            1
        } else if margin <= -1e-6 {
            2
        } else if margin <= 0.0 {
            3
        } else if margin <= 1e-6 {
            4
        } else if margin <= 1e-4 {
            5
        } else if margin <= 1e-2 {
            6
        } else {
            7
        };
        self.counts[idx] += 1;
    }

    fn merge(&mut self, other: &MarginHistogram) {
        for (a, b) in self.counts.iter_mut().zip(other.counts.iter()) {
            *a += b;
        }
    }

    /// Total number of recorded margins.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `(label, count)` pairs for display.
    pub fn buckets(&self) -> Vec<(&'static str, u64)> {
        HISTOGRAM_BUCKETS.iter().copied().zip(self.counts).collect()
    }
}

/// Outcome of a hunt.  The best witness embeds the full serialized instance
/// (matrices included), so deserializing the report and re-running the check
/// reproduces the best margin.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HuntReport {
    /// The exact configuration that produced this report.
    pub config: HuntConfig,
    /// Total number of margin evaluations across all restarts.
    pub trials: u64,
    /// Largest margin encountered at any accepted point of any restart.
    pub best_margin: f64,
    /// Restart that produced the best margin (lowest index on ties).
    pub best_restart: usize,
    /// Step within that restart at which the best instance was accepted
    /// (0 = the restart's initial draw).
    pub best_step: usize,
    /// Full check result for the best instance: verdict, both spectra, and
    /// the regenerable instance itself.
    pub best: CheckResult,
    /// Evaluations whose verdict was `violated` with margin above the report
    /// threshold (each such margin has passed the dual-path recheck).
    pub violations: u64,
    /// Candidate evaluations rejected because the check itself failed
    /// (numeric overflow at extreme scales); expected to be zero.
    pub failed_evals: u64,
    /// Histogram of every evaluated margin.
    pub histogram: MarginHistogram,
    /// Wall-clock duration of the hunt. Excluded from determinism claims;
    /// persisted reports normalize it via [`HuntReport::deterministic_view`].
    pub wall_clock_ms: u64,
}

impl HuntReport {
    /// The report with its wall clock zeroed: the part of the report that is
    /// a pure function of the configuration.  File outputs persist this view
    /// so identical configurations produce identical bytes.
    pub fn deterministic_view(&self) -> HuntReport {
        let mut view = self.clone();
        view.wall_clock_ms = 0;
        view
    }
}

struct RestartOutcome {
    index: usize,
    trials: u64,
    best: CheckResult,
    best_step: usize,
    violations: u64,
    failed_evals: u64,
    histogram: MarginHistogram,
}

fn run_restart(
    cfg: &HuntConfig,
    pool: Option<&[ScalarFunction]>,
    index: usize,
) -> Result<RestartOutcome> {
    let r = index as u64;
    let dim = cfg.dims[index % cfg.dims.len()];
    let mut instance = sample_instance(cfg.statement, &[dim], derive_subseed(cfg.seed, &[r]))?;
    if let Some(pool) = pool {
        if instance.function.is_some() && !pool.is_empty() {
            let mut rng = derive_rng(cfg.seed, &[r]);
            instance.function = Some(pool[rng.random_range(0..pool.len())]);
        }
    }

    let mut current = check_with(&instance, &cfg.tol)?;
    let mut histogram = MarginHistogram::default();
    histogram.add(current.margin);
    let mut violations =
        u64::from(current.verdict == Verdict::Violated && current.margin > cfg.report_threshold);
    let mut failed_evals = 0u64;
    let mut trials = 1u64;
    let mut best_step = 0usize;

    let mut step_size = cfg.step_size;
    let mut streak = 0usize;
    for step in 0..cfg.steps {
        let mut rng = derive_rng(cfg.seed, &[r, step as u64]);
        let candidate = perturb_instance(&current.instance, step_size, &mut rng)?;
        let result = match check_with(&candidate, &cfg.tol) {
            Ok(result) => result,
            Err(_) => {
                // A candidate that cannot be evaluated (overflow at extreme
                // scale) is treated as a rejected proposal, not a hard error.
                failed_evals += 1;
                trials += 1;
                streak += 1;
                if streak >= DECAY_STREAK {
                    step_size *= cfg.step_decay;
                    streak = 0;
                }
                continue;
            }
        };
        trials += 1;
        histogram.add(result.margin);
        if result.verdict == Verdict::Violated && result.margin > cfg.report_threshold {
            violations += 1;
        }
        if result.margin > current.margin {
            current = result;
            best_step = step + 1;
            streak = 0;
        } else {
            streak += 1;
            if streak >= DECAY_STREAK {
                step_size *= cfg.step_decay;
                streak = 0;
            }
        }
    }

    Ok(RestartOutcome {
        index,
        trials,
        best: current,
        best_step,
        violations,
        failed_evals,
        histogram,
    })
}

/// Runs a hunt: `restarts` independent seeded hill climbs on the violation
/// margin, merged into a single report.
///
/// Proven and demo statements are refused unless `self_test` is set, so a
/// "violation" of a proven statement can only be produced by an explicit
/// regression run, never by accident.
pub fn hunt(cfg: &HuntConfig) -> Result<HuntReport> {
    cfg.validate()?;
    if !matches!(cfg.statement.status(), Status::Conjecture | Status::Question) && !cfg.self_test {
        return Err(Error::Config(format!(
            "{} has status {}; hunting it requires self-test mode",
            cfg.statement,
            cfg.statement.status()
        )));
    }
    let pool: Option<Vec<ScalarFunction>> = cfg.function_pool.as_ref().map(|pool| {
        let need = function_need(cfg.statement);
        pool.iter().copied().filter(|f| need.admits(&f.flags())).collect()
    });
    if let Some(p) = &pool {
        if p.is_empty() && function_need(cfg.statement) != FunctionNeed::None {
            return Err(Error::Config(
                "function pool contains no function satisfying the statement's hypothesis".into(),
            ));
        }
    }

    let start = std::time::Instant::now();
    let mut outcomes = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| run_restart(cfg, pool.as_deref(), r))
        .collect::<Result<Vec<_>>>()?;
    // Indexed parallel collect already preserves order; sorting makes the
    // merge's independence from the scheduler explicit.
    outcomes.sort_by_key(|o| o.index);

    let mut histogram = MarginHistogram::default();
    let mut trials = 0u64;
    let mut violations = 0u64;
    let mut failed_evals = 0u64;
    let mut best: Option<(usize, usize, CheckResult)> = None;
    for outcome in outcomes {
        trials += outcome.trials;
        violations += outcome.violations;
        failed_evals += outcome.failed_evals;
        histogram.merge(&outcome.histogram);
        let improves = match &best {
            None => true,
            Some((_, _, incumbent)) => outcome.best.margin > incumbent.margin,
        };
        if improves {
            best = Some((outcome.index, outcome.best_step, outcome.best));
        }
    }
    let (best_restart, best_step, best) = best.expect("at least one restart ran");

    Ok(HuntReport {
        config: cfg.clone(),
        trials,
        best_margin: best.margin,
        best_restart,
        best_step,
        best,
        violations,
        failed_evals,
        histogram,
        wall_clock_ms: start.elapsed().as_millis() as u64,
    })
}

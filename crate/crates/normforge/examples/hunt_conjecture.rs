//! Counterexample search on an open statement: seeded hill climbing on the
//! violation margin, independent restarts, deterministic report.
//!
//! The hunted statement here extends a proven operator-norm inequality to
//! all symmetric norms with the exponential-convexity hypothesis dropped —
//! exactly the kind of gap worth probing.  A best margin at or below zero
//! means the search found nothing, which is the expected outcome and is
//! itself evidence the conjecture survives this corner of its hypothesis
//! space.
//!
//! Run with: `cargo run --example hunt_conjecture`

use normforge::catalog::{check, StatementId, Verdict};
use normforge::hunter::{hunt, HuntConfig, HISTOGRAM_BUCKETS};

fn main() {
    let mut cfg = HuntConfig::new(StatementId::conj_1, 7);
    cfg.restarts = 6;
    cfg.steps = 120;
    cfg.dims = vec![2, 3, 4];
    let report = hunt(&cfg).expect("hunt");

    println!("statement:   {}", report.config.statement);
    println!("trials:      {}", report.trials);
    println!("best margin: {:.6e}  (restart {}, step {})", report.best_margin, report.best_restart, report.best_step);
    println!("verdict of best instance: {}", report.best.verdict);
    println!("adjudicated violations:   {}", report.violations);
    println!("wall clock:  {} ms", report.wall_clock_ms);

    println!("\nmargin histogram:");
    for (label, count) in HISTOGRAM_BUCKETS.iter().zip(report.histogram.counts) {
        if count > 0 {
            println!("  {label:>14}  {count}");
        }
    }

    // The witness is self-contained: serialize, reload, re-check.
    let json = serde_json::to_string(&report.best.instance).expect("serialize witness");
    let reloaded = serde_json::from_str(&json).expect("parse witness");
    let again = check(&reloaded).expect("re-check witness");
    println!("\nwitness re-check: margin {:.6e} (report {:.6e})", again.margin, report.best_margin);
    assert!((again.margin - report.best_margin).abs() <= 1e-9);

    // Expected outcome for a conjecture believed true: no adjudicated
    // violation survived the dual-path recheck.
    assert_ne!(report.best.verdict, Verdict::Violated, "a genuine discovery would land here");
    println!("\nno violation found — consistent with the conjecture");
}

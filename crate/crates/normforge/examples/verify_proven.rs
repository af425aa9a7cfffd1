//! Regression sweep over a handful of proven statements: seeded random
//! instances across dimensions, with every verdict tallied.  Proven
//! statements must never adjudicate as violated — margins stay at or below
//! numerical noise.
//!
//! Run with: `cargo run --example verify_proven`

use normforge::catalog::{check, StatementId, Verdict};
use normforge::gen::{derive_subseed, sample_instance};

fn main() {
    let statements = [
        StatementId::thm_1_1,
        StatementId::thm_1_1b,
        StatementId::cor_1_4,
        StatementId::thm_2_1,
        StatementId::thm_2_5,
        StatementId::cor_2_6,
        StatementId::horn_step,
        StatementId::lemma_3,
    ];
    let trials = 60;
    let master = 20260822;

    println!(
        "{:<12} {:>7} {:>7} {:>13} {:>22}",
        "statement", "holds", "other", "worst margin", "comment"
    );
    for statement in statements {
        let mut holds = 0usize;
        let mut other = 0usize;
        let mut worst = f64::NEG_INFINITY;
        for trial in 0..trials {
            let dim = 1 + trial % 5;
            let seed = derive_subseed(master, &[trial as u64]);
            let instance = sample_instance(statement, &[dim], seed).expect("sampling");
            let result = check(&instance).expect("check");
            worst = worst.max(result.margin);
            match result.verdict {
                Verdict::Holds => holds += 1,
                Verdict::Violated => panic!("proven statement {statement} violated: {result:?}"),
                Verdict::Inconclusive => other += 1,
            }
        }
        let comment = if worst <= 0.0 { "strictly inside" } else { "equality-case noise" };
        println!("{:<12} {:>7} {:>7} {:>13.3e} {:>22}", statement.to_string(), holds, other, worst, comment);
        assert!(worst < 1e-9, "{statement} margin {worst} above noise band");
    }
    println!("\nall {} × {trials} seeded instances hold", statements.len());
}

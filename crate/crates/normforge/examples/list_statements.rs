//! Tour of the statement registry: every inequality the engine knows,
//! grouped by epistemic status, with its comparison mode and hypothesis.
//!
//! Run with: `cargo run --example list_statements`

use normforge::catalog::{function_need, FunctionNeed, Status, ALL_STATEMENTS, HUNTED_STATEMENTS};

fn main() {
    let statuses = [
        Status::Proven,
        Status::Conjecture,
        Status::Question,
        Status::CounterexampleDemo,
    ];

    for status in statuses {
        let group: Vec<_> = ALL_STATEMENTS.iter().filter(|id| id.status() == status).collect();
        println!("== {status} ({} statements) ==", group.len());
        for id in group {
            let need = match function_need(*id) {
                FunctionNeed::None => "",
                FunctionNeed::Concave => "  [f: concave ≥ 0]",
                FunctionNeed::ConcaveEConvex => "  [f: concave ≥ 0, e-convex]",
                FunctionNeed::SqrtConcave => "  [f: f(√t) concave, f(0) ≥ 0]",
            };
            println!("  {:<20} {:<10} {}{}", id.to_string(), id.mode().to_string(), id.formula(), need);
            println!("  {:<20} {:<10} hypothesis: {}", "", "", id.hypothesis());
        }
        println!();
    }

    println!("hunted by default ({}):", HUNTED_STATEMENTS.len());
    for id in HUNTED_STATEMENTS {
        println!("  {id}");
    }

    assert_eq!(ALL_STATEMENTS.len(), 35);
    assert!(HUNTED_STATEMENTS.iter().all(|id| id.is_huntable()));
}

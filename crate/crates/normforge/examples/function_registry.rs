//! The scalar-function layer: the registry of concave test functions, their
//! declared analytic flags, and the numeric verification that backs every
//! declaration.
//!
//! The flag that matters most is e-convexity — convexity of t ↦ f(e^t).
//! Several proven inequalities require it; the open ones ask whether it can
//! be dropped.  `clamp` is the deliberate negative control: concave and
//! nonnegative but *not* e-convex, so it probes exactly the gap between the
//! proven and conjectured hypothesis classes.
//!
//! Run with: `cargo run --example function_registry`

use normforge::funcs::{verify_flags, FunctionRegistry, ScalarFunction};

fn main() {
    let registry = FunctionRegistry::default_registry();

    println!(
        "{:<14} {:>7} {:>8} {:>9} {:>12} {:>9}",
        "function", "nonneg", "concave", "e-convex", "√t-concave", "f(0) ≥ 0"
    );
    for f in registry.entries() {
        let flags = f.flags();
        println!(
            "{:<14} {:>7} {:>8} {:>9} {:>12} {:>9}",
            f.to_string(),
            flags.nonneg,
            flags.concave,
            flags.e_convex,
            flags.sqrt_concave,
            flags.f0_nonneg
        );
        // Every declaration is measured on dense grids; a disagreement
        // between declared and measured flags is an error.
        let report = verify_flags(f, 4001).expect("flag verification");
        assert_eq!(report.declared, report.measured, "{f}: flags drift");
    }

    println!("\npool sizes:");
    println!("  concave nonneg:          {}", registry.concave_nonneg().len());
    println!("  concave + e-convex:      {}", registry.concave_e_convex().len());
    println!("  √t-concave with f(0)≥0:  {}", registry.sqrt_concave_f0().len());

    // The negative control, explicitly: clamp is concave but not e-convex.
    let clamp = ScalarFunction::Clamp(1.0);
    let report = verify_flags(&clamp, 4001).expect("clamp verification");
    assert!(report.measured.concave && report.measured.nonneg);
    assert!(!report.measured.e_convex, "clamp must fail e-convexity");
    println!("\nnegative control: {clamp} measured e-convex = {}", report.measured.e_convex);

    // Power functions change family membership with the exponent.
    for p in [0.5, 1.0, 1.5, 2.0, 3.0] {
        let f = ScalarFunction::Power(p);
        let flags = f.flags();
        println!("power({p}): concave = {}, √t-concave = {}", flags.concave, flags.sqrt_concave);
    }
    assert!(ScalarFunction::Power(2.0).flags().sqrt_concave);
    assert!(!ScalarFunction::Power(2.0).flags().concave);
}

//! The engine's built-in violation: a 4×4 block matrix whose squared
//! operator norm exceeds the natural block bound, demonstrating that the
//! comparator reports true violations rather than tolerating them.
//!
//! The fixture is Z = [A B; B C] with A = diag(2,1), B the antidiagonal
//! (√2, √2), C = diag(1,2).  The comparison is ‖Z²‖∞ against
//! ‖A² + 2B² + C²‖∞ = 9; the left side lands at 6 + 4√2 ≈ 11.657, so the
//! inequality fails by a wide margin.
//!
//! Run with: `cargo run --example demo_counterexample`

use normforge::catalog::{demo_example_2_8, Verdict};
use normforge::gen::example_2_8;
use normforge::linalg::svd_spectrum;

fn main() {
    // The packaged demo: sample the fixture instance, check it, adjudicate.
    let report = demo_example_2_8().expect("demo fixture always checks");
    println!("statement: {}", report.statement);
    println!("verdict:   {}", report.verdict);
    println!("margin:    {:.12}", report.margin);
    println!("lhs ‖Z²‖∞:          {:.12}", report.lhs.get(0));
    println!("rhs ‖A²+2B²+C²‖∞:  {:.12}", report.rhs.get(0));

    // The same numbers straight from the raw matrices.
    let (a, b, c, z) = example_2_8();
    let z2 = z.mul(&z);
    let lhs = svd_spectrum(&z2).expect("svd").get(0);
    let rhs_matrix = a.mul(&a).add(&b.mul(&b).scale(2.0)).add(&c.mul(&c));
    let rhs = svd_spectrum(&rhs_matrix).expect("svd").get(0);
    println!("\nrecomputed from scratch:");
    println!("lhs = {lhs:.12}   rhs = {rhs:.12}");

    assert_eq!(report.verdict, Verdict::Violated);
    assert!((report.lhs.get(0) - lhs).abs() < 1e-12);
    assert!((report.rhs.get(0) - 9.0).abs() < 1e-12);
    // 6 + 4√2: the exact top singular value of Z².
    let exact = 6.0 + 4.0 * std::f64::consts::SQRT_2;
    assert!((lhs - exact).abs() < 1e-9, "lhs {lhs} vs exact {exact}");
    println!("\nviolation confirmed: {lhs:.6} > {rhs:.6} (margin {:.6})", report.margin);
}

//! The comparison layer from the ground up: partial sums, norm families,
//! and the majorization orders that decide every verdict in the engine.
//!
//! The central fact: one weak-majorization relation between singular-value
//! sequences is equivalent to an inequality in *every* symmetric norm at
//! once, so checking a list of partial sums settles infinitely many norms.
//!
//! Run with: `cargo run --example majorization_tour`

use normforge::linalg::ComplexMatrix;
use normforge::spectra::{
    ky_fan, majorize, schatten, violation_margin, weak_log_majorize, weak_majorize, Spectrum,
    TolerancePolicy,
};

fn main() {
    let tol = TolerancePolicy::default();

    // Partial sums: Ky Fan k-norms of a singular spectrum.
    let x = Spectrum::new(vec![3.0, 2.0, 1.0]).unwrap();
    println!("σ(X) = {:?}", x.values());
    for k in 1..=3 {
        println!("  Ky Fan {k}-norm: {}", ky_fan(&x, k));
    }
    for p in [1.0, 2.0, f64::INFINITY] {
        println!("  Schatten p={p}: {:.6}", schatten(&x, p).unwrap());
    }

    // Weak majorization compares *all* partial sums, zero-padded across
    // lengths, so spectra of different sizes are comparable.
    let y = Spectrum::new(vec![3.5, 2.5, 0.5]).unwrap();
    println!("\nσ(Y) = {:?}", y.values());
    println!("X ≺_w Y: {}", weak_majorize(&x, &y, &tol));
    println!("Y ≺_w X: {}", weak_majorize(&y, &x, &tol));

    // Majorization adds equality of totals: the order behind pinchings.
    let z = Spectrum::new(vec![4.0, 1.5, 0.5]).unwrap();
    println!("\nσ(Z) = {:?} (same total as X: {})", z.values(), z.total());
    println!("X ≺ Z: {}", majorize(&x, &z, &tol));
    println!("Z ≺ X: {}", majorize(&z, &x, &tol));

    // Weak log-majorization: products of the largest values, the order that
    // survives taking matrix powers.
    let a = Spectrum::new(vec![4.0, 1.0]).unwrap();
    let b = Spectrum::new(vec![5.0, 1.0]).unwrap();
    println!("\nproducts: a = {:?}, b = {:?}", a.values(), b.values());
    println!("a ≺_wlog b: {}", weak_log_majorize(&a, &b, &tol));

    // The violation margin is the quantity the hunter climbs: the largest
    // relative excess over all Ky Fan comparisons, negative when the
    // relation holds with room to spare.
    println!("\nviolation margins:");
    println!("  X vs Y: {:+.6}", violation_margin(&x, &y));
    println!("  Y vs X: {:+.6}", violation_margin(&y, &x));

    // A matrix-level consequence: for PSD A, B the direct sum A ⊕ B is
    // weakly majorized by (A+B) ⊕ 0 — concentrating mass raises partial sums.
    let a_m = ComplexMatrix::diag_real(&[2.0, 1.0]);
    let b_m = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 1.0, 1.0]).unwrap();
    let sum = a_m.add(&b_m);
    let sv = |m: &ComplexMatrix| normforge::linalg::svd_spectrum(m).unwrap();
    let side_separate = sv(&a_m).direct_sum(&sv(&b_m));
    let side_joined = sv(&sum); // the ⊕ 0 is the zero-padding convention
    println!("\nσ(A)⊕σ(B) = {:?}", side_separate.values());
    println!("σ(A+B)    = {:?}", side_joined.values());
    println!("A⊕B ≺_w (A+B)⊕0: {}", weak_majorize(&side_separate, &side_joined, &tol));

    assert!(weak_majorize(&x, &y, &tol));
    assert!(!weak_majorize(&y, &x, &tol));
    assert!(majorize(&x, &z, &tol));
    assert!(weak_majorize(&side_separate, &side_joined, &tol));
}

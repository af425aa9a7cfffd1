//! Block-matrix machinery: composing and slicing partitioned matrices, the
//! Hermitian dilation that turns any matrix into a Hermitian one with a
//! known spectrum, and the pinching that crushes a PSD block matrix onto
//! its diagonal blocks.
//!
//! Run with: `cargo run --example block_dilation`

use normforge::catalog::{check_structural, StatementId, Verdict};
use normforge::gen::{derive_subseed, sample_instance};
use normforge::linalg::{
    block_compose, hermitian_dilation, polar, svd_spectrum, ComplexMatrix, Decomposer,
};

fn main() {
    // Hermitian dilation: for any M, the block matrix [0 M; M* 0] is
    // Hermitian and its eigenvalues are ±σ(M) — every singular value shows
    // up twice in absolute value.
    let m = ComplexMatrix::from_real(2, 3, &[1.0, 0.0, 2.0, 0.0, 3.0, 0.0]).unwrap();
    let dilation = hermitian_dilation(&m);
    let sv_m = svd_spectrum(&m).expect("svd of M");
    let sv_d = svd_spectrum(&dilation).expect("svd of dilation");
    println!("σ(M)            = {:?}", sv_m.values());
    println!("σ([0 M; M* 0])  = {:?}", sv_d.values());
    let duplicated = sv_m.direct_sum(&sv_m);
    for k in 0..duplicated.len().max(sv_d.len()) {
        assert!(
            (duplicated.get(k) - sv_d.get(k)).abs() <= 1e-10 * (1.0 + sv_m.get(0)),
            "dilation spectrum mismatch at position {k}"
        );
    }
    println!("dilation spectrum = σ(M) duplicated ✓");

    // block_compose and partition are inverse operations.
    let a = ComplexMatrix::diag_real(&[1.0, 2.0]);
    let b = ComplexMatrix::from_real(2, 1, &[5.0, 6.0]).unwrap();
    let c = ComplexMatrix::zeros(1, 2);
    let d = ComplexMatrix::diag_real(&[9.0]);
    let full = block_compose(&[vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]]).unwrap();
    println!("\ncomposed a 3×3 from blocks of sizes (2,1)×(2,1)");
    let grid = full.partition(&[2, 1], &[2, 1]).expect("partition");
    assert_eq!(grid[0][0], a);
    assert_eq!(grid[0][1], b);
    assert_eq!(grid[1][0], c);
    assert_eq!(grid[1][1], d);
    println!("partition recovers every block exactly ✓");

    // Polar decomposition: M = U·|M| with U unitary on the square case.
    let square = ComplexMatrix::from_real(2, 2, &[4.0, 1.0, 2.0, 2.0]).unwrap();
    let (u, abs_part) = polar(&square).expect("polar");
    let reconstructed = u.mul(&abs_part);
    assert!(reconstructed.sub(&square).max_abs() < 1e-12);
    println!("\npolar factors reconstruct M to {:.1e}", reconstructed.sub(&square).max_abs());

    // The pinching fact, through the statement catalog: the diagonal blocks
    // of a PSD block matrix are majorized by the full matrix — weak
    // majorization plus exact trace equality.
    let instance = sample_instance(StatementId::lemma_3, &[2, 3, 2], derive_subseed(4, &[0]))
        .expect("pinching instance");
    let result = check_structural(StatementId::lemma_3, &instance).expect("check");
    println!("\npinching on a (2,3,2)-partitioned PSD matrix: {}", result.verdict);
    println!("  diag-blocks trace {:.9}", result.lhs.total());
    println!("  full matrix trace {:.9}", result.rhs.total());
    assert_eq!(result.verdict, Verdict::Holds);

    // The cross-checking decomposition path agrees with the primary one.
    let dec = Decomposer::recheck();
    let sv_again = dec.sv(&square).expect("recheck svd");
    let sv_primary = Decomposer::primary().sv(&square).expect("primary svd");
    for k in 0..2 {
        assert!((sv_again.get(k) - sv_primary.get(k)).abs() < 1e-9 * (1.0 + sv_primary.get(0)));
    }
    println!("\nprimary and recheck decompositions agree on σ ✓");
}

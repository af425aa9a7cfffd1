//! Dense complex matrices and the structural operations the statement
//! catalog is built from: absolute value, polar factors, PSD function
//! calculus, Hermitian dilation, block composition, congruence, and
//! tolerance-relative class predicates.
//!
//! Everything is sized for exhaustive randomized checking of small matrices
//! (dimensions up to a few dozen), not for large-scale numerics: clarity and
//! failure loudness win over throughput.

mod decomp;

pub use decomp::{expm_i_hermitian, Decomposer, EighFactors, SvdFactors};

use nalgebra::DMatrix;
use num_complex::Complex;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::spectra::Spectrum;

pub type C64 = Complex<f64>;

/// Default relative tolerance for class predicates.
pub const DEFAULT_CLASS_TOL: f64 = 1e-8;

/// Structural classes a matrix can be tested against. `General` accepts any
/// finite matrix; the others are tolerance-relative predicates evaluated by
/// [`classify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MatrixClass {
    General,
    Hermitian,
    PositiveSemidefinite,
    Normal,
    /// Square with smallest singular value ≥ 1 (up to tolerance).
    Expansive,
    /// Largest singular value ≤ 1 (up to tolerance).
    Contraction,
    Unitary,
}

/// A dense complex matrix with row-major JSON wire format
/// `{"rows": n, "cols": m, "re": [...], "im": [...]}`.
///
/// All entries are finite by construction; deserialization enforces the same.
/// Round-trips through JSON are bit-exact (serde_json emits shortest
/// representations that parse back to the identical double).
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    m: DMatrix<C64>,
}

impl std::fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ComplexMatrix({}x{})", self.rows(), self.cols())?;
        if self.rows() * self.cols() <= 16 {
            write!(f, " [")?;
            for i in 0..self.rows() {
                if i > 0 {
                    write!(f, "; ")?;
                }
                for j in 0..self.cols() {
                    if j > 0 {
                        write!(f, ", ")?;
                    }
                    let z = self.get(i, j);
                    write!(f, "{:.4}{:+.4}i", z.re, z.im)?;
                }
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl ComplexMatrix {
    /// Builds from row-major entries. Rejects empty shapes, length mismatches
    /// and non-finite entries.
    pub fn new(rows: usize, cols: usize, row_major: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("empty shape {rows}x{cols}")));
        }
        if row_major.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} needs {} entries, got {}",
                rows * cols,
                row_major.len()
            )));
        }
        let m = DMatrix::from_fn(rows, cols, |i, j| row_major[i * cols + j]);
        let out = ComplexMatrix { m };
        out.check_finite()?;
        Ok(out)
    }

    /// Builds from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, row_major: &[f64]) -> Result<Self> {
        ComplexMatrix::new(rows, cols, row_major.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        ComplexMatrix { m: DMatrix::from_fn(rows, cols, f) }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix { m: DMatrix::zeros(rows, cols) }
    }

    pub fn identity(n: usize) -> Self {
        ComplexMatrix { m: DMatrix::identity(n, n) }
    }

    pub fn diag_real(d: &[f64]) -> Self {
        ComplexMatrix::from_fn(d.len(), d.len(), |i, j| {
            if i == j {
                C64::new(d[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    pub fn diag_complex(d: &[C64]) -> Self {
        ComplexMatrix::from_fn(d.len(), d.len(), |i, j| {
            if i == j {
                d[i]
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    pub(crate) fn from_dmatrix(m: DMatrix<C64>) -> Self {
        ComplexMatrix { m }
    }

    pub(crate) fn as_dmatrix(&self) -> &DMatrix<C64> {
        &self.m
    }

    pub fn rows(&self) -> usize {
        self.m.nrows()
    }

    pub fn cols(&self) -> usize {
        self.m.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.m[(i, j)]
    }

    pub fn entries_row_major(&self) -> Vec<C64> {
        let mut out = Vec::with_capacity(self.rows() * self.cols());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.push(self.m[(i, j)]);
            }
        }
        out
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        ComplexMatrix { m: self.m.adjoint() }
    }

    pub fn scale(&self, s: f64) -> ComplexMatrix {
        ComplexMatrix { m: &self.m * C64::new(s, 0.0) }
    }

    pub fn scale_complex(&self, s: C64) -> ComplexMatrix {
        ComplexMatrix { m: &self.m * s }
    }

    pub fn add(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            (self.rows(), self.cols()),
            (other.rows(), other.cols()),
            "add: shape mismatch"
        );
        ComplexMatrix { m: &self.m + &other.m }
    }

    pub fn sub(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            (self.rows(), self.cols()),
            (other.rows(), other.cols()),
            "sub: shape mismatch"
        );
        ComplexMatrix { m: &self.m - &other.m }
    }

    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols(), other.rows(), "mul: inner dimension mismatch");
        ComplexMatrix { m: &self.m * &other.m }
    }

    pub fn trace(&self) -> C64 {
        self.m.trace()
    }

    /// Real part of the trace; the imaginary part of traces of Hermitian
    /// expressions is roundoff and is discarded deliberately.
    pub fn trace_real(&self) -> f64 {
        self.m.trace().re
    }

    /// `(M + M*)/2` — the Hermitian part; also used to re-symmetrize results
    /// that are Hermitian in exact arithmetic.
    pub fn hermitian_part(&self) -> ComplexMatrix {
        assert!(self.is_square(), "hermitian_part needs a square matrix");
        ComplexMatrix { m: (&self.m + self.m.adjoint()) * C64::new(0.5, 0.0) }
    }

    /// Largest entry modulus. Zero for the zero matrix.
    pub fn max_abs(&self) -> f64 {
        self.m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    fn check_finite(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::NonFinite("matrix entry".into()))
        }
    }

    /// Entrywise p-norm `(Σ |m_ij|^p)^{1/p}` for p ≥ 1, scaled against
    /// overflow the same way as the Schatten norm.
    pub fn entrywise_p_norm(&self, p: f64) -> Result<f64> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::Domain(format!("entrywise norm needs p >= 1, got {p}")));
        }
        let top = self.max_abs();
        if p.is_infinite() || top == 0.0 {
            return Ok(top);
        }
        let sum: f64 = self.m.iter().map(|z| (z.norm() / top).powf(p)).sum();
        Ok(top * sum.powf(1.0 / p))
    }

    /// Copy of the `h × w` window anchored at `(i0, j0)`.
    pub fn block(&self, i0: usize, j0: usize, h: usize, w: usize) -> Result<ComplexMatrix> {
        if i0 + h > self.rows() || j0 + w > self.cols() || h == 0 || w == 0 {
            return Err(Error::Dimension(format!(
                "block ({i0},{j0})+{h}x{w} out of range for {}x{}",
                self.rows(),
                self.cols()
            )));
        }
        Ok(ComplexMatrix { m: self.m.view((i0, j0), (h, w)).into_owned() })
    }

    /// Splits into a grid of blocks with the given row heights and column
    /// widths. The sizes must tile the matrix exactly.
    pub fn partition(
        &self,
        row_sizes: &[usize],
        col_sizes: &[usize],
    ) -> Result<Vec<Vec<ComplexMatrix>>> {
        if row_sizes.iter().sum::<usize>() != self.rows()
            || col_sizes.iter().sum::<usize>() != self.cols()
        {
            return Err(Error::Dimension(format!(
                "partition {row_sizes:?} x {col_sizes:?} does not tile {}x{}",
                self.rows(),
                self.cols()
            )));
        }
        if row_sizes.iter().any(|&s| s == 0) || col_sizes.iter().any(|&s| s == 0) {
            return Err(Error::Dimension("partition contains an empty block".into()));
        }
        let mut out = Vec::with_capacity(row_sizes.len());
        let mut i0 = 0;
        for &h in row_sizes {
            let mut row = Vec::with_capacity(col_sizes.len());
            let mut j0 = 0;
            for &w in col_sizes {
                row.push(self.block(i0, j0, h, w)?);
                j0 += w;
            }
            out.push(row);
            i0 += h;
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// wire format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct Wire {
    rows: usize,
    cols: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = self.entries_row_major();
        Wire {
            rows: self.rows(),
            cols: self.cols(),
            re: entries.iter().map(|z| z.re).collect(),
            im: entries.iter().map(|z| z.im).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::deserialize(de)?;
        if w.re.len() != w.rows * w.cols || w.im.len() != w.rows * w.cols {
            return Err(serde::de::Error::custom("re/im length does not match rows*cols"));
        }
        let entries: Vec<C64> =
            w.re.iter().zip(&w.im).map(|(&re, &im)| C64::new(re, im)).collect();
        ComplexMatrix::new(w.rows, w.cols, entries).map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// structural operations
// ---------------------------------------------------------------------------

/// Singular values of `M`, non-increasing.
pub fn svd_spectrum(m: &ComplexMatrix) -> Result<Spectrum> {
    Decomposer::primary().sv(m)
}

/// The absolute value `|M| = (M*M)^{1/2}`, computed from the SVD as
/// `V Σ V*` rather than by square-rooting `M*M`, which keeps small singular
/// values accurate near rank deficiency. Accepts rectangular input; the
/// result is `cols × cols` Hermitian PSD.
pub fn abs(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    abs_with(&Decomposer::primary(), m)
}

pub(crate) fn abs_with(dec: &Decomposer, m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let f = dec.svd(m)?;
    Ok(f.v_sigma_vh().hermitian_part())
}

/// Applies a scalar function to a positive semidefinite matrix through its
/// eigendecomposition: `f(A) = U f(Λ) U*`. The input must classify as PSD at
/// `class_tol`; eigenvalue roundoff below zero is clamped before `f` is
/// applied, so `f` only ever sees `[0, ∞)`.
pub fn apply_psd_function(
    a: &ComplexMatrix,
    f: impl Fn(f64) -> f64,
    class_tol: f64,
) -> Result<ComplexMatrix> {
    apply_psd_function_with(&Decomposer::primary(), a, f, class_tol)
}

pub(crate) fn apply_psd_function_with(
    dec: &Decomposer,
    a: &ComplexMatrix,
    f: impl Fn(f64) -> f64,
    class_tol: f64,
) -> Result<ComplexMatrix> {
    if !classify(a, MatrixClass::PositiveSemidefinite, class_tol)? {
        return Err(Error::Class(format!(
            "apply_psd_function needs a PSD input (tol {class_tol:.1e})"
        )));
    }
    let eig = dec.eigh(&a.hermitian_part())?;
    let mapped: Vec<f64> = eig.values.iter().map(|&l| f(l.max(0.0))).collect();
    Ok(eig.u_lambda_uh(&mapped).hermitian_part())
}

/// Polar decomposition `M = W · |M|` of a square matrix, with `W = U V*`
/// unitary from the SVD. `W` is a genuine unitary even when `M` is singular
/// (the SVD factors are complete).
pub fn polar(m: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "polar needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let f = Decomposer::primary().svd(m)?;
    let w = f.u.mul(&f.v_h);
    let p = f.v_sigma_vh().hermitian_part();
    Ok((w, p))
}

/// The Hermitian dilation `[[0, M], [M*, 0]]`. Its eigenvalues are `±σ_i(M)`,
/// so its singular spectrum is the singular spectrum of `M` duplicated — the
/// standard device for moving a general matrix into the Hermitian world.
pub fn hermitian_dilation(m: &ComplexMatrix) -> ComplexMatrix {
    let (r, c) = (m.rows(), m.cols());
    let adj = m.adjoint();
    ComplexMatrix::from_fn(r + c, r + c, |i, j| {
        if i < r && j >= r {
            m.get(i, j - r)
        } else if i >= r && j < r {
            adj.get(i - r, j)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Assembles a block grid into one matrix. Row heights must agree across
/// each grid row and column widths down each grid column; anything ragged is
/// a dimension error.
pub fn block_compose(grid: &[Vec<ComplexMatrix>]) -> Result<ComplexMatrix> {
    if grid.is_empty() || grid.iter().any(|r| r.is_empty()) {
        return Err(Error::Dimension("empty block grid".into()));
    }
    let ncols = grid[0].len();
    if grid.iter().any(|r| r.len() != ncols) {
        return Err(Error::Dimension("block grid rows have different lengths".into()));
    }
    let row_heights: Vec<usize> = grid.iter().map(|r| r[0].rows()).collect();
    let col_widths: Vec<usize> = grid[0].iter().map(|b| b.cols()).collect();
    for (bi, row) in grid.iter().enumerate() {
        for (bj, b) in row.iter().enumerate() {
            if b.rows() != row_heights[bi] || b.cols() != col_widths[bj] {
                return Err(Error::Dimension(format!(
                    "ragged block at ({bi},{bj}): {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    row_heights[bi],
                    col_widths[bj]
                )));
            }
        }
    }
    let total_r: usize = row_heights.iter().sum();
    let total_c: usize = col_widths.iter().sum();
    let mut m = DMatrix::<C64>::zeros(total_r, total_c);
    let mut i0 = 0;
    for (bi, row) in grid.iter().enumerate() {
        let mut j0 = 0;
        for b in row {
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    m[(i0 + i, j0 + j)] = b.get(i, j);
                }
            }
            j0 += b.cols();
        }
        i0 += row_heights[bi];
    }
    Ok(ComplexMatrix { m })
}

/// The congruence `Z* A Z` for `A` square `n×n` and `Z` of shape `n×k`.
/// Hermitian-ness of `A` carries over up to roundoff.
pub fn congruence(z: &ComplexMatrix, a: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "congruence: A must be square, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if z.rows() != a.rows() {
        return Err(Error::Dimension(format!(
            "congruence: Z is {}x{} but A is {}x{}",
            z.rows(),
            z.cols(),
            a.rows(),
            a.cols()
        )));
    }
    Ok(z.adjoint().mul(a).mul(z))
}

/// Tests membership in a matrix class, with tolerances relative to the
/// matrix's own scale. All predicates are computed from singular values or
/// Hermitian eigenvalues, never from entry patterns, so a Hermitian matrix
/// stored with roundoff asymmetry still classifies as Hermitian.
pub fn classify(m: &ComplexMatrix, class: MatrixClass, tol: f64) -> Result<bool> {
    m.check_finite()?;
    let dec = Decomposer::primary();
    match class {
        MatrixClass::General => Ok(true),
        MatrixClass::Hermitian => {
            if !m.is_square() {
                return Ok(false);
            }
            let diff = m.sub(&m.adjoint());
            let scale = op_norm(&dec, m)?;
            Ok(op_norm(&dec, &diff)? <= tol * (1.0 + scale))
        }
        MatrixClass::PositiveSemidefinite => {
            if !classify(m, MatrixClass::Hermitian, tol)? {
                return Ok(false);
            }
            let eig = dec.eigh(&m.hermitian_part())?;
            let scale = eig.values.first().map(|v| v.abs()).unwrap_or(0.0);
            let min = eig.values.last().copied().unwrap_or(0.0);
            Ok(min >= -tol * (1.0 + scale))
        }
        MatrixClass::Normal => {
            if !m.is_square() {
                return Ok(false);
            }
            let comm = m.adjoint().mul(m).sub(&m.mul(&m.adjoint()));
            let scale = op_norm(&dec, m)?;
            Ok(op_norm(&dec, &comm)? <= tol * (1.0 + scale * scale))
        }
        MatrixClass::Expansive => {
            if !m.is_square() {
                return Ok(false);
            }
            let sv = dec.sv(m)?;
            Ok(sv.get(m.rows() - 1) >= 1.0 - tol)
        }
        MatrixClass::Contraction => {
            let sv = dec.sv(m)?;
            Ok(sv.get(0) <= 1.0 + tol)
        }
        MatrixClass::Unitary => {
            if !m.is_square() {
                return Ok(false);
            }
            let gram = m.adjoint().mul(m);
            let dev = gram.sub(&ComplexMatrix::identity(m.rows()));
            let scale = op_norm(&dec, m)?;
            Ok(op_norm(&dec, &dev)? <= tol * (1.0 + scale * scale))
        }
    }
}

/// Operator norm (largest singular value) through the given decomposer.
pub(crate) fn op_norm(dec: &Decomposer, m: &ComplexMatrix) -> Result<f64> {
    Ok(dec.sv(m)?.get(0))
}

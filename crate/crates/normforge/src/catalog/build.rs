//! Hypothesis validation and side-by-side construction for every statement.
//!
//! `build_comparison` turns a sampled instance into the two objects the
//! statement compares — spectra for the all-norms and majorization
//! relations, scalars for operator-norm and trace comparisons — after
//! gating the instance against the statement's hypothesis (matrix classes,
//! function flags, exponent ranges, shapes). Every construction is
//! parameterized by a [`Decomposer`] so the same instance can be evaluated
//! through two independent numeric paths.

use crate::catalog::StatementId;
use crate::error::{Error, Result};
use crate::funcs::ScalarFunction;
use crate::gen::{StatementInstance, Term};
use crate::linalg::{
    block_compose, classify, congruence, ComplexMatrix, Decomposer, MatrixClass, C64,
    DEFAULT_CLASS_TOL,
};
use crate::spectra::{
    log_violation_margin, majorize, violation_margin, weak_log_majorize, weak_majorize, Spectrum,
    TolerancePolicy,
};

/// The two sides of a statement, reduced to comparable data.
#[derive(Clone, Debug)]
pub enum Comparison {
    /// Weak majorization of singular spectra — equivalent to the inequality
    /// holding in every symmetric norm at once.
    Spectra { lhs: Spectrum, rhs: Spectrum },
    /// A single scalar inequality (operator norm, trace sum, or norm value).
    Scalars { lhs: f64, rhs: f64 },
    /// Weak log-majorization of spectra (partial products).
    LogSpectra { lhs: Spectrum, rhs: Spectrum },
    /// Majorization in the strong sense: weak majorization plus equality of
    /// totals.
    MajorizeExact { lhs: Spectrum, rhs: Spectrum },
}

impl Comparison {
    /// `(holds, margin)` under the tolerance policy. The margin is the
    /// normalized worst-case excess of the left side; positive means some
    /// partial sum (or the scalar) exceeds the right side.
    pub fn evaluate(&self, tol: &TolerancePolicy) -> (bool, f64) {
        match self {
            Comparison::Spectra { lhs, rhs } => {
                (weak_majorize(lhs, rhs, tol), violation_margin(lhs, rhs))
            }
            Comparison::Scalars { lhs, rhs } => {
                (tol.le(*lhs, *rhs), (lhs - rhs) / (1.0 + rhs.abs()))
            }
            Comparison::LogSpectra { lhs, rhs } => {
                (weak_log_majorize(lhs, rhs, tol), log_violation_margin(lhs, rhs))
            }
            Comparison::MajorizeExact { lhs, rhs } => {
                let trace_gap = (lhs.total() - rhs.total()).abs() / (1.0 + rhs.total().abs());
                (majorize(lhs, rhs, tol), violation_margin(lhs, rhs).max(trace_gap))
            }
        }
    }

    /// The same comparison with both sides divided by their common largest
    /// value, so tolerances act at unit scale. Used on the recheck path.
    pub fn rescaled(&self) -> Comparison {
        fn scale_spec(s: &Spectrum, d: f64) -> Spectrum {
            s.map(|x| x / d).expect("rescaling preserves validity")
        }
        match self {
            Comparison::Spectra { lhs, rhs } => {
                let d = lhs.get(0).max(rhs.get(0));
                if d <= 0.0 {
                    return self.clone();
                }
                Comparison::Spectra { lhs: scale_spec(lhs, d), rhs: scale_spec(rhs, d) }
            }
            Comparison::Scalars { lhs, rhs } => {
                let d = lhs.abs().max(rhs.abs());
                if d <= 0.0 {
                    return self.clone();
                }
                Comparison::Scalars { lhs: lhs / d, rhs: rhs / d }
            }
            Comparison::LogSpectra { lhs, rhs } => {
                let d = lhs.get(0).max(rhs.get(0));
                if d <= 0.0 {
                    return self.clone();
                }
                Comparison::LogSpectra { lhs: scale_spec(lhs, d), rhs: scale_spec(rhs, d) }
            }
            Comparison::MajorizeExact { lhs, rhs } => {
                let d = lhs.get(0).max(rhs.get(0));
                if d <= 0.0 {
                    return self.clone();
                }
                Comparison::MajorizeExact { lhs: scale_spec(lhs, d), rhs: scale_spec(rhs, d) }
            }
        }
    }

    /// The two sides as spectra for reporting; scalars become singletons.
    pub fn sides(&self) -> (Spectrum, Spectrum) {
        match self {
            Comparison::Spectra { lhs, rhs }
            | Comparison::LogSpectra { lhs, rhs }
            | Comparison::MajorizeExact { lhs, rhs } => (lhs.clone(), rhs.clone()),
            Comparison::Scalars { lhs, rhs } => (
                Spectrum::new(vec![lhs.max(0.0)]).expect("finite scalar"),
                Spectrum::new(vec![rhs.max(0.0)]).expect("finite scalar"),
            ),
        }
    }
}

// ---------------------------------------------------------------------------
// hypothesis gating
// ---------------------------------------------------------------------------

struct RealTerm {
    a: ComplexMatrix,
    z: Option<ComplexMatrix>,
}

struct Realized {
    terms: Vec<RealTerm>,
    grid: Option<Vec<Vec<ComplexMatrix>>>,
}

fn fail(id: StatementId, predicate: impl Into<String>) -> Error {
    Error::hypothesis(id.as_str(), predicate)
}

fn gate_class(
    id: StatementId,
    m: &ComplexMatrix,
    class: MatrixClass,
    what: &str,
) -> Result<()> {
    if class != MatrixClass::General && !classify(m, class, DEFAULT_CLASS_TOL)? {
        return Err(fail(id, format!("{what} must classify as {class:?}")));
    }
    Ok(())
}

fn gate_function(
    id: StatementId,
    f: Option<&ScalarFunction>,
    needs_e_convex: bool,
    sqrt_concave_only: bool,
) -> Result<ScalarFunction> {
    let f = *f.ok_or_else(|| fail(id, "a scalar function is required"))?;
    let flags = f.flags();
    if sqrt_concave_only {
        if !flags.sqrt_concave || !flags.f0_nonneg {
            return Err(fail(id, format!("{f} must have concave square-root profile with f(0) >= 0")));
        }
        return Ok(f);
    }
    if !flags.nonneg || !flags.concave {
        return Err(fail(id, format!("{f} must be non-negative and concave")));
    }
    if needs_e_convex && !flags.e_convex {
        return Err(fail(id, format!("{f} must be convex in the exponent variable")));
    }
    Ok(f)
}

fn gate_exponents(id: StatementId, inst: &StatementInstance, count: usize) -> Result<()> {
    if inst.exponents.len() != count {
        return Err(fail(
            id,
            format!("expected {count} exponent(s), got {}", inst.exponents.len()),
        ));
    }
    let (lo, hi) = crate::gen::exponent_range(id).unwrap_or((0.0, f64::INFINITY));
    for &e in &inst.exponents {
        if !e.is_finite() || e < lo || e > hi {
            return Err(fail(id, format!("exponent {e} outside [{lo}, {hi}]")));
        }
    }
    Ok(())
}

/// Realizes terms, checking term count, `z` presence, class membership, and
/// equal square dimensions.
fn gate_terms(
    id: StatementId,
    terms: &[Term],
    count: std::ops::RangeInclusive<usize>,
    a_class: MatrixClass,
    z_class: Option<MatrixClass>,
) -> Result<Vec<RealTerm>> {
    if !count.contains(&terms.len()) {
        return Err(fail(
            id,
            format!("expected {count:?} term(s), got {}", terms.len()),
        ));
    }
    let mut out = Vec::with_capacity(terms.len());
    let mut dim = None;
    for (i, t) in terms.iter().enumerate() {
        let a = t.a.realize()?;
        if !a.is_square() {
            return Err(fail(id, format!("term {i}: matrix must be square")));
        }
        match (dim, a.rows()) {
            (None, d) => dim = Some(d),
            (Some(d0), d) if d0 != d => {
                return Err(fail(id, format!("term {i}: dimension {d} != {d0}")))
            }
            _ => {}
        }
        gate_class(id, &a, a_class, &format!("term {i} matrix"))?;
        let z = match (&t.z, z_class) {
            (Some(zp), Some(zc)) => {
                let z = zp.realize()?;
                if z.rows() != a.rows() || !z.is_square() {
                    return Err(fail(id, format!("term {i}: factor shape mismatch")));
                }
                gate_class(id, &z, zc, &format!("term {i} factor"))?;
                Some(z)
            }
            (None, Some(_)) => return Err(fail(id, format!("term {i}: outer factor required"))),
            (Some(_), None) => return Err(fail(id, format!("term {i}: unexpected outer factor"))),
            (None, None) => None,
        };
        out.push(RealTerm { a, z });
    }
    Ok(out)
}

fn gate_grid(
    id: StatementId,
    inst: &StatementInstance,
    equal_square_normal: bool,
) -> Result<Vec<Vec<ComplexMatrix>>> {
    let grid = inst
        .grid
        .as_ref()
        .ok_or_else(|| fail(id, "a block grid is required"))?;
    let k = inst.dims.len();
    if grid.len() != k || grid.iter().any(|r| r.len() != k) {
        return Err(fail(id, format!("grid must be {k}x{k} to match dims {:?}", inst.dims)));
    }
    let mut out = Vec::with_capacity(k);
    for (i, row) in grid.iter().enumerate() {
        let mut r = Vec::with_capacity(k);
        for (j, cell) in row.iter().enumerate() {
            let m = cell.realize()?;
            if m.rows() != inst.dims[i] || m.cols() != inst.dims[j] {
                return Err(fail(
                    id,
                    format!(
                        "block ({i},{j}) is {}x{}, expected {}x{}",
                        m.rows(),
                        m.cols(),
                        inst.dims[i],
                        inst.dims[j]
                    ),
                ));
            }
            if equal_square_normal {
                gate_class(id, &m, MatrixClass::Normal, &format!("block ({i},{j})"))?;
            }
            r.push(m);
        }
        out.push(r);
    }
    if equal_square_normal && inst.dims.iter().any(|&d| d != inst.dims[0]) {
        return Err(fail(id, "blocks must all have the same square size"));
    }
    Ok(out)
}

/// Validates the instance against its statement's hypothesis and realizes
/// all matrices. Errors name the failed predicate.
fn validate(inst: &StatementInstance) -> Result<Realized> {
    use MatrixClass::{General, Hermitian, Normal, PositiveSemidefinite as Psd};
    use StatementId as S;
    let id = inst.statement;
    let mut realized = Realized { terms: vec![], grid: None };
    match id {
        S::eq_1 | S::thm_1_1a => {
            gate_function(id, inst.function.as_ref(), false, false)?;
            realized.terms =
                gate_terms(id, &inst.terms, 1..=1, Psd, Some(MatrixClass::Expansive))?;
        }
        S::thm_1_1 => {
            gate_function(id, inst.function.as_ref(), false, false)?;
            realized.terms =
                gate_terms(id, &inst.terms, 1..=3, Psd, Some(MatrixClass::Expansive))?;
        }
        S::thm_1_1b => {
            gate_function(id, inst.function.as_ref(), false, false)?;
            realized.terms = gate_terms(id, &inst.terms, 2..=2, Psd, None)?;
        }
        S::cor_1_7 => {
            gate_exponents(id, inst, 1)?;
            realized.terms =
                gate_terms(id, &inst.terms, 1..=3, Psd, Some(MatrixClass::Expansive))?;
        }
        S::eq_2 => {
            gate_function(id, inst.function.as_ref(), false, false)?;
            realized.terms =
                gate_terms(id, &inst.terms, 1..=1, Normal, Some(MatrixClass::Expansive))?;
        }
        S::cor_1_2 | S::conj_1 => {
            gate_function(id, inst.function.as_ref(), false, false)?;
            realized.terms =
                gate_terms(id, &inst.terms, 1..=3, Normal, Some(MatrixClass::Expansive))?;
        }
        S::cor_1_4 => {
            gate_function(id, inst.function.as_ref(), true, false)?;
            realized.terms =
                gate_terms(id, &inst.terms, 1..=3, Normal, Some(MatrixClass::Expansive))?;
        }
        S::horn_step => {
            realized.terms =
                gate_terms(id, &inst.terms, 1..=3, Normal, Some(MatrixClass::Expansive))?;
        }
        S::cor_1_5 => {
            gate_function(id, inst.function.as_ref(), true, false)?;
            realized.terms = gate_terms(id, &inst.terms, 2..=2, Normal, None)?;
        }
        S::cor_1_6 => {
            gate_exponents(id, inst, 1)?;
            realized.terms = gate_terms(id, &inst.terms, 2..=2, Normal, None)?;
        }
        S::cor_1_3 => {
            gate_function(id, inst.function.as_ref(), false, false)?;
            realized.terms = gate_terms(id, &inst.terms, 1..=1, General, None)?;
        }
        S::ando_zhan => {
            gate_exponents(id, inst, 1)?;
            realized.terms = gate_terms(id, &inst.terms, 2..=2, Psd, None)?;
        }
        S::q3_a | S::q3_c | S::q4 | S::heinz => {
            gate_exponents(id, inst, 2)?;
            realized.terms = gate_terms(id, &inst.terms, 2..=2, Psd, None)?;
        }
        S::q3_b => {
            if inst.exponents.len() < 4 || inst.exponents.len() % 2 != 0 {
                return Err(fail(id, "needs an even number (>= 4) of exponents"));
            }
            gate_exponents(id, inst, inst.exponents.len())?;
            realized.terms = gate_terms(id, &inst.terms, 2..=2, Psd, None)?;
        }
        S::eq_3 => {
            gate_function(id, inst.function.as_ref(), false, false)?;
            realized.grid = Some(gate_grid(id, inst, false)?);
        }
        S::thm_2_7 => {
            gate_function(id, inst.function.as_ref(), false, true)?;
            realized.grid = Some(gate_grid(id, inst, false)?);
        }
        S::thm_2_1 => {
            gate_function(id, inst.function.as_ref(), true, false)?;
            realized.grid = Some(gate_grid(id, inst, true)?);
        }
        S::cor_2_2 | S::conj_2 => {
            gate_function(id, inst.function.as_ref(), false, false)?;
            realized.grid = Some(gate_grid(id, inst, true)?);
        }
        S::cor_2_3 => {
            gate_function(id, inst.function.as_ref(), true, false)?;
            realized.terms = gate_terms(id, &inst.terms, 3..=3, General, None)?;
            gate_class(id, &realized.terms[1].a, Normal, "the off-diagonal block")?;
        }
        S::cor_2_4 => {
            gate_function(id, inst.function.as_ref(), true, false)?;
            realized.terms = gate_terms(id, &inst.terms, 2..=2, General, None)?;
        }
        S::thm_2_5 | S::conj_3 | S::conj_4 => {
            let e_convex = id == S::thm_2_5;
            gate_function(id, inst.function.as_ref(), e_convex, false)?;
            let class = if id == S::conj_4 { Normal } else { Hermitian };
            realized.terms = gate_terms(id, &inst.terms, 1..=1, class, None)?;
            let k = inst.dims.len();
            let d = inst.dims[0];
            if k < 2 || inst.dims.iter().any(|&x| x != d) {
                return Err(fail(id, format!("dims {:?} must be >= 2 equal block sizes", inst.dims)));
            }
            if realized.terms[0].a.rows() != k * d {
                return Err(fail(id, format!("matrix must be {}x{} for dims {:?}", k * d, k * d, inst.dims)));
            }
        }
        S::cor_2_6 => {
            gate_exponents(id, inst, 1)?;
            realized.terms = gate_terms(id, &inst.terms, 1..=1, Hermitian, None)?;
            let d = inst.dims[0];
            if inst.dims != vec![d, d] || realized.terms[0].a.rows() != 2 * d {
                return Err(fail(id, "needs a 2d x 2d matrix split into four d x d blocks"));
            }
        }
        S::schatten_entrywise => {
            gate_exponents(id, inst, 1)?;
            if inst.exponents[0] < 1.0 {
                return Err(fail(id, "the norm exponent must be >= 1"));
            }
            realized.terms = gate_terms(id, &inst.terms, 1..=1, General, None)?;
        }
        S::lemma_1 => {
            realized.terms = gate_terms(id, &inst.terms, 2..=2, Psd, Some(Psd))?;
            // the lemma's premise: each left matrix is weakly majorized by
            // its partner
            let dec = Decomposer::primary();
            let tol = TolerancePolicy::default();
            for (i, t) in realized.terms.iter().enumerate() {
                let minor = dec.sv(&t.a)?;
                let major = dec.sv(t.z.as_ref().expect("gated"))?;
                if !weak_majorize(&minor, &major, &tol) {
                    return Err(fail(id, format!("pair {i}: left spectrum must be weakly majorized by the right")));
                }
            }
        }
        S::lemma_2 => {
            realized.terms = gate_terms(id, &inst.terms, 2..=2, Psd, None)?;
        }
        S::lemma_3 => {
            realized.terms = gate_terms(id, &inst.terms, 1..=1, Psd, None)?;
            let total: usize = inst.dims.iter().sum();
            if inst.dims.len() < 2 {
                return Err(fail(id, "needs at least two diagonal blocks"));
            }
            if realized.terms[0].a.rows() != total {
                return Err(fail(id, format!("matrix size must equal the partition total {total}")));
            }
        }
        S::ex_2_8 => {
            realized.terms = gate_terms(id, &inst.terms, 3..=3, General, None)?;
            gate_class(id, &realized.terms[0].a, Hermitian, "first block")?;
            gate_class(id, &realized.terms[1].a, Hermitian, "second block")?;
            gate_class(id, &realized.terms[2].a, Hermitian, "third block")?;
        }
    }
    Ok(realized)
}

// ---------------------------------------------------------------------------
// construction helpers
// ---------------------------------------------------------------------------

/// `f` mapped over clamped eigenvalues: `f(A)` for Hermitian PSD `A`.
fn f_psd(dec: &Decomposer, a: &ComplexMatrix, f: &ScalarFunction) -> Result<ComplexMatrix> {
    let eig = dec.eigh(a)?;
    let mapped: Result<Vec<f64>> = eig.values.iter().map(|&l| f.eval(l.max(0.0))).collect();
    Ok(eig.u_lambda_uh(&mapped?).hermitian_part())
}

/// `A^p` for Hermitian PSD `A` (eigenvalue roundoff clamped at zero).
fn pow_psd(dec: &Decomposer, a: &ComplexMatrix, p: f64) -> Result<ComplexMatrix> {
    let eig = dec.eigh(a)?;
    let mapped: Vec<f64> = eig.values.iter().map(|&l| pow0(l.max(0.0), p)).collect();
    Ok(eig.u_lambda_uh(&mapped).hermitian_part())
}

/// `x^p` with the 0^p = 0 convention for every positive `p`.
fn pow0(x: f64, p: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x.powf(p)
    }
}

/// `f(|M|)` for any (possibly rectangular) `M`: the singular values, padded
/// with the zero eigenvalues `|M|` genuinely has, are mapped through `f`.
fn f_abs(dec: &Decomposer, m: &ComplexMatrix, f: &ScalarFunction) -> Result<ComplexMatrix> {
    let fac = dec.svd(m)?;
    let c = fac.v_h.cols();
    let mapped: Result<Vec<f64>> = (0..c).map(|i| f.eval(fac.sigma.get(i))).collect();
    let v = fac.v_h.adjoint();
    Ok(v.mul(&ComplexMatrix::diag_real(&mapped?)).mul(&fac.v_h).hermitian_part())
}

/// `f(|M*|)`: same singular values, but assembled on the left factor.
fn f_abs_adjoint(dec: &Decomposer, m: &ComplexMatrix, f: &ScalarFunction) -> Result<ComplexMatrix> {
    let fac = dec.svd(m)?;
    let r = fac.u.rows();
    let mapped: Result<Vec<f64>> = (0..r).map(|i| f.eval(fac.sigma.get(i))).collect();
    Ok(fac.u.mul(&ComplexMatrix::diag_real(&mapped?)).mul(&fac.u.adjoint()).hermitian_part())
}

/// Spectrum of `f(|M|)` for square `M`: the singular values mapped through
/// `f` and re-sorted (`f` need not be monotone).
fn spectrum_f_abs(dec: &Decomposer, m: &ComplexMatrix, f: &ScalarFunction) -> Result<Spectrum> {
    let sv = dec.sv(m)?;
    let mapped: Result<Vec<f64>> = (0..m.cols()).map(|i| f.eval(sv.get(i))).collect();
    Spectrum::new(mapped?)
}

/// `Tr f(|M|)` including the `f(0)` contribution of each zero eigenvalue a
/// rectangular block's absolute value carries.
fn trace_f_abs(dec: &Decomposer, m: &ComplexMatrix, f: &ScalarFunction) -> Result<f64> {
    let sv = dec.sv(m)?;
    let mut total = 0.0;
    for i in 0..sv.len() {
        total += f.eval(sv.get(i))?;
    }
    let zeros = m.cols() - sv.len();
    if zeros > 0 {
        total += zeros as f64 * f.eval(0.0)?;
    }
    Ok(total)
}

/// `Σ Zᵢ* Mᵢ Zᵢ` with the identity used where a term has no factor.
fn congruence_sum(terms: &[RealTerm], images: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    debug_assert_eq!(terms.len(), images.len());
    let mut acc: Option<ComplexMatrix> = None;
    for (t, img) in terms.iter().zip(images) {
        let piece = match &t.z {
            Some(z) => congruence(z, img)?,
            None => img.clone(),
        };
        acc = Some(match acc {
            Some(a) => a.add(&piece),
            None => piece,
        });
    }
    Ok(acc.expect("at least one term"))
}

fn sum(ms: &[ComplexMatrix]) -> ComplexMatrix {
    let mut it = ms.iter();
    let first = it.next().expect("non-empty sum").clone();
    it.fold(first, |acc, m| acc.add(m))
}

// ---------------------------------------------------------------------------
// statement-by-statement constructions
// ---------------------------------------------------------------------------

/// Validates the instance and builds the comparison its statement makes,
/// through the given decomposition path.
pub fn build_comparison(inst: &StatementInstance, dec: &Decomposer) -> Result<Comparison> {
    let r = validate(inst)?;
    use StatementId as S;
    let id = inst.statement;
    let f = inst.function.as_ref();
    let exps = &inst.exponents;

    Ok(match id {
        // ‖f(Σ Zᵢ*AᵢZᵢ)‖ vs ‖Σ Zᵢ*f(Aᵢ)Zᵢ‖ with PSD Aᵢ — the argument of f
        // on the left is itself PSD, so no absolute value is involved.
        S::thm_1_1a | S::thm_1_1 | S::thm_1_1b => {
            let f = f.expect("gated");
            let s = congruence_sum(&r.terms, &r.terms.iter().map(|t| t.a.clone()).collect::<Vec<_>>())?;
            let eig = dec.eigh(&s)?;
            let mapped: Result<Vec<f64>> = eig.values.iter().map(|&l| f.eval(l.max(0.0))).collect();
            let lhs = Spectrum::new(mapped?)?;
            let images: Result<Vec<_>> = r.terms.iter().map(|t| f_psd(dec, &t.a, f)).collect();
            let rhs = dec.sv(&congruence_sum(&r.terms, &images?)?)?;
            Comparison::Spectra { lhs, rhs }
        }
        // trace form of the same congruence inequality
        S::eq_1 => {
            let f = f.expect("gated");
            let t = &r.terms[0];
            let s = congruence(t.z.as_ref().expect("gated"), &t.a)?;
            let eig = dec.eigh(&s)?;
            let mut lhs = 0.0;
            for &l in &eig.values {
                lhs += f.eval(l.max(0.0))?;
            }
            let rhs = congruence(t.z.as_ref().expect("gated"), &f_psd(dec, &t.a, f)?)?.trace_real();
            Comparison::Scalars { lhs, rhs }
        }
        // trace form over a normal matrix: Tr f(|Z*AZ|) vs Tr Z*f(|A|)Z
        S::eq_2 => {
            let f = f.expect("gated");
            let t = &r.terms[0];
            let s = congruence(t.z.as_ref().expect("gated"), &t.a)?;
            let lhs = trace_f_abs(dec, &s, f)?;
            let rhs =
                congruence(t.z.as_ref().expect("gated"), &f_abs(dec, &t.a, f)?)?.trace_real();
            Comparison::Scalars { lhs, rhs }
        }
        // ‖f(|Σ Zᵢ*AᵢZᵢ|)‖ vs ‖Σ Zᵢ*f(|Aᵢ|)Zᵢ‖ with normal Aᵢ
        S::cor_1_4 | S::conj_1 | S::cor_1_2 => {
            let f = f.expect("gated");
            let s = congruence_sum(&r.terms, &r.terms.iter().map(|t| t.a.clone()).collect::<Vec<_>>())?;
            let lhs = spectrum_f_abs(dec, &s, f)?;
            let images: Result<Vec<_>> = r.terms.iter().map(|t| f_abs(dec, &t.a, f)).collect();
            let rhs = dec.sv(&congruence_sum(&r.terms, &images?)?)?;
            if id == S::cor_1_2 {
                // operator-norm statement: compare only the top values
                Comparison::Scalars { lhs: lhs.get(0), rhs: rhs.get(0) }
            } else {
                Comparison::Spectra { lhs, rhs }
            }
        }
        // the log-majorization step behind the normal-family results
        S::horn_step => {
            let s = congruence_sum(&r.terms, &r.terms.iter().map(|t| t.a.clone()).collect::<Vec<_>>())?;
            let lhs = dec.sv(&s)?;
            let images: Result<Vec<_>> = r
                .terms
                .iter()
                .map(|t| Ok(dec.svd(&t.a)?.v_sigma_vh().hermitian_part()))
                .collect();
            let rhs = dec.sv(&congruence_sum(&r.terms, &images?)?)?;
            Comparison::LogSpectra { lhs, rhs }
        }
        // two normal summands: ‖f(|A+B|)‖ vs ‖f(|A|)+f(|B|)‖
        S::cor_1_5 => {
            let f = f.expect("gated");
            let s = r.terms[0].a.add(&r.terms[1].a);
            let lhs = spectrum_f_abs(dec, &s, f)?;
            let rhs = dec.sv(&f_abs(dec, &r.terms[0].a, f)?.add(&f_abs(dec, &r.terms[1].a, f)?))?;
            Comparison::Spectra { lhs, rhs }
        }
        // the power case: ‖|A+B|^p‖ vs ‖|A|^p+|B|^p‖, 0 < p ≤ 1
        S::cor_1_6 => {
            let p = exps[0];
            let f = ScalarFunction::power(p)?;
            let s = r.terms[0].a.add(&r.terms[1].a);
            let lhs = spectrum_f_abs(dec, &s, &f)?;
            let rhs = dec.sv(&f_abs(dec, &r.terms[0].a, &f)?.add(&f_abs(dec, &r.terms[1].a, &f)?))?;
            Comparison::Spectra { lhs, rhs }
        }
        // real/imaginary split at the operator norm:
        // ‖f(|Z|)‖∞ vs ‖f(|Re Z|)+f(|Im Z|)‖∞
        S::cor_1_3 => {
            let f = f.expect("gated");
            let z = &r.terms[0].a;
            let re = z.hermitian_part();
            let im = z.sub(&z.adjoint()).scale_complex(C64::new(0.0, -0.5)).hermitian_part();
            let lhs = spectrum_f_abs(dec, z, f)?.get(0);
            let rhs = dec.sv(&f_abs(dec, &re, f)?.add(&f_abs(dec, &im, f)?))?.get(0);
            Comparison::Scalars { lhs, rhs }
        }
        // reversed orientation for p ≥ 1: ‖Σ Zᵢ*Aᵢ^pZᵢ‖ vs ‖(Σ Zᵢ*AᵢZᵢ)^p‖
        S::cor_1_7 => {
            let p = exps[0];
            let powers: Result<Vec<_>> = r.terms.iter().map(|t| pow_psd(dec, &t.a, p)).collect();
            let lhs = dec.sv(&congruence_sum(&r.terms, &powers?)?)?;
            let s = congruence_sum(&r.terms, &r.terms.iter().map(|t| t.a.clone()).collect::<Vec<_>>())?;
            let eig = dec.eigh(&s)?;
            let rhs = Spectrum::new(eig.values.iter().map(|&l| pow0(l.max(0.0), p)).collect())?;
            Comparison::Spectra { lhs, rhs }
        }
        // ‖A^p+B^p‖ vs ‖(A+B)^p‖ for p ≥ 1
        S::ando_zhan => {
            let p = exps[0];
            let lhs = dec.sv(&pow_psd(dec, &r.terms[0].a, p)?.add(&pow_psd(dec, &r.terms[1].a, p)?))?;
            let eig = dec.eigh(&r.terms[0].a.add(&r.terms[1].a))?;
            let rhs = Spectrum::new(eig.values.iter().map(|&l| pow0(l.max(0.0), p)).collect())?;
            Comparison::Spectra { lhs, rhs }
        }
        // the open product questions and the proven symmetric-exponent form
        S::q3_a | S::q3_b | S::q3_c | S::q4 | S::heinz => {
            let a = &r.terms[0].a;
            let b = &r.terms[1].a;
            let ea = dec.eigh(a)?;
            let eb = dec.eigh(b)?;
            let pow_a = |p: f64| {
                ea.u_lambda_uh(&ea.values.iter().map(|&l| pow0(l.max(0.0), p)).collect::<Vec<_>>())
                    .hermitian_part()
            };
            let pow_b = |p: f64| {
                eb.u_lambda_uh(&eb.values.iter().map(|&l| pow0(l.max(0.0), p)).collect::<Vec<_>>())
                    .hermitian_part()
            };
            match id {
                S::q3_a => {
                    let (p, q) = (exps[0], exps[1]);
                    let lhs = dec.sv(&pow_a(p + q).add(&pow_b(p + q)))?;
                    let rhs = dec.sv(&pow_a(p).add(&pow_b(p)).mul(&pow_a(q).add(&pow_b(q))))?;
                    Comparison::Spectra { lhs, rhs }
                }
                S::q3_b => {
                    let pairs: Vec<(f64, f64)> =
                        exps.chunks(2).map(|c| (c[0], c[1])).collect();
                    let p_total: f64 = pairs.iter().map(|&(p, _)| p).sum();
                    let q_total: f64 = pairs.iter().map(|&(_, q)| q).sum();
                    let lhs = dec.sv(&pow_a(p_total).add(&pow_b(q_total)))?;
                    let mut prod: Option<ComplexMatrix> = None;
                    for &(p, q) in &pairs {
                        let factor = pow_a(p).add(&pow_b(q));
                        prod = Some(match prod {
                            Some(m) => m.mul(&factor),
                            None => factor,
                        });
                    }
                    let rhs = dec.sv(&prod.expect("at least two pairs"))?;
                    Comparison::Spectra { lhs, rhs }
                }
                S::q3_c => {
                    let (p, q) = (exps[0], exps[1]);
                    let lhs = dec.sv(&pow_a(p + q).add(&pow_b(p + q)))?;
                    let x = pow_a(p).add(&pow_b(p));
                    let y = pow_a(q).add(&pow_b(q));
                    let x_half = pow_psd(dec, &x, 0.5)?;
                    let rhs = dec.sv(&x_half.mul(&y).mul(&x_half))?;
                    Comparison::Spectra { lhs, rhs }
                }
                S::q4 => {
                    let (p, q) = (exps[0], exps[1]);
                    let lhs = dec.sv(&pow_a(p).mul(&pow_b(q)).add(&pow_b(p).mul(&pow_a(q))))?;
                    let rhs = dec.sv(&pow_a(p + q).add(&pow_b(p + q)))?;
                    Comparison::Spectra { lhs, rhs }
                }
                S::heinz => {
                    let (p, q) = (exps[0], exps[1]);
                    let lhs = dec.sv(&pow_a(p).mul(&pow_b(q)).add(&pow_a(q).mul(&pow_b(p))))?;
                    let rhs = dec.sv(&pow_a(p + q).add(&pow_b(p + q)))?;
                    Comparison::Spectra { lhs, rhs }
                }
                _ => unreachable!(),
            }
        }
        // trace comparison for a free partition: Tr f(|full|) vs Σ Tr f(|block|)
        S::eq_3 | S::thm_2_7 => {
            let f = f.expect("gated");
            let grid = r.grid.as_ref().expect("gated");
            let full = block_compose(grid)?;
            let lhs = trace_f_abs(dec, &full, f)?;
            let mut rhs = 0.0;
            for row in grid {
                for cell in row {
                    rhs += trace_f_abs(dec, cell, f)?;
                }
            }
            Comparison::Scalars { lhs, rhs }
        }
        // normal blocks: ‖f(|full|)‖ vs ‖Σ f(|block|)‖ (top values only for
        // the operator-norm statement)
        S::thm_2_1 | S::cor_2_2 | S::conj_2 => {
            let f = f.expect("gated");
            let grid = r.grid.as_ref().expect("gated");
            let full = block_compose(grid)?;
            let lhs = spectrum_f_abs(dec, &full, f)?;
            let images: Result<Vec<_>> =
                grid.iter().flatten().map(|m| f_abs(dec, m, f)).collect();
            let rhs = dec.sv(&sum(&images?))?;
            if id == S::cor_2_2 {
                Comparison::Scalars { lhs: lhs.get(0), rhs: rhs.get(0) }
            } else {
                Comparison::Spectra { lhs, rhs }
            }
        }
        // triangular 2×2 blocks: the right side takes the adjoint absolute
        // value of the upper-left block
        S::cor_2_3 => {
            let f = f.expect("gated");
            let a = &r.terms[0].a;
            let n = &r.terms[1].a;
            let b = &r.terms[2].a;
            let d = a.rows();
            let t = block_compose(&[
                vec![a.clone(), n.clone()],
                vec![ComplexMatrix::zeros(d, d), b.clone()],
            ])?;
            let lhs = spectrum_f_abs(dec, &t, f)?;
            let rhs = dec.sv(
                &f_abs_adjoint(dec, a, f)?.add(&f_abs(dec, n, f)?).add(&f_abs(dec, b, f)?),
            )?;
            Comparison::Spectra { lhs, rhs }
        }
        // identity off-blocks: the f(I) terms are f(1)·I by the functional
        // calculus
        S::cor_2_4 => {
            let f = f.expect("gated");
            let a = &r.terms[0].a;
            let b = &r.terms[1].a;
            let d = a.rows();
            let s = block_compose(&[
                vec![a.clone(), ComplexMatrix::identity(d)],
                vec![ComplexMatrix::identity(d), b.clone()],
            ])?;
            let lhs = spectrum_f_abs(dec, &s, f)?;
            let f1 = f.eval(1.0)?;
            let rhs = dec.sv(
                &f_abs_adjoint(dec, a, f)?
                    .add(&ComplexMatrix::identity(d).scale(2.0 * f1))
                    .add(&f_abs(dec, b, f)?),
            )?;
            Comparison::Spectra { lhs, rhs }
        }
        // full-matrix partitions: ‖f(|full|)‖ vs ‖Σ f(|block|)‖
        S::thm_2_5 | S::conj_3 | S::conj_4 => {
            let f = f.expect("gated");
            let full = &r.terms[0].a;
            let blocks = full.partition(&inst.dims, &inst.dims)?;
            let lhs = spectrum_f_abs(dec, full, f)?;
            let images: Result<Vec<_>> =
                blocks.iter().flatten().map(|m| f_abs(dec, m, f)).collect();
            let rhs = dec.sv(&sum(&images?))?;
            Comparison::Spectra { lhs, rhs }
        }
        // Hermitian four-block power inequality for 0 < p ≤ 1
        S::cor_2_6 => {
            let p = exps[0];
            let f = ScalarFunction::power(p)?;
            let full = &r.terms[0].a;
            let blocks = full.partition(&inst.dims, &inst.dims)?;
            let lhs = spectrum_f_abs(dec, full, &f)?;
            let images: Result<Vec<_>> =
                blocks.iter().flatten().map(|m| f_abs(dec, m, &f)).collect();
            let rhs = dec.sv(&sum(&images?))?;
            Comparison::Spectra { lhs, rhs }
        }
        // Schatten vs entrywise norms; orientation flips at p = 2
        S::schatten_entrywise => {
            let p = exps[0];
            let s = crate::spectra::schatten(&dec.sv(&r.terms[0].a)?, p)?;
            let e = r.terms[0].a.entrywise_p_norm(p)?;
            if p <= 2.0 {
                Comparison::Scalars { lhs: s, rhs: e }
            } else {
                Comparison::Scalars { lhs: e, rhs: s }
            }
        }
        // direct sums preserve weak majorization
        S::lemma_1 => {
            let lhs = dec.sv(&r.terms[0].a)?.direct_sum(&dec.sv(&r.terms[1].a)?);
            let rhs = dec
                .sv(r.terms[0].z.as_ref().expect("gated"))?
                .direct_sum(&dec.sv(r.terms[1].z.as_ref().expect("gated"))?);
            Comparison::Spectra { lhs, rhs }
        }
        // A⊕B is weakly majorized by (A+B)⊕0
        S::lemma_2 => {
            let lhs = dec.sv(&r.terms[0].a)?.direct_sum(&dec.sv(&r.terms[1].a)?);
            let rhs = dec.sv(&r.terms[0].a.add(&r.terms[1].a))?;
            Comparison::Spectra { lhs, rhs }
        }
        // the diagonal pinching of a PSD block matrix is majorized by the
        // full matrix, trace equality included
        S::lemma_3 => {
            let full = &r.terms[0].a;
            let blocks = full.partition(&inst.dims, &inst.dims)?;
            let mut lhs = Spectrum::new(vec![])?;
            for (i, row) in blocks.iter().enumerate() {
                lhs = lhs.direct_sum(&dec.sv(&row[i])?);
            }
            let rhs = dec.sv(full)?;
            Comparison::MajorizeExact { lhs, rhs }
        }
        // the fixed counterexample: ‖Z²‖∞ vs ‖A²+2B²+C²‖∞
        S::ex_2_8 => {
            let a = &r.terms[0].a;
            let b = &r.terms[1].a;
            let c = &r.terms[2].a;
            let z = block_compose(&[
                vec![a.clone(), b.clone()],
                vec![b.clone(), c.clone()],
            ])?;
            let lhs = dec.sv(&z.mul(&z))?.get(0);
            let rhs = dec.sv(&a.mul(a).add(&b.mul(b).scale(2.0)).add(&c.mul(c)))?.get(0);
            Comparison::Scalars { lhs, rhs }
        }
    })
}

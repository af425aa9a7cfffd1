//! Scalar functions applied to matrices through the functional calculus,
//! with machine-verified analytic flags.
//!
//! Each function carries five flags — nonnegative, concave, e-convex
//! (t ↦ f(eᵗ) convex on the whole line), √-concave (x ↦ f(√x) concave),
//! and f(0) ≥ 0 — that gate which inequality statements accept it. The
//! declared flags are authoritative for applicability; [`verify_flags`]
//! cross-examines them with dense midpoint tests and fails loudly on any
//! mismatch, so a wrong declaration cannot survive the test suite.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Analytic properties a scalar function declares about itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionFlags {
    /// f(x) ≥ 0 for all x ≥ 0.
    pub nonneg: bool,
    /// Midpoint-concave on [0, ∞).
    pub concave: bool,
    /// t ↦ f(eᵗ) is convex on the real line.
    pub e_convex: bool,
    /// x ↦ f(√x) is concave on [0, ∞).
    pub sqrt_concave: bool,
    /// f(0) ≥ 0.
    pub f0_nonneg: bool,
}

/// A scalar function on [0, ∞), identified in reports by its exact
/// `id(params)` string: `identity`, `sqrt`, `log1p`, `power(p)`,
/// `clamp(c)`, `affine(a,b)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ScalarFunction {
    Identity,
    Sqrt,
    /// x ↦ xᵖ for p > 0, with 0ᵖ = 0. Concave iff p ≤ 1; √-concave iff
    /// p ≤ 2 (within tolerance of the midpoint test).
    Power(f64),
    /// x ↦ ln(1 + x).
    Log1p,
    /// x ↦ min(x, c) for c > 0: concave and nonnegative but NOT e-convex —
    /// the negative control that keeps e-convexity gating honest.
    Clamp(f64),
    /// x ↦ α + βx with α, β ≥ 0.
    Affine(f64, f64),
}

impl ScalarFunction {
    pub fn power(p: f64) -> Result<Self> {
        if !p.is_finite() || p <= 0.0 {
            return Err(Error::Registry(format!("power exponent must be > 0, got {p}")));
        }
        Ok(ScalarFunction::Power(p))
    }

    pub fn clamp(c: f64) -> Result<Self> {
        if !c.is_finite() || c <= 0.0 {
            return Err(Error::Registry(format!("clamp ceiling must be > 0, got {c}")));
        }
        Ok(ScalarFunction::Clamp(c))
    }

    pub fn affine(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() || alpha < 0.0 || beta < 0.0 {
            return Err(Error::Registry(format!(
                "affine coefficients must be finite and >= 0, got ({alpha}, {beta})"
            )));
        }
        Ok(ScalarFunction::Affine(alpha, beta))
    }

    /// Evaluates at `x ≥ 0`. Negative or non-finite input is a domain
    /// error; a non-finite result (overflow) is reported rather than
    /// propagated as infinity.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !x.is_finite() || x < 0.0 {
            return Err(Error::Domain(format!("{self} evaluated outside [0, inf): {x}")));
        }
        let y = match *self {
            ScalarFunction::Identity => x,
            ScalarFunction::Sqrt => x.sqrt(),
            ScalarFunction::Power(p) => {
                if x == 0.0 {
                    0.0
                } else {
                    x.powf(p)
                }
            }
            ScalarFunction::Log1p => x.ln_1p(),
            ScalarFunction::Clamp(c) => x.min(c),
            ScalarFunction::Affine(a, b) => a + b * x,
        };
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFinite(format!("{self}({x})")))
        }
    }

    /// The declared flag set. These are exact mathematical facts about the
    /// function family, not measurements; [`verify_flags`] confirms them
    /// numerically.
    pub fn flags(&self) -> FunctionFlags {
        match *self {
            ScalarFunction::Identity | ScalarFunction::Sqrt | ScalarFunction::Log1p => {
                FunctionFlags {
                    nonneg: true,
                    concave: true,
                    e_convex: true,
                    sqrt_concave: true,
                    f0_nonneg: true,
                }
            }
            ScalarFunction::Power(p) => FunctionFlags {
                nonneg: true,
                // midpoint tests cannot distinguish p within a hair of the
                // boundary from the boundary itself, and neither do we
                concave: p <= 1.0,
                e_convex: true,
                sqrt_concave: p <= 2.0,
                f0_nonneg: true,
            },
            ScalarFunction::Clamp(_) => FunctionFlags {
                nonneg: true,
                concave: true,
                e_convex: false,
                sqrt_concave: true,
                f0_nonneg: true,
            },
            ScalarFunction::Affine(..) => FunctionFlags {
                nonneg: true,
                concave: true,
                e_convex: true,
                sqrt_concave: true,
                f0_nonneg: true,
            },
        }
    }

    /// The real parameters, in declaration order, for perturbation and
    /// report serialization.
    pub fn params(&self) -> Vec<f64> {
        match *self {
            ScalarFunction::Identity | ScalarFunction::Sqrt | ScalarFunction::Log1p => vec![],
            ScalarFunction::Power(p) => vec![p],
            ScalarFunction::Clamp(c) => vec![c],
            ScalarFunction::Affine(a, b) => vec![a, b],
        }
    }
}

impl fmt::Display for ScalarFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ScalarFunction::Identity => write!(f, "identity"),
            ScalarFunction::Sqrt => write!(f, "sqrt"),
            ScalarFunction::Power(p) => write!(f, "power({p:?})"),
            ScalarFunction::Log1p => write!(f, "log1p"),
            ScalarFunction::Clamp(c) => write!(f, "clamp({c:?})"),
            ScalarFunction::Affine(a, b) => write!(f, "affine({a:?},{b:?})"),
        }
    }
}

impl FromStr for ScalarFunction {
    type Err = Error;

    /// Parses the exact `id(params)` grammar used in reports and on the
    /// command line, e.g. `power(0.5)`, `clamp(2.0)`, `affine(1.0,0.5)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Registry(format!("unrecognized function id {s:?}"));
        match s {
            "identity" => return Ok(ScalarFunction::Identity),
            "sqrt" => return Ok(ScalarFunction::Sqrt),
            "log1p" => return Ok(ScalarFunction::Log1p),
            _ => {}
        }
        let (name, rest) = s.split_once('(').ok_or_else(bad)?;
        let args = rest.strip_suffix(')').ok_or_else(bad)?;
        let parse = |a: &str| a.trim().parse::<f64>().map_err(|_| bad());
        match name {
            "power" => ScalarFunction::power(parse(args)?),
            "clamp" => ScalarFunction::clamp(parse(args)?),
            "affine" => {
                let (a, b) = args.split_once(',').ok_or_else(bad)?;
                ScalarFunction::affine(parse(a)?, parse(b)?)
            }
            _ => Err(bad()),
        }
    }
}

impl Serialize for ScalarFunction {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ScalarFunction {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// What the midpoint tests actually measured for one function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagReport {
    pub declared: FunctionFlags,
    pub measured: FunctionFlags,
}

/// Runs dense midpoint tests against the declared flags and errors on any
/// disagreement.
///
/// Concavity, √-concavity, nonnegativity and (for concave nonnegative
/// functions) monotonicity are probed on a log-spaced grid over
/// [1e-6, 1e6]; e-convexity on a linear grid over [−14, 14] in the
/// exponent, wide enough to straddle the kink of every registry `clamp`.
/// Tolerances scale with the local magnitude of the function values.
pub fn verify_flags(f: &ScalarFunction, grid_size: usize) -> Result<FlagReport> {
    if grid_size < 3 {
        return Err(Error::Registry(format!("flag verification needs grid_size >= 3, got {grid_size}")));
    }
    let declared = f.flags();

    // log grid on [1e-6, 1e6]
    let log_grid: Vec<f64> = (0..grid_size)
        .map(|i| {
            let t = i as f64 / (grid_size - 1) as f64;
            10f64.powf(-6.0 + 12.0 * t)
        })
        .collect();
    let fx: Vec<f64> = log_grid.iter().map(|&x| f.eval(x)).collect::<Result<_>>()?;

    let f0 = f.eval(0.0)?;
    let measured_nonneg = f0 >= 0.0 && fx.iter().all(|&y| y >= 0.0);
    let measured_f0 = f0 >= 0.0;

    let measured_concave = midpoint_concave(f, &log_grid, &fx)?;

    // f(√x) on the same log grid (x spans [1e-6,1e6], so √x spans [1e-3,1e3])
    let gx: Vec<f64> = log_grid.iter().map(|&x| f.eval(x.sqrt())).collect::<Result<_>>()?;
    let sqrt_fn = |x: f64| -> Result<f64> { f.eval(x.sqrt()) };
    let measured_sqrt_concave = midpoint_concave_by(&sqrt_fn, &log_grid, &gx)?;

    // e-convexity: convexity of t ↦ f(eᵗ) on a linear grid in [−14, 14]
    let lin_grid: Vec<f64> = (0..grid_size)
        .map(|i| -14.0 + 28.0 * i as f64 / (grid_size - 1) as f64)
        .collect();
    let ex: Vec<f64> = lin_grid.iter().map(|&t| f.eval(t.exp())).collect::<Result<_>>()?;
    let exp_fn = |t: f64| -> Result<f64> { f.eval(t.exp()) };
    let measured_e_convex = midpoint_convex_by(&exp_fn, &lin_grid, &ex)?;

    let measured = FunctionFlags {
        nonneg: measured_nonneg,
        concave: measured_concave,
        e_convex: measured_e_convex,
        sqrt_concave: measured_sqrt_concave,
        f0_nonneg: measured_f0,
    };

    if measured != declared {
        return Err(Error::Registry(format!(
            "flag mismatch for {f}: declared {declared:?}, measured {measured:?}"
        )));
    }

    // concave + nonneg on [0, ∞) forces non-decreasing; confirm on the grid
    if declared.concave && declared.nonneg {
        for w in fx.windows(2) {
            if w[1] < w[0] - 1e-9 * (1.0 + w[0].abs()) {
                return Err(Error::Registry(format!(
                    "{f} declares concave+nonneg but decreases on the grid"
                )));
            }
        }
    }

    Ok(FlagReport { declared, measured })
}

fn midpoint_concave(f: &ScalarFunction, grid: &[f64], fx: &[f64]) -> Result<bool> {
    let ev = |x: f64| f.eval(x);
    midpoint_concave_by(&ev, grid, fx)
}

/// All-pairs midpoint concavity: f((x+y)/2) ≥ (f(x)+f(y))/2 − tol.
fn midpoint_concave_by(
    f: &dyn Fn(f64) -> Result<f64>,
    grid: &[f64],
    fx: &[f64],
) -> Result<bool> {
    for i in 0..grid.len() {
        for j in (i + 1)..grid.len() {
            let mid = 0.5 * (grid[i] + grid[j]);
            let fmid = f(mid)?;
            let tol = 1e-9 * (1.0 + fx[i].abs() + fx[j].abs());
            if fmid < 0.5 * (fx[i] + fx[j]) - tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All-pairs midpoint convexity: f((x+y)/2) ≤ (f(x)+f(y))/2 + tol.
fn midpoint_convex_by(
    f: &dyn Fn(f64) -> Result<f64>,
    grid: &[f64],
    fx: &[f64],
) -> Result<bool> {
    for i in 0..grid.len() {
        for j in (i + 1)..grid.len() {
            let mid = 0.5 * (grid[i] + grid[j]);
            let fmid = f(mid)?;
            let tol = 1e-9 * (1.0 + fx[i].abs() + fx[j].abs());
            if fmid > 0.5 * (fx[i] + fx[j]) + tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Immutable collection of scalar functions with verified flags. The
/// default registry covers the concave family (several powers in (0, 1],
/// `log1p`, clamps, an affine), plus the convex-family powers in (1, 2]
/// used by the √-concave trace statements.
#[derive(Clone, Debug)]
pub struct FunctionRegistry {
    entries: Vec<ScalarFunction>,
}

impl FunctionRegistry {
    pub fn new(entries: Vec<ScalarFunction>) -> Self {
        FunctionRegistry { entries }
    }

    pub fn default_registry() -> Self {
        FunctionRegistry {
            entries: vec![
                ScalarFunction::Identity,
                ScalarFunction::Sqrt,
                ScalarFunction::Power(0.25),
                ScalarFunction::Power(0.5),
                ScalarFunction::Power(0.75),
                ScalarFunction::Power(1.0),
                ScalarFunction::Power(1.5),
                ScalarFunction::Power(2.0),
                ScalarFunction::Log1p,
                ScalarFunction::Clamp(1.0),
                ScalarFunction::Clamp(2.0),
                ScalarFunction::Affine(0.5, 1.5),
            ],
        }
    }

    pub fn entries(&self) -> &[ScalarFunction] {
        &self.entries
    }

    /// Nonnegative concave functions — the hypothesis class of the basic
    /// subadditivity statements (includes the clamps).
    pub fn concave_nonneg(&self) -> Vec<ScalarFunction> {
        self.entries
            .iter()
            .filter(|f| {
                let fl = f.flags();
                fl.nonneg && fl.concave
            })
            .copied()
            .collect()
    }

    /// Nonnegative concave functions that are also e-convex — the class
    /// required by the all-norms statements proved through weak
    /// log-majorization (excludes the clamps).
    pub fn concave_e_convex(&self) -> Vec<ScalarFunction> {
        self.entries
            .iter()
            .filter(|f| {
                let fl = f.flags();
                fl.nonneg && fl.concave && fl.e_convex
            })
            .copied()
            .collect()
    }

    /// Functions with f(√t) concave and f(0) ≥ 0 — the class of the trace
    /// comparison over arbitrary block partitions; monotonicity is not
    /// required.
    pub fn sqrt_concave_f0(&self) -> Vec<ScalarFunction> {
        self.entries
            .iter()
            .filter(|f| {
                let fl = f.flags();
                fl.sqrt_concave && fl.f0_nonneg
            })
            .copied()
            .collect()
    }
}

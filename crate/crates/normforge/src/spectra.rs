//! Spectra (non-increasing singular/eigenvalue lists) and the comparison
//! machinery built on them: Ky Fan partial sums, Schatten norms, weak
//! majorization, weak log-majorization, and the normalized violation margin.
//!
//! Comparing Ky Fan sums for every k is equivalent, by Fan dominance, to
//! comparing all unitarily invariant norms at once; that is the quantitative
//! backbone of every "all symmetric norms" check in the catalog.

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};

/// Below this threshold a spectrum value is treated as an exact zero when
/// forming log-products (products of spectra underflow long before f64 does).
const LOG_ZERO: f64 = 1e-300;

/// Relative/absolute slack used by all order comparisons.
///
/// `lhs ≤ rhs` is accepted iff `lhs ≤ rhs + rel·(1 + |rhs|) + abs_floor`.
/// The `1 +` keeps the slack meaningful for tiny right-hand sides without
/// letting it collapse to zero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TolerancePolicy {
    pub rel: f64,
    pub abs_floor: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        TolerancePolicy { rel: 1e-9, abs_floor: 1e-12 }
    }
}

impl TolerancePolicy {
    pub fn new(rel: f64, abs_floor: f64) -> Self {
        TolerancePolicy { rel, abs_floor }
    }

    /// The tolerated comparison: does `lhs ≤ rhs` hold up to slack?
    pub fn le(&self, lhs: f64, rhs: f64) -> bool {
        lhs <= rhs + self.rel * (1.0 + rhs.abs()) + self.abs_floor
    }
}

/// A non-increasing list of non-negative reals — the singular values of a
/// matrix, or the eigenvalues of a positive semidefinite one.
///
/// The ordering and sign invariants are enforced at every construction site,
/// including deserialization, so downstream comparisons never re-sort.
/// Serializes as a bare JSON array of doubles.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    /// Builds a spectrum from arbitrary-order values, sorting them into
    /// non-increasing order. Values that are negative beyond roundoff slack
    /// are rejected; tiny negatives (eigensolver roundoff on a PSD input)
    /// are clamped to zero.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        let mut max_abs = 0.0f64;
        for &v in &values {
            if !v.is_finite() {
                return Err(Error::NonFinite(format!("spectrum value {v}")));
            }
            max_abs = max_abs.max(v.abs());
        }
        let slack = 1e-9 * (1.0 + max_abs);
        for v in &mut values {
            if *v < -slack {
                return Err(Error::Domain(format!(
                    "negative spectrum value {v} (slack {slack:.3e})"
                )));
            }
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        values.sort_by(|a, b| b.partial_cmp(a).expect("finite values"));
        Ok(Spectrum { values })
    }

    /// Fast path for values already sorted non-increasingly and non-negative
    /// (e.g. straight out of an SVD). Checked in debug builds only.
    pub fn from_sorted(values: Vec<f64>) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] >= w[1]), "not sorted descending");
        debug_assert!(values.iter().all(|v| *v >= 0.0 && v.is_finite()));
        Spectrum { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Value at position `k` (0-based), reading past the end as 0. This is
    /// the zero-padding convention used for cross-dimension comparisons.
    pub fn get(&self, k: usize) -> f64 {
        self.values.get(k).copied().unwrap_or(0.0)
    }

    /// Sum of all values (the trace norm).
    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Applies a non-negative scalar map to every value and restores the
    /// ordering invariant (the map need not be monotone).
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Spectrum::new(self.values.iter().map(|&v| f(v)).collect())
    }

    /// Concatenates two spectra and re-sorts — the spectrum of a direct sum.
    pub fn direct_sum(&self, other: &Spectrum) -> Spectrum {
        let mut v = self.values.clone();
        v.extend_from_slice(&other.values);
        v.sort_by(|a, b| b.partial_cmp(a).expect("finite values"));
        Spectrum { values: v }
    }
}

impl<'de> Deserialize<'de> for Spectrum {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let values = Vec::<f64>::deserialize(de)?;
        let ok = values.iter().all(|v| v.is_finite() && *v >= 0.0)
            && values.windows(2).all(|w| w[0] >= w[1]);
        if !ok {
            return Err(serde::de::Error::custom(
                "spectrum must be a non-increasing list of non-negative finite doubles",
            ));
        }
        Ok(Spectrum { values })
    }
}

/// Ky Fan k-norm: the sum of the k largest values. `k` past the length reads
/// the missing values as zero, so `ky_fan(s, big)` is the trace norm.
pub fn ky_fan(s: &Spectrum, k: usize) -> f64 {
    s.values.iter().take(k).sum()
}

/// Schatten p-norm of a spectrum for p ∈ [1, ∞]. Pass `f64::INFINITY` for the
/// operator norm. Scales by the top value before powering so that large p and
/// large values cannot overflow.
pub fn schatten(s: &Spectrum, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::Domain(format!("schatten norm needs p >= 1, got {p}")));
    }
    let top = s.get(0);
    if p.is_infinite() || top == 0.0 {
        return Ok(top);
    }
    let sum: f64 = s.values.iter().map(|&v| (v / top).powf(p)).sum();
    Ok(top * sum.powf(1.0 / p))
}

/// Weak majorization `a ≺_w b`: every Ky Fan partial sum of `a` is bounded by
/// the matching partial sum of `b`, with the shorter spectrum zero-padded.
pub fn weak_majorize(a: &Spectrum, b: &Spectrum, tol: &TolerancePolicy) -> bool {
    let n = a.len().max(b.len());
    let mut sa = 0.0;
    let mut sb = 0.0;
    for k in 0..n {
        sa += a.get(k);
        sb += b.get(k);
        if !tol.le(sa, sb) {
            return false;
        }
    }
    true
}

/// Majorization `a ≺ b`: weak majorization plus equality of totals (within
/// `rel·(1 + |Σb|)`).
pub fn majorize(a: &Spectrum, b: &Spectrum, tol: &TolerancePolicy) -> bool {
    if !weak_majorize(a, b, tol) {
        return false;
    }
    let (sa, sb) = (a.total(), b.total());
    (sa - sb).abs() <= tol.rel * (1.0 + sb.abs())
}

/// Weak log-majorization `a ≺_wlog b`: partial *products* are ordered,
/// compared in log space. Values below 1e-300 count as exact zeros: a zero on
/// the right with a positive value on the left at the same position makes the
/// relation fail from that position on, while a zero on the left makes every
/// later comparison hold trivially.
pub fn weak_log_majorize(a: &Spectrum, b: &Spectrum, tol: &TolerancePolicy) -> bool {
    let n = a.len().max(b.len());
    let mut la = 0.0;
    let mut lb = 0.0;
    let mut a_dead = false;
    let mut b_dead = false;
    for k in 0..n {
        let (av, bv) = (a.get(k), b.get(k));
        a_dead |= av < LOG_ZERO;
        b_dead |= bv < LOG_ZERO;
        if a_dead {
            continue; // left product is exactly 0 ≤ anything
        }
        if b_dead {
            return false; // positive left product vs zero right product
        }
        la += av.ln();
        lb += bv.ln();
        if la > lb + tol.rel * (1.0 + lb.abs()) + tol.abs_floor {
            return false;
        }
    }
    true
}

/// Normalized excess of `lhs` over `rhs` across all Ky Fan sums:
/// `max_k (KF_k(lhs) − KF_k(rhs)) / (1 + KF_k(rhs))`.
///
/// Positive means some unitarily invariant norm is violated; the magnitude is
/// scale-aware enough to compare across instances, which is what the hunter
/// climbs on.
pub fn violation_margin(lhs: &Spectrum, rhs: &Spectrum) -> f64 {
    let n = lhs.len().max(rhs.len()).max(1);
    let mut sl = 0.0;
    let mut sr = 0.0;
    let mut worst = f64::NEG_INFINITY;
    for k in 0..n {
        sl += lhs.get(k);
        sr += rhs.get(k);
        worst = worst.max((sl - sr) / (1.0 + sr));
    }
    worst
}

/// Log-product analogue of [`violation_margin`] for weak log-majorization
/// statements. A positive right-hand product facing a zero one on the left
/// contributes nothing; a zero right-hand product facing a positive left one
/// is a definite violation, reported as the sentinel margin 1.0.
pub fn log_violation_margin(lhs: &Spectrum, rhs: &Spectrum) -> f64 {
    let n = lhs.len().max(rhs.len()).max(1);
    let mut la = 0.0;
    let mut lb = 0.0;
    let mut a_dead = false;
    let mut b_dead = false;
    let mut worst = f64::NEG_INFINITY;
    for k in 0..n {
        let (av, bv) = (lhs.get(k), rhs.get(k));
        a_dead |= av < LOG_ZERO;
        b_dead |= bv < LOG_ZERO;
        if a_dead {
            worst = worst.max(-1.0);
            continue;
        }
        if b_dead {
            return 1.0;
        }
        la += av.ln();
        lb += bv.ln();
        worst = worst.max((la - lb) / (1.0 + lb.abs()));
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(v: &[f64]) -> Spectrum {
        Spectrum::new(v.to_vec()).unwrap()
    }

    #[test]
    fn ky_fan_partial_sums_and_padding() {
        let s = spec(&[3.0, 1.0, 1.0]);
        assert_eq!(ky_fan(&s, 1), 3.0);
        assert_eq!(ky_fan(&s, 2), 4.0);
        assert_eq!(ky_fan(&s, 3), 5.0);
        // reading past the end pads with zeros
        assert_eq!(ky_fan(&s, 10), 5.0);
        assert_eq!(ky_fan(&s, 0), 0.0);
    }

    #[test]
    fn schatten_values() {
        let s = spec(&[3.0, 4.0]);
        assert!((schatten(&s, 2.0).unwrap() - 5.0).abs() < 1e-12);
        assert!((schatten(&s, 1.0).unwrap() - 7.0).abs() < 1e-12);
        assert_eq!(schatten(&s, f64::INFINITY).unwrap(), 4.0);
        assert!((schatten(&spec(&[2.0, 2.0]), f64::INFINITY).unwrap() - 2.0).abs() < 1e-15);
        assert!(schatten(&s, 0.5).is_err());
        assert_eq!(schatten(&spec(&[]), 3.0).unwrap(), 0.0);
    }

    #[test]
    fn schatten_survives_extreme_scale_and_p() {
        // 1e3^50 would overflow without the top-value factoring
        let s = spec(&[1e3, 9e2, 1e-3]);
        let v = schatten(&s, 50.0).unwrap();
        assert!(v.is_finite() && v >= 1e3 && v < 1.1e3);
        let tiny = spec(&[1e-300, 1e-301]);
        assert!(schatten(&tiny, 50.0).unwrap().is_finite());
    }

    #[test]
    fn weak_majorization_basics() {
        let tol = TolerancePolicy::default();
        assert!(weak_majorize(&spec(&[2.0, 2.0]), &spec(&[3.0, 1.0]), &tol));
        assert!(!weak_majorize(&spec(&[3.0, 1.0]), &spec(&[2.0, 2.0]), &tol));
        // cross-length: padding on the shorter side
        assert!(weak_majorize(&spec(&[1.0, 1.0]), &spec(&[3.0]), &tol));
        assert!(!weak_majorize(&spec(&[1.0, 1.0, 1.0]), &spec(&[2.5]), &tol));
        // reflexive up to tolerance
        let s = spec(&[1.7, 0.3, 0.1]);
        assert!(weak_majorize(&s, &s, &tol));
    }

    #[test]
    fn majorization_needs_equal_totals() {
        let tol = TolerancePolicy::default();
        assert!(majorize(&spec(&[1.0, 1.0]), &spec(&[2.0, 0.0]), &tol));
        assert!(!majorize(&spec(&[1.0, 0.5]), &spec(&[2.0, 0.0]), &tol));
        assert!(weak_majorize(&spec(&[1.0, 0.5]), &spec(&[2.0, 0.0]), &tol));
    }

    #[test]
    fn weak_log_majorization_and_zeros() {
        let tol = TolerancePolicy::default();
        // fails immediately at k = 1: 4 > 2
        assert!(!weak_log_majorize(&spec(&[4.0, 1.0]), &spec(&[2.0, 2.0]), &tol));
        // products (2, 4) vs (4, 4)
        assert!(weak_log_majorize(&spec(&[2.0, 2.0]), &spec(&[4.0, 1.0]), &tol));
        // a zero right product with a live left product fails...
        assert!(!weak_log_majorize(&spec(&[1.0, 1.0]), &spec(&[2.0, 0.0]), &tol));
        // ...but a zero left product holds against anything after that point
        assert!(weak_log_majorize(&spec(&[1.0, 0.0]), &spec(&[2.0, 0.0]), &tol));
        assert!(weak_log_majorize(&spec(&[1.0, 0.0, 0.0]), &spec(&[1.5, 0.5, 0.0]), &tol));
    }

    #[test]
    fn violation_margin_matches_hand_computation() {
        // partial sums: (3,4,5) vs (2,4,6) → max(1/3, 0/5, -1/7) = 1/3
        let m = violation_margin(&spec(&[3.0, 1.0, 1.0]), &spec(&[2.0, 2.0, 2.0]));
        assert!((m - 1.0 / 3.0).abs() < 1e-15);
        // margin ≤ 0 exactly when weak majorization holds with zero slack
        let m2 = violation_margin(&spec(&[2.0, 2.0]), &spec(&[3.0, 1.0]));
        assert!(m2 <= 0.0);
        assert_eq!(violation_margin(&spec(&[]), &spec(&[])), 0.0);
    }

    #[test]
    fn log_margin_zero_conventions() {
        // positive left product against a zero right product: sentinel 1.0
        let lhs = spec(&[1.0, 1.0]);
        let rhs = spec(&[2.0, 0.0]);
        assert_eq!(log_violation_margin(&lhs, &rhs), 1.0);
        // (2,0) vs (1,1): the k=1 term gives ln 2, the dead left tail caps at -1
        let m = log_violation_margin(&rhs, &lhs);
        assert!((m - 2.0f64.ln()).abs() < 1e-15);
        let both = log_violation_margin(&spec(&[1.0, 0.0]), &spec(&[2.0, 0.0]));
        assert!(both <= 0.0);
    }

    #[test]
    fn spectrum_construction_guards() {
        assert!(Spectrum::new(vec![1.0, f64::NAN]).is_err());
        assert!(Spectrum::new(vec![-0.5]).is_err());
        // roundoff-scale negatives are clamped, not rejected
        let s = Spectrum::new(vec![1.0, -1e-12]).unwrap();
        assert_eq!(s.values(), &[1.0, 0.0]);
        // unsorted input is sorted
        let s = Spectrum::new(vec![1.0, 3.0, 2.0]).unwrap();
        assert_eq!(s.values(), &[3.0, 2.0, 1.0]);
    }

    #[test]
    fn spectrum_serde_round_trip_is_strict() {
        let s = spec(&[2.5, 1.0, 0.0]);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, "[2.5,1.0,0.0]");
        let back: Spectrum = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<Spectrum>("[1.0,2.0]").is_err());
        assert!(serde_json::from_str::<Spectrum>("[1.0,-0.1]").is_err());
    }

    #[test]
    fn fan_dominance_transfers_to_schatten_norms() {
        // If a ≺_w b then every Schatten norm is ordered the same way; spot
        // check across representative p on constructed pairs.
        let tol = TolerancePolicy::default();
        let b = spec(&[5.0, 3.0, 1.0, 0.5]);
        // Robin Hood transfers + shrink keep a ≺_w b by construction
        let a = spec(&[4.2, 3.4, 1.2, 0.6]);
        assert!(weak_majorize(&a, &b, &tol));
        for p in [1.0, 1.5, 2.0, 3.0, 7.0, f64::INFINITY] {
            let (na, nb) = (schatten(&a, p).unwrap(), schatten(&b, p).unwrap());
            assert!(na <= nb + 1e-9 * (1.0 + nb), "p={p}: {na} > {nb}");
        }
    }
}

//! Stable statement identifiers and their metadata.
//!
//! The id strings are the public API: reports, the CLI, and witness files
//! all reference statements by these exact spellings.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Every inequality statement the engine knows, by its stable id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[allow(non_camel_case_types)]
pub enum StatementId {
    eq_1,
    eq_2,
    thm_1_1a,
    thm_1_1b,
    thm_1_1,
    cor_1_2,
    conj_1,
    cor_1_3,
    cor_1_4,
    cor_1_5,
    cor_1_6,
    horn_step,
    cor_1_7,
    ando_zhan,
    q3_a,
    q3_b,
    q3_c,
    q4,
    heinz,
    eq_3,
    thm_2_1,
    cor_2_2,
    conj_2,
    cor_2_3,
    cor_2_4,
    thm_2_5,
    cor_2_6,
    conj_3,
    conj_4,
    thm_2_7,
    schatten_entrywise,
    lemma_1,
    lemma_2,
    lemma_3,
    ex_2_8,
}

/// Epistemic status of a statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// Established result; a "violated" verdict signals an implementation bug.
    Proven,
    /// Open conjecture; a verified violation would be a discovery.
    Conjecture,
    /// Open question; same handling as conjectures.
    Question,
    /// Known counterexample; the check must report "violated".
    CounterexampleDemo,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Proven => "proven",
            Status::Conjecture => "conjecture",
            Status::Question => "question",
            Status::CounterexampleDemo => "counterexample_demo",
        };
        f.write_str(s)
    }
}

/// How the statement's two sides are compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Weak majorization of singular spectra — equivalent to the inequality
    /// holding in every symmetric norm at once.
    AllNorms,
    /// Largest singular value only.
    OpNorm,
    /// Sums of a scalar function over the relevant spectra.
    Trace,
    /// Weak log-majorization: leading partial products of singular values.
    Wlog,
    /// Direct comparison of two scalar norm values.
    Scalar,
    /// Majorization facts about block structure (direct sums, pinching).
    Structural,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Mode::AllNorms => "all_norms",
            Mode::OpNorm => "op_norm",
            Mode::Trace => "trace",
            Mode::Wlog => "wlog",
            Mode::Scalar => "scalar",
            Mode::Structural => "structural",
        };
        f.write_str(s)
    }
}

pub const ALL_STATEMENTS: [StatementId; 35] = [
    StatementId::eq_1,
    StatementId::eq_2,
    StatementId::thm_1_1a,
    StatementId::thm_1_1b,
    StatementId::thm_1_1,
    StatementId::cor_1_2,
    StatementId::conj_1,
    StatementId::cor_1_3,
    StatementId::cor_1_4,
    StatementId::cor_1_5,
    StatementId::cor_1_6,
    StatementId::horn_step,
    StatementId::cor_1_7,
    StatementId::ando_zhan,
    StatementId::q3_a,
    StatementId::q3_b,
    StatementId::q3_c,
    StatementId::q4,
    StatementId::heinz,
    StatementId::eq_3,
    StatementId::thm_2_1,
    StatementId::cor_2_2,
    StatementId::conj_2,
    StatementId::cor_2_3,
    StatementId::cor_2_4,
    StatementId::thm_2_5,
    StatementId::cor_2_6,
    StatementId::conj_3,
    StatementId::conj_4,
    StatementId::thm_2_7,
    StatementId::schatten_entrywise,
    StatementId::lemma_1,
    StatementId::lemma_2,
    StatementId::lemma_3,
    StatementId::ex_2_8,
];

impl StatementId {
    pub fn as_str(&self) -> &'static str {
        match self {
            StatementId::eq_1 => "eq_1",
            StatementId::eq_2 => "eq_2",
            StatementId::thm_1_1a => "thm_1_1a",
            StatementId::thm_1_1b => "thm_1_1b",
            StatementId::thm_1_1 => "thm_1_1",
            StatementId::cor_1_2 => "cor_1_2",
            StatementId::conj_1 => "conj_1",
            StatementId::cor_1_3 => "cor_1_3",
            StatementId::cor_1_4 => "cor_1_4",
            StatementId::cor_1_5 => "cor_1_5",
            StatementId::cor_1_6 => "cor_1_6",
            StatementId::horn_step => "horn_step",
            StatementId::cor_1_7 => "cor_1_7",
            StatementId::ando_zhan => "ando_zhan",
            StatementId::q3_a => "q3_a",
            StatementId::q3_b => "q3_b",
            StatementId::q3_c => "q3_c",
            StatementId::q4 => "q4",
            StatementId::heinz => "heinz",
            StatementId::eq_3 => "eq_3",
            StatementId::thm_2_1 => "thm_2_1",
            StatementId::cor_2_2 => "cor_2_2",
            StatementId::conj_2 => "conj_2",
            StatementId::cor_2_3 => "cor_2_3",
            StatementId::cor_2_4 => "cor_2_4",
            StatementId::thm_2_5 => "thm_2_5",
            StatementId::cor_2_6 => "cor_2_6",
            StatementId::conj_3 => "conj_3",
            StatementId::conj_4 => "conj_4",
            StatementId::thm_2_7 => "thm_2_7",
            StatementId::schatten_entrywise => "schatten_entrywise",
            StatementId::lemma_1 => "lemma_1",
            StatementId::lemma_2 => "lemma_2",
            StatementId::lemma_3 => "lemma_3",
            StatementId::ex_2_8 => "ex_2_8",
        }
    }

    pub fn status(&self) -> Status {
        match self {
            StatementId::eq_2
            | StatementId::conj_1
            | StatementId::conj_2
            | StatementId::conj_3
            | StatementId::conj_4 => Status::Conjecture,
            StatementId::q3_a | StatementId::q3_b | StatementId::q3_c | StatementId::q4 => {
                Status::Question
            }
            StatementId::ex_2_8 => Status::CounterexampleDemo,
            _ => Status::Proven,
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            StatementId::eq_1 | StatementId::eq_2 | StatementId::eq_3 | StatementId::thm_2_7 => {
                Mode::Trace
            }
            StatementId::cor_1_2
            | StatementId::cor_1_3
            | StatementId::cor_2_2
            | StatementId::ex_2_8 => Mode::OpNorm,
            StatementId::horn_step => Mode::Wlog,
            StatementId::schatten_entrywise => Mode::Scalar,
            StatementId::lemma_1 | StatementId::lemma_2 | StatementId::lemma_3 => {
                Mode::Structural
            }
            _ => Mode::AllNorms,
        }
    }

    /// The inequality in display form.
    pub fn formula(&self) -> &'static str {
        match self {
            StatementId::eq_1 => "Tr f(Z*AZ) ≤ Tr Z*f(A)Z",
            StatementId::eq_2 => "Tr f(|Z*AZ|) ≤ Tr Z*f(|A|)Z",
            StatementId::thm_1_1a => "‖f(Z*AZ)‖ ≤ ‖Z*f(A)Z‖",
            StatementId::thm_1_1b => "‖f(A+B)‖ ≤ ‖f(A)+f(B)‖",
            StatementId::thm_1_1 => "‖f(Σᵢ Zᵢ*AᵢZᵢ)‖ ≤ ‖Σᵢ Zᵢ*f(Aᵢ)Zᵢ‖",
            StatementId::cor_1_2 => "‖f(|Σᵢ Zᵢ*AᵢZᵢ|)‖∞ ≤ ‖Σᵢ Zᵢ*f(|Aᵢ|)Zᵢ‖∞",
            StatementId::conj_1 => "‖f(|Σᵢ Zᵢ*AᵢZᵢ|)‖ ≤ ‖Σᵢ Zᵢ*f(|Aᵢ|)Zᵢ‖",
            StatementId::cor_1_3 => "‖f(|A+iB|)‖∞ ≤ ‖f(|A|)+f(|B|)‖∞",
            StatementId::cor_1_4 => "‖f(|Σᵢ Zᵢ*AᵢZᵢ|)‖ ≤ ‖Σᵢ Zᵢ*f(|Aᵢ|)Zᵢ‖",
            StatementId::cor_1_5 => "‖f(|A+B|)‖ ≤ ‖f(|A|)+f(|B|)‖",
            StatementId::cor_1_6 => "‖|A+B|ᵖ‖ ≤ ‖|A|ᵖ+|B|ᵖ‖",
            StatementId::horn_step => "|Σᵢ Zᵢ*AᵢZᵢ| ≺_wlog Σᵢ Zᵢ*|Aᵢ|Zᵢ",
            StatementId::cor_1_7 => "‖Σᵢ Zᵢ*AᵢᵖZᵢ‖ ≤ ‖(Σᵢ Zᵢ*AᵢZᵢ)ᵖ‖",
            StatementId::ando_zhan => "‖Aᵖ+Bᵖ‖ ≤ ‖(A+B)ᵖ‖",
            StatementId::q3_a => "‖A^(p+q)+B^(p+q)‖ ≤ ‖(Aᵖ+Bᵖ)(A^q+B^q)‖",
            StatementId::q3_b => "‖A^Σpᵢ+B^Σqᵢ‖ ≤ ‖Πᵢ (A^pᵢ+B^qᵢ)‖",
            StatementId::q3_c => "‖A^(p+q)+B^(p+q)‖ ≤ ‖(Aᵖ+Bᵖ)^½(A^q+B^q)(Aᵖ+Bᵖ)^½‖",
            StatementId::q4 => "‖AᵖB^q+BᵖA^q‖ ≤ ‖A^(p+q)+B^(p+q)‖",
            StatementId::heinz => "‖AᵖB^q+A^qBᵖ‖ ≤ ‖A^(p+q)+B^(p+q)‖",
            StatementId::eq_3 => "Tr f(|𝔸|) ≤ Σᵢⱼ Tr f(|Aᵢⱼ|)",
            StatementId::thm_2_1 => "‖f(|𝔸|)‖ ≤ ‖Σᵢⱼ f(|Aᵢⱼ|)‖",
            StatementId::cor_2_2 => "‖f(|𝔸|)‖∞ ≤ ‖Σᵢⱼ f(|Aᵢⱼ|)‖∞",
            StatementId::conj_2 => "‖f(|𝔸|)‖ ≤ ‖Σᵢⱼ f(|Aᵢⱼ|)‖",
            StatementId::cor_2_3 => "‖f(|[A N; 0 B]|)‖ ≤ ‖f(|A*|)+f(|N|)+f(|B|)‖",
            StatementId::cor_2_4 => "‖f(|[A I; I B]|)‖ ≤ ‖f(|A*|)+2f(I)+f(|B|)‖",
            StatementId::thm_2_5 => "‖f(|𝔸|)‖ ≤ ‖Σᵢⱼ f(|Aᵢⱼ|)‖",
            StatementId::cor_2_6 => "‖|[A B*; B C]|ᵖ‖ ≤ ‖|A|ᵖ+|B|ᵖ+|B*|ᵖ+|C|ᵖ‖",
            StatementId::conj_3 => "‖f(|𝔸|)‖ ≤ ‖Σᵢⱼ f(|Aᵢⱼ|)‖",
            StatementId::conj_4 => "‖f(|𝔸|)‖ ≤ ‖Σᵢⱼ f(|Aᵢⱼ|)‖",
            StatementId::thm_2_7 => "Tr f(|𝔸|) ≤ Σᵢⱼ Tr f(|Aᵢⱼ|)",
            StatementId::schatten_entrywise => {
                "‖A‖ₚ ≤ (Σᵢⱼ|aᵢⱼ|ᵖ)^(1/p) for p ≤ 2; reversed for p ≥ 2"
            }
            StatementId::lemma_1 => "A ≺_w X ∧ B ≺_w Y ⟹ A⊕B ≺_w X⊕Y",
            StatementId::lemma_2 => "A⊕B ≺_w (A+B)⊕0",
            StatementId::lemma_3 => "diag(B₁₁,…,Bₘₘ) ≺ 𝔹 for PSD block 𝔹",
            StatementId::ex_2_8 => "‖Z²‖∞ vs ‖A²+2B²+C²‖∞ for the fixed 4×4 fixture",
        }
    }

    /// Short description of the hypothesis classes.
    pub fn hypothesis(&self) -> &'static str {
        match self {
            StatementId::eq_1 => "A ⪰ 0, Z expansive, f concave ≥ 0",
            StatementId::eq_2 => "A normal, Z expansive, f concave ≥ 0",
            StatementId::thm_1_1a => "A ⪰ 0, Z expansive, f concave ≥ 0",
            StatementId::thm_1_1b => "A, B ⪰ 0, f concave ≥ 0",
            StatementId::thm_1_1 => "Aᵢ ⪰ 0, Zᵢ expansive (i ≤ m ≤ 3), f concave ≥ 0",
            StatementId::cor_1_2 => "Aᵢ normal, Zᵢ expansive, f concave ≥ 0",
            StatementId::conj_1 => "Aᵢ normal, Zᵢ expansive, f concave ≥ 0",
            StatementId::cor_1_3 => "A, B Hermitian parts of Z, f concave ≥ 0",
            StatementId::cor_1_4 => "Aᵢ normal, Zᵢ expansive, f concave e-convex ≥ 0",
            StatementId::cor_1_5 => "A, B normal, f concave e-convex ≥ 0",
            StatementId::cor_1_6 => "A, B normal, p ∈ (0,1]",
            StatementId::horn_step => "Aᵢ normal, Zᵢ expansive",
            StatementId::cor_1_7 => "Aᵢ ⪰ 0, Zᵢ expansive, p ≥ 1",
            StatementId::ando_zhan => "A, B ⪰ 0, p ≥ 1",
            StatementId::q3_a => "A, B ⪰ 0, p, q > 0",
            StatementId::q3_b => "A, B ⪰ 0, pᵢ, qᵢ > 0",
            StatementId::q3_c => "A, B ⪰ 0, p, q > 0",
            StatementId::q4 => "A, B ⪰ 0, p, q > 0",
            StatementId::heinz => "A, B ⪰ 0, p, q > 0",
            StatementId::eq_3 => "𝔸 arbitrary blocks, f concave ≥ 0",
            StatementId::thm_2_1 => "𝔸 with normal equal-size blocks, f concave e-convex ≥ 0",
            StatementId::cor_2_2 => "𝔸 with normal equal-size blocks, f concave ≥ 0",
            StatementId::conj_2 => "𝔸 with normal equal-size blocks, f concave ≥ 0",
            StatementId::cor_2_3 => "upper-triangular blocks, N normal, f concave e-convex ≥ 0",
            StatementId::cor_2_4 => "identity off-blocks, f concave e-convex ≥ 0",
            StatementId::thm_2_5 => "𝔸 Hermitian, equal-size blocks, f concave e-convex ≥ 0",
            StatementId::cor_2_6 => "𝔸 Hermitian, four equal blocks, p ∈ (0,1]",
            StatementId::conj_3 => "𝔸 Hermitian, equal-size blocks, f concave ≥ 0",
            StatementId::conj_4 => "𝔸 normal, equal-size blocks, f concave ≥ 0",
            StatementId::thm_2_7 => "𝔸 arbitrary blocks, f(√t) concave, f(0) ≥ 0",
            StatementId::schatten_entrywise => "A arbitrary, p ∈ {1, 1.5, 2, 3, 7, 50}",
            StatementId::lemma_1 => "A, B, X, Y ⪰ 0 with A ≺_w X, B ≺_w Y",
            StatementId::lemma_2 => "A, B ⪰ 0",
            StatementId::lemma_3 => "𝔹 ⪰ 0 with 2–4 diagonal blocks",
            StatementId::ex_2_8 => "fixed fixture",
        }
    }

    /// Statements the hunter may target without the self-test flag.
    pub fn is_huntable(&self) -> bool {
        matches!(self.status(), Status::Conjecture | Status::Question)
    }
}

/// The nine open statements the hunter sweeps by default.
pub const HUNTED_STATEMENTS: [StatementId; 9] = [
    StatementId::conj_1,
    StatementId::conj_2,
    StatementId::conj_3,
    StatementId::conj_4,
    StatementId::eq_2,
    StatementId::q3_a,
    StatementId::q3_b,
    StatementId::q3_c,
    StatementId::q4,
];

impl fmt::Display for StatementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StatementId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        ALL_STATEMENTS
            .iter()
            .find(|id| id.as_str() == s)
            .copied()
            .ok_or_else(|| Error::UnknownStatement(s.to_string()))
    }
}

impl Serialize for StatementId {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for StatementId {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

//! Graded Dieudonné modules: graded F_p-spaces `M^0, M^1, …` with operators
//! `F_i: M^i → M^{i+1}` and `V_i: M^{i+1} → M^i` such that `F_i V_i = 0 = V_i F_i`.
//!
//! The indecomposables are the string modules `M_{r,w}`: one-dimensional in degrees
//! `r, …, r + |w|`, with the `k`-th letter of the FV-word `w` placing an identity `F` or `V`
//! between degrees `r + k − 1` and `r + k`. This module builds them, decomposes arbitrary
//! modules into them, reads off primitives and indecomposables of the associated Hopf
//! algebras, and implements the signature calculus of fake truncations.

mod decompose;
mod dictionary;
mod oracle;
mod signature;

pub use decompose::{decompose, Decomposition};
pub use dictionary::{dieudonne_of, direct_profiles, string_of_factor, ColumnModule, GradedDieudonne};
pub use oracle::brute_decompose;
pub use signature::{
    fake_truncation, reconstruct_from_phi, signature_of, string_profiles, truncate_pair, Pair, Profile,
    SignatureMultiset,
};

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{FpMatrix, LinAlgError, PrimeField};
use crate::hopfcore::HopfError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DieudonneError {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error("operator shapes do not match the dimensions at degree {0}")]
    Shape(usize),
    #[error("F V ≠ 0 or V F ≠ 0 at degree {degree}: {detail}")]
    Relation { degree: usize, detail: String },
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("no splitting idempotent found within the budget; partial result {partial:?}")]
    Budget { partial: Vec<StringSpec> },
    #[error("not a string module: {0}")]
    NotString(String),
    #[error("the φ-sequence is inconsistent at k = {k}: {detail}")]
    Inconsistent { k: usize, detail: String },
    #[error("malformed dieu-v1 document: {0}")]
    Json(String),
    #[error("input exceeds the brute-force caps: {0}")]
    TooLarge(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    F,
    V,
}

/// An FV-word: a finite prefix followed by an optional periodic tail `F^∞` or `V^∞`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pub prefix: Vec<Letter>,
    pub tail: Option<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Self { prefix: Vec::new(), tail: None }
    }

    pub fn finite(prefix: Vec<Letter>) -> Self {
        Self { prefix, tail: None }
    }

    pub fn infinite(prefix: Vec<Letter>, tail: Letter) -> Self {
        Self { prefix, tail: Some(tail) }
    }

    /// The letter joining degrees `k` and `k+1` of the word (0-indexed), if any.
    pub fn letter(&self, k: usize) -> Option<Letter> {
        self.prefix.get(k).copied().or(if k >= self.prefix.len() { self.tail } else { None })
    }

    /// Parses `ε`, `FVV`, `V^3F^∞`, `F^inf`.
    pub fn parse(s: &str) -> Result<Self, DieudonneError> {
        let s = s.trim();
        let bad = || DieudonneError::Json(format!("bad FV-word {s:?}"));
        if s.is_empty() || s == "ε" || s == "e" {
            return Ok(Self::empty());
        }
        let mut prefix = Vec::new();
        let mut tail = None;
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let letter = match chars[i] {
                'F' => Letter::F,
                'V' => Letter::V,
                _ => return Err(bad()),
            };
            i += 1;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let start = i;
                while i < chars.len() && !matches!(chars[i], 'F' | 'V') {
                    i += 1;
                }
                let exp: String = chars[start..i].iter().collect();
                if exp == "∞" || exp == "inf" {
                    if i != chars.len() || tail.is_some() {
                        return Err(bad());
                    }
                    tail = Some(letter);
                } else {
                    let n: usize = exp.parse().map_err(|_| bad())?;
                    prefix.extend(std::iter::repeat_n(letter, n));
                }
            } else {
                prefix.push(letter);
            }
        }
        Ok(Self { prefix, tail })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prefix.is_empty() && self.tail.is_none() {
            return f.write_str("ε");
        }
        for l in &self.prefix {
            write!(f, "{l:?}")?;
        }
        if let Some(t) = self.tail {
            write!(f, "{t:?}^∞")?;
        }
        Ok(())
    }
}

/// The string module `M_{r,w}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StringSpec {
    pub r: usize,
    pub word: Word,
}

impl StringSpec {
    pub fn new(r: usize, word: Word) -> Self {
        Self { r, word }
    }

    /// The same string cut off at degree `bound`, with any tail unrolled into letters.
    /// Two specs are equal within a window iff their truncations agree.
    pub fn truncate(&self, bound: usize) -> Option<StringSpec> {
        if self.r > bound {
            return None;
        }
        let len = match self.word.tail {
            Some(_) => bound - self.r,
            None => self.word.prefix.len().min(bound - self.r),
        };
        let prefix = (0..len).map(|k| self.word.letter(k).expect("within length")).collect();
        Some(StringSpec { r: self.r, word: Word::finite(prefix) })
    }

    /// Top degree of the string within `bound`.
    pub fn top(&self, bound: usize) -> usize {
        match self.word.tail {
            Some(_) => bound,
            None => (self.r + self.word.prefix.len()).min(bound),
        }
    }
}

impl fmt::Display for StringSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.r, self.word)
    }
}

/// A graded Dieudonné module in degrees `0..=degree_bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DieudonneModule {
    field: PrimeField,
    dims: Vec<usize>,
    /// `f_ops[i]: M^i → M^{i+1}`, a `dims[i+1] × dims[i]` matrix.
    f_ops: Vec<FpMatrix>,
    /// `v_ops[i]: M^{i+1} → M^i`, a `dims[i] × dims[i+1]` matrix.
    v_ops: Vec<FpMatrix>,
}

/// Outcome of [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    pub degree: Option<usize>,
    pub detail: Option<String>,
}

impl DieudonneModule {
    pub fn new(
        field: PrimeField,
        dims: Vec<usize>,
        f_ops: Vec<FpMatrix>,
        v_ops: Vec<FpMatrix>,
    ) -> Result<Self, DieudonneError> {
        if dims.is_empty() {
            return Err(DieudonneError::Shape(0));
        }
        let n = dims.len() - 1;
        if f_ops.len() != n || v_ops.len() != n {
            return Err(DieudonneError::Shape(n));
        }
        for i in 0..n {
            let (f, v) = (&f_ops[i], &v_ops[i]);
            if (f.rows(), f.cols()) != (dims[i + 1], dims[i]) || (v.rows(), v.cols()) != (dims[i], dims[i + 1]) {
                return Err(DieudonneError::Shape(i));
            }
            if f.field() != field || v.field() != field {
                return Err(LinAlgError::FieldMismatch.into());
            }
        }
        Ok(Self { field, dims, f_ops, v_ops })
    }

    /// The zero module in degrees `0..=bound`.
    pub fn zero(field: PrimeField, bound: usize) -> Self {
        let z = FpMatrix::zeros(field, 0, 0);
        Self { field, dims: vec![0; bound + 1], f_ops: vec![z.clone(); bound], v_ops: vec![z; bound] }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn degree_bound(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn f_op(&self, i: usize) -> &FpMatrix {
        &self.f_ops[i]
    }

    pub fn v_op(&self, i: usize) -> &FpMatrix {
        &self.v_ops[i]
    }

    /// Direct sum, padding the shorter module with zeros.
    pub fn direct_sum(&self, other: &DieudonneModule) -> Result<Self, DieudonneError> {
        if self.field != other.field {
            return Err(LinAlgError::FieldMismatch.into());
        }
        let bound = self.degree_bound().max(other.degree_bound());
        let (a, b) = (self.extend_to(bound), other.extend_to(bound));
        let dims: Vec<usize> = a.dims.iter().zip(&b.dims).map(|(x, y)| x + y).collect();
        let blockdiag = |x: &FpMatrix, y: &FpMatrix| {
            let mut m = FpMatrix::zeros(self.field, x.rows() + y.rows(), x.cols() + y.cols());
            for r in 0..x.rows() {
                for c in 0..x.cols() {
                    m.set(r, c, x.get(r, c));
                }
            }
            for r in 0..y.rows() {
                for c in 0..y.cols() {
                    m.set(x.rows() + r, x.cols() + c, y.get(r, c));
                }
            }
            m
        };
        let f_ops = (0..bound).map(|i| blockdiag(&a.f_ops[i], &b.f_ops[i])).collect();
        let v_ops = (0..bound).map(|i| blockdiag(&a.v_ops[i], &b.v_ops[i])).collect();
        Self::new(self.field, dims, f_ops, v_ops)
    }

    /// The same module viewed in degrees `0..=bound` (`bound ≥ degree_bound`).
    pub fn extend_to(&self, bound: usize) -> Self {
        let mut m = self.clone();
        while m.degree_bound() < bound {
            let top = *m.dims.last().expect("nonempty");
            m.dims.push(0);
            m.f_ops.push(FpMatrix::zeros(self.field, 0, top));
            m.v_ops.push(FpMatrix::zeros(self.field, top, 0));
        }
        m
    }

    /// Conjugates by invertible changes of basis `g_i` of each `M^i`: `F'_i = g_{i+1} F_i g_i^{-1}`.
    pub fn conjugate(&self, g: &[FpMatrix]) -> Result<Self, DieudonneError> {
        let inv: Vec<FpMatrix> = g
            .iter()
            .enumerate()
            .map(|(i, m)| m.inverse().ok_or(DieudonneError::Shape(i)))
            .collect::<Result<_, _>>()?;
        let n = self.degree_bound();
        let mut f_ops = Vec::with_capacity(n);
        let mut v_ops = Vec::with_capacity(n);
        for i in 0..n {
            f_ops.push(g[i + 1].mul(&self.f_ops[i])?.mul(&inv[i])?);
            v_ops.push(g[i].mul(&self.v_ops[i])?.mul(&inv[i + 1])?);
        }
        Self::new(self.field, self.dims.clone(), f_ops, v_ops)
    }

    /// A uniformly random invertible change of basis per degree.
    pub fn random_basis_change<R: Rng>(&self, rng: &mut R) -> Vec<FpMatrix> {
        self.dims.iter().map(|&d| random_invertible(self.field, d, rng)).collect()
    }

    /// The submodule spanned by the columns of `bases[i]` in each degree, in those coordinates.
    /// The spans must be stable under `F` and `V`.
    pub fn restrict(&self, bases: &[FpMatrix]) -> Result<Self, DieudonneError> {
        let n = self.degree_bound();
        let lefts: Vec<FpMatrix> = bases
            .iter()
            .enumerate()
            .map(|(i, b)| b.left_inverse().ok_or(DieudonneError::Shape(i)))
            .collect::<Result<_, _>>()?;
        let dims = bases.iter().map(|b| b.cols()).collect();
        let mut f_ops = Vec::with_capacity(n);
        let mut v_ops = Vec::with_capacity(n);
        for i in 0..n {
            let img = self.f_ops[i].mul(&bases[i])?;
            let fi = lefts[i + 1].mul(&img)?;
            if bases[i + 1].mul(&fi)? != img {
                return Err(DieudonneError::Relation { degree: i, detail: "subspace not stable under F".into() });
            }
            let img = self.v_ops[i].mul(&bases[i + 1])?;
            let vi = lefts[i].mul(&img)?;
            if bases[i].mul(&vi)? != img {
                return Err(DieudonneError::Relation { degree: i, detail: "subspace not stable under V".into() });
            }
            f_ops.push(fi);
            v_ops.push(vi);
        }
        Self::new(self.field, dims, f_ops, v_ops)
    }
}

pub(crate) fn random_invertible<R: Rng>(field: PrimeField, d: usize, rng: &mut R) -> FpMatrix {
    loop {
        let mut m = FpMatrix::zeros(field, d, d);
        for r in 0..d {
            for c in 0..d {
                m.set(r, c, rng.gen_range(0..field.p()));
            }
        }
        if m.rank() == d {
            return m;
        }
    }
}

/// Checks `F_i V_i = 0` and `V_i F_i = 0` in every degree.
pub fn validate(m: &DieudonneModule) -> ValidationReport {
    for i in 0..m.degree_bound() {
        let fv = m.f_ops[i].mul(&m.v_ops[i]).expect("shapes checked on construction");
        if !fv.is_zero() {
            return ValidationReport { valid: false, degree: Some(i), detail: Some(format!("F_{i} V_{i} = {fv:?}")) };
        }
        let vf = m.v_ops[i].mul(&m.f_ops[i]).expect("shapes checked on construction");
        if !vf.is_zero() {
            return ValidationReport { valid: false, degree: Some(i), detail: Some(format!("V_{i} F_{i} = {vf:?}")) };
        }
    }
    ValidationReport { valid: true, degree: None, detail: None }
}

/// The string module `M_{r,w}` in degrees `0..=bound`; infinite tails run up to `bound`.
pub fn make_string(field: PrimeField, spec: &StringSpec, bound: usize) -> DieudonneModule {
    let mut m = DieudonneModule::zero(field, bound);
    if spec.r > bound {
        return m;
    }
    let top = spec.top(bound);
    for d in spec.r..=top {
        m.dims[d] = 1;
    }
    for i in 0..bound {
        let (a, b) = (m.dims[i], m.dims[i + 1]);
        m.f_ops[i] = FpMatrix::zeros(field, b, a);
        m.v_ops[i] = FpMatrix::zeros(field, a, b);
        if i >= spec.r && i < top {
            match spec.word.letter(i - spec.r) {
                Some(Letter::F) => m.f_ops[i].set(0, 0, 1),
                Some(Letter::V) => m.v_ops[i].set(0, 0, 1),
                None => unreachable!("top is within the word"),
            }
        }
    }
    m
}

/// Per-degree dimensions of primitives and indecomposables: `P^0 = Q^0 = M^0`,
/// `P^k = ker V_{k−1}` and `Q^k = coker F_{k−1}`.
pub fn recover_pq(m: &DieudonneModule) -> (Vec<usize>, Vec<usize>) {
    let mut p = vec![m.dims[0]];
    let mut q = vec![m.dims[0]];
    for k in 1..=m.degree_bound() {
        p.push(m.dims[k] - m.v_ops[k - 1].rank());
        q.push(m.dims[k] - m.f_ops[k - 1].rank());
    }
    (p, q)
}

#[derive(Serialize, Deserialize)]
struct DieuDoc {
    schema: String,
    p: u32,
    degree_bound: usize,
    dims: Vec<usize>,
    #[serde(rename = "F")]
    f: Vec<Vec<Vec<u32>>>,
    #[serde(rename = "V")]
    v: Vec<Vec<Vec<u32>>>,
}

fn rows_of(m: &FpMatrix) -> Vec<Vec<u32>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

/// Serialises as a `dieu-v1` document.
pub fn to_json(m: &DieudonneModule) -> String {
    let doc = DieuDoc {
        schema: "dieu-v1".into(),
        p: m.field.p(),
        degree_bound: m.degree_bound(),
        dims: m.dims.clone(),
        f: m.f_ops.iter().map(rows_of).collect(),
        v: m.v_ops.iter().map(rows_of).collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serialisable");
    s.push('\n');
    s
}

/// Parses and validates a `dieu-v1` document.
pub fn from_json(s: &str) -> Result<DieudonneModule, DieudonneError> {
    let doc: DieuDoc = serde_json::from_str(s).map_err(|e| DieudonneError::Json(e.to_string()))?;
    if doc.schema != "dieu-v1" {
        return Err(DieudonneError::Json(format!("unknown schema {:?}", doc.schema)));
    }
    if doc.dims.len() != doc.degree_bound + 1 {
        return Err(DieudonneError::Json("dims must have degree_bound + 1 entries".into()));
    }
    let field = PrimeField::new(doc.p)?;
    let mat = |rows: &[Vec<u32>], r: usize, c: usize| -> Result<FpMatrix, DieudonneError> {
        if rows.len() != r || rows.iter().any(|row| row.len() != c) {
            return Err(DieudonneError::Json(format!("expected a {r}×{c} matrix")));
        }
        let mut m = FpMatrix::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x % field.p());
            }
        }
        Ok(m)
    };
    let n = doc.degree_bound;
    if doc.f.len() != n || doc.v.len() != n {
        return Err(DieudonneError::Json(format!("expected {n} F and V matrices")));
    }
    let d = &doc.dims;
    let f_ops = (0..n).map(|i| mat(&doc.f[i], d[i + 1], d[i])).collect::<Result<_, _>>()?;
    let v_ops = (0..n).map(|i| mat(&doc.v[i], d[i], d[i + 1])).collect::<Result<_, _>>()?;
    let m = DieudonneModule::new(field, doc.dims, f_ops, v_ops)?;
    let report = validate(&m);
    if !report.valid {
        return Err(DieudonneError::Relation {
            degree: report.degree.unwrap_or(0),
            detail: report.detail.unwrap_or_default(),
        });
    }
    Ok(m)
}

#[cfg(test)]
mod tests;

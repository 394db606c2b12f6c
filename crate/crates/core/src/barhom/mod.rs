//! Reduced bar constructions and `Tor^A(𝕜, 𝕜)`.
//!
//! Chains are words `(ā₁|…|ā_s)` of augmentation-ideal basis elements, trigraded by length
//! `s`, internal degree `Σ|āᵢ|` and weight `Σ w(āᵢ)`; Tor is graded by the total degree
//! `s + Σ|āᵢ|`. Besides the homology tables themselves, this module provides the Hopf
//! structure on Tor (shuffle product, deconcatenation), iteration through cofree models,
//! closed-form tables for the symmetric, exterior, truncated and divided-power inputs, and
//! the regrading that turns bar homology into the values of the exponential functors
//! `𝔼(Λ, −)` and `𝔼(S, −)`.

mod complex;
mod expected;
mod torhopf;

pub use complex::{euler_per_weight, homology_table, reduced_bar, BarComplex};
pub use expected::{
    e_factors, expected_e, expected_tor, generators_table, regrade_e, tor_factors, EInput, Factor, FactorType, XKind,
};
pub use torhopf::{identify_cofree, tor_hopf, tor_iterated, CofreeGenerator};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::catalogue::CatalogueError;
use crate::exactla::LinAlgError;
use crate::hopfcore::HopfError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BarError {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Catalogue(#[from] CatalogueError),
    #[error("the algebra is not connected or not naturally graded")]
    NotConnected,
    #[error("the bounds do not make the complex finite")]
    Unbounded,
    #[error("the product {0} leaves the algebra's window; enlarge its bounds")]
    ProductOutsideWindow(String),
    #[error("d² ≠ 0 at {0:?}")]
    NotAComplex((u32, u32, u32)),
    #[error("enlarge the bounds: {0}")]
    EnlargeBounds(String),
    #[error("weight {0} is not fully enumerated within the bounds")]
    IncompleteWeight(u32),
    #[error("not cofree: {0}")]
    NotCofree(String),
    #[error("regrading sends ({degree}, {weight}) to a negative degree")]
    NegativeDegree { degree: u32, weight: u32 },
    #[error("no closed form for these parameters: {0}")]
    OutOfRange(String),
}

/// Bounds on the bar complex. Tor is reported for total degree `≤ max_total`, weight
/// `≤ max_weight` and length `≤ max_hom`; chains one step beyond are built so that the
/// reported homology is exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BarBounds {
    pub max_hom: Option<u32>,
    pub max_total: Option<u32>,
    pub max_weight: Option<u32>,
}

impl BarBounds {
    pub fn total(d: u32) -> Self {
        Self { max_hom: None, max_total: Some(d), max_weight: None }
    }

    pub fn weight(w: u32) -> Self {
        Self { max_hom: None, max_total: None, max_weight: Some(w) }
    }

    pub fn with_weight(mut self, w: u32) -> Self {
        self.max_weight = Some(w);
        self
    }

    pub fn with_hom(mut self, s: u32) -> Self {
        self.max_hom = Some(s);
        self
    }

    /// Whether a (total degree, weight) slot is inside the reported range.
    pub fn admits(&self, total: u32, weight: u32) -> bool {
        self.max_total.is_none_or(|d| total <= d) && self.max_weight.is_none_or(|w| weight <= w)
    }
}

/// Bigraded dimensions `(degree, weight) ↦ dim`, with the range they are complete in.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DimTable {
    pub entries: BTreeMap<(u32, u32), usize>,
    pub max_degree: Option<u32>,
    pub max_weight: Option<u32>,
}

impl DimTable {
    pub fn new(max_degree: Option<u32>, max_weight: Option<u32>) -> Self {
        Self { entries: BTreeMap::new(), max_degree, max_weight }
    }

    pub fn admits(&self, degree: u32, weight: u32) -> bool {
        self.max_degree.is_none_or(|d| degree <= d) && self.max_weight.is_none_or(|w| weight <= w)
    }

    pub fn add(&mut self, degree: u32, weight: u32, dim: usize) {
        if dim > 0 && self.admits(degree, weight) {
            *self.entries.entry((degree, weight)).or_default() += dim;
        }
    }

    pub fn get(&self, degree: u32, weight: u32) -> usize {
        self.entries.get(&(degree, weight)).copied().unwrap_or(0)
    }

    /// Restricts to a smaller range.
    pub fn restrict(&self, max_degree: Option<u32>, max_weight: Option<u32>) -> Self {
        let mut out = Self::new(max_degree, max_weight);
        for (&(d, w), &n) in &self.entries {
            out.add(d, w, n);
        }
        out
    }

    /// Entries that differ, as `(degree, weight, self, other)`.
    pub fn mismatches(&self, other: &DimTable) -> Vec<(u32, u32, usize, usize)> {
        let keys: std::collections::BTreeSet<_> = self.entries.keys().chain(other.entries.keys()).copied().collect();
        keys.into_iter()
            .filter(|&(d, w)| self.get(d, w) != other.get(d, w))
            .map(|(d, w)| (d, w, self.get(d, w), other.get(d, w)))
            .collect()
    }

    /// Sum over weights, by degree.
    pub fn by_degree(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for (&(d, _), &n) in &self.entries {
            *out.entry(d).or_default() += n;
        }
        out
    }
}

/// `Tor_{[level]}` dimensions by `(s, internal degree, weight)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TorTable {
    pub level: usize,
    pub entries: BTreeMap<(u32, u32, u32), usize>,
    pub bounds: Option<BarBounds>,
}

impl TorTable {
    /// The `(total degree, weight)` view.
    pub fn collapsed(&self) -> DimTable {
        let (d, w) = self.bounds.map(|b| (b.max_total, b.max_weight)).unwrap_or((None, None));
        let mut out = DimTable::new(d, w);
        for (&(s, i, wt), &n) in &self.entries {
            out.add(s + i, wt, n);
        }
        out
    }
}

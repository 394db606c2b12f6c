//! Homology of symmetric groups with coefficients in tensor powers.
//!
//! `H_*(𝔖_d, V^{⊗d})` is the weight-`d` part of `S(V) ⊗ ⊗_{k≥1} S_±(N_k ⊗ V^{(k)})`, where
//! `N_k` has a basis of admissible tuples `(j₁, …, j_k)` in degree `j₁ + … + j_k`. This module
//! enumerates the tuples, expands the series, and checks it against group homology computed
//! from scratch for small `d`.

mod oracle;

pub use oracle::{bar_group_homology, brute_group_homology};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exactla::{is_prime, LinAlgError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymError {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("size cap exceeded: {0}")]
    TooLarge(String),
    #[error("{0}")]
    Invalid(String),
}

/// An admissible tuple `(j₁, …, j_k)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NakaokaTuple {
    pub entries: Vec<u32>,
}

impl NakaokaTuple {
    pub fn degree(&self) -> u32 {
        self.entries.iter().sum()
    }

    /// The twist level `k`.
    pub fn level(&self) -> usize {
        self.entries.len()
    }

    /// Whether the three admissibility conditions hold at `p`.
    pub fn is_admissible(&self, p: u32) -> bool {
        let e = &self.entries;
        if e.is_empty() || e.contains(&0) {
            return false;
        }
        let m = 2 * (p - 1);
        let congruent = e.iter().all(|&j| j % m == 0 || j % m == m - 1);
        let chained = e.windows(2).all(|w| w[0] <= p * w[1]);
        let tail: u32 = e[1..].iter().sum();
        congruent && chained && e[0] > (p - 1) * tail
    }
}

fn check_prime(p: u32) -> Result<(), SymError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(SymError::NotPrime(p))
    }
}

/// All admissible tuples of length `k` and degree `≤ degree_bound`, sorted.
pub fn nakaoka_tuples(p: u32, k: usize, degree_bound: u32) -> Result<Vec<NakaokaTuple>, SymError> {
    check_prime(p)?;
    if k == 0 {
        return Err(SymError::Invalid("tuples have length k ≥ 1".into()));
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    extend(p, k, degree_bound, &mut current, &mut out);
    out.sort();
    Ok(out)
}

fn extend(p: u32, k: usize, budget: u32, current: &mut Vec<u32>, out: &mut Vec<NakaokaTuple>) {
    if current.len() == k {
        let t = NakaokaTuple { entries: current.clone() };
        if t.is_admissible(p) {
            out.push(t);
        }
        return;
    }
    // Every remaining entry is at least 1.
    let remaining = (k - current.len() - 1) as u32;
    for j in 1..=budget.saturating_sub(remaining) {
        current.push(j);
        extend(p, k, budget - j, current, out);
        current.pop();
    }
}

/// `dim N_k` by degree, for degrees `≤ degree_bound`.
pub fn nakaoka_dims(p: u32, k: usize, degree_bound: u32) -> Result<BTreeMap<u32, usize>, SymError> {
    let mut out = BTreeMap::new();
    for t in nakaoka_tuples(p, k, degree_bound)? {
        *out.entry(t.degree()).or_default() += 1;
    }
    Ok(out)
}

/// Poincaré series in (degree ≤ i_bound, weight ≤ w_bound), as `table[w][i]`.
type Series = Vec<Vec<u64>>;

fn multiply_factor(series: &mut Series, degree: u32, weight: u32, exterior: bool, i_bound: u32) {
    let w_bound = series.len() - 1;
    let mut next = series.clone();
    if exterior {
        for w in (weight as usize..=w_bound).rev() {
            for i in (degree as usize..=i_bound as usize).rev() {
                next[w][i] += series[w - weight as usize][i - degree as usize];
            }
        }
    } else {
        // Increasing order, so each entry already includes every smaller power.
        for w in weight as usize..=w_bound {
            for i in degree as usize..=i_bound as usize {
                next[w][i] += next[w - weight as usize][i - degree as usize];
            }
        }
    }
    *series = next;
}

/// Series of `S(V) ⊗ ⊗_{k≥1} S_±(N_k ⊗ V^{(k)})` for `dim V = m`.
fn full_series(p: u32, m: u32, w_bound: u32, i_bound: u32) -> Result<Series, SymError> {
    check_prime(p)?;
    let mut series: Series = vec![vec![0; i_bound as usize + 1]; w_bound as usize + 1];
    series[0][0] = 1;
    for _ in 0..m {
        multiply_factor(&mut series, 0, 1, false, i_bound);
    }
    let mut k = 1usize;
    while (p as u64).pow(k as u32) <= w_bound as u64 {
        let weight = p.pow(k as u32);
        for t in nakaoka_tuples(p, k, i_bound)? {
            let j = t.degree();
            let exterior = p != 2 && j % 2 == 1;
            for _ in 0..m {
                multiply_factor(&mut series, j, weight, exterior, i_bound);
            }
        }
        k += 1;
    }
    Ok(series)
}

/// Predicted `dim H_i(𝔖_d, V^{⊗d})` for `i ≤ i_bound`, `dim V = dim_v`.
pub fn symgroup_homology_dims(p: u32, d: u32, dim_v: u32, i_bound: u32) -> Result<Vec<usize>, SymError> {
    let series = full_series(p, dim_v, d, i_bound)?;
    Ok(series[d as usize].iter().map(|&x| x as usize).collect())
}

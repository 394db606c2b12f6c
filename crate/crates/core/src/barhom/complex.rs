//! The reduced bar complex, blockwise.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{BarBounds, BarError, TorTable};
use crate::exactla::{FpMatrix, PrimeField};
use crate::hopfcore::{Grading, HopfPresentation};

/// Trigrading of a block of chains: `(s, internal degree, weight)`.
pub type ChainKey = (u32, u32, u32);

/// A bar word: augmentation-ideal basis indices of the base algebra.
pub type Word = Vec<usize>;

/// The reduced bar complex of a connected, naturally graded Hopf algebra, truncated by
/// [`BarBounds`]. Chains are built one step beyond the reported range (length and total
/// degree), which makes the reported homology exact.
#[derive(Clone, Debug)]
pub struct BarComplex {
    base: Arc<HopfPresentation>,
    bounds: BarBounds,
    chains: BTreeMap<ChainKey, Vec<Word>>,
    position: HashMap<Word, usize>,
    /// `d: C(s, i, w) → C(s − 1, i, w)` for `s ≥ 1`; rows index the target block.
    differentials: BTreeMap<ChainKey, FpMatrix>,
}

impl BarComplex {
    pub fn base(&self) -> &Arc<HopfPresentation> {
        &self.base
    }

    pub fn bounds(&self) -> BarBounds {
        self.bounds
    }

    pub fn field(&self) -> PrimeField {
        self.base.field()
    }

    pub fn chains(&self) -> &BTreeMap<ChainKey, Vec<Word>> {
        &self.chains
    }

    pub fn block(&self, key: ChainKey) -> &[Word] {
        self.chains.get(&key).map_or(&[], Vec::as_slice)
    }

    /// Position of a word within its block.
    pub fn position(&self, word: &[usize]) -> Option<usize> {
        self.position.get(word).copied()
    }

    pub fn key_of(&self, word: &[usize]) -> ChainKey {
        let h = &self.base;
        (
            word.len() as u32,
            word.iter().map(|&a| h.degree(a)).sum(),
            word.iter().map(|&a| h.block(a).weight).sum(),
        )
    }

    /// The differential out of a block, or `None` when it is zero-dimensional or `s = 0`.
    pub fn differential(&self, key: ChainKey) -> Option<&FpMatrix> {
        self.differentials.get(&key)
    }

    /// Whether a block is within the reported range.
    pub fn reported(&self, key: ChainKey) -> bool {
        let (s, i, w) = key;
        self.bounds.max_hom.is_none_or(|h| s <= h) && self.bounds.admits(s + i, w)
    }

    fn rank_out(&self, key: ChainKey) -> usize {
        self.differentials.get(&key).map_or(0, FpMatrix::rank)
    }

    /// `dim H` at a reported block.
    pub fn homology_dim(&self, key: ChainKey) -> usize {
        let (s, i, w) = key;
        self.block(key).len() - self.rank_out(key) - self.rank_out((s + 1, i, w))
    }
}

fn letter_cost_ok(h: &HopfPresentation, letters: &[usize], bounds: &BarBounds) -> Result<(), BarError> {
    if bounds.max_total.is_some() || bounds.max_hom.is_some() {
        return Ok(());
    }
    match bounds.max_weight {
        Some(_) if letters.iter().all(|&a| h.block(a).weight > 0) => Ok(()),
        _ => Err(BarError::Unbounded),
    }
}

/// Checks that the base algebra contains every element the truncated complex can use.
fn base_covers(h: &HopfPresentation, bounds: &BarBounds) -> Result<(), BarError> {
    let w = h.window();
    let covers = |have: Option<u32>, need: Option<u32>| match (have, need) {
        (None, _) => true,
        (Some(a), Some(b)) => a >= b,
        (Some(_), None) => false,
    };
    let degree_ok = covers(w.degree, bounds.max_total);
    let weight_ok = covers(w.weight, bounds.max_weight);
    if w.ereg.is_some() || !(degree_ok && weight_ok) {
        return Err(BarError::EnlargeBounds(format!(
            "the base algebra's window {w:?} does not cover total degree {:?} and weight {:?}",
            bounds.max_total, bounds.max_weight
        )));
    }
    Ok(())
}

/// Builds the reduced bar complex of `h` within `bounds` and checks `d² = 0`.
pub fn reduced_bar(h: &HopfPresentation, bounds: BarBounds) -> Result<BarComplex, BarError> {
    if h.grading() != Grading::Natural || !h.is_connected() {
        return Err(BarError::NotConnected);
    }
    let letters: Vec<usize> = (0..h.dim()).filter(|&a| a != h.unit()).collect();
    letter_cost_ok(h, &letters, &bounds)?;
    base_covers(h, &bounds)?;

    // Enumerate words one step beyond the reported range.
    let max_s = bounds.max_hom.map(|s| s + 1);
    let max_total = bounds.max_total.map(|d| d + 1);
    let mut chains: BTreeMap<ChainKey, Vec<Word>> = BTreeMap::new();
    chains.insert((0, 0, 0), vec![Vec::new()]);
    let mut stack: Vec<(Word, u32, u32)> = vec![(Vec::new(), 0, 0)];
    while let Some((word, internal, weight)) = stack.pop() {
        let s = word.len() as u32 + 1;
        if max_s.is_some_and(|m| s > m) {
            continue;
        }
        for &a in &letters {
            let (i2, w2) = (internal + h.degree(a), weight + h.block(a).weight);
            if max_total.is_some_and(|d| s + i2 > d) || bounds.max_weight.is_some_and(|m| w2 > m) {
                continue;
            }
            let mut next = word.clone();
            next.push(a);
            chains.entry((s, i2, w2)).or_default().push(next.clone());
            stack.push((next, i2, w2));
        }
    }
    for words in chains.values_mut() {
        words.sort();
    }
    let mut position = HashMap::new();
    for words in chains.values() {
        for (k, w) in words.iter().enumerate() {
            position.insert(w.clone(), k);
        }
    }

    let f = h.field();
    let mut differentials = BTreeMap::new();
    for (&(s, i, w), words) in &chains {
        if s == 0 {
            continue;
        }
        let target = chains.get(&(s - 1, i, w)).map_or(0, Vec::len);
        let mut d = FpMatrix::zeros(f, target, words.len());
        for (c, word) in words.iter().enumerate() {
            let mut e = 0u32;
            for k in 0..word.len().saturating_sub(1) {
                e += h.degree(word[k]) + 1;
                let (a, b) = (word[k], word[k + 1]);
                if !h.in_window(&[a, b]) {
                    return Err(BarError::ProductOutsideWindow(format!("{}·{}", h.label(a), h.label(b))));
                }
                let sign = f.sign(e % 2 == 1);
                for &(m, coeff) in h.mul_basis(a, b) {
                    if m == h.unit() {
                        return Err(BarError::NotConnected);
                    }
                    let mut merged = word[..k].to_vec();
                    merged.push(m);
                    merged.extend_from_slice(&word[k + 2..]);
                    let r = position[&merged];
                    d.add_to(r, c, f.mul(sign, coeff));
                }
            }
        }
        differentials.insert((s, i, w), d);
    }
    let complex = BarComplex { base: Arc::new(h.clone()), bounds, chains, position, differentials };
    for (&(s, i, w), d) in &complex.differentials {
        if s < 2 {
            continue;
        }
        if let Some(d2) = complex.differentials.get(&(s - 1, i, w)) {
            if !d2.mul(d)?.is_zero() {
                return Err(BarError::NotAComplex((s, i, w)));
            }
        }
    }
    Ok(complex)
}

/// Tor dimensions by `(s, internal degree, weight)` over the reported range.
pub fn homology_table(c: &BarComplex) -> TorTable {
    let mut entries = BTreeMap::new();
    for &key in c.chains.keys() {
        if !c.reported(key) {
            continue;
        }
        let dim = c.homology_dim(key);
        if dim > 0 {
            entries.insert(key, dim);
        }
    }
    TorTable { level: 1, entries, bounds: Some(c.bounds) }
}

/// `Σ_s (−1)^s dim C(s, ·, w)` over all chains of weight `w`.
///
/// Fails unless every word of weight `w` lies in the reported range, which makes the sum
/// equal to the alternating sum of Tor dimensions in weight `w`.
pub fn euler_per_weight(c: &BarComplex, w: u32) -> Result<i64, BarError> {
    if c.bounds.max_weight.is_some_and(|m| w > m) {
        return Err(BarError::IncompleteWeight(w));
    }
    let h = &c.base;
    // Longest total degree and length of a word of weight exactly w.
    let letters: Vec<(u32, u32)> = (0..h.dim())
        .filter(|&a| a != h.unit())
        .map(|a| (h.block(a).weight, h.degree(a) + 1))
        .collect();
    if w > 0 && letters.iter().any(|&(wt, _)| wt == 0) {
        return Err(BarError::IncompleteWeight(w));
    }
    let mut best: Vec<Option<(u32, u32)>> = vec![None; w as usize + 1];
    best[0] = Some((0, 0));
    for v in 1..=w as usize {
        for &(wt, cost) in &letters {
            let wt = wt as usize;
            if wt == 0 || wt > v {
                continue;
            }
            if let Some((t, s)) = best[v - wt] {
                let cand = (t + cost, s + 1);
                let cur = best[v].get_or_insert(cand);
                *cur = (cur.0.max(cand.0), cur.1.max(cand.1));
            }
        }
    }
    if let Some((total, len)) = best[w as usize] {
        if c.bounds.max_total.is_some_and(|d| total > d) || c.bounds.max_hom.is_some_and(|m| len > m) {
            return Err(BarError::IncompleteWeight(w));
        }
    }
    let mut chi = 0i64;
    for (&(s, _, wt), words) in &c.chains {
        if wt == w {
            let n = words.len() as i64;
            chi += if s % 2 == 0 { n } else { -n };
        }
    }
    Ok(chi)
}

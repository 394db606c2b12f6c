//! Signatures and fake truncations.
//!
//! A profile records, for each twist level `k`, the multiplicity of the twisted simple
//! `I^{(k)}`. The signature of an exponential functor is the multiset of `(P, Q)` profile
//! pairs of its indecomposable factors. The fake truncation `φ_k` keeps the pairs that are
//! nonzero at level `k` exactly, truncated to levels `≤ k`; the sequence `φ_0, φ_1, …`
//! determines the signature.

use std::collections::BTreeMap;

use super::{DieudonneError, Letter, StringSpec};

/// Twist level ↦ nonzero multiplicity.
pub type Profile = BTreeMap<u32, u32>;
/// A `(P, Q)` pair.
pub type Pair = (Profile, Profile);
/// Pair ↦ positive multiplicity.
pub type SignatureMultiset = BTreeMap<Pair, usize>;

fn is_zero(pair: &Pair) -> bool {
    pair.0.is_empty() && pair.1.is_empty()
}

fn cut(profile: &Profile, k: u32) -> Profile {
    profile.range(..=k).map(|(&a, &b)| (a, b)).collect()
}

/// Collects summands into a multiset, dropping zero pairs.
pub fn signature_of(summands: &[Pair]) -> SignatureMultiset {
    let mut out = SignatureMultiset::new();
    for pair in summands {
        let clean: Pair = (
            pair.0.iter().filter(|(_, &m)| m > 0).map(|(&a, &b)| (a, b)).collect(),
            pair.1.iter().filter(|(_, &m)| m > 0).map(|(&a, &b)| (a, b)).collect(),
        );
        if !is_zero(&clean) {
            *out.entry(clean).or_default() += 1;
        }
    }
    out
}

/// `τ_k`: both profiles cut to levels `≤ k`.
pub fn truncate_pair(pair: &Pair, k: u32) -> Pair {
    (cut(&pair.0, k), cut(&pair.1, k))
}

/// `φ_k(σ) = { τ_k(A, B) | (A, B) ∈ σ, (A^k, B^k) ≠ (0, 0) }`.
pub fn fake_truncation(sigma: &SignatureMultiset, k: u32) -> SignatureMultiset {
    let mut out = SignatureMultiset::new();
    for (pair, &mult) in sigma {
        if pair.0.contains_key(&k) || pair.1.contains_key(&k) {
            *out.entry(truncate_pair(pair, k)).or_default() += mult;
        }
    }
    out
}

/// Recovers `σ` from `φ_0, …, φ_K`, assuming every pair of `σ` is supported in levels `≤ K`.
///
/// Writing `T_k` for the multiset of nonzero `τ_k`-truncations of pairs of `σ`, a pair either
/// is nonzero at level `k` (and its truncation lies in `φ_k`) or its `τ_k` equals its
/// `τ_{k−1}`. Hence `T_k = φ_k ⊎ (T_{k−1} − {τ_{k−1}(x) ≠ 0 | x ∈ φ_k})`, and `T_K = σ`.
pub fn reconstruct_from_phi(phis: &[SignatureMultiset]) -> Result<SignatureMultiset, DieudonneError> {
    let mut t = SignatureMultiset::new();
    for (k, phi) in phis.iter().enumerate() {
        let level = k as u32;
        for (pair, &mult) in phi {
            let above = pair.0.keys().chain(pair.1.keys()).any(|&l| l > level);
            let at = pair.0.contains_key(&level) || pair.1.contains_key(&level);
            if above || !at {
                return Err(DieudonneError::Inconsistent {
                    k,
                    detail: "an entry of φ_k is not a level-k truncation nonzero at level k".into(),
                });
            }
            if k == 0 {
                continue;
            }
            let below = truncate_pair(pair, level - 1);
            if is_zero(&below) {
                continue;
            }
            let have = t.get_mut(&below).filter(|m| **m >= mult).ok_or_else(|| DieudonneError::Inconsistent {
                k,
                detail: "φ_k has more pairs over a truncation than T_{k−1} provides".into(),
            })?;
            *have -= mult;
            if *have == 0 {
                t.remove(&below);
            }
        }
        for (pair, &mult) in phi {
            *t.entry(pair.clone()).or_default() += mult;
        }
    }
    Ok(t)
}

/// The `(P, Q)` profile pair of a string module within the window `0..=bound`:
/// `P` sits at the start and after every letter other than `V`, `Q` at the start and after
/// every letter other than `F`.
pub fn string_profiles(spec: &StringSpec, bound: usize) -> Pair {
    let mut p = Profile::new();
    let mut q = Profile::new();
    if spec.r > bound {
        return (p, q);
    }
    p.insert(spec.r as u32, 1);
    q.insert(spec.r as u32, 1);
    for k in 0..spec.top(bound) - spec.r {
        let level = (spec.r + k + 1) as u32;
        match spec.word.letter(k) {
            Some(Letter::F) => {
                p.insert(level, 1);
            }
            Some(Letter::V) => {
                q.insert(level, 1);
            }
            None => unreachable!("within the string"),
        }
    }
    (p, q)
}

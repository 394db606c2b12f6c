//! From Hopf algebras to Dieudonné modules.
//!
//! Degrees are split into columns: a degree `d > 0` is `d₀·p^k` with `p ∤ d₀`, and lives in
//! column `d₀` at slot `k`. For a primitively generated algebra (Verschiebung zero), the
//! module of column `d₀` is `M^k = P(H)^{d₀ p^k}` with `F` the `p`-th power and `V = 0`. For
//! tensor products of catalogue algebras it is the direct sum of the strings of the factors:
//! a generator of degree `d₀ p^s` gives a string starting at slot `s` with word
//!
//! | factor | word |
//! |---|---|
//! | `S` | `F^∞` |
//! | `Λ` | `ε` |
//! | `Γ` | `V^∞` |
//! | `S_n` | `F^{n−1}` |
//! | `Γ_n` | `V^{n−1}` |
//! | `G_n` | `V^n F^∞` |

use std::collections::BTreeMap;

use super::{make_string, recover_pq, DieudonneError, DieudonneModule, Letter, StringSpec, Word};
use crate::exactla::{FpMatrix, PrimeField};
use crate::hopfcore::{
    indecomposables, primitives, verschiebung, AlgebraKind, FactorTag, Grading, HopfPresentation, Vector,
};

/// The module of one column `d₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnModule {
    pub d0: u32,
    pub module: DieudonneModule,
}

/// One Dieudonné module per column, sorted by `d₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDieudonne {
    pub field: PrimeField,
    pub columns: Vec<ColumnModule>,
}

/// Per column: dimensions of primitives and indecomposables by slot.
pub type ColumnProfiles = BTreeMap<u32, (Vec<usize>, Vec<usize>)>;

impl GradedDieudonne {
    /// [`recover_pq`] on every column; columns with no primitives or indecomposables are omitted.
    pub fn pq_profiles(&self) -> ColumnProfiles {
        self.columns
            .iter()
            .map(|c| (c.d0, recover_pq(&c.module)))
            .filter(|(_, (p, q))| p.iter().chain(q).any(|&x| x > 0))
            .collect()
    }
}

fn split_degree(d: u32, p: u32) -> (u32, u32) {
    let (mut d0, mut k) = (d, 0);
    while d0 % p == 0 {
        d0 /= p;
        k += 1;
    }
    (d0, k)
}

/// Largest slot `k` with `d₀ p^k ≤ bound`.
fn column_bound(d0: u32, p: u32, bound: u32) -> usize {
    let (mut k, mut d) = (0, d0 as u64);
    while d * p as u64 <= bound as u64 {
        d *= p as u64;
        k += 1;
    }
    k
}

/// The column and string of one catalogue factor.
pub fn string_of_factor(tag: &FactorTag, p: u32) -> Result<(u32, StringSpec), DieudonneError> {
    if tag.degree == 0 {
        return Err(DieudonneError::Unsupported("generator in degree 0".into()));
    }
    let (d0, s) = split_degree(tag.degree, p);
    let word = match tag.kind {
        AlgebraKind::S => Word::infinite(vec![], Letter::F),
        AlgebraKind::Lambda => Word::empty(),
        AlgebraKind::Gamma => Word::infinite(vec![], Letter::V),
        AlgebraKind::SN(n) => Word::finite(vec![Letter::F; n as usize - 1]),
        AlgebraKind::GammaN(n) => Word::finite(vec![Letter::V; n as usize - 1]),
        AlgebraKind::GN(n) => Word::infinite(vec![Letter::V; n as usize], Letter::F),
        AlgebraKind::Morava => {
            return Err(DieudonneError::Unsupported("the cyclically graded self-dual algebra".into()))
        }
    };
    Ok((d0, StringSpec::new(s as usize, word)))
}

fn degree_bound(h: &HopfPresentation) -> Result<u32, DieudonneError> {
    if h.grading() != Grading::Natural {
        return Err(DieudonneError::Unsupported("cyclic grading".into()));
    }
    h.window().degree.ok_or_else(|| DieudonneError::Unsupported("no degree bound".into()))
}

/// The Dieudonné module of a primitively generated algebra or of a tensor product of
/// catalogue algebras, column by column within the degree window.
pub fn dieudonne_of(h: &HopfPresentation) -> Result<GradedDieudonne, DieudonneError> {
    let bound = degree_bound(h)?;
    let window = h.window();
    let v_zero = verschiebung(h)
        .map(|v| v.iter().enumerate().all(|(i, x)| i == h.unit() || x.is_empty()))
        .unwrap_or(false);
    if v_zero && window.weight.is_none() && window.ereg.is_none() {
        return primitively_generated(h, bound);
    }
    if h.factors().is_empty() {
        return Err(DieudonneError::Unsupported(
            "neither primitively generated nor a tensor product of catalogue algebras".into(),
        ));
    }
    let f = h.field();
    let p = h.p();
    let mut columns: BTreeMap<u32, DieudonneModule> = BTreeMap::new();
    for tag in h.factors() {
        let (d0, spec) = string_of_factor(tag, p)?;
        let cb = column_bound(d0, p, bound);
        // Last slot whose (degree, weight) the window admits.
        let mut top = spec.r;
        if spec.r > cb {
            continue;
        }
        while top < spec.top(cb) {
            let k = top + 1;
            let degree = d0 as u64 * (p as u64).pow(k as u32);
            let weight = (p as u64).pow(tag.r + (k - spec.r) as u32);
            if !window.admits(Grading::Natural, degree, weight) {
                break;
            }
            top = k;
        }
        let first_weight = (p as u64).pow(tag.r);
        if !window.admits(Grading::Natural, d0 as u64 * (p as u64).pow(spec.r as u32), first_weight) {
            continue;
        }
        let cut = spec.truncate(top).expect("start within bound");
        let m = make_string(f, &cut, cb);
        let entry = columns.entry(d0).or_insert_with(|| DieudonneModule::zero(f, cb));
        *entry = entry.direct_sum(&m)?;
    }
    Ok(GradedDieudonne {
        field: f,
        columns: columns.into_iter().map(|(d0, module)| ColumnModule { d0, module }).collect(),
    })
}

fn primitively_generated(h: &HopfPresentation, bound: u32) -> Result<GradedDieudonne, DieudonneError> {
    let f = h.field();
    let p = h.p();
    let n = h.dim();
    // Primitive vectors by degree, across weights.
    let mut by_degree: BTreeMap<u32, Vec<Vector>> = BTreeMap::new();
    for (key, v) in primitives(h).vectors() {
        by_degree.entry(key.degree).or_default().push(v);
    }
    let mut columns: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for &d in by_degree.keys() {
        if d == 0 {
            continue;
        }
        columns.entry(split_degree(d, p).0).or_default();
    }
    let dense = |v: &Vector| -> Vec<u32> {
        let mut x = vec![0; n];
        for (&i, &c) in v {
            x[i] = c;
        }
        x
    };
    let mut out = Vec::new();
    for &d0 in columns.keys() {
        let cb = column_bound(d0, p, bound);
        let slot_vectors: Vec<Vec<Vector>> = (0..=cb)
            .map(|k| by_degree.get(&(d0 * p.pow(k as u32))).cloned().unwrap_or_default())
            .collect();
        let dims: Vec<usize> = slot_vectors.iter().map(Vec::len).collect();
        let mut f_ops = Vec::new();
        let mut v_ops = Vec::new();
        for k in 0..cb {
            let target = FpMatrix::from_columns(f, n, &slot_vectors[k + 1].iter().map(dense).collect::<Vec<_>>());
            let mut fk = FpMatrix::zeros(f, dims[k + 1], dims[k]);
            for (c, v) in slot_vectors[k].iter().enumerate() {
                let image = dense(&h.power(v, p));
                let coords = target.solve(&image)?.ok_or_else(|| {
                    DieudonneError::Unsupported("the p-th power of a primitive is not primitive in the window".into())
                })?;
                for (r, &x) in coords.iter().enumerate() {
                    fk.set(r, c, x);
                }
            }
            f_ops.push(fk);
            v_ops.push(FpMatrix::zeros(f, dims[k], dims[k + 1]));
        }
        out.push(ColumnModule { d0, module: DieudonneModule::new(f, dims, f_ops, v_ops)? });
    }
    Ok(GradedDieudonne { field: f, columns: out })
}

/// Dimensions of `P(H)` and `Q(H)` by column and slot, computed directly in `H`.
pub fn direct_profiles(h: &HopfPresentation) -> Result<ColumnProfiles, DieudonneError> {
    let bound = degree_bound(h)?;
    let p = h.p();
    let mut out = ColumnProfiles::new();
    for (which, sub) in [(0, primitives(h)), (1, indecomposables(h))] {
        for (key, dim) in sub.dims() {
            if key.degree == 0 {
                continue;
            }
            let (d0, k) = split_degree(key.degree, p);
            let cb = column_bound(d0, p, bound);
            let entry = out.entry(d0).or_insert_with(|| (vec![0; cb + 1], vec![0; cb + 1]));
            let slot = if which == 0 { &mut entry.0 } else { &mut entry.1 };
            slot[k as usize] += dim;
        }
    }
    Ok(out)
}

//! The coradical (primitive) filtration, the augmentation filtration, and associated gradeds.
//!
//! `P_k = 𝕜 ⊕ ker Δ̄_{k+1}` is computed through the recursion
//! `P̄_k = {x ∈ Ī : Δ̄x ∈ P̄_{k−1} ⊗ Ī}`, which follows from coassociativity of `Δ̄`.
//! `Q_{−k} = Ī^k` is computed as iterated products with augmentation-ideal basis elements.

use std::collections::{BTreeMap, HashMap};

use crate::exactla::{subspace, Echelon, FpMatrix, SubspaceOp};

use super::presentation::{add_term, BlockKey, HopfBuilder, HopfPresentation, TensorVector, Vector, Window};
use super::subspace::{GradedSubspace, SubBlock};
use super::HopfError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Filtration {
    /// Coradical filtration by `P_k`.
    Primitive,
    /// Filtration by powers of the augmentation ideal.
    Augmentation,
}

/// Position of the unit inside its block's index list.
fn unit_pos(h: &HopfPresentation, idx: &[usize]) -> Option<usize> {
    idx.iter().position(|&i| i == h.unit())
}

/// Columns of a matrix whose row span annihilates the column span of `s` (`m × k`).
fn annihilator(s: &FpMatrix) -> FpMatrix {
    // y with yᵀ s = 0 ⇔ sᵀ y = 0.
    s.transpose().kernel_basis().transpose()
}

/// `P_k` as a blockwise subspace (every block index list is the full block).
pub fn primitive_filtration(h: &HopfPresentation, k: usize) -> GradedSubspace {
    coradical_levels(h, k).pop().expect("at least P_0")
}

/// `P_0, …, P_k`.
fn coradical_levels(h: &HopfPresentation, k: usize) -> Vec<GradedSubspace> {
    let f = h.field();
    let blocks = h.blocks();
    let aug = h.augmentation_blocks();
    // P̄ per augmentation block, in augmentation coordinates.
    let mut pbar: BTreeMap<BlockKey, FpMatrix> =
        aug.iter().map(|(key, idx)| (*key, FpMatrix::zeros(f, idx.len(), 0))).collect();
    let local: HashMap<usize, usize> =
        aug.values().flat_map(|v| v.iter().enumerate().map(|(a, &i)| (i, a))).collect();
    let reduced: HashMap<usize, TensorVector> = aug
        .values()
        .flatten()
        .map(|&x| (x, h.reduced_coproduct(&h.basis_vector(x))))
        .collect();
    let mut levels = vec![assemble(h, &blocks, &pbar)];
    for _ in 0..k {
        let ann: BTreeMap<BlockKey, FpMatrix> = pbar.iter().map(|(key, s)| (*key, annihilator(s))).collect();
        let mut next = BTreeMap::new();
        for (key, idx) in &aug {
            let mut rows: HashMap<(BlockKey, usize, usize), usize> = HashMap::new();
            let mut cols: Vec<BTreeMap<(BlockKey, usize, usize), u32>> = Vec::new();
            for &x in idx {
                let mut col = BTreeMap::new();
                for (&(l, r), &c) in &reduced[&x] {
                    let kl = h.block(l);
                    let a = &ann[&kl];
                    let ll = local[&l];
                    for row in 0..a.rows() {
                        let v = a.get(row, ll);
                        if v != 0 {
                            add_term(&mut col, (kl, row, r), f.mul(v, c), f);
                        }
                    }
                }
                for key in col.keys() {
                    let len = rows.len();
                    rows.entry(*key).or_insert(len);
                }
                cols.push(col);
            }
            let mut m = FpMatrix::zeros(f, rows.len(), idx.len());
            for (c, col) in cols.iter().enumerate() {
                for (key, &v) in col {
                    m.set(rows[key], c, v);
                }
            }
            next.insert(*key, m.kernel_basis());
        }
        pbar = next;
        levels.push(assemble(h, &blocks, &pbar));
    }
    levels
}

/// `𝕜 ⊕ P̄` as a graded subspace on full blocks.
fn assemble(
    h: &HopfPresentation,
    blocks: &BTreeMap<BlockKey, Vec<usize>>,
    pbar: &BTreeMap<BlockKey, FpMatrix>,
) -> GradedSubspace {
    let f = h.field();
    let mut out = GradedSubspace::default();
    for (key, idx) in blocks {
        let mut cols: Vec<Vec<u32>> = Vec::new();
        let up = unit_pos(h, idx);
        if let Some(u) = up {
            let mut e = vec![0; idx.len()];
            e[u] = 1;
            cols.push(e);
        }
        if let Some(s) = pbar.get(key) {
            for c in s.columns() {
                let mut full = Vec::with_capacity(idx.len());
                let mut it = c.into_iter();
                for r in 0..idx.len() {
                    if Some(r) == up {
                        full.push(0);
                    } else {
                        full.push(it.next().expect("augmentation coordinates"));
                    }
                }
                cols.push(full);
            }
        }
        if !cols.is_empty() {
            out.blocks.insert(*key, SubBlock { indices: idx.clone(), basis: FpMatrix::from_columns(f, idx.len(), &cols) });
        }
    }
    out
}

/// `Q_{−k} = Ī^k` (and `Q_0 = H`).
pub fn augmentation_filtration(h: &HopfPresentation, k: usize) -> GradedSubspace {
    augmentation_levels(h, k).pop().expect("at least Q_0")
}

fn augmentation_levels(h: &HopfPresentation, k: usize) -> Vec<GradedSubspace> {
    let f = h.field();
    let blocks = h.blocks();
    let local: HashMap<usize, usize> =
        blocks.values().flat_map(|v| v.iter().enumerate().map(|(a, &i)| (i, a))).collect();
    let full = GradedSubspace {
        blocks: blocks
            .iter()
            .map(|(key, idx)| (*key, SubBlock { indices: idx.clone(), basis: FpMatrix::identity(f, idx.len()) }))
            .collect(),
    };
    let mut levels = vec![full];
    if k == 0 {
        return levels;
    }
    let aug_basis: Vec<usize> = (0..h.dim()).filter(|&i| i != h.unit()).collect();
    let mut current: Vec<Vector> = aug_basis.iter().map(|&i| h.basis_vector(i)).collect();
    let to_sub = |vs: &[Vector]| -> GradedSubspace {
        let mut ech: BTreeMap<BlockKey, (Echelon, Vec<Vec<u32>>)> = BTreeMap::new();
        for v in vs {
            let Some(&first) = v.keys().next() else { continue };
            let key = h.block(first);
            let idx = &blocks[&key];
            let (e, cols) = ech.entry(key).or_insert_with(|| (Echelon::new(f, idx.len()), Vec::new()));
            let mut d = vec![0; idx.len()];
            for (&i, &c) in v {
                d[local[&i]] = c;
            }
            if e.insert(&d) {
                cols.push(d);
            }
        }
        GradedSubspace {
            blocks: ech
                .into_iter()
                .map(|(key, (_, cols))| {
                    let idx = blocks[&key].clone();
                    let m = FpMatrix::from_columns(f, idx.len(), &cols);
                    (key, SubBlock { indices: idx, basis: m })
                })
                .collect(),
        }
    };
    levels.push(to_sub(&current));
    for _ in 1..k {
        let basis_now: Vec<Vector> = levels.last().expect("nonempty").vectors().into_iter().map(|(_, v)| v).collect();
        let mut next = Vec::new();
        for &i in &aug_basis {
            for v in &basis_now {
                let Some(&first) = v.keys().next() else { continue };
                if !h.in_window(&[i, first]) {
                    continue;
                }
                let w = h.mul(&h.basis_vector(i), v);
                if !w.is_empty() {
                    next.push(w);
                }
            }
        }
        current = next;
        levels.push(to_sub(&current));
    }
    levels
}

/// `P_0 ⊆ P_1 ⊆ …` up to the first `i` with `P_i = P_{i+1}`; errors unless that is all of `H`.
pub fn coradical_tower(h: &HopfPresentation) -> Result<Vec<GradedSubspace>, HopfError> {
    let max = h.dim() + 1;
    let levels = coradical_levels(h, max);
    let mut out = vec![levels[0].clone()];
    for w in levels.windows(2) {
        if w[0].same_span(&w[1])? {
            break;
        }
        out.push(w[1].clone());
    }
    let top = out.last().expect("nonempty");
    if top.total_dim() != h.dim() {
        return Err(HopfError::NotStabilized);
    }
    Ok(out)
}

/// `Q_0 ⊇ Q_{−1} ⊇ …` up to the first `i` with `Q_{−i} = Q_{−i−1}`; errors unless that is 0.
pub fn augmentation_tower(h: &HopfPresentation) -> Result<Vec<GradedSubspace>, HopfError> {
    let max = h.dim() + 1;
    let levels = augmentation_levels(h, max);
    let mut out = vec![levels[0].clone()];
    for w in levels.windows(2) {
        if w[0].same_span(&w[1])? {
            break;
        }
        out.push(w[1].clone());
    }
    if out.last().expect("nonempty").total_dim() != 0 {
        return Err(HopfError::NotStabilized);
    }
    Ok(out)
}

/// The associated graded Hopf algebra of a filtration. Basis elements are representatives
/// of the filtration subquotients; their weight is the filtration level unless the input is
/// weight graded, in which case the original weight is kept.
pub fn associated_graded(h: &HopfPresentation, filt: Filtration) -> Result<HopfPresentation, HopfError> {
    let f = h.field();
    let blocks = h.blocks();
    // Per block: (representative columns, their levels).
    let mut reps: BTreeMap<BlockKey, (Vec<Vec<u32>>, Vec<usize>)> = BTreeMap::new();
    match filt {
        Filtration::Primitive => {
            let tower = coradical_tower(h)?;
            for (key, idx) in &blocks {
                let mut prev = FpMatrix::zeros(f, idx.len(), 0);
                let entry = reps.entry(*key).or_default();
                for (lvl, sub) in tower.iter().enumerate() {
                    let cur = sub.blocks.get(key).map(|b| b.basis.clone()).unwrap_or_else(|| FpMatrix::zeros(f, idx.len(), 0));
                    let q = subspace(SubspaceOp::Quotient, &prev, &cur)?;
                    for c in q.columns() {
                        entry.0.push(c);
                        entry.1.push(lvl);
                    }
                    prev = subspace(SubspaceOp::Sum, &prev, &cur)?;
                }
            }
        }
        Filtration::Augmentation => {
            let tower = augmentation_tower(h)?;
            for (key, idx) in &blocks {
                let entry = reps.entry(*key).or_default();
                let get = |lvl: usize| -> FpMatrix {
                    tower
                        .get(lvl)
                        .and_then(|s| s.blocks.get(key))
                        .map(|b| b.basis.clone())
                        .unwrap_or_else(|| FpMatrix::zeros(f, idx.len(), 0))
                };
                for lvl in 0..tower.len() {
                    let q = subspace(SubspaceOp::Quotient, &get(lvl + 1), &get(lvl))?;
                    for c in q.columns() {
                        entry.0.push(c);
                        entry.1.push(lvl);
                    }
                }
            }
        }
    }
    let mut window = h.window();
    if !h.weight_graded() {
        window = Window { degree: window.degree, weight: None, ereg: None };
    }
    let mut b = HopfBuilder::new(f, h.grading(), window).weight_graded(true);
    struct Adapted {
        first: usize,
        inverse: FpMatrix,
        levels: Vec<usize>,
        local: HashMap<usize, usize>,
        n: usize,
    }
    let mut adapted: BTreeMap<BlockKey, Adapted> = BTreeMap::new();
    let mut elems: Vec<(Vector, usize, BlockKey)> = Vec::new();
    for (key, (cols, levels)) in &reps {
        let idx = &blocks[key];
        let m = FpMatrix::from_columns(f, idx.len(), cols);
        let inverse = m.inverse().ok_or(HopfError::NotStabilized)?;
        let first = elems.len();
        for (c, &lvl) in cols.iter().zip(levels) {
            let v: Vector = c.iter().enumerate().filter(|(_, &x)| x != 0).map(|(r, &x)| (idx[r], x)).collect();
            let weight = if h.weight_graded() { key.weight } else { lvl as u32 };
            let label = if v.len() == 1 && v.values().all(|&x| x == 1) {
                format!("[{}]", h.label(*v.keys().next().expect("nonempty")))
            } else {
                format!("[{}]", h.format_vector(&v))
            };
            let id = b.add_basis(label, key.degree as u64, weight);
            if v.len() == 1 && v.contains_key(&h.unit()) && lvl == 0 {
                b.set_unit(id);
            }
            elems.push((v, lvl, *key));
        }
        let local = idx.iter().enumerate().map(|(a, &i)| (i, a)).collect();
        adapted.insert(*key, Adapted { first, inverse, levels: levels.clone(), local, n: idx.len() });
    }
    let coords = |v: &Vector| -> Vec<(usize, u32, usize)> {
        let mut grouped: BTreeMap<BlockKey, Vec<u32>> = BTreeMap::new();
        for (&i, &c) in v {
            let key = h.block(i);
            let a = &adapted[&key];
            grouped.entry(key).or_insert_with(|| vec![0; a.n])[a.local[&i]] = c;
        }
        let mut out = Vec::new();
        for (key, dense) in grouped {
            let a = &adapted[&key];
            let c = a.inverse.mul_vec(&dense).expect("square");
            for (r, &x) in c.iter().enumerate() {
                if x != 0 {
                    out.push((a.first + r, x, a.levels[r]));
                }
            }
        }
        out
    };
    for (x, (u, lu, _)) in elems.iter().enumerate() {
        for (y, (v, lv, _)) in elems.iter().enumerate() {
            let (&fu, &fv) = (u.keys().next().expect("nonzero"), v.keys().next().expect("nonzero"));
            if !h.in_window(&[fu, fv]) {
                continue;
            }
            let mut out = Vector::new();
            for (k, c, lvl) in coords(&h.mul(u, v)) {
                if lvl == lu + lv {
                    add_term(&mut out, k, c, f);
                }
            }
            b.set_product(x, y, out);
        }
        let mut out = TensorVector::new();
        let d = h.coproduct(u);
        // Expand Δu in the adapted basis on both sides.
        let mut by_left: BTreeMap<usize, Vector> = BTreeMap::new();
        for (&(l, r), &c) in &d {
            add_term(by_left.entry(r).or_default(), l, c, f);
        }
        let mut partial: BTreeMap<(usize, usize, usize), u32> = BTreeMap::new();
        for (r, lv) in &by_left {
            for (k, c, lvl) in coords(lv) {
                add_term(&mut partial, (k, lvl, *r), c, f);
            }
        }
        let mut regroup: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
        for (&(k, lvl, r), &c) in &partial {
            add_term(regroup.entry((k, lvl)).or_default(), r, c, f);
        }
        for ((k, lk), rv) in regroup {
            for (m, c, lm) in coords(&rv) {
                if lk + lm == *lu {
                    add_term(&mut out, (k, m), c, f);
                }
            }
        }
        b.set_coproduct(x, out);
    }
    b.build()
}

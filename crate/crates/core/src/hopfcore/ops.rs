//! Tensor products, antipode, primitives, indecomposables, Frobenius and Verschiebung.

use std::collections::{BTreeMap, HashMap};

use crate::exactla::{subspace, FpMatrix, PrimeField, SubspaceOp};

use super::presentation::{add_term, axpy, BlockKey, Grading, HopfBuilder, HopfPresentation, TensorVector, Vector, Window};
use super::subspace::{GradedSubspace, SubBlock};
use super::HopfError;

/// The one-dimensional Hopf algebra 𝕜.
pub fn trivial(field: PrimeField, grading: Grading, window: Window) -> HopfPresentation {
    let mut b = HopfBuilder::new(field, grading, window);
    let u = b.add_basis("1", 0, 0);
    b.set_unit(u);
    let mut one = Vector::new();
    one.insert(u, 1 % field.p());
    b.set_product(u, u, one);
    let mut d = TensorVector::new();
    d.insert((u, u), 1 % field.p());
    b.set_coproduct(u, d);
    b.build().expect("the trivial presentation is well formed")
}

/// `h1 ⊗ h2` with Koszul signs; the window is the intersection of the two windows.
pub fn tensor_product(h1: &HopfPresentation, h2: &HopfPresentation) -> Result<HopfPresentation, HopfError> {
    if h1.field() != h2.field() {
        return Err(HopfError::FieldMismatch);
    }
    if h1.grading() != h2.grading() {
        return Err(HopfError::GradingMismatch);
    }
    let f = h1.field();
    let window = h1.window().meet(&h2.window());
    let grading = h1.grading();
    let mut b = HopfBuilder::new(f, grading, window).weight_graded(h1.weight_graded() && h2.weight_graded());
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut pairs = Vec::new();
    for i in 0..h1.dim() {
        for j in 0..h2.dim() {
            let d = h1.degree(i) as u64 + h2.degree(j) as u64;
            let w = h1.weight(i) as u64 + h2.weight(j) as u64;
            if !window.admits(grading, d, w) {
                continue;
            }
            let label = if i == h1.unit() {
                h2.label(j).to_string()
            } else if j == h2.unit() {
                h1.label(i).to_string()
            } else {
                format!("{}⊗{}", h1.label(i), h2.label(j))
            };
            let k = b.add_basis(label, d, w as u32);
            index.insert((i, j), k);
            pairs.push((i, j));
        }
    }
    b.set_unit(index[&(h1.unit(), h2.unit())]);
    for (x, &(a1, a2)) in pairs.iter().enumerate() {
        for (y, &(b1, b2)) in pairs.iter().enumerate() {
            let d = h1.degree(a1) as u64 + h2.degree(a2) as u64 + h1.degree(b1) as u64 + h2.degree(b2) as u64;
            let w = h1.weight(a1) as u64 + h2.weight(a2) as u64 + h1.weight(b1) as u64 + h2.weight(b2) as u64;
            if !window.admits(grading, d, w) {
                continue;
            }
            let sign = f.sign(h2.is_odd(a2) && h1.is_odd(b1));
            let mut out = Vector::new();
            for &(k1, c1) in h1.mul_basis(a1, b1) {
                for &(k2, c2) in h2.mul_basis(a2, b2) {
                    if let Some(&k) = index.get(&(k1, k2)) {
                        add_term(&mut out, k, f.mul(sign, f.mul(c1, c2)), f);
                    }
                }
            }
            b.set_product(x, y, out);
        }
    }
    for (x, &(a1, a2)) in pairs.iter().enumerate() {
        let mut out = TensorVector::new();
        for &(l1, r1, c1) in h1.coproduct_basis(a1) {
            for &(l2, r2, c2) in h2.coproduct_basis(a2) {
                let sign = f.sign(h1.is_odd(r1) && h2.is_odd(l2));
                if let (Some(&l), Some(&r)) = (index.get(&(l1, l2)), index.get(&(r1, r2))) {
                    add_term(&mut out, (l, r), f.mul(sign, f.mul(c1, c2)), f);
                }
            }
        }
        b.set_coproduct(x, out);
    }
    let mut tags = h1.factors().to_vec();
    tags.extend_from_slice(h2.factors());
    Ok(b.factors(tags).build()?)
}

/// The antipode, solved recursively from `μ(χ ⊗ 1)Δ = ηε`.
pub fn antipode(h: &HopfPresentation) -> Result<Vec<Vector>, HopfError> {
    let n = h.dim();
    let mut memo: Vec<Option<Vector>> = vec![None; n];
    let mut active = vec![false; n];
    for x in 0..n {
        chi(h, x, &mut memo, &mut active)?;
    }
    Ok(memo.into_iter().map(|v| v.expect("filled")).collect())
}

fn chi(h: &HopfPresentation, x: usize, memo: &mut Vec<Option<Vector>>, active: &mut Vec<bool>) -> Result<(), HopfError> {
    if memo[x].is_some() {
        return Ok(());
    }
    let f = h.field();
    if x == h.unit() {
        memo[x] = Some(h.basis_vector(x));
        return Ok(());
    }
    if active[x] {
        return Err(HopfError::AntipodeCycle(h.label(x).to_string()));
    }
    active[x] = true;
    // Σ_{(l, r)} χ(l) r = 0, and the terms with r = 1 sum to χ(x) by the counit axiom.
    let mut acc = Vector::new();
    for &(l, r, c) in h.coproduct_basis(x) {
        if r == h.unit() {
            continue;
        }
        chi(h, l, memo, active)?;
        let prod = h.mul(memo[l].as_ref().expect("computed"), &h.basis_vector(r));
        axpy(&mut acc, f.neg(c), &prod, f);
    }
    active[x] = false;
    memo[x] = Some(acc);
    Ok(())
}

/// Primitives: per augmentation block, the kernel of the reduced coproduct.
pub fn primitives(h: &HopfPresentation) -> GradedSubspace {
    let f = h.field();
    let mut out = GradedSubspace::default();
    for (key, idx) in h.augmentation_blocks() {
        let mut rows: HashMap<(usize, usize), usize> = HashMap::new();
        let mut cols: Vec<TensorVector> = Vec::new();
        for &x in &idx {
            let d = h.reduced_coproduct(&h.basis_vector(x));
            for k in d.keys() {
                let len = rows.len();
                rows.entry(*k).or_insert(len);
            }
            cols.push(d);
        }
        let mut m = FpMatrix::zeros(f, rows.len(), idx.len());
        for (c, d) in cols.iter().enumerate() {
            for (k, &v) in d {
                m.set(rows[k], c, v);
            }
        }
        let basis = m.kernel_basis();
        if basis.cols() > 0 {
            out.blocks.insert(key, SubBlock { indices: idx, basis });
        }
    }
    out
}

/// Decomposables `Ī·Ī` per augmentation block, as column spans in block coordinates.
pub(crate) fn decomposables(h: &HopfPresentation) -> BTreeMap<BlockKey, (Vec<usize>, FpMatrix)> {
    let f = h.field();
    let blocks = h.augmentation_blocks();
    let local: HashMap<usize, usize> =
        blocks.values().flat_map(|v| v.iter().enumerate().map(|(a, &i)| (i, a))).collect();
    let mut cols: BTreeMap<BlockKey, Vec<Vec<u32>>> = BTreeMap::new();
    let aug: Vec<usize> = blocks.values().flatten().copied().collect();
    for &i in &aug {
        for &j in &aug {
            if !h.in_window(&[i, j]) {
                continue;
            }
            let out = h.mul_basis(i, j);
            if out.is_empty() {
                continue;
            }
            let key = h.block_sum(h.block(i), h.block(j));
            let Some(bidx) = blocks.get(&key) else { continue };
            let mut col = vec![0u32; bidx.len()];
            for &(k, c) in out {
                if let Some(&a) = local.get(&k) {
                    if h.block(k) == key {
                        col[a] = f.add(col[a], c);
                    }
                }
            }
            cols.entry(key).or_default().push(col);
        }
    }
    blocks
        .into_iter()
        .map(|(key, idx)| {
            let c = cols.remove(&key).unwrap_or_default();
            let m = FpMatrix::from_columns(f, idx.len(), &c);
            (key, (idx, m))
        })
        .collect()
}

/// Indecomposables: per augmentation block, representatives of `Ī / Ī²`.
pub fn indecomposables(h: &HopfPresentation) -> GradedSubspace {
    let f = h.field();
    let mut out = GradedSubspace::default();
    for (key, (idx, dec)) in decomposables(h) {
        let reps = subspace(SubspaceOp::Quotient, &dec, &FpMatrix::identity(f, idx.len()))
            .expect("same ambient dimension");
        if reps.cols() > 0 {
            out.blocks.insert(key, SubBlock { indices: idx, basis: reps });
        }
    }
    out
}

fn reject_odd(h: &HopfPresentation) -> Result<(), HopfError> {
    if h.p() != 2 {
        if let Some(i) = (0..h.dim()).find(|&i| h.is_odd(i)) {
            return Err(HopfError::OddDegree(h.label(i).to_string()));
        }
    }
    Ok(())
}

/// The Frobenius `b ↦ b^p` on each basis element; `None` where `b^p` leaves the window.
pub fn frobenius(h: &HopfPresentation) -> Result<Vec<Option<Vector>>, HopfError> {
    reject_odd(h)?;
    let p = h.p();
    Ok((0..h.dim())
        .map(|i| {
            let w = h.weight(i) as u64 * p as u64;
            let d = h.degree(i) as u64 * p as u64;
            h.window().admits(h.grading(), d, w).then(|| h.power(&h.basis_vector(i), p))
        })
        .collect())
}

/// The Verschiebung: `V(b) = Σ_c [c^{⊗p}] Δ^{(p)}(b) · c`, over basis elements `c`.
pub fn verschiebung(h: &HopfPresentation) -> Result<Vec<Vector>, HopfError> {
    reject_odd(h)?;
    let f = h.field();
    let p = h.p();
    let mut out = Vec::with_capacity(h.dim());
    for b in 0..h.dim() {
        let target = h.block(b);
        // States (c, remaining factor) ↦ coefficient after peeling off copies of c.
        let mut states: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for &(l, r, c) in h.coproduct_basis(b) {
            if h.block_scale(h.block(l), p) == target {
                add_term(&mut states, (l, r), c, f);
            }
        }
        for _ in 0..p - 2 {
            let mut next: BTreeMap<(usize, usize), u32> = BTreeMap::new();
            for (&(c0, z), &coef) in &states {
                for &(l, r, c) in h.coproduct_basis(z) {
                    if l == c0 {
                        add_term(&mut next, (c0, r), f.mul(coef, c), f);
                    }
                }
            }
            states = next;
        }
        let mut v = Vector::new();
        for (&(c0, z), &coef) in &states {
            if z == c0 {
                add_term(&mut v, c0, coef, f);
            }
        }
        out.push(v);
    }
    Ok(out)
}

/// Checks `F ∘ V = Id^{⋆p}` on every basis element. Returns the first failing element.
pub fn check_frobenius_verschiebung(h: &HopfPresentation) -> Result<Option<String>, HopfError> {
    let f = h.field();
    let v = verschiebung(h)?;
    let idp = super::morphism::identity_convolution_powers(h, h.p());
    for b in 0..h.dim() {
        let mut lhs = Vector::new();
        for (&c, &x) in &v[b] {
            axpy(&mut lhs, x, &h.power(&h.basis_vector(c), h.p()), f);
        }
        if lhs != idp[b] {
            return Ok(Some(format!(
                "{}: F(V) = {}, Id^⋆p = {}",
                h.label(b),
                h.format_vector(&lhs),
                h.format_vector(&idp[b])
            )));
        }
    }
    Ok(None)
}

//! Sub-Hopf algebras, kernels, cokernels and exactness of triples.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::exactla::{Echelon, FpMatrix, SubspaceOp};

use super::morphism::HopfMorphism;
use super::presentation::{add_term, BlockKey, HopfBuilder, HopfPresentation, TensorVector, Vector};
use super::subspace::{GradedSubspace, SubBlock};
use super::HopfError;

struct BlockCoords {
    indices: Vec<usize>,
    local: HashMap<usize, usize>,
    basis: FpMatrix,
    left_inverse: FpMatrix,
    first: usize,
}

impl BlockCoords {
    fn dense(&self, v: &Vector) -> Vec<u32> {
        let mut d = vec![0; self.indices.len()];
        for (&i, &c) in v {
            d[self.local[&i]] = c;
        }
        d
    }

    fn coords(&self, dense: &[u32]) -> Option<Vec<u32>> {
        let c = self.left_inverse.mul_vec(dense).ok()?;
        (self.basis.mul_vec(&c).ok()? == dense).then_some(c)
    }
}

/// The sub-presentation spanned by a blockwise subspace that contains the unit and is
/// closed under products and coproducts within the window, with its inclusion map.
pub fn sub_presentation(
    h: &Arc<HopfPresentation>,
    sub: &GradedSubspace,
) -> Result<(HopfPresentation, HopfMorphism), HopfError> {
    let f = h.field();
    let ub = h.block(h.unit());
    let unit_block = sub
        .blocks
        .get(&ub)
        .ok_or_else(|| HopfError::NotClosed { what: "unit", witness: h.label(h.unit()).into() })?;
    let mut blocks: BTreeMap<BlockKey, SubBlock> = sub.blocks.clone();
    {
        // Adapted basis of the unit block: the unit first, then elements of the augmentation ideal.
        let ul = unit_block.indices.iter().position(|&i| i == h.unit()).expect("unit in its block");
        let mut e = vec![0; unit_block.indices.len()];
        e[ul] = 1;
        let span = unit_block.basis.clone();
        let unit_col = FpMatrix::from_columns(f, e.len(), &[e.clone()]);
        let reps = crate::exactla::subspace(SubspaceOp::Quotient, &unit_col, &span)?;
        if reps.cols() + 1 != span.rank() {
            return Err(HopfError::NotClosed { what: "unit", witness: h.label(h.unit()).into() });
        }
        let mut cols = vec![e];
        for mut c in reps.columns() {
            c[ul] = 0;
            cols.push(c);
        }
        blocks.insert(ub, SubBlock { indices: unit_block.indices.clone(), basis: FpMatrix::from_columns(f, span.rows(), &cols) });
    }
    let mut b = HopfBuilder::new(f, h.grading(), h.window()).weight_graded(h.weight_graded());
    let mut coords: BTreeMap<BlockKey, BlockCoords> = BTreeMap::new();
    let mut vectors: Vec<Vector> = Vec::new();
    let mut block_of: Vec<BlockKey> = Vec::new();
    for (key, sb) in &blocks {
        let basis = crate::exactla::column_basis(&sb.basis);
        if basis.cols() == 0 {
            continue;
        }
        let first = vectors.len();
        for v in (SubBlock { indices: sb.indices.clone(), basis: basis.clone() }).vectors() {
            let label = match v.iter().next() {
                Some((&i, &c)) if v.len() == 1 && c == 1 => h.label(i).to_string(),
                _ => h.format_vector(&v),
            };
            let ws: Vec<u32> = v.keys().map(|&i| h.weight(i)).collect();
            let weight = if h.weight_graded() || ws.iter().all(|&w| w == ws[0]) { ws[0] } else { 0 };
            let idx = b.add_basis(label, key.degree as u64, weight);
            if v.len() == 1 && v.contains_key(&h.unit()) {
                b.set_unit(idx);
            }
            vectors.push(v);
            block_of.push(*key);
        }
        let left_inverse = basis.left_inverse().expect("independent columns");
        let local = sb.indices.iter().enumerate().map(|(a, &i)| (i, a)).collect();
        coords.insert(*key, BlockCoords { indices: sb.indices.clone(), local, basis, left_inverse, first });
    }
    let sub_h = {
        let n = vectors.len();
        let locate = |w: &Vector, what: &'static str, witness: &str| -> Result<Vector, HopfError> {
            let mut grouped: BTreeMap<BlockKey, Vector> = BTreeMap::new();
            for (&i, &c) in w {
                grouped.entry(h.block(i)).or_default().insert(i, c);
            }
            let mut out = Vector::new();
            for (key, part) in grouped {
                let bc = coords
                    .get(&key)
                    .ok_or_else(|| HopfError::NotClosed { what, witness: witness.to_string() })?;
                let c = bc
                    .coords(&bc.dense(&part))
                    .ok_or_else(|| HopfError::NotClosed { what, witness: witness.to_string() })?;
                for (a, &x) in c.iter().enumerate() {
                    add_term(&mut out, bc.first + a, x, f);
                }
            }
            Ok(out)
        };
        for x in 0..n {
            for y in 0..n {
                let d = block_of[x].degree as u64 + block_of[y].degree as u64;
                let wx: u64 = vectors[x].keys().map(|&i| h.weight(i) as u64).max().unwrap_or(0);
                let wy: u64 = vectors[y].keys().map(|&i| h.weight(i) as u64).max().unwrap_or(0);
                if !h.window().admits(h.grading(), d, wx + wy) {
                    continue;
                }
                let prod = h.mul(&vectors[x], &vectors[y]);
                let witness = format!("({})·({})", h.format_vector(&vectors[x]), h.format_vector(&vectors[y]));
                b.set_product(x, y, locate(&prod, "products", &witness)?);
            }
            let d = h.coproduct(&vectors[x]);
            let mut grouped: BTreeMap<(BlockKey, BlockKey), Vec<((usize, usize), u32)>> = BTreeMap::new();
            for (&(l, r), &c) in &d {
                grouped.entry((h.block(l), h.block(r))).or_default().push(((l, r), c));
            }
            let witness = h.format_vector(&vectors[x]);
            let mut out = TensorVector::new();
            for ((kl, kr), terms) in grouped {
                let nc = || HopfError::NotClosed { what: "coproducts", witness: witness.clone() };
                let bl = coords.get(&kl).ok_or_else(nc)?;
                let br = coords.get(&kr).ok_or_else(nc)?;
                let mut w = FpMatrix::zeros(f, bl.indices.len(), br.indices.len());
                for ((l, r), c) in terms {
                    w.set(bl.local[&l], br.local[&r], c);
                }
                let c = bl.left_inverse.mul(&w)?.mul(&br.left_inverse.transpose())?;
                let back = bl.basis.mul(&c)?.mul(&br.basis.transpose())?;
                if back != w {
                    return Err(nc());
                }
                for a in 0..c.rows() {
                    for bb in 0..c.cols() {
                        add_term(&mut out, (bl.first + a, br.first + bb), c.get(a, bb), f);
                    }
                }
            }
            b.set_coproduct(x, out);
        }
        b.build()?
    };
    let sub_h = Arc::new(sub_h);
    let incl = HopfMorphism::new(sub_h.clone(), h.clone(), vectors)?;
    Ok((Arc::try_unwrap(sub_h).unwrap_or_else(|a| (*a).clone()), incl))
}

/// The Hopf kernel of `f: H → H''`: the subspace `{x : (f ⊗ 1)Δx = 1 ⊗ x}` of `H`.
pub fn hopf_kernel(f: &HopfMorphism) -> Result<(HopfPresentation, HopfMorphism), HopfError> {
    let h = f.source().clone();
    let t = f.target();
    let fld = h.field();
    let mut sub = GradedSubspace::default();
    for (key, idx) in h.blocks() {
        let mut rows: HashMap<(usize, usize), usize> = HashMap::new();
        let mut cols: Vec<TensorVector> = Vec::new();
        for &x in &idx {
            let mut v = f.apply_left(&h.coproduct(&h.basis_vector(x)));
            add_term(&mut v, (t.unit(), x), fld.neg(1), fld);
            for k in v.keys() {
                let len = rows.len();
                rows.entry(*k).or_insert(len);
            }
            cols.push(v);
        }
        let mut m = FpMatrix::zeros(fld, rows.len(), idx.len());
        for (c, v) in cols.iter().enumerate() {
            for (k, &x) in v {
                m.set(rows[k], c, x);
            }
        }
        let basis = m.kernel_basis();
        if basis.cols() > 0 {
            sub.blocks.insert(key, SubBlock { indices: idx, basis });
        }
    }
    sub_presentation(&h, &sub)
}

/// Per block of the target, the echelon form of the ideal generated by `f(Ī')`.
fn image_ideal(f: &HopfMorphism) -> BTreeMap<BlockKey, (Vec<usize>, Echelon)> {
    let h = f.target();
    let s = f.source();
    let fld = h.field();
    let blocks = h.blocks();
    let local: HashMap<usize, usize> =
        blocks.values().flat_map(|v| v.iter().enumerate().map(|(a, &i)| (i, a))).collect();
    let mut ech: BTreeMap<BlockKey, (Vec<usize>, Echelon)> =
        blocks.iter().map(|(k, v)| (*k, (v.clone(), Echelon::new(fld, v.len())))).collect();
    for x in 0..s.dim() {
        if x == s.unit() {
            continue;
        }
        let fx = f.image(x);
        let Some(&first) = fx.keys().next() else { continue };
        let kx = h.block(first);
        for b in 0..h.dim() {
            let key = h.block_sum(h.block(b), kx);
            let d = h.degree(b) as u64 + h.degree(first) as u64;
            let w = h.weight(b) as u64 + h.weight(first) as u64;
            if !h.window().admits(h.grading(), d, w) {
                continue;
            }
            let Some((idx, e)) = ech.get_mut(&key) else { continue };
            let prod = h.mul(&h.basis_vector(b), fx);
            if prod.is_empty() {
                continue;
            }
            let mut dense = vec![0; idx.len()];
            for (&i, &c) in &prod {
                dense[local[&i]] = c;
            }
            e.insert(&dense);
        }
    }
    ech
}

/// The Hopf cokernel `H ⊗_{H'} 𝕜` of `f: H' → H`, with the projection from `H`.
pub fn hopf_cokernel(f: &HopfMorphism) -> Result<(HopfPresentation, HopfMorphism), HopfError> {
    let h = f.target().clone();
    let fld = h.field();
    let ideal = image_ideal(f);
    // Surviving basis elements: the non-pivot coordinates of each block.
    let mut keep: Vec<usize> = Vec::new();
    let mut new_index: HashMap<usize, usize> = HashMap::new();
    for (idx, e) in ideal.values() {
        let piv: std::collections::HashSet<usize> = e.pivots().iter().copied().collect();
        for (a, &i) in idx.iter().enumerate() {
            if !piv.contains(&a) {
                new_index.insert(i, keep.len());
                keep.push(i);
            }
        }
    }
    keep.sort_unstable();
    new_index = keep.iter().enumerate().map(|(a, &i)| (i, a)).collect();
    let reduce = |v: &Vector| -> Vector {
        let mut grouped: BTreeMap<BlockKey, Vector> = BTreeMap::new();
        for (&i, &c) in v {
            grouped.entry(h.block(i)).or_default().insert(i, c);
        }
        let mut out = Vector::new();
        for (key, part) in grouped {
            let (idx, e) = &ideal[&key];
            let mut dense: Vec<u32> = idx.iter().map(|i| part.get(i).copied().unwrap_or(0)).collect();
            e.reduce(&mut dense);
            for (a, &c) in dense.iter().enumerate() {
                if c != 0 {
                    out.insert(new_index[&idx[a]], c);
                }
            }
        }
        out
    };
    let mut b = HopfBuilder::new(fld, h.grading(), h.window()).weight_graded(h.weight_graded());
    for &i in &keep {
        let el = &h.basis()[i];
        b.add_basis(el.label.clone(), el.degree as u64, el.weight);
    }
    let unit = *new_index
        .get(&h.unit())
        .ok_or_else(|| HopfError::Invalid("the image ideal contains the unit".into()))?;
    b.set_unit(unit);
    for (x, &i) in keep.iter().enumerate() {
        for (y, &j) in keep.iter().enumerate() {
            if h.in_window(&[i, j]) {
                b.set_product(x, y, reduce(&h.mul(&h.basis_vector(i), &h.basis_vector(j))));
            }
        }
        let mut out = TensorVector::new();
        for &(l, r, c) in h.coproduct_basis(i) {
            let rl = reduce(&h.basis_vector(l));
            let rr = reduce(&h.basis_vector(r));
            for (&a, &u) in &rl {
                for (&bb, &v) in &rr {
                    add_term(&mut out, (a, bb), fld.mul(c, fld.mul(u, v)), fld);
                }
            }
        }
        b.set_coproduct(x, out);
    }
    let c = Arc::new(b.build()?);
    let images = (0..h.dim()).map(|i| reduce(&h.basis_vector(i))).collect();
    let proj = HopfMorphism::new(h.clone(), c.clone(), images)?;
    Ok((Arc::try_unwrap(c).unwrap_or_else(|a| (*a).clone()), proj))
}

/// Itemised outcome of [`check_exact_triple`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactTripleReport {
    pub injective: bool,
    pub surjective: bool,
    pub composite_trivial: bool,
    pub cokernel_isomorphic: bool,
    pub detail: Vec<String>,
}

impl ExactTripleReport {
    pub fn exact(&self) -> bool {
        self.injective && self.surjective && self.composite_trivial && self.cokernel_isomorphic
    }
}

/// Exactness of `𝕜 → H' → H → H'' → 𝕜`, checked blockwise inside the window of `H`.
pub fn check_exact_triple(f: &HopfMorphism, g: &HopfMorphism) -> Result<ExactTripleReport, HopfError> {
    let (h1, h, h2) = (f.source(), f.target(), g.target());
    if **g.source() != **h {
        return Err(HopfError::Shape("the maps are not composable".into()));
    }
    let mut detail = Vec::new();
    let inside = |k: &BlockKey| h.blocks().contains_key(k) || *k == h.block(h.unit());
    let mut injective = true;
    for (key, idx) in h1.blocks() {
        if f.block_matrix(key, key).rank() != idx.len() {
            injective = false;
            detail.push(format!("f is not injective in block {:?}", key));
        }
    }
    let mut surjective = true;
    for (key, idx) in h2.blocks() {
        if !inside(&key) {
            continue;
        }
        if g.block_matrix(key, key).rank() != idx.len() {
            surjective = false;
            detail.push(format!("g is not surjective in block {:?}", key));
        }
    }
    let gf = g.after(f)?;
    let mut composite_trivial = true;
    for x in 0..h1.dim() {
        let expect = if x == h1.unit() { h2.basis_vector(h2.unit()) } else { Vector::new() };
        if *gf.image(x) != expect {
            composite_trivial = false;
            detail.push(format!("g∘f is not trivial at {}", h1.label(x)));
            break;
        }
    }
    let (c, proj) = hopf_cokernel(f)?;
    let c = Arc::new(c);
    // The induced map coker f → H'': g vanishes on the ideal, so it factors through the projection.
    let mut cokernel_isomorphic = true;
    let mut induced_images = Vec::new();
    for x in 0..c.dim() {
        // Every basis element of the cokernel is the image of a basis element of H.
        let src = (0..h.dim()).find(|&i| proj.image(i).len() == 1 && proj.image(i).get(&x) == Some(&1));
        let Some(i) = src else {
            return Err(HopfError::Invalid("cokernel basis not lifted".into()));
        };
        induced_images.push(g.image(i).clone());
    }
    let induced = HopfMorphism::new(c.clone(), h2.clone(), induced_images)?;
    // Well-definedness: g and (induced ∘ projection) agree on all of H.
    for i in 0..h.dim() {
        if induced.apply(proj.image(i)) != *g.image(i) {
            cokernel_isomorphic = false;
            detail.push(format!("g does not factor through the cokernel at {}", h.label(i)));
            break;
        }
    }
    if cokernel_isomorphic {
        let cb = c.blocks();
        let hb = h2.blocks();
        for key in cb.keys().chain(hb.keys()) {
            if !inside(key) {
                continue;
            }
            let m = induced.block_matrix(*key, *key);
            if m.rows() != m.cols() || m.rank() != m.rows() {
                cokernel_isomorphic = false;
                detail.push(format!("coker f → H'' is not an isomorphism in block {:?}", key));
                break;
            }
        }
    }
    Ok(ExactTripleReport { injective, surjective, composite_trivial, cokernel_isomorphic, detail })
}

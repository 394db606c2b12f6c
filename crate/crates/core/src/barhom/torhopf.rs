//! Tor as a Hopf algebra, cofree identification and iteration.
//!
//! For a commutative Hopf algebra the bar complex is a differential graded Hopf algebra
//! under the signed shuffle product and deconcatenation. Each block is split as
//! `C = B ⊕ H ⊕ W` (boundaries, chosen homology representatives, a complement of the
//! cycles); the coordinate projection `π: C → H` along `B ⊕ W` vanishes on boundaries, so it
//! is a chain map to homology and `π ⊗ π` sends cycles of `C ⊗ C` to their Künneth classes.

use std::collections::BTreeMap;

use super::complex::{ChainKey, Word};
use super::{homology_table, reduced_bar, BarBounds, BarComplex, BarError, TorTable};
use crate::catalogue::{make, GeneratorSpec};
use crate::exactla::{Echelon, FpMatrix};
use crate::hopfcore::{
    add_term, primitives, tensor_product, trivial, AlgebraKind, BlockKey, Grading, HopfBuilder, HopfPresentation,
    TensorVector, Vector, Window,
};

struct Hodge {
    reps: Vec<Vec<u32>>,
    /// `dim H × dim C`.
    proj: FpMatrix,
}

fn hodge(c: &BarComplex, key: ChainKey) -> Result<Hodge, BarError> {
    let f = c.field();
    let n = c.block(key).len();
    let (s, i, w) = key;
    let mut e = Echelon::new(f, n);
    let mut basis: Vec<Vec<u32>> = Vec::new();
    if let Some(d_in) = c.differential((s + 1, i, w)) {
        for col in d_in.columns() {
            if e.insert(&col) {
                basis.push(col);
            }
        }
    }
    let nb = basis.len();
    let cycles = match c.differential(key) {
        Some(d) if d.rows() > 0 => d.kernel_basis(),
        _ => FpMatrix::identity(f, n),
    };
    let mut reps = Vec::new();
    for col in cycles.columns() {
        if e.insert(&col) {
            reps.push(col.clone());
            basis.push(col);
        }
    }
    for k in 0..n {
        let mut unit = vec![0; n];
        unit[k] = 1;
        if e.insert(&unit) {
            basis.push(unit);
        }
    }
    let inv = FpMatrix::from_columns(f, n, &basis)
        .inverse()
        .ok_or_else(|| BarError::EnlargeBounds("degenerate Hodge splitting".into()))?;
    let rows: Vec<usize> = (nb..nb + reps.len()).collect();
    Ok(Hodge { proj: inv.select_rows(&rows), reps })
}

/// Signed shuffles of two words; each entry is `(word, ±1)`.
fn shuffles(c: &BarComplex, x: &[usize], y: &[usize]) -> Vec<(Word, bool)> {
    let h = c.base();
    let (s, t) = (x.len(), y.len());
    let mut out = Vec::new();
    // Positions of x's letters in the merged word, as an increasing sequence.
    let mut pos: Vec<usize> = (0..s).collect();
    loop {
        let mut word = Vec::with_capacity(s + t);
        let mut odd = false;
        let (mut a, mut b) = (0, 0);
        // Number of y letters placed so far with odd suspended degree.
        let mut y_odd = 0usize;
        for k in 0..s + t {
            if a < s && pos[a] == k {
                if h.degree(x[a]) % 2 == 0 && y_odd % 2 == 1 {
                    odd = !odd;
                }
                word.push(x[a]);
                a += 1;
            } else {
                if h.degree(y[b]) % 2 == 0 {
                    y_odd += 1;
                }
                word.push(y[b]);
                b += 1;
            }
        }
        out.push((word, odd));
        // Next combination.
        let mut k = s;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if pos[k] < t + k {
                pos[k] += 1;
                for j in k + 1..s {
                    pos[j] = pos[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Tor over the truncation of `c`'s base algebra, as a Hopf algebra graded by total degree
/// and weight. Basis elements are homology classes `t{s},{i},{w}.{k}`.
pub fn tor_hopf(c: &BarComplex) -> Result<HopfPresentation, BarError> {
    let bounds = c.bounds();
    if let Some(hb) = bounds.max_hom {
        let covers = bounds.max_total.is_some_and(|d| hb >= d) || bounds.max_weight.is_some_and(|w| {
            let h = c.base();
            let min_w = (0..h.dim()).filter(|&a| a != h.unit()).map(|a| h.block(a).weight).min().unwrap_or(1);
            min_w > 0 && hb >= w / min_w
        });
        if !covers {
            return Err(BarError::EnlargeBounds("the length bound cuts products; drop it".into()));
        }
    }
    let f = c.field();
    let mut hodges: BTreeMap<ChainKey, Hodge> = BTreeMap::new();
    let mut offsets: BTreeMap<ChainKey, usize> = BTreeMap::new();
    let window = Window { degree: bounds.max_total, weight: bounds.max_weight, ereg: None };
    let mut b = HopfBuilder::new(f, Grading::Natural, window);
    for &key in c.chains().keys() {
        if !c.reported(key) {
            continue;
        }
        let hd = hodge(c, key)?;
        if hd.reps.is_empty() {
            continue;
        }
        let (s, i, w) = key;
        offsets.insert(key, b.len());
        for k in 0..hd.reps.len() {
            b.add_basis(format!("t{s},{i},{w}.{k}"), (s + i) as u64, w);
        }
        hodges.insert(key, hd);
    }
    let unit = offsets[&(0, 0, 0)];
    b.set_unit(unit);

    let project = |key: ChainKey, v: &[u32]| -> Vector {
        let mut out = Vector::new();
        if let (Some(hd), Some(&off)) = (hodges.get(&key), offsets.get(&key)) {
            for (r, x) in hd.proj.mul_vec(v).expect("block shape").into_iter().enumerate() {
                if x != 0 {
                    out.insert(off + r, x);
                }
            }
        }
        out
    };

    let keys: Vec<ChainKey> = hodges.keys().copied().collect();
    for &k1 in &keys {
        for &k2 in &keys {
            let target = (k1.0 + k2.0, k1.1 + k2.1, k1.2 + k2.2);
            if !bounds.admits(target.0 + target.1, target.2) {
                continue;
            }
            let words1 = c.block(k1);
            let words2 = c.block(k2);
            let tlen = c.block(target).len();
            for (a, r1) in hodges[&k1].reps.iter().enumerate() {
                for (bb, r2) in hodges[&k2].reps.iter().enumerate() {
                    let mut v = vec![0u32; tlen];
                    for (p1, &c1) in r1.iter().enumerate().filter(|(_, &x)| x != 0) {
                        for (p2, &c2) in r2.iter().enumerate().filter(|(_, &x)| x != 0) {
                            for (word, odd) in shuffles(c, &words1[p1], &words2[p2]) {
                                let pos = c.position(&word).ok_or_else(|| {
                                    BarError::EnlargeBounds("a shuffle leaves the enumerated chains".into())
                                })?;
                                v[pos] = f.add(v[pos], f.mul(f.mul(c1, c2), f.sign(odd)));
                            }
                        }
                    }
                    b.set_product(offsets[&k1] + a, offsets[&k2] + bb, project(target, &v));
                }
            }
        }
    }

    for &key in &keys {
        let words = c.block(key);
        for (a, rep) in hodges[&key].reps.iter().enumerate() {
            let mut delta = TensorVector::new();
            for (pos, &coeff) in rep.iter().enumerate().filter(|(_, &x)| x != 0) {
                let word = &words[pos];
                for cut in 0..=word.len() {
                    let (l, r) = (&word[..cut], &word[cut..]);
                    let (kl, kr) = (c.key_of(l), c.key_of(r));
                    let unit_vec = |key: ChainKey, w: &[usize]| -> Vec<u32> {
                        let mut e = vec![0; c.block(key).len()];
                        e[c.position(w).expect("sub-words are enumerated")] = 1;
                        e
                    };
                    let pl = project(kl, &unit_vec(kl, l));
                    if pl.is_empty() {
                        continue;
                    }
                    let pr = project(kr, &unit_vec(kr, r));
                    for (&x, &cx) in &pl {
                        for (&y, &cy) in &pr {
                            add_term(&mut delta, (x, y), f.mul(coeff, f.mul(cx, cy)), f);
                        }
                    }
                }
            }
            b.set_coproduct(offsets[&key] + a, delta);
        }
    }
    Ok(b.build()?)
}

/// One generator of a cofree model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CofreeGenerator {
    /// [`AlgebraKind::Lambda`] or [`AlgebraKind::Gamma`].
    pub kind: AlgebraKind,
    pub degree: u32,
    pub weight: u32,
}

impl CofreeGenerator {
    /// The twist level `r` with `weight = p^r`, if the weight is a power of `p`.
    pub fn level(&self, p: u32) -> Option<u32> {
        let (mut w, mut r) = (self.weight, 0);
        if w == 0 {
            return None;
        }
        while w % p == 0 {
            w /= p;
            r += 1;
        }
        (w == 1).then_some(r)
    }
}

fn series_dims(p: u32, gens: &[CofreeGenerator], window: &Window) -> BTreeMap<BlockKey, usize> {
    let mut table: BTreeMap<BlockKey, usize> = BTreeMap::new();
    table.insert(BlockKey { degree: 0, weight: 0 }, 1);
    for g in gens {
        let cap = if g.kind == AlgebraKind::Lambda { 1 } else { u32::MAX };
        let mut next = BTreeMap::new();
        for (&key, &n) in &table {
            let mut k = 0u32;
            while k <= cap {
                let (d, w) = (key.degree as u64 + k as u64 * g.degree as u64, key.weight as u64 + k as u64 * g.weight as u64);
                if !window.admits(Grading::Natural, d, w) {
                    break;
                }
                *next.entry(BlockKey { degree: d as u32, weight: w as u32 }).or_default() += n;
                k += 1;
                if g.degree == 0 && g.weight == 0 {
                    break;
                }
            }
        }
        table = next;
    }
    let _ = p;
    table
}

/// Identifies `h` as the free exterior/divided-power object on its primitives, within the
/// window. The type of each primitive is forced by parity at odd `p`; at `p = 2` a primitive
/// `g` is of divided-power type iff `g ⊗ g` is a reduced coproduct (the map `g ↦ g ⊗ g` is
/// additive modulo reduced coproducts, so the divided-power primitives form a subspace).
/// When `2|g|` lies outside the window both types agree there and the parity rule is used.
pub fn identify_cofree(h: &HopfPresentation) -> Result<Vec<CofreeGenerator>, BarError> {
    if h.grading() != Grading::Natural || !h.is_connected() {
        return Err(BarError::NotConnected);
    }
    let p = h.p();
    let f = h.field();
    let window = h.window();
    let blocks = h.blocks();
    let mut gens = Vec::new();
    for (key, sub) in &primitives(h).blocks {
        let m = sub.dim();
        let parity_kind = if key.degree % 2 == 1 { AlgebraKind::Lambda } else { AlgebraKind::Gamma };
        let doubled = BlockKey { degree: 2 * key.degree, weight: 2 * key.weight };
        let gamma_count = if p != 2 {
            if parity_kind == AlgebraKind::Gamma { m } else { 0 }
        } else if !window.admits(Grading::Natural, doubled.degree as u64, doubled.weight as u64) {
            if parity_kind == AlgebraKind::Gamma { m } else { 0 }
        } else {
            // Full reduced coproducts of the doubled block, against the squares g ⊗ g.
            let images: Vec<TensorVector> = blocks
                .get(&doubled)
                .map(|v| v.iter().map(|&x| h.reduced_coproduct(&h.basis_vector(x))).collect())
                .unwrap_or_default();
            let squares: Vec<TensorVector> = sub
                .vectors()
                .iter()
                .map(|g| {
                    let mut t = TensorVector::new();
                    for (&a, &x) in g {
                        for (&b, &y) in g {
                            add_term(&mut t, (a, b), f.mul(x, y), f);
                        }
                    }
                    t
                })
                .collect();
            let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            for t in images.iter().chain(&squares) {
                for &k in t.keys() {
                    let len = index.len();
                    index.entry(k).or_insert(len);
                }
            }
            let npairs = index.len();
            let coord = |t: &TensorVector| -> Vec<u32> {
                let mut v = vec![0; npairs];
                for (k, &c) in t {
                    v[index[k]] = c;
                }
                v
            };
            let im = FpMatrix::from_columns(f, npairs, &images.iter().map(coord).collect::<Vec<_>>());
            let squares: Vec<Vec<u32>> = squares.iter().map(coord).collect();
            let sq = FpMatrix::from_columns(f, npairs, &squares);
            // dim{g : g⊗g ∈ im} = m − rank(squares mod im).
            let r_im = im.rank();
            let r_both = im.hcat(&sq)?.rank();
            m - (r_both - r_im)
        };
        for k in 0..m {
            let kind = if k < gamma_count { AlgebraKind::Gamma } else { AlgebraKind::Lambda };
            gens.push(CofreeGenerator { kind, degree: key.degree, weight: key.weight });
        }
    }
    gens.sort();
    let predicted = series_dims(p, &gens, &window);
    let actual = h.block_dims();
    if predicted != actual {
        let diff: Vec<_> = predicted
            .keys()
            .chain(actual.keys())
            .filter(|k| predicted.get(k) != actual.get(k))
            .take(3)
            .map(|k| format!("({}, {}): {:?} vs {:?}", k.degree, k.weight, actual.get(k), predicted.get(k)))
            .collect();
        return Err(BarError::NotCofree(diff.join("; ")));
    }
    Ok(gens)
}

/// A tensor product of catalogue algebras on the given generators.
fn cofree_model(p: u32, gens: &[CofreeGenerator], window: Window) -> Result<HopfPresentation, BarError> {
    let field = crate::exactla::PrimeField::new(p)?;
    let mut model = trivial(field, Grading::Natural, window);
    for g in gens {
        let r = g.level(p).ok_or_else(|| BarError::NotCofree(format!("weight {} is not a power of {p}", g.weight)))?;
        let factor = make(g.kind, p, GeneratorSpec::new(r, g.degree), window)?;
        model = tensor_product(&model, &factor)?;
    }
    Ok(model)
}

/// `Tor_{[j]}`: `Tor_{[1]} = Tor^A(𝕜, 𝕜)`, and `Tor_{[j+1]}` is Tor over a cofree model of
/// `Tor_{[j]}`. Fails with [`BarError::NotCofree`] when some intermediate stage is not cofree.
pub fn tor_iterated(a: &HopfPresentation, j: usize, bounds: BarBounds) -> Result<TorTable, BarError> {
    if j == 0 {
        return Err(BarError::OutOfRange("the iteration starts at level 1".into()));
    }
    let mut complex = reduced_bar(a, bounds)?;
    let window = Window { degree: bounds.max_total, weight: bounds.max_weight, ereg: None };
    for _ in 1..j {
        let tor = tor_hopf(&complex)?;
        let gens = identify_cofree(&tor)?;
        let model = cofree_model(a.p(), &gens, window)?;
        complex = reduced_bar(&model, bounds)?;
    }
    let mut table = homology_table(&complex);
    table.level = j;
    Ok(table)
}

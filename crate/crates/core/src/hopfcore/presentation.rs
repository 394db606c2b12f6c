//! Structure-constant presentations of graded Hopf algebras.

use std::collections::{BTreeMap, HashMap};

use crate::exactla::PrimeField;

use super::HopfError;

/// Sparse vector: basis index ↦ nonzero coefficient.
pub type Vector = BTreeMap<usize, u32>;
/// Sparse element of `H ⊗ H`: (left index, right index) ↦ nonzero coefficient.
pub type TensorVector = BTreeMap<(usize, usize), u32>;

/// Adds `c · key` to a sparse vector, dropping entries that cancel.
pub fn add_term<K: Ord>(v: &mut BTreeMap<K, u32>, key: K, c: u32, f: PrimeField) {
    if c == 0 {
        return;
    }
    match v.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = f.add(*e.get(), c);
            if s == 0 {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// `acc += c · v`.
pub fn axpy<K: Ord + Clone>(acc: &mut BTreeMap<K, u32>, c: u32, v: &BTreeMap<K, u32>, f: PrimeField) {
    if c == 0 {
        return;
    }
    for (k, &x) in v {
        add_term(acc, k.clone(), f.mul(c, x), f);
    }
}

/// The grading group of degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Grading {
    Natural,
    /// Degrees in `Z/N`.
    Cyclic(u32),
}

impl Grading {
    pub fn normalize(self, d: u64) -> u32 {
        match self {
            Grading::Natural => d as u32,
            Grading::Cyclic(n) => (d % n as u64) as u32,
        }
    }
}

/// The truncation window. A bigraded slot `(d, w)` is retained iff every set bound holds:
/// `d ≤ degree`, `w ≤ weight`, and `2w − d ≤ ereg`. Degree and `ereg` bounds only apply to
/// natural gradings.
///
/// The `ereg` bound is useful when every element satisfies `2w ≥ d`: it is then additive and
/// monotone, so the window is closed under taking tensor factors.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Window {
    pub degree: Option<u32>,
    pub weight: Option<u32>,
    pub ereg: Option<u32>,
}

impl Window {
    pub fn degree(bound: u32) -> Self {
        Self { degree: Some(bound), ..Self::default() }
    }

    pub fn unbounded() -> Self {
        Self::default()
    }

    pub fn with_weight(mut self, bound: u32) -> Self {
        self.weight = Some(bound);
        self
    }

    pub fn with_ereg(mut self, bound: u32) -> Self {
        self.ereg = Some(bound);
        self
    }

    /// Whether the slot of raw (unreduced) degree `d` and weight `w` is retained.
    pub fn admits(&self, grading: Grading, d: u64, w: u64) -> bool {
        if let Some(b) = self.weight {
            if w > b as u64 {
                return false;
            }
        }
        if grading == Grading::Natural {
            if let Some(b) = self.degree {
                if d > b as u64 {
                    return false;
                }
            }
            if let Some(b) = self.ereg {
                if 2 * w as i64 - d as i64 > b as i64 {
                    return false;
                }
            }
        }
        true
    }

    /// The intersection of two windows.
    pub fn meet(&self, other: &Window) -> Window {
        fn m(a: Option<u32>, b: Option<u32>) -> Option<u32> {
            match (a, b) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, None) => x,
                (None, y) => y,
            }
        }
        Window {
            degree: m(self.degree, other.degree),
            weight: m(self.weight, other.weight),
            ereg: m(self.ereg, other.ereg),
        }
    }
}

/// A bigraded block key. When the presentation is not weight graded the weight is always 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockKey {
    pub degree: u32,
    pub weight: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub label: String,
    pub degree: u32,
    pub weight: u32,
}

/// The kinds of explicit Hopf algebras the catalogue builds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraKind {
    S,
    Lambda,
    Gamma,
    SN(u32),
    GammaN(u32),
    GN(u32),
    Morava,
}

/// Provenance of one tensor factor of a presentation built from the catalogue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorTag {
    pub kind: AlgebraKind,
    /// Twist level of the generator (weight `p^r`).
    pub r: u32,
    /// Degree of the generator.
    pub degree: u32,
}

/// A truncated graded Hopf algebra over F_p given by structure constants on a basis.
///
/// The basis is adapted to the augmentation: the counit is the indicator of the unit
/// element. Multiplication and comultiplication are only recorded for inputs whose
/// combined slot lies in the window; everything else is unknown, never zero by fiat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfPresentation {
    field: PrimeField,
    grading: Grading,
    window: Window,
    weight_graded: bool,
    basis: Vec<BasisElement>,
    unit: usize,
    /// Row-major `n × n` table of products.
    mu: Vec<Vec<(usize, u32)>>,
    delta: Vec<Vec<(usize, usize, u32)>>,
    factors: Vec<FactorTag>,
}

/// Incremental construction of a [`HopfPresentation`].
#[derive(Clone, Debug)]
pub struct HopfBuilder {
    field: PrimeField,
    grading: Grading,
    window: Window,
    weight_graded: bool,
    basis: Vec<BasisElement>,
    unit: Option<usize>,
    mu: HashMap<(usize, usize), Vector>,
    delta: HashMap<usize, TensorVector>,
    factors: Vec<FactorTag>,
}

impl HopfBuilder {
    pub fn new(field: PrimeField, grading: Grading, window: Window) -> Self {
        Self {
            field,
            grading,
            window,
            weight_graded: true,
            basis: Vec::new(),
            unit: None,
            mu: HashMap::new(),
            delta: HashMap::new(),
            factors: Vec::new(),
        }
    }

    pub fn weight_graded(mut self, yes: bool) -> Self {
        self.weight_graded = yes;
        self
    }

    pub fn factors(mut self, tags: Vec<FactorTag>) -> Self {
        self.factors = tags;
        self
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Adds a basis element; the degree is reduced into the grading group.
    pub fn add_basis(&mut self, label: impl Into<String>, degree: u64, weight: u32) -> usize {
        let degree = self.grading.normalize(degree);
        self.basis.push(BasisElement { label: label.into(), degree, weight });
        self.basis.len() - 1
    }

    pub fn set_unit(&mut self, i: usize) {
        self.unit = Some(i);
    }

    pub fn set_product(&mut self, i: usize, j: usize, out: Vector) {
        self.mu.insert((i, j), out);
    }

    pub fn set_coproduct(&mut self, i: usize, out: TensorVector) {
        self.delta.insert(i, out);
    }

    pub fn build(self) -> Result<HopfPresentation, HopfError> {
        let n = self.basis.len();
        let f = self.field;
        let unit = self.unit.ok_or_else(|| HopfError::Invalid("no unit element".into()))?;
        if unit >= n {
            return Err(HopfError::IndexOutOfRange(unit));
        }
        if self.basis[unit].degree != 0 || self.basis[unit].weight != 0 {
            return Err(HopfError::BadUnit);
        }
        if self.window.ereg.is_some() {
            if let Some(b) = self.basis.iter().find(|b| 2 * b.weight < b.degree) {
                return Err(HopfError::Invalid(format!(
                    "an e-regular window needs 2·weight ≥ degree, violated by {}",
                    b.label
                )));
            }
        }
        for b in &self.basis {
            if !self.window.admits(self.grading, b.degree as u64, b.weight as u64) {
                return Err(HopfError::Invalid(format!("{} lies outside the window", b.label)));
            }
        }
        let mut mu = vec![Vec::new(); n * n];
        for ((i, j), out) in self.mu {
            if i >= n || j >= n {
                return Err(HopfError::IndexOutOfRange(i.max(j)));
            }
            let (bi, bj) = (&self.basis[i], &self.basis[j]);
            if !self.window.admits(
                self.grading,
                bi.degree as u64 + bj.degree as u64,
                bi.weight as u64 + bj.weight as u64,
            ) {
                continue;
            }
            let mut v = Vec::new();
            for (k, c) in out {
                if k >= n {
                    return Err(HopfError::IndexOutOfRange(k));
                }
                let c = c % f.p();
                if c != 0 {
                    v.push((k, c));
                }
            }
            mu[i * n + j] = v;
        }
        let mut delta = vec![Vec::new(); n];
        for (i, out) in self.delta {
            if i >= n {
                return Err(HopfError::IndexOutOfRange(i));
            }
            let mut v = Vec::new();
            for ((l, r), c) in out {
                if l >= n || r >= n {
                    return Err(HopfError::IndexOutOfRange(l.max(r)));
                }
                let c = c % f.p();
                if c != 0 {
                    v.push((l, r, c));
                }
            }
            delta[i] = v;
        }
        Ok(HopfPresentation {
            field: f,
            grading: self.grading,
            window: self.window,
            weight_graded: self.weight_graded,
            basis: self.basis,
            unit,
            mu,
            delta,
            factors: self.factors,
        })
    }
}

impl HopfPresentation {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn weight_graded(&self) -> bool {
        self.weight_graded
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn factors(&self) -> &[FactorTag] {
        &self.factors
    }

    pub fn with_factors(mut self, tags: Vec<FactorTag>) -> Self {
        self.factors = tags;
        self
    }

    /// Same structure, with the weight grading switched on or off.
    pub fn with_weight_graded(mut self, yes: bool) -> Self {
        self.weight_graded = yes;
        self
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.basis[i].degree
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.basis[i].weight
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.basis[i].degree % 2 == 1
    }

    pub fn block(&self, i: usize) -> BlockKey {
        BlockKey {
            degree: self.basis[i].degree,
            weight: if self.weight_graded { self.basis[i].weight } else { 0 },
        }
    }

    pub fn block_sum(&self, a: BlockKey, b: BlockKey) -> BlockKey {
        BlockKey {
            degree: self.grading.normalize(a.degree as u64 + b.degree as u64),
            weight: a.weight + b.weight,
        }
    }

    /// `k · a` in the block monoid.
    pub fn block_scale(&self, a: BlockKey, k: u32) -> BlockKey {
        BlockKey {
            degree: self.grading.normalize(a.degree as u64 * k as u64),
            weight: a.weight * k,
        }
    }

    /// Whether the product of the given basis elements lies in the window.
    pub fn in_window(&self, elems: &[usize]) -> bool {
        let d: u64 = elems.iter().map(|&i| self.basis[i].degree as u64).sum();
        let w: u64 = elems.iter().map(|&i| self.basis[i].weight as u64).sum();
        self.window.admits(self.grading, d, w)
    }

    /// Basis indices grouped by block, in increasing order.
    pub fn blocks(&self) -> BTreeMap<BlockKey, Vec<usize>> {
        let mut out: BTreeMap<BlockKey, Vec<usize>> = BTreeMap::new();
        for i in 0..self.basis.len() {
            out.entry(self.block(i)).or_default().push(i);
        }
        out
    }

    /// Blocks of the augmentation ideal (the unit removed).
    pub fn augmentation_blocks(&self) -> BTreeMap<BlockKey, Vec<usize>> {
        let mut b = self.blocks();
        let ub = self.block(self.unit);
        if let Some(v) = b.get_mut(&ub) {
            v.retain(|&i| i != self.unit);
            if v.is_empty() {
                b.remove(&ub);
            }
        }
        b
    }

    /// Dimensions per block.
    pub fn block_dims(&self) -> BTreeMap<BlockKey, usize> {
        self.blocks().into_iter().map(|(k, v)| (k, v.len())).collect()
    }

    /// Whether the unit spans its block.
    pub fn is_connected(&self) -> bool {
        let ub = self.block(self.unit);
        (0..self.dim()).all(|i| i == self.unit || self.block(i) != ub)
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &[(usize, u32)] {
        &self.mu[i * self.basis.len() + j]
    }

    pub fn coproduct_basis(&self, i: usize) -> &[(usize, usize, u32)] {
        &self.delta[i]
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = Vector::new();
        v.insert(i, 1 % self.p());
        v
    }

    pub fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        let f = self.field;
        let mut out = Vector::new();
        for (&i, &x) in a {
            for (&j, &y) in b {
                let c = f.mul(x, y);
                for &(k, z) in self.mul_basis(i, j) {
                    add_term(&mut out, k, f.mul(c, z), f);
                }
            }
        }
        out
    }

    /// `a^k`, with `a^0 = 1`.
    pub fn power(&self, a: &Vector, k: u32) -> Vector {
        let mut acc = self.basis_vector(self.unit);
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn coproduct(&self, a: &Vector) -> TensorVector {
        let f = self.field;
        let mut out = TensorVector::new();
        for (&i, &x) in a {
            for &(l, r, c) in self.coproduct_basis(i) {
                add_term(&mut out, (l, r), f.mul(x, c), f);
            }
        }
        out
    }

    /// The reduced coproduct: the component of `Δa` in `Ī ⊗ Ī`.
    pub fn reduced_coproduct(&self, a: &Vector) -> TensorVector {
        let mut d = self.coproduct(a);
        d.retain(|&(l, r), _| l != self.unit && r != self.unit);
        d
    }

    /// Product in `H ⊗ H`: `(a⊗b)(c⊗d) = (−1)^{|b||c|} ac ⊗ bd`.
    pub fn tensor_mul(&self, x: &TensorVector, y: &TensorVector) -> TensorVector {
        let f = self.field;
        let mut out = TensorVector::new();
        for (&(a, b), &s) in x {
            for (&(c, d), &t) in y {
                let sign = f.sign(self.is_odd(b) && self.is_odd(c));
                let coeff = f.mul(f.mul(s, t), sign);
                let ac = self.mul_basis(a, c);
                let bd = self.mul_basis(b, d);
                for &(k, u) in ac {
                    for &(l, v) in bd {
                        add_term(&mut out, (k, l), f.mul(coeff, f.mul(u, v)), f);
                    }
                }
            }
        }
        out
    }

    /// Human-readable rendering of a sparse vector.
    pub fn format_vector(&self, v: &Vector) -> String {
        if v.is_empty() {
            return "0".into();
        }
        v.iter()
            .map(|(&i, &c)| {
                if c == 1 {
                    self.label(i).to_string()
                } else {
                    format!("{}·{}", c, self.label(i))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn format_tensor(&self, v: &TensorVector) -> String {
        if v.is_empty() {
            return "0".into();
        }
        v.iter()
            .map(|(&(l, r), &c)| {
                let t = format!("{}⊗{}", self.label(l), self.label(r));
                if c == 1 {
                    t
                } else {
                    format!("{}·{}", c, t)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// A builder pre-loaded with this presentation's data (for modifications).
    pub fn to_builder(&self) -> HopfBuilder {
        let n = self.dim();
        let mut b = HopfBuilder::new(self.field, self.grading, self.window)
            .weight_graded(self.weight_graded)
            .factors(self.factors.clone());
        b.basis = self.basis.clone();
        b.unit = Some(self.unit);
        for i in 0..n {
            for j in 0..n {
                let out = self.mul_basis(i, j);
                if !out.is_empty() {
                    b.mu.insert((i, j), out.iter().copied().collect());
                }
            }
            let d = self.coproduct_basis(i);
            b.delta.insert(i, d.iter().map(|&(l, r, c)| ((l, r), c)).collect());
        }
        b
    }
}

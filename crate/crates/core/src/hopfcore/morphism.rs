//! Morphisms of presentations and the convolution product.

use std::sync::Arc;

use crate::exactla::FpMatrix;

use super::presentation::{add_term, axpy, BlockKey, HopfPresentation, TensorVector, Vector};
use super::HopfError;

/// A linear map between presentations given by the images of source basis elements.
#[derive(Clone, Debug)]
pub struct HopfMorphism {
    source: Arc<HopfPresentation>,
    target: Arc<HopfPresentation>,
    images: Vec<Vector>,
}

/// Outcome of checking that a linear map is a morphism of Hopf algebras within the windows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    pub failure: Option<String>,
    pub checked: usize,
    pub unknown: usize,
}

impl MorphismReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl HopfMorphism {
    pub fn new(
        source: Arc<HopfPresentation>,
        target: Arc<HopfPresentation>,
        images: Vec<Vector>,
    ) -> Result<Self, HopfError> {
        if source.field() != target.field() {
            return Err(HopfError::FieldMismatch);
        }
        if images.len() != source.dim() {
            return Err(HopfError::Shape(format!(
                "{} images for a source of dimension {}",
                images.len(),
                source.dim()
            )));
        }
        if let Some(&k) = images.iter().flat_map(|v| v.keys()).find(|&&k| k >= target.dim()) {
            return Err(HopfError::IndexOutOfRange(k));
        }
        Ok(Self { source, target, images })
    }

    pub fn identity(h: Arc<HopfPresentation>) -> Self {
        let images = (0..h.dim()).map(|i| h.basis_vector(i)).collect();
        Self { source: h.clone(), target: h, images }
    }

    /// The zero of the convolution group, `η ε`.
    pub fn unit_counit(source: Arc<HopfPresentation>, target: Arc<HopfPresentation>) -> Self {
        let images = (0..source.dim())
            .map(|i| if i == source.unit() { target.basis_vector(target.unit()) } else { Vector::new() })
            .collect();
        Self { source, target, images }
    }

    pub fn source(&self) -> &Arc<HopfPresentation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<HopfPresentation> {
        &self.target
    }

    pub fn image(&self, i: usize) -> &Vector {
        &self.images[i]
    }

    pub fn images(&self) -> &[Vector] {
        &self.images
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let f = self.target.field();
        let mut out = Vector::new();
        for (&i, &c) in v {
            axpy(&mut out, c, &self.images[i], f);
        }
        out
    }

    pub fn apply_tensor(&self, v: &TensorVector) -> TensorVector {
        let f = self.target.field();
        let mut out = TensorVector::new();
        for (&(l, r), &c) in v {
            for (&a, &x) in &self.images[l] {
                for (&b, &y) in &self.images[r] {
                    add_term(&mut out, (a, b), f.mul(c, f.mul(x, y)), f);
                }
            }
        }
        out
    }

    /// `(self ⊗ 1)` applied to an element of `source ⊗ source`, landing in `target ⊗ source`.
    pub fn apply_left(&self, v: &TensorVector) -> TensorVector {
        let f = self.target.field();
        let mut out = TensorVector::new();
        for (&(l, r), &c) in v {
            for (&a, &x) in &self.images[l] {
                add_term(&mut out, (a, r), f.mul(c, x), f);
            }
        }
        out
    }

    /// `self ∘ g`.
    pub fn after(&self, g: &HopfMorphism) -> Result<HopfMorphism, HopfError> {
        if !Arc::ptr_eq(&g.target, &self.source) && *g.target != *self.source {
            return Err(HopfError::Shape("composition of non-composable maps".into()));
        }
        let images = g.images.iter().map(|v| self.apply(v)).collect();
        Ok(HopfMorphism { source: g.source.clone(), target: self.target.clone(), images })
    }

    /// The matrix of the map from a source block to a target block.
    pub fn block_matrix(&self, src: BlockKey, tgt: BlockKey) -> FpMatrix {
        let sb = self.source.blocks().remove(&src).unwrap_or_default();
        let tb = self.target.blocks().remove(&tgt).unwrap_or_default();
        let mut m = FpMatrix::zeros(self.target.field(), tb.len(), sb.len());
        for (c, &i) in sb.iter().enumerate() {
            for (r, &j) in tb.iter().enumerate() {
                if let Some(&x) = self.images[i].get(&j) {
                    m.set(r, c, x);
                }
            }
        }
        m
    }

    /// Checks that the map preserves blocks, unit, counit, products and coproducts.
    pub fn check(&self) -> MorphismReport {
        let (s, t) = (&*self.source, &*self.target);
        let mut checked = 0;
        let mut unknown = 0;
        let fail = |msg: String, checked, unknown| MorphismReport { failure: Some(msg), checked, unknown };
        for i in 0..s.dim() {
            checked += 1;
            for &j in self.images[i].keys() {
                let (a, b) = (s.block(i), t.block(j));
                let weight_ok = !(s.weight_graded() && t.weight_graded()) || a.weight == b.weight;
                if a.degree != b.degree || !weight_ok {
                    return fail(format!("{} is sent outside its block", s.label(i)), checked, unknown);
                }
            }
            let eps_s = u32::from(i == s.unit());
            let eps_t = self.images[i].get(&t.unit()).copied().unwrap_or(0);
            if eps_s != eps_t {
                return fail(format!("counit not preserved at {}", s.label(i)), checked, unknown);
            }
            let lhs = t.coproduct(&self.images[i]);
            let rhs = self.apply_tensor(&s.coproduct(&s.basis_vector(i)));
            if lhs != rhs {
                return fail(format!("coproduct not preserved at {}", s.label(i)), checked, unknown);
            }
        }
        if self.images[s.unit()] != t.basis_vector(t.unit()) {
            return fail("unit not preserved".into(), checked, unknown);
        }
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                let d = s.degree(i) as u64 + s.degree(j) as u64;
                let w = s.weight(i) as u64 + s.weight(j) as u64;
                if !s.in_window(&[i, j]) || !t.window().admits(t.grading(), d, w) {
                    unknown += 1;
                    continue;
                }
                checked += 1;
                let lhs = self.apply(&s.mul(&s.basis_vector(i), &s.basis_vector(j)));
                let rhs = t.mul(&self.images[i], &self.images[j]);
                if lhs != rhs {
                    return fail(
                        format!("product not preserved at {}·{}", s.label(i), s.label(j)),
                        checked,
                        unknown,
                    );
                }
            }
        }
        MorphismReport { failure: None, checked, unknown }
    }
}

/// `f ⋆ g = μ (f ⊗ g) Δ`.
pub fn convolution(f: &HopfMorphism, g: &HopfMorphism) -> Result<HopfMorphism, HopfError> {
    if *f.source != *g.source || *f.target != *g.target {
        return Err(HopfError::Shape("convolution of maps with different source or target".into()));
    }
    let (s, t) = (&*f.source, &*f.target);
    let fld = t.field();
    let images = (0..s.dim())
        .map(|x| {
            let mut out = Vector::new();
            for &(l, r, c) in s.coproduct_basis(x) {
                axpy(&mut out, c, &t.mul(f.image(l), g.image(r)), fld);
            }
            out
        })
        .collect();
    Ok(HopfMorphism { source: f.source.clone(), target: f.target.clone(), images })
}

/// `f^{⋆k}` with `f^{⋆0} = ηε`.
pub fn convolution_power(f: &HopfMorphism, k: u32) -> Result<HopfMorphism, HopfError> {
    let mut acc = HopfMorphism::unit_counit(f.source.clone(), f.target.clone());
    for _ in 0..k {
        acc = convolution(&acc, f)?;
    }
    Ok(acc)
}

/// Images of the basis under `Id^{⋆k}`.
pub(crate) fn identity_convolution_powers(h: &HopfPresentation, k: u32) -> Vec<Vector> {
    let f = h.field();
    let mut cur: Vec<Vector> =
        (0..h.dim()).map(|i| if i == h.unit() { h.basis_vector(i) } else { Vector::new() }).collect();
    for _ in 0..k {
        cur = (0..h.dim())
            .map(|x| {
                let mut out = Vector::new();
                for &(l, r, c) in h.coproduct_basis(x) {
                    axpy(&mut out, c, &h.mul(&cur[l], &h.basis_vector(r)), f);
                }
                out
            })
            .collect();
    }
    cur
}

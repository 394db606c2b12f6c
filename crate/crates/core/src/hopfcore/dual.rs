//! The restricted (graded) dual.

use super::presentation::{add_term, HopfBuilder, HopfPresentation, TensorVector, Vector};
use super::HopfError;

/// The restricted dual `⊕ (H^{(d,w)})^*`, each dual block kept in the slot of the block it
/// dualises. The pairing `⟨a*⊗b*, x⊗y⟩ = (−1)^{|b||x|} a*(x) b*(y)` turns `Δ` into the
/// product and `μ` into the coproduct.
pub fn restricted_dual(h: &HopfPresentation) -> Result<HopfPresentation, HopfError> {
    let f = h.field();
    let n = h.dim();
    let mut b = HopfBuilder::new(f, h.grading(), h.window()).weight_graded(h.weight_graded());
    for i in 0..n {
        let el = &h.basis()[i];
        b.add_basis(format!("{}*", el.label), el.degree as u64, el.weight);
    }
    b.set_unit(h.unit());
    let mut products: std::collections::HashMap<(usize, usize), Vector> = Default::default();
    let mut coproducts: Vec<TensorVector> = vec![TensorVector::new(); n];
    for x in 0..n {
        for &(l, r, c) in h.coproduct_basis(x) {
            let s = f.sign(h.is_odd(l) && h.is_odd(r));
            add_term(products.entry((l, r)).or_default(), x, f.mul(s, c), f);
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !h.in_window(&[i, j]) {
                continue;
            }
            let s = f.sign(h.is_odd(i) && h.is_odd(j));
            for &(x, c) in h.mul_basis(i, j) {
                add_term(&mut coproducts[x], (i, j), f.mul(s, c), f);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if h.in_window(&[i, j]) {
                b.set_product(i, j, products.remove(&(i, j)).unwrap_or_default());
            }
        }
    }
    for (x, d) in coproducts.into_iter().enumerate() {
        b.set_coproduct(x, d);
    }
    b.build()
}

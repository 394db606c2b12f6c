//! Validation of weight decompositions.

use super::ops::{indecomposables, primitives};
use super::presentation::HopfPresentation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightReport {
    pub valid: bool,
    pub reason: Option<String>,
}

impl WeightReport {
    fn invalid(reason: String) -> Self {
        Self { valid: false, reason: Some(reason) }
    }
}

fn is_power_of(p: u32, mut w: u32) -> bool {
    if w == 0 {
        return false;
    }
    while w % p == 0 {
        w /= p;
    }
    w == 1
}

/// Checks that the weight labels form a weight decomposition: structure maps add weights,
/// the unit spans the only (degree 0, weight 0) line, and primitives and indecomposables
/// live in weights that are powers of `p`.
pub fn validate_weight_decomposition(h: &HopfPresentation) -> WeightReport {
    let n = h.dim();
    for i in 0..n {
        for j in 0..n {
            for &(k, _) in h.mul_basis(i, j) {
                if h.weight(k) != h.weight(i) + h.weight(j) {
                    return WeightReport::invalid(format!(
                        "{}·{} has a term {} of the wrong weight",
                        h.label(i),
                        h.label(j),
                        h.label(k)
                    ));
                }
            }
        }
        for &(l, r, _) in h.coproduct_basis(i) {
            if h.weight(l) + h.weight(r) != h.weight(i) {
                return WeightReport::invalid(format!(
                    "Δ({}) has a term {}⊗{} of the wrong weight",
                    h.label(i),
                    h.label(l),
                    h.label(r)
                ));
            }
        }
    }
    let zero: Vec<usize> = (0..n).filter(|&i| h.degree(i) == 0 && h.weight(i) == 0).collect();
    if zero != [h.unit()] {
        return WeightReport::invalid("the (degree 0, weight 0) slot is not the unit line".into());
    }
    let graded = h.clone().with_weight_graded(true);
    for (name, sub) in [("primitive", primitives(&graded)), ("indecomposable", indecomposables(&graded))] {
        for (key, d) in sub.dims() {
            if !is_power_of(h.p(), key.weight) {
                return WeightReport::invalid(format!(
                    "{} {} in degree {} and weight {}, which is not a power of {}",
                    d,
                    name,
                    key.degree,
                    key.weight,
                    h.p()
                ));
            }
        }
    }
    WeightReport { valid: true, reason: None }
}

//! The `p²`-dimensional self-dual Hopf algebra graded over `Z/2(p²−1)`.
//!
//! As an algebra it is `F_p[y]/y^{p²}` with `|y| = 2p`; write `k = k₀ + p k₁` (digits
//! `< p`), `σ(k) = p k₀ + k₁` and `a_k = y^{σ(k)} / (k₀! k₁!)`, so that `a_p = y`. The
//! coproduct is `Δ a_m = Σ_{k+l=m} a_k ⊗ a_l` and `|a_k| = 2k`. The degree `2p·σ(k)` of
//! `y^{σ(k)}` agrees with `2k` modulo `2(p²−1)` because `p² ≡ 1`.
//!
//! There is no compatible weight grading: `a_1 = y^p` forces `w(a_1) = p·w(y)`, while
//! `a_1 ⊗ a_{p−1}` occurring in `Δy` and `a_{p−1} = a_1^{p−1}/(p−1)!` force `w(y) = p·w(a_1)`.
//! The weight of `a_k` is recorded as the label `k` only.

use std::sync::Arc;

use super::CatalogueError;
use crate::exactla::PrimeField;
use crate::hopfcore::{
    restricted_dual, verify_axioms, AlgebraKind, FactorTag, Grading, HopfBuilder, HopfError, HopfMorphism,
    HopfPresentation, TensorVector, Vector, Window,
};

fn digits(k: u32, p: u32) -> (u32, u32) {
    (k % p, k / p)
}

fn sigma(k: u32, p: u32) -> u32 {
    let (k0, k1) = digits(k, p);
    p * k0 + k1
}

fn sigma_inv(s: u32, p: u32) -> u32 {
    let (s0, s1) = digits(s, p);
    s1 + p * s0
}

fn factorial(n: u32, f: PrimeField) -> u32 {
    (1..=n).fold(1, |acc, t| f.mul(acc, t))
}

/// `k₀! k₁!`, the denominator of `a_k` as a divided power of `y`.
fn denom(k: u32, f: PrimeField) -> u32 {
    let (k0, k1) = digits(k, f.p());
    f.mul(factorial(k0, f), factorial(k1, f))
}

/// Builds the algebra and checks the axioms.
pub fn make_morava(p: u32) -> Result<HopfPresentation, CatalogueError> {
    let f = PrimeField::new(p).map_err(HopfError::from)?;
    let n = p * p;
    let modulus = 2 * (n - 1);
    let mut b = HopfBuilder::new(f, Grading::Cyclic(modulus), Window::unbounded())
        .weight_graded(false)
        .factors(vec![FactorTag { kind: AlgebraKind::Morava, r: 0, degree: 2 }]);
    for k in 0..n {
        let label = if k == 0 { "1".to_string() } else { format!("a_{k}") };
        b.add_basis(label, 2 * k as u64, k);
    }
    b.set_unit(0);
    for k in 0..n {
        for l in 0..n {
            let s = sigma(k, p) + sigma(l, p);
            let mut v = Vector::new();
            if s < n {
                let m = sigma_inv(s, p);
                let c = f.mul(denom(m, f), f.inv(f.mul(denom(k, f), denom(l, f))));
                if c != 0 {
                    v.insert(m as usize, c);
                }
            }
            b.set_product(k as usize, l as usize, v);
        }
        let d: TensorVector = (0..=k).map(|j| ((j as usize, (k - j) as usize), 1)).collect();
        b.set_coproduct(k as usize, d);
    }
    let h = b.build()?;
    if let Some(v) = verify_axioms(&h).violation {
        return Err(CatalogueError::Axiom { axiom: v.axiom.to_string(), detail: v.detail });
    }
    Ok(h)
}

/// Outcome of checking the explicit isomorphism `H^{(1)} → H^*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfDualityReport {
    pub p: u32,
    pub dim: usize,
    /// The candidate map is a bijection on bases (up to units).
    pub bijective: bool,
    /// Every image lies in the block of its source.
    pub block_preserving: bool,
    /// `None` if the map commutes with unit, counit, product and coproduct.
    pub failure: Option<String>,
    /// Images `a_i ↦ c·a*_j`, as `(i, j, c)`.
    pub assignment: Vec<(usize, usize, u32)>,
}

impl SelfDualityReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.block_preserving && self.failure.is_none()
    }
}

/// Checks `a_i ↦ (k₀! k₁!)^{-1} a*_k` with `k = σ^{-1}(i)`, from the Frobenius twist (degrees
/// multiplied by `p`) to the restricted dual.
pub fn morava_self_duality(p: u32) -> Result<SelfDualityReport, CatalogueError> {
    let h = make_morava(p)?;
    let f = h.field();
    let source = Arc::new(super::twist_regrade(&h, 1, true)?);
    let target = Arc::new(restricted_dual(&h)?);
    let n = p * p;
    let mut assignment = Vec::new();
    let mut images = Vec::new();
    for i in 0..n {
        let k = sigma_inv(i, p);
        let c = f.inv(denom(k, f));
        assignment.push((i as usize, k as usize, c));
        images.push(Vector::from([(k as usize, c)]));
    }
    let mut seen: Vec<usize> = assignment.iter().map(|a| a.1).collect();
    seen.sort_unstable();
    seen.dedup();
    let bijective = seen.len() == n as usize;
    let block_preserving = assignment.iter().all(|&(i, j, _)| source.degree(i) == target.degree(j));
    let phi = HopfMorphism::new(source, target, images)?;
    let failure = phi.check().failure;
    Ok(SelfDualityReport { p, dim: n as usize, bijective, block_preserving, failure, assignment })
}

//! Explicit Hopf algebras: symmetric, exterior, divided-power and truncated algebras on a
//! single generator, the extensions `G_n`, and the self-dual algebra over `Z/2(p²−1)`.
//!
//! A generator `F_{r,i}` sits in degree `i` and weight `p^r`; monomials `x^k` and divided
//! powers `γ_k` sit in weight `k·p^r`.

mod gn;
mod lucas;
mod morava;

pub use gn::{gn_sequences, make_gn, GnSequences};
pub use lucas::{binomial_mod, multinomial_mod};
pub use morava::{make_morava, morava_self_duality, SelfDualityReport};

pub use crate::hopfcore::AlgebraKind;

use thiserror::Error;

use crate::exactla::PrimeField;
use crate::hopfcore::{
    tensor_product, verify_axioms, FactorTag, Grading, HopfBuilder, HopfError, HopfPresentation, TensorVector, Vector,
    Window,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogueError {
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error("{kind:?} needs a generator of {parity} degree at odd characteristic, got {degree}")]
    Parity { kind: AlgebraKind, parity: &'static str, degree: u32 },
    #[error("the window does not bound the algebra (generator degree 0 and no weight bound)")]
    Unbounded,
    #[error("the constructed presentation fails the {axiom} axiom: {detail}")]
    Axiom { axiom: String, detail: String },
    #[error("{0}")]
    Invalid(String),
}

/// The generator `F_{r,i}`, possibly with several copies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSpec {
    pub r: u32,
    pub degree: u32,
    pub multiplicity: u32,
}

impl GeneratorSpec {
    pub fn new(r: u32, degree: u32) -> Self {
        Self { r, degree, multiplicity: 1 }
    }
}

const MAX_EXPONENT: u64 = 1 << 16;

/// Builds `kind` on the generator `gen`, truncated to `window`, and verifies the axioms.
pub fn make(
    kind: AlgebraKind,
    p: u32,
    gen: GeneratorSpec,
    window: Window,
) -> Result<HopfPresentation, CatalogueError> {
    let field = PrimeField::new(p).map_err(HopfError::from)?;
    if kind == AlgebraKind::Morava {
        return make_morava(p);
    }
    if p != 2 {
        let odd_needed = kind == AlgebraKind::Lambda;
        if (gen.degree % 2 == 1) != odd_needed {
            return Err(CatalogueError::Parity {
                kind,
                parity: if odd_needed { "odd" } else { "even" },
                degree: gen.degree,
            });
        }
    }
    if gen.multiplicity == 0 {
        return Err(CatalogueError::Invalid("multiplicity must be positive".into()));
    }
    let one = |name: &str| -> Result<HopfPresentation, CatalogueError> {
        match kind {
            AlgebraKind::GN(n) => make_gn(p, n, gen.r, gen.degree, window),
            _ => single(kind, field, gen, window, name),
        }
    };
    let mut h = one(if gen.multiplicity == 1 { "" } else { "1" })?;
    for c in 2..=gen.multiplicity {
        h = tensor_product(&h, &one(&c.to_string())?)?;
    }
    let report = verify_axioms(&h);
    if let Some(v) = report.violation {
        return Err(CatalogueError::Axiom { axiom: v.axiom.to_string(), detail: v.detail });
    }
    Ok(h)
}

/// One copy of a monomial-type algebra: basis `e_k` (`k < cap`), with `e_a e_b = m(a,b) e_{a+b}`
/// and `Δ e_k = Σ_j c(k,j) e_j ⊗ e_{k−j}`.
fn single(
    kind: AlgebraKind,
    field: PrimeField,
    gen: GeneratorSpec,
    window: Window,
    suffix: &str,
) -> Result<HopfPresentation, CatalogueError> {
    let p = field.p();
    let pr = (p as u64).pow(gen.r);
    let cap: Option<u64> = match kind {
        AlgebraKind::S | AlgebraKind::Gamma => None,
        AlgebraKind::Lambda => Some(2),
        AlgebraKind::SN(n) | AlgebraKind::GammaN(n) => Some((p as u64).pow(n)),
        _ => unreachable!("handled elsewhere"),
    };
    let divided = matches!(kind, AlgebraKind::Gamma | AlgebraKind::GammaN(_));
    let mut top = 0u64;
    loop {
        let k = top + 1;
        if cap.is_some_and(|c| k >= c) || !window.admits(Grading::Natural, k * gen.degree as u64, k * pr) {
            break;
        }
        top = k;
        if top >= MAX_EXPONENT {
            return Err(CatalogueError::Unbounded);
        }
    }
    let name = |k: u64| -> String {
        if k == 0 {
            "1".into()
        } else if divided {
            format!("γ{suffix}_{k}")
        } else if k == 1 {
            format!("x{suffix}")
        } else {
            format!("x{suffix}^{k}")
        }
    };
    let mut b = HopfBuilder::new(field, Grading::Natural, window).factors(vec![FactorTag {
        kind,
        r: gen.r,
        degree: gen.degree,
    }]);
    for k in 0..=top {
        b.add_basis(name(k), k * gen.degree as u64, (k * pr) as u32);
    }
    b.set_unit(0);
    for a in 0..=top {
        for c in 0..=top - a {
            let coeff = if divided { binomial_mod(a + c, a, p) } else { 1 };
            let mut v = Vector::new();
            if coeff != 0 {
                v.insert((a + c) as usize, coeff);
            }
            b.set_product(a as usize, c as usize, v);
        }
        let mut d = TensorVector::new();
        for j in 0..=a {
            let coeff = if divided { 1 } else { binomial_mod(a, j, p) };
            if coeff != 0 {
                d.insert((j as usize, (a - j) as usize), coeff);
            }
        }
        b.set_coproduct(a as usize, d);
    }
    Ok(b.build()?)
}

/// Relabels weights by `p^r` (and, if `scale_degrees`, multiplies degrees by `p^r` too).
pub fn twist_regrade(h: &HopfPresentation, r: u32, scale_degrees: bool) -> Result<HopfPresentation, CatalogueError> {
    let pr = h.p().pow(r);
    let mut window = h.window();
    if let Some(w) = window.weight.as_mut() {
        *w *= pr;
    }
    if scale_degrees {
        if let Some(d) = window.degree.as_mut() {
            *d *= pr;
        }
    }
    if let Some(e) = window.ereg.as_mut() {
        *e *= pr;
    }
    let tags = h.factors().iter().map(|t| FactorTag { r: t.r + r, degree: if scale_degrees { t.degree * pr } else { t.degree }, ..*t }).collect();
    let mut b = HopfBuilder::new(h.field(), h.grading(), window).weight_graded(h.weight_graded()).factors(tags);
    for el in h.basis() {
        let d = if scale_degrees { el.degree as u64 * pr as u64 } else { el.degree as u64 };
        b.add_basis(el.label.clone(), d, el.weight * pr);
    }
    b.set_unit(h.unit());
    for i in 0..h.dim() {
        for j in 0..h.dim() {
            let out = h.mul_basis(i, j);
            if !out.is_empty() {
                b.set_product(i, j, out.iter().copied().collect());
            }
        }
        b.set_coproduct(i, h.coproduct_basis(i).iter().map(|&(l, r, c)| ((l, r), c)).collect());
    }
    Ok(b.build()?)
}

#[cfg(test)]
mod tests;

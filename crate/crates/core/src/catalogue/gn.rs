//! The extensions `G_n` of `S^{(n)}` by `Γ_n`, and the maps in their two exact sequences.
//!
//! As an algebra `G_n = Γ_n ⊗ S(y)` with basis `t_a y^j` (`a < p^n`). The generator `y` sits
//! in degree `p^n i` and plays the role of the missing divided power `γ_{p^n}`:
//! `Δy = y⊗1 + 1⊗y + Σ_{0<k<p^n} t_k ⊗ t_{p^n−k}`.

use std::collections::HashMap;
use std::sync::Arc;

use super::lucas::binomial_mod;
use super::{make, AlgebraKind, CatalogueError, GeneratorSpec};
use crate::exactla::PrimeField;
use crate::hopfcore::{
    add_term, verify_axioms, FactorTag, Grading, HopfBuilder, HopfError, HopfMorphism, HopfPresentation, TensorVector,
    Vector, Window,
};

/// Builds `G_n` on a generator of degree `i` and twist `r`; fails if the axioms fail.
pub fn make_gn(p: u32, n: u32, r: u32, i: u32, window: Window) -> Result<HopfPresentation, CatalogueError> {
    let field = PrimeField::new(p).map_err(HopfError::from)?;
    let q = (p as u64).pow(n);
    let pr = (p as u64).pow(r);
    let mut b = HopfBuilder::new(field, Grading::Natural, window).factors(vec![FactorTag {
        kind: AlgebraKind::GN(n),
        r,
        degree: i,
    }]);
    let mut index: HashMap<(u64, u64), usize> = HashMap::new();
    let mut elems = Vec::new();
    let mut j = 0u64;
    loop {
        let mut any = false;
        for a in 0..q {
            let e = a + j * q;
            if !window.admits(Grading::Natural, e * i as u64, e * pr) {
                continue;
            }
            any = true;
            let label = match (a, j) {
                (0, 0) => "1".to_string(),
                (a, 0) => format!("t_{a}"),
                (0, 1) => "y".to_string(),
                (0, j) => format!("y^{j}"),
                (a, 1) => format!("t_{a}·y"),
                (a, j) => format!("t_{a}·y^{j}"),
            };
            let id = b.add_basis(label, e * i as u64, (e * pr) as u32);
            index.insert((a, j), id);
            elems.push((a, j));
        }
        if !any {
            break;
        }
        j += 1;
        if j > 1 << 16 {
            return Err(CatalogueError::Unbounded);
        }
    }
    b.set_unit(index[&(0, 0)]);
    let mul = |x: (u64, u64), y: (u64, u64)| -> Option<(usize, u32)> {
        let (a, c) = (x.0 + y.0, x.1 + y.1);
        if a >= q {
            return None;
        }
        let coeff = binomial_mod(a, x.0, p);
        if coeff == 0 {
            return None;
        }
        index.get(&(a, c)).map(|&k| (k, coeff))
    };
    for (s, &x) in elems.iter().enumerate() {
        for (t, &y) in elems.iter().enumerate() {
            let e = x.0 + y.0 + (x.1 + y.1) * q;
            if !window.admits(Grading::Natural, e * i as u64, e * pr) {
                continue;
            }
            let mut v = Vector::new();
            if let Some((k, c)) = mul(x, y) {
                v.insert(k, c);
            }
            b.set_product(s, t, v);
        }
    }
    // Coproducts, computed multiplicatively in G ⊗ G; all degrees are even or p = 2, so no signs.
    let tmul = |u: &TensorVector, v: &TensorVector| -> TensorVector {
        let mut out = TensorVector::new();
        for (&(a, b2), &c) in u {
            for (&(d, e), &g) in v {
                if let (Some((k, c1)), Some((l, c2))) = (mul(elems[a], elems[d]), mul(elems[b2], elems[e])) {
                    add_term(&mut out, (k, l), field.mul(field.mul(c, g), field.mul(c1, c2)), field);
                }
            }
        }
        out
    };
    let unit = index[&(0, 0)];
    let delta_t = |a: u64| -> TensorVector {
        let mut d = TensorVector::new();
        for k in 0..=a {
            if let (Some(&l), Some(&r)) = (index.get(&(k, 0)), index.get(&(a - k, 0))) {
                d.insert((l, r), 1);
            }
        }
        d
    };
    let delta_y = index.get(&(0, 1)).map(|&y| {
        let mut d = TensorVector::new();
        d.insert((y, unit), 1);
        d.insert((unit, y), 1);
        for k in 1..q {
            if let (Some(&l), Some(&r)) = (index.get(&(k, 0)), index.get(&(q - k, 0))) {
                add_term(&mut d, (l, r), 1, field);
            }
        }
        d
    });
    for (s, &(a, j)) in elems.iter().enumerate() {
        let mut d = delta_t(a);
        for _ in 0..j {
            d = tmul(&d, delta_y.as_ref().expect("y is in the window when y^j is"));
        }
        b.set_coproduct(s, d);
    }
    let h = b.build()?;
    if let Some(v) = verify_axioms(&h).violation {
        return Err(CatalogueError::Axiom { axiom: v.axiom.to_string(), detail: format!("{:?}: {}", v.witnesses, v.detail) });
    }
    Ok(h)
}

/// The algebras and maps of the two exact sequences
/// `𝕜 → Γ_n → G_n → S^{(n)} → 𝕜` and `𝕜 → S^{(n+1)} → G_n → Γ_{n+1} → 𝕜`.
#[derive(Clone, Debug)]
pub struct GnSequences {
    pub gamma_n: Arc<HopfPresentation>,
    pub g_n: Arc<HopfPresentation>,
    pub s_n: Arc<HopfPresentation>,
    pub s_n1: Arc<HopfPresentation>,
    pub gamma_n1: Arc<HopfPresentation>,
    /// `Γ_n → G_n`.
    pub incl_gamma: HopfMorphism,
    /// `G_n → S^{(n)}`.
    pub proj_s: HopfMorphism,
    /// `S^{(n+1)} → G_n`.
    pub incl_s: HopfMorphism,
    /// `G_n → Γ_{n+1}`.
    pub proj_gamma: HopfMorphism,
}

/// Builds both sequences for `n ≥ 1`, generator `F_{r,i}`, all truncated at `degree_bound`.
pub fn gn_sequences(p: u32, n: u32, r: u32, i: u32, degree_bound: u32) -> Result<GnSequences, CatalogueError> {
    let window = Window::degree(degree_bound);
    let q = p.pow(n);
    let gamma_n = Arc::new(make(AlgebraKind::GammaN(n), p, GeneratorSpec::new(r, i), window)?);
    let g_n = Arc::new(make_gn(p, n, r, i, window)?);
    let s_n = Arc::new(make(AlgebraKind::S, p, GeneratorSpec::new(r + n, q * i), window)?);
    let s_n1 = Arc::new(make(AlgebraKind::S, p, GeneratorSpec::new(r + n + 1, q * p * i), window)?);
    let gamma_n1 = Arc::new(make(AlgebraKind::GammaN(n + 1), p, GeneratorSpec::new(r, i), window)?);
    let one = |h: &HopfPresentation, i: usize| h.basis_vector(i);
    // Basis elements of the single-generator algebras are indexed by exponent.
    let g_index: HashMap<(u64, u64), usize> = (0..g_n.dim())
        .map(|k| {
            let e = g_n.weight(k) as u64 / (p as u64).pow(r);
            ((e % q as u64, e / q as u64), k)
        })
        .collect();
    let incl_gamma = HopfMorphism::new(
        gamma_n.clone(),
        g_n.clone(),
        (0..gamma_n.dim()).map(|a| g_index.get(&(a as u64, 0)).map(|&k| one(&g_n, k)).unwrap_or_default()).collect(),
    )?;
    let proj_s = HopfMorphism::new(
        g_n.clone(),
        s_n.clone(),
        (0..g_n.dim())
            .map(|k| {
                let e = g_n.weight(k) as u64 / (p as u64).pow(r);
                let (a, j) = (e % q as u64, e / q as u64);
                if a == 0 && (j as usize) < s_n.dim() {
                    one(&s_n, j as usize)
                } else {
                    Vector::new()
                }
            })
            .collect(),
    )?;
    let incl_s = HopfMorphism::new(
        s_n1.clone(),
        g_n.clone(),
        (0..s_n1.dim())
            .map(|j| g_index.get(&(0, (j as u64) * p as u64)).map(|&k| one(&g_n, k)).unwrap_or_default())
            .collect(),
    )?;
    let gq = ((q as usize) < gamma_n1.dim()).then(|| one(&gamma_n1, q as usize));
    let proj_gamma = HopfMorphism::new(
        g_n.clone(),
        gamma_n1.clone(),
        (0..g_n.dim())
            .map(|k| {
                let e = g_n.weight(k) as u64 / (p as u64).pow(r);
                let (a, j) = (e % q as u64, e / q as u64);
                let mut v = if (a as usize) < gamma_n1.dim() { one(&gamma_n1, a as usize) } else { Vector::new() };
                for _ in 0..j {
                    v = gq.as_ref().map(|g| gamma_n1.mul(&v, g)).unwrap_or_default();
                }
                v
            })
            .collect(),
    )?;
    Ok(GnSequences { gamma_n, g_n, s_n, s_n1, gamma_n1, incl_gamma, proj_s, incl_s, proj_gamma })
}

//! Checking the Hopf algebra axioms within the truncation window.

use std::fmt;

use super::ops::antipode;
use super::presentation::{add_term, HopfPresentation, TensorVector, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    Grading,
    Unit,
    Counit,
    Associativity,
    Coassociativity,
    Commutativity,
    Cocommutativity,
    Bialgebra,
    Antipode,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Grading => "grading",
            Axiom::Unit => "unit",
            Axiom::Counit => "counit",
            Axiom::Associativity => "associativity",
            Axiom::Coassociativity => "coassociativity",
            Axiom::Commutativity => "commutativity",
            Axiom::Cocommutativity => "cocommutativity",
            Axiom::Bialgebra => "bialgebra",
            Axiom::Antipode => "antipode",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witnesses: Vec<String>,
    pub detail: String,
}

/// Result of [`verify_axioms`]: the first violated identity, if any, plus counts of the
/// identities checked and of those skipped because they leave the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub violation: Option<Violation>,
    pub checked: usize,
    pub unknown: usize,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

struct Ctx<'a> {
    h: &'a HopfPresentation,
    checked: usize,
    unknown: usize,
}

impl Ctx<'_> {
    fn fail(&self, axiom: Axiom, witnesses: &[usize], detail: String) -> AxiomReport {
        AxiomReport {
            violation: Some(Violation {
                axiom,
                witnesses: witnesses.iter().map(|&i| self.h.label(i).to_string()).collect(),
                detail,
            }),
            checked: self.checked,
            unknown: self.unknown,
        }
    }
}

/// Checks, in order: grading, unit, counit, associativity, coassociativity, commutativity,
/// cocommutativity, the bialgebra identity and the antipode identities.
pub fn verify_axioms(h: &HopfPresentation) -> AxiomReport {
    let n = h.dim();
    let f = h.field();
    let u = h.unit();
    let e = |i| h.basis_vector(i);
    let mut cx = Ctx { h, checked: 0, unknown: 0 };

    // Grading.
    for i in 0..n {
        for j in 0..n {
            for &(k, _) in h.mul_basis(i, j) {
                if h.block(k) != h.block_sum(h.block(i), h.block(j)) {
                    return cx.fail(Axiom::Grading, &[i, j], format!("product lands on {}", h.label(k)));
                }
            }
        }
        for &(l, r, _) in h.coproduct_basis(i) {
            if h.block_sum(h.block(l), h.block(r)) != h.block(i) {
                return cx.fail(Axiom::Grading, &[i], format!("coproduct term {}⊗{}", h.label(l), h.label(r)));
            }
        }
        cx.checked += 1;
    }

    // Unit.
    let mut uu = TensorVector::new();
    uu.insert((u, u), 1 % f.p());
    if h.coproduct(&e(u)) != uu {
        return cx.fail(Axiom::Unit, &[u], "Δ(1) ≠ 1⊗1".into());
    }
    for x in 0..n {
        cx.checked += 1;
        if h.mul(&e(u), &e(x)) != e(x) || h.mul(&e(x), &e(u)) != e(x) {
            return cx.fail(Axiom::Unit, &[x], "1·x ≠ x or x·1 ≠ x".into());
        }
    }

    // Counit.
    for x in 0..n {
        cx.checked += 1;
        let mut left = Vector::new();
        let mut right = Vector::new();
        for &(l, r, c) in h.coproduct_basis(x) {
            if l == u {
                add_term(&mut left, r, c, f);
            }
            if r == u {
                add_term(&mut right, l, c, f);
            }
        }
        if left != e(x) || right != e(x) {
            return cx.fail(
                Axiom::Counit,
                &[x],
                format!("Δ = {}", h.format_tensor(&h.coproduct(&e(x)))),
            );
        }
    }

    // Associativity.
    for i in 0..n {
        for j in 0..n {
            if !h.in_window(&[i, j]) {
                continue;
            }
            let ij = h.mul(&e(i), &e(j));
            for k in 0..n {
                if i == u || j == u || k == u {
                    continue;
                }
                if !h.in_window(&[i, j, k]) {
                    cx.unknown += 1;
                    continue;
                }
                cx.checked += 1;
                let lhs = h.mul(&ij, &e(k));
                let rhs = h.mul(&e(i), &h.mul(&e(j), &e(k)));
                if lhs != rhs {
                    return cx.fail(
                        Axiom::Associativity,
                        &[i, j, k],
                        format!("(ab)c = {}, a(bc) = {}", h.format_vector(&lhs), h.format_vector(&rhs)),
                    );
                }
            }
        }
    }

    // Coassociativity.
    for x in 0..n {
        cx.checked += 1;
        let mut lhs: std::collections::BTreeMap<(usize, usize, usize), u32> = Default::default();
        let mut rhs = lhs.clone();
        for &(l, r, c) in h.coproduct_basis(x) {
            for &(a, b, d) in h.coproduct_basis(l) {
                add_term(&mut lhs, (a, b, r), f.mul(c, d), f);
            }
            for &(a, b, d) in h.coproduct_basis(r) {
                add_term(&mut rhs, (l, a, b), f.mul(c, d), f);
            }
        }
        if lhs != rhs {
            return cx.fail(Axiom::Coassociativity, &[x], String::new());
        }
    }

    // Commutativity.
    for i in 0..n {
        for j in i..n {
            if !h.in_window(&[i, j]) {
                cx.unknown += 1;
                continue;
            }
            cx.checked += 1;
            let mut ji = Vector::new();
            let s = f.sign(h.is_odd(i) && h.is_odd(j));
            for &(k, c) in h.mul_basis(j, i) {
                add_term(&mut ji, k, f.mul(s, c), f);
            }
            if h.mul(&e(i), &e(j)) != ji {
                return cx.fail(Axiom::Commutativity, &[i, j], String::new());
            }
        }
    }

    // Cocommutativity.
    for x in 0..n {
        cx.checked += 1;
        let d = h.coproduct(&e(x));
        let mut t = TensorVector::new();
        for (&(l, r), &c) in &d {
            add_term(&mut t, (r, l), f.mul(c, f.sign(h.is_odd(l) && h.is_odd(r))), f);
        }
        if d != t {
            return cx.fail(Axiom::Cocommutativity, &[x], h.format_tensor(&d));
        }
    }

    // Bialgebra.
    for i in 0..n {
        for j in 0..n {
            if i == u || j == u {
                continue;
            }
            if !h.in_window(&[i, j]) {
                cx.unknown += 1;
                continue;
            }
            cx.checked += 1;
            let lhs = h.coproduct(&h.mul(&e(i), &e(j)));
            let rhs = h.tensor_mul(&h.coproduct(&e(i)), &h.coproduct(&e(j)));
            if lhs != rhs {
                return cx.fail(
                    Axiom::Bialgebra,
                    &[i, j],
                    format!("Δ(ab) = {}, Δ(a)Δ(b) = {}", h.format_tensor(&lhs), h.format_tensor(&rhs)),
                );
            }
        }
    }

    // Antipode.
    let chi = match antipode(h) {
        Ok(c) => c,
        Err(err) => return cx.fail(Axiom::Antipode, &[], err.to_string()),
    };
    for x in 0..n {
        cx.checked += 1;
        let mut left = Vector::new();
        let mut right = Vector::new();
        for &(l, r, c) in h.coproduct_basis(x) {
            super::presentation::axpy(&mut left, c, &h.mul(&chi[l], &e(r)), f);
            super::presentation::axpy(&mut right, c, &h.mul(&e(l), &chi[r]), f);
        }
        let expect = if x == u { e(u) } else { Vector::new() };
        if left != expect || right != expect {
            return cx.fail(Axiom::Antipode, &[x], String::new());
        }
    }

    AxiomReport { violation: None, checked: cx.checked, unknown: cx.unknown }
}

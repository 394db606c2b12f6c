use std::sync::Arc;

use super::*;
use crate::hopfcore::{
    check_exact_triple, find_section, primitives, BlockKey, HopfMorphism, SectionSearch,
};

fn dims_by_degree(h: &HopfPresentation) -> Vec<usize> {
    let top = (0..h.dim()).map(|i| h.degree(i)).max().unwrap_or(0) as usize;
    let mut out = vec![0; top + 1];
    for i in 0..h.dim() {
        out[h.degree(i) as usize] += 1;
    }
    out
}

#[test]
fn symmetric_algebra_has_one_monomial_per_even_degree() {
    let h = make(AlgebraKind::S, 2, GeneratorSpec::new(0, 2), Window::degree(10)).unwrap();
    assert_eq!(dims_by_degree(&h), vec![1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1]);
}

#[test]
fn tensor_dimensions_count_pairs_of_exponents() {
    let lam = GeneratorSpec { r: 0, degree: 3, multiplicity: 2 };
    let h = make(AlgebraKind::Lambda, 3, lam, Window::degree(12)).unwrap();
    assert_eq!(h.dim(), 4);
    assert_eq!(h.basis().iter().filter(|b| b.degree == 6).count(), 1);

    let s = make(AlgebraKind::S, 3, GeneratorSpec::new(0, 2), Window::degree(8)).unwrap();
    let g = make(AlgebraKind::Gamma, 3, GeneratorSpec::new(0, 2), Window::degree(8)).unwrap();
    let sg = tensor_product(&s, &g).unwrap();
    // Pairs (a, b) with 2a + 2b = 4.
    assert_eq!(sg.basis().iter().filter(|b| b.degree == 4).count(), 3);
}

#[test]
fn parity_is_enforced_at_odd_primes() {
    let err = make(AlgebraKind::Lambda, 3, GeneratorSpec::new(0, 2), Window::degree(10)).unwrap_err();
    assert!(matches!(err, CatalogueError::Parity { .. }));
    let err = make(AlgebraKind::S, 5, GeneratorSpec::new(0, 3), Window::degree(10)).unwrap_err();
    assert!(matches!(err, CatalogueError::Parity { .. }));
    // At p = 2 every parity is allowed.
    assert!(make(AlgebraKind::S, 2, GeneratorSpec::new(0, 3), Window::degree(9)).is_ok());
}

#[test]
fn truncated_algebras_have_the_right_height() {
    for p in [2u32, 3] {
        for n in 1..=2 {
            let q = p.pow(n) as usize;
            let sn = make(AlgebraKind::SN(n), p, GeneratorSpec::new(0, 2), Window::degree(200)).unwrap();
            assert_eq!(sn.dim(), q);
            let gn = make(AlgebraKind::GammaN(n), p, GeneratorSpec::new(0, 2), Window::degree(200)).unwrap();
            assert_eq!(gn.dim(), q);
        }
    }
}

#[test]
fn primitives_of_symmetric_and_divided_algebras() {
    // S(x) at p: primitives x^{p^k}. Γ(x): only γ_1.
    let s = make(AlgebraKind::S, 3, GeneratorSpec::new(0, 2), Window::degree(60)).unwrap();
    let prim: Vec<u32> = primitives(&s).dims().keys().map(|k| k.degree).collect();
    assert_eq!(prim, vec![2, 6, 18, 54]);
    let g = make(AlgebraKind::Gamma, 3, GeneratorSpec::new(0, 2), Window::degree(60)).unwrap();
    let prim: Vec<u32> = primitives(&g).dims().keys().map(|k| k.degree).collect();
    assert_eq!(prim, vec![2]);
}

#[test]
fn weights_follow_the_twist() {
    let h = make(AlgebraKind::S, 2, GeneratorSpec::new(2, 1), Window::degree(5)).unwrap();
    assert_eq!(h.weight(3), 12);
    let t = twist_regrade(&h, 1, true).unwrap();
    assert_eq!(t.weight(3), 24);
    assert_eq!(t.degree(3), 6);
    assert_eq!(t.factors()[0].r, 3);
}

#[test]
fn gn_is_a_hopf_algebra_and_neither_sequence_splits() {
    for (p, n) in [(2u32, 1u32), (2, 2), (3, 1)] {
        let bound = 2 * p.pow(n + 1);
        let seq = gn_sequences(p, n, 0, 2, bound).unwrap();
        // Dimension oracle: one basis element t_a y^j per exponent a + j p^n in range.
        assert_eq!(seq.g_n.dim(), (bound / 2 + 1) as usize);
        let first = check_exact_triple(&seq.incl_gamma, &seq.proj_s).unwrap();
        assert!(first.exact(), "{p} {n}: {first:?}");
        let second = check_exact_triple(&seq.incl_s, &seq.proj_gamma).unwrap();
        assert!(second.exact(), "{p} {n}: {second:?}");
        for g in [&seq.proj_s, &seq.proj_gamma] {
            assert!(g.check().passed());
            match find_section(g, 100_000).unwrap() {
                SectionSearch::NoSection { .. } => {}
                other => panic!("{p} {n}: unexpected {other:?}"),
            }
        }
    }
}

#[test]
fn trivial_extension_does_split() {
    // Sanity check of the section search: the projection Γ_1 ⊗ S → S has a section.
    let a = make(AlgebraKind::GammaN(1), 2, GeneratorSpec::new(0, 2), Window::degree(8)).unwrap();
    let b = Arc::new(make(AlgebraKind::S, 2, GeneratorSpec::new(1, 4), Window::degree(8)).unwrap());
    let ab = Arc::new(tensor_product(&a, &b).unwrap());
    let images = (0..ab.dim())
        .map(|i| {
            let lbl = ab.label(i);
            (0..b.dim()).find(|&k| b.label(k) == lbl).map(|k| b.basis_vector(k)).unwrap_or_default()
        })
        .collect();
    let g = HopfMorphism::new(ab, b, images).unwrap();
    assert!(g.check().passed());
    assert!(matches!(find_section(&g, 10_000).unwrap(), SectionSearch::Found(_)));
}

#[test]
fn morava_algebra_is_self_dual() {
    for p in [2u32, 3, 5] {
        let h = make_morava(p).unwrap();
        assert_eq!(h.dim(), (p * p) as usize);
        assert_eq!(h.grading(), Grading::Cyclic(2 * (p * p - 1)));
        // a_0 and a_{p²−1} share degree 0 modulo 2(p²−1).
        let zero = BlockKey { degree: 0, weight: 0 };
        assert_eq!(h.block_dims()[&zero], 2);
        let report = morava_self_duality(p).unwrap();
        assert!(report.passed(), "{report:?}");
    }
}

#[test]
fn morava_generator_is_not_primitive() {
    let h = make_morava(3).unwrap();
    let y = h.basis_vector(3);
    assert!(!h.reduced_coproduct(&y).is_empty());
    // a_1 = y^3 is primitive, y^9 = 0.
    assert!(h.reduced_coproduct(&h.basis_vector(1)).is_empty());
    assert_eq!(h.power(&y, 3), h.basis_vector(1));
    assert!(h.power(&y, 9).is_empty());
}

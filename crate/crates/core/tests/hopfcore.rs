//! Structure-map operations on catalogue algebras, checked against hand computations and
//! brute-force recomputations that share no code with the library routines.

use std::collections::BTreeMap;
use std::sync::Arc;

use expfun::catalogue::{gn_sequences, make, make_morava, AlgebraKind, GeneratorSpec};
use expfun::exactla::FpMatrix;
use expfun::hopfcore::*;
use proptest::prelude::*;

fn alg(kind: AlgebraKind, p: u32, r: u32, degree: u32, bound: u32) -> HopfPresentation {
    make(kind, p, GeneratorSpec::new(r, degree), Window::degree(bound)).unwrap()
}

#[test]
fn symmetric_algebra_satisfies_the_axioms() {
    let h = alg(AlgebraKind::S, 2, 0, 2, 10);
    let report = verify_axioms(&h);
    assert!(report.passed());
    assert!(report.checked > 0);
}

#[test]
fn corrupted_coproduct_is_caught_by_the_counit_check() {
    let h = alg(AlgebraKind::S, 2, 0, 2, 10);
    let mut b = h.to_builder();
    // Δx = x⊗1 only.
    b.set_coproduct(1, TensorVector::from([((1, 0), 1)]));
    let bad = b.build().unwrap();
    let v = verify_axioms(&bad).violation.unwrap();
    assert_eq!(v.axiom, Axiom::Counit);
}

#[test]
fn noncommutative_product_is_caught() {
    let h = alg(AlgebraKind::S, 3, 0, 2, 8);
    let mut b = h.to_builder();
    b.set_product(1, 2, Vector::new());
    let v = verify_axioms(&b.build().unwrap()).violation.unwrap();
    assert!(matches!(v.axiom, Axiom::Associativity | Axiom::Commutativity), "{v:?}");
}

#[test]
fn exterior_tensor_square_in_top_degree() {
    let l = alg(AlgebraKind::Lambda, 3, 0, 3, 12);
    let ll = tensor_product(&l, &l).unwrap();
    assert!(verify_axioms(&ll).passed());
    let top: Vec<usize> = (0..ll.dim()).filter(|&i| ll.degree(i) == 6).collect();
    assert_eq!(top.len(), 1);
    // x⊗1 · 1⊗x = −(1⊗x · x⊗1) by the Koszul sign.
    let a = (0..ll.dim()).find(|&i| ll.degree(i) == 3 && ll.label(i).contains("x") && ll.label(i) != ll.label(top[0])).unwrap();
    let b = (0..ll.dim()).find(|&i| ll.degree(i) == 3 && i != a).unwrap();
    let ab = ll.mul(&ll.basis_vector(a), &ll.basis_vector(b));
    let ba = ll.mul(&ll.basis_vector(b), &ll.basis_vector(a));
    assert_eq!(ab.len(), 1);
    assert_eq!((ab[&top[0]] + ba[&top[0]]) % 3, 0);
}

#[test]
fn symmetric_times_divided_in_degree_four() {
    let s = alg(AlgebraKind::S, 3, 0, 2, 8);
    let g = alg(AlgebraKind::Gamma, 3, 0, 2, 8);
    let sg = tensor_product(&s, &g).unwrap();
    assert!(verify_axioms(&sg).passed());
    assert_eq!((0..sg.dim()).filter(|&i| sg.degree(i) == 4).count(), 3);
}

#[test]
fn square_of_identity_on_divided_powers() {
    let g = Arc::new(alg(AlgebraKind::Gamma, 3, 0, 2, 12));
    let id = HopfMorphism::identity(g.clone());
    let sq = convolution_power(&id, 2).unwrap();
    assert_eq!(sq.image(1), &Vector::from([(1, 2)]));
    // Oracle: Id^{⋆2}(γ_n) = Σ_k γ_k γ_{n−k} = Σ_k C(n,k) γ_n = 2^n γ_n.
    for n in 0..g.dim() {
        let c = (1..=n).fold(1u32, |a, _| a * 2 % 3);
        assert_eq!(sq.image(n), &Vector::from([(n, c)]));
    }
}

#[test]
fn antipode_of_symmetric_algebra_is_the_sign() {
    let s = alg(AlgebraKind::S, 5, 0, 2, 20);
    let chi = antipode(&s).unwrap();
    for (k, v) in chi.iter().enumerate() {
        let c = if k % 2 == 0 { 1 } else { 4 };
        assert_eq!(v, &Vector::from([(k, c)]));
    }
}

#[test]
fn primitives_of_divided_powers_are_only_gamma_one() {
    let g = alg(AlgebraKind::Gamma, 2, 0, 2, 40);
    let prim = primitives(&g);
    assert_eq!(prim.total_dim(), 1);
    assert_eq!(prim.dims().keys().next().unwrap().degree, 2);
    // Dually the indecomposables are γ_{2^k}.
    let ind: Vec<u32> = indecomposables(&g).dims().keys().map(|k| k.degree).collect();
    assert_eq!(ind, vec![2, 4, 8, 16, 32]);
}

#[test]
fn frobenius_and_verschiebung_on_standard_algebras() {
    let s = alg(AlgebraKind::S, 3, 0, 2, 36);
    let f = frobenius(&s).unwrap();
    assert_eq!(f[2], Some(Vector::from([(6, 1)])));
    assert_eq!(f[7], None);
    let v = verschiebung(&s).unwrap();
    assert!(v.iter().skip(1).all(|x| x.is_empty()));

    let g = alg(AlgebraKind::Gamma, 3, 0, 2, 36);
    let v = verschiebung(&g).unwrap();
    // V(γ_{3k}) = γ_k, V vanishes elsewhere.
    for n in 0..g.dim() {
        let expect = if n % 3 == 0 { Vector::from([(n / 3, 1)]) } else { Vector::new() };
        assert_eq!(v[n], expect, "γ_{n}");
    }
    for h in [&s, &g] {
        assert_eq!(check_frobenius_verschiebung(h).unwrap(), None);
    }
    let seq = gn_sequences(2, 1, 0, 2, 16).unwrap();
    assert_eq!(check_frobenius_verschiebung(&seq.g_n).unwrap(), None);
}

#[test]
fn frobenius_rejects_odd_degrees_at_odd_primes() {
    let l = alg(AlgebraKind::Lambda, 3, 0, 1, 4);
    assert!(matches!(frobenius(&l), Err(HopfError::OddDegree(_))));
}

#[test]
fn dual_of_symmetric_is_divided() {
    for p in [2, 3] {
        let s = alg(AlgebraKind::S, p, 0, 2, 20);
        let g = Arc::new(alg(AlgebraKind::Gamma, p, 0, 2, 20));
        let sd = Arc::new(restricted_dual(&s).unwrap());
        assert!(verify_axioms(&sd).passed());
        let phi = HopfMorphism::new(g.clone(), sd, (0..g.dim()).map(|k| Vector::from([(k, 1)])).collect()).unwrap();
        assert!(phi.check().passed());
        // Double dual is the original.
        let sdd = restricted_dual(&restricted_dual(&s).unwrap()).unwrap();
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                assert_eq!(s.mul_basis(i, j), sdd.mul_basis(i, j));
            }
            assert_eq!(s.coproduct_basis(i), sdd.coproduct_basis(i));
        }
    }
}

/// `Δ̄^{(k)}(x) ∈ Ī^{⊗k}`, by iterating the reduced coproduct on the last factor.
fn iterated_reduced(h: &HopfPresentation, x: usize, k: usize) -> BTreeMap<Vec<usize>, u32> {
    let f = h.field();
    let mut cur: BTreeMap<Vec<usize>, u32> = BTreeMap::from([(vec![x], 1)]);
    for _ in 1..k {
        let mut next = BTreeMap::new();
        for (t, c) in cur {
            let last = *t.last().unwrap();
            for (&(l, r), &d) in &h.reduced_coproduct(&h.basis_vector(last)) {
                let mut u = t[..t.len() - 1].to_vec();
                u.push(l);
                u.push(r);
                let e = next.entry(u).or_insert(0);
                *e = f.add(*e, f.mul(c, d));
            }
        }
        cur = next.into_iter().filter(|(_, c)| *c != 0).collect();
    }
    cur
}

fn kernel_dim_per_degree(h: &HopfPresentation, k: usize) -> BTreeMap<u32, usize> {
    let mut out = BTreeMap::new();
    for (key, idx) in h.augmentation_blocks() {
        let images: Vec<_> = idx.iter().map(|&x| iterated_reduced(h, x, k)).collect();
        let rows: Vec<Vec<usize>> = images.iter().flat_map(|m| m.keys().cloned()).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
        let mut m = FpMatrix::zeros(h.field(), rows.len(), idx.len());
        for (c, img) in images.iter().enumerate() {
            for (r, key) in rows.iter().enumerate() {
                m.set(r, c, img.get(key).copied().unwrap_or(0));
            }
        }
        out.insert(key.degree, idx.len() - m.rank());
    }
    out
}

#[test]
fn primitive_filtration_matches_iterated_reduced_coproduct() {
    for (kind, p) in [(AlgebraKind::Gamma, 2), (AlgebraKind::S, 3), (AlgebraKind::Gamma, 3)] {
        let h = alg(kind, p, 0, 2, 30);
        for k in 1..5 {
            let filt = primitive_filtration(&h, k);
            let oracle = kernel_dim_per_degree(&h, k + 1);
            for (&d, &dim) in &oracle {
                assert_eq!(filt.dim_at(BlockKey { degree: d, weight: h.weight(d as usize / 2) }), dim, "{kind:?} p={p} k={k} d={d}");
            }
        }
    }
}

#[test]
fn augmentation_filtration_matches_products() {
    let h = alg(AlgebraKind::Gamma, 3, 0, 2, 30);
    // Ī^k in Γ(x): γ_n lies in Ī^k iff the base-3 digit sum of n is at least k.
    for k in 1..5 {
        let q = augmentation_filtration(&h, k);
        for n in 1..h.dim() {
            let digit_sum: usize = { let (mut m, mut s) = (n, 0); while m > 0 { s += m % 3; m /= 3; } s };
            let key = h.block(n);
            assert_eq!(q.dim_at(key), usize::from(digit_sum >= k), "k={k} n={n}");
        }
    }
    let tower = augmentation_tower(&h).unwrap();
    assert!(tower.last().unwrap().total_dim() == 0);
    let gr = associated_graded(&h, Filtration::Augmentation).unwrap();
    assert!(verify_axioms(&gr).passed());
    assert_eq!(gr.dim(), h.dim());
}

#[test]
fn associated_graded_of_the_self_dual_algebra() {
    let h = make_morava(2).unwrap();
    let gr_p = associated_graded(&h, Filtration::Primitive).unwrap();
    assert!(verify_axioms(&gr_p).passed());
    let gr_q = associated_graded(&h, Filtration::Augmentation).unwrap();
    assert!(verify_axioms(&gr_q).passed());
    // gr_Q is the truncated polynomial algebra on ȳ of height 4: primitives ȳ, ȳ².
    assert_eq!(indecomposables(&gr_q).total_dim(), 1);
    assert_eq!(primitives(&gr_q).total_dim(), 2);
    // gr_P has the same dimensions but is not primitively generated.
    assert_eq!(primitives(&gr_p).total_dim(), 1);
}

#[test]
fn weight_decomposition_validation() {
    assert!(validate_weight_decomposition(&alg(AlgebraKind::S, 3, 1, 2, 30)).valid);
    assert!(validate_weight_decomposition(&alg(AlgebraKind::Gamma, 2, 0, 2, 30)).valid);
    let m = validate_weight_decomposition(&make_morava(3).unwrap());
    assert!(!m.valid);
    assert!(m.reason.is_some());
}

#[test]
fn kernel_and_cokernel_of_the_gn_projection() {
    let seq = gn_sequences(3, 1, 0, 2, 36).unwrap();
    let (k, incl) = hopf_kernel(&seq.proj_s).unwrap();
    assert!(verify_axioms(&k).passed());
    assert_eq!(k.dim(), seq.gamma_n.dim());
    assert!(incl.check().passed());
    let (c, proj) = hopf_cokernel(&seq.incl_gamma).unwrap();
    assert!(verify_axioms(&c).passed());
    assert_eq!(c.dim(), seq.s_n.dim());
    assert!(proj.check().passed());
    // A non-exact triple: identity after the inclusion.
    let id = HopfMorphism::identity(seq.g_n.clone());
    let r = check_exact_triple(&seq.incl_gamma, &id).unwrap();
    assert!(!r.exact());
    assert!(!r.composite_trivial);
}

#[test]
fn json_round_trip() {
    let h = tensor_product(&alg(AlgebraKind::SN(2), 2, 1, 3, 20), &alg(AlgebraKind::Gamma, 2, 0, 2, 20)).unwrap();
    let s = to_json(&h);
    let back = from_json(&s).unwrap();
    assert_eq!(back, h);
    assert_eq!(to_json(&back), s);
    let m = make_morava(3).unwrap();
    assert_eq!(from_json(&to_json(&m)).unwrap(), m);
    assert!(from_json("{\"schema\":\"nope\"}").is_err());
}

fn kind_strategy() -> impl Strategy<Value = (AlgebraKind, u32)> {
    prop_oneof![
        Just((AlgebraKind::S, 2)),
        Just((AlgebraKind::Gamma, 2)),
        Just((AlgebraKind::Lambda, 1)),
        (1u32..3).prop_map(|n| (AlgebraKind::SN(n), 2)),
        (1u32..3).prop_map(|n| (AlgebraKind::GammaN(n), 2)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tensor_products_of_catalogue_algebras_are_hopf(
        p in prop::sample::select(vec![2u32, 3, 5]),
        a in kind_strategy(),
        b in kind_strategy(),
        r in 0u32..2,
    ) {
        let bound = 14;
        let ha = make(a.0, p, GeneratorSpec::new(r, a.1), Window::degree(bound));
        let hb = make(b.0, p, GeneratorSpec::new(0, b.1 + 2 * (b.0 == AlgebraKind::Lambda) as u32), Window::degree(bound));
        let (Ok(ha), Ok(hb)) = (ha, hb) else { return Ok(()) };
        let t = tensor_product(&ha, &hb).unwrap();
        prop_assert!(verify_axioms(&t).passed());
        // Dimension oracle: the tensor basis is all pairs within the bound.
        let pairs = (0..ha.dim()).flat_map(|i| (0..hb.dim()).map(move |j| (i, j)))
            .filter(|&(i, j)| ha.degree(i) + hb.degree(j) <= bound).count();
        prop_assert_eq!(t.dim(), pairs);
        let back = from_json(&to_json(&t)).unwrap();
        prop_assert_eq!(back, t.clone());
        let chi = antipode(&t).unwrap();
        let chi = HopfMorphism::new(Arc::new(t.clone()), Arc::new(t.clone()), chi).unwrap();
        let chi2 = chi.after(&chi).unwrap();
        // Commutative Hopf algebras have an involutive antipode.
        let id = HopfMorphism::identity(Arc::new(t));
        prop_assert_eq!(chi2.images(), id.images());
    }
}

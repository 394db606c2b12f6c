use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::catalogue::{gn_sequences, make, AlgebraKind, GeneratorSpec};
use crate::hopfcore::{tensor_product, Window};

fn f(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn spec(r: usize, w: &str) -> StringSpec {
    StringSpec::new(r, Word::parse(w).unwrap())
}

fn mat(p: u32, rows: &[Vec<i64>], r: usize, c: usize) -> FpMatrix {
    if rows.is_empty() {
        return FpMatrix::zeros(f(p), r, c);
    }
    FpMatrix::from_rows(f(p), rows).unwrap()
}

#[test]
fn words_parse_and_print() {
    assert_eq!(Word::parse("FVV").unwrap().prefix, vec![Letter::F, Letter::V, Letter::V]);
    assert_eq!(Word::parse("V^3F^∞").unwrap(), Word::infinite(vec![Letter::V; 3], Letter::F));
    assert_eq!(Word::parse("F^inf").unwrap().to_string(), "F^∞");
    assert_eq!(Word::parse("ε").unwrap(), Word::empty());
    assert!(Word::parse("FX").is_err());
    assert!(Word::parse("F^∞V").is_err());
}

#[test]
fn validation_catches_nonzero_composites() {
    assert!(validate(&DieudonneModule::zero(f(2), 3)).valid);
    let id = mat(2, &[vec![1]], 1, 1);
    let m = DieudonneModule::new(f(2), vec![1, 1], vec![id.clone()], vec![id]).unwrap();
    let r = validate(&m);
    assert!(!r.valid);
    assert_eq!(r.degree, Some(0));
    for s in ["FVV", "V^2F", "ε", "F^∞"] {
        assert!(validate(&make_string(f(3), &spec(1, s), 6)).valid);
    }
}

#[test]
fn string_module_pictures() {
    // A →id A ←id A ←id A starting in degree 2.
    let m = make_string(f(2), &spec(2, "FVV"), 6);
    assert_eq!(m.dims(), &[0, 0, 1, 1, 1, 1, 0]);
    assert_eq!(m.f_op(2).get(0, 0), 1);
    assert!(m.v_op(2).is_zero());
    assert_eq!(m.v_op(3).get(0, 0), 1);
    assert_eq!(m.v_op(4).get(0, 0), 1);
    assert!(m.f_op(3).is_zero() && m.f_op(4).is_zero());

    let e = make_string(f(2), &spec(0, "ε"), 0);
    assert_eq!(e.dims(), &[1]);

    let s = make_string(f(3), &spec(0, "F^∞"), 5);
    assert_eq!(s.dims(), &[1; 6]);
    for i in 0..5 {
        assert_eq!(s.f_op(i).get(0, 0), 1);
        assert!(s.v_op(i).is_zero());
    }
}

#[test]
fn primitives_and_indecomposables_of_strings() {
    let (p, q) = recover_pq(&make_string(f(2), &spec(0, "F^∞"), 4));
    assert_eq!((p, q), (vec![1, 1, 1, 1, 1], vec![1, 0, 0, 0, 0]));
    let (p, q) = recover_pq(&make_string(f(2), &spec(0, "V^∞"), 4));
    assert_eq!((p, q), (vec![1, 0, 0, 0, 0], vec![1, 1, 1, 1, 1]));
    // By hand: V_0 = 0, V_1 = V_2 = id ⇒ ker V_{k−1} ≠ 0 only for k = 1; F_0 = id, F_1 = F_2 = 0.
    let (p, q) = recover_pq(&make_string(f(2), &spec(0, "FVV"), 3));
    assert_eq!((p, q), (vec![1, 1, 0, 0], vec![1, 0, 1, 1]));
    let pair = string_profiles(&spec(0, "FVV"), 3);
    assert_eq!(pair.0.keys().copied().collect::<Vec<_>>(), vec![0, 1]);
    assert_eq!(pair.1.keys().copied().collect::<Vec<_>>(), vec![0, 2, 3]);
}

#[test]
fn small_decomposition_agrees_with_the_oracle() {
    // M⁰ = F_2², M¹ = F_2, F₀ = [1 0], V₀ = 0.
    let m = DieudonneModule::new(f(2), vec![2, 1], vec![mat(2, &[vec![1, 0]], 1, 2)], vec![mat(2, &[], 2, 1)]).unwrap();
    let d = decompose(&m, 7).unwrap();
    assert_eq!(d.strings, vec![spec(0, "ε"), spec(0, "F")]);
    assert_eq!(brute_decompose(&m).unwrap(), d.strings);
}

#[test]
fn strings_are_indecomposable() {
    for s in ["FVV", "V^2F^2", "ε", "VFVF"] {
        let m = make_string(f(3), &spec(1, s), 6);
        assert_eq!(decompose(&m, 1).unwrap().strings, vec![spec(1, s)]);
        assert_eq!(endomorphism_dim(&m), 1);
    }
}

fn endomorphism_dim(m: &DieudonneModule) -> usize {
    super::decompose::endomorphism_basis(m).unwrap().len()
}

#[test]
fn conjugated_sum_is_recovered() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let a = make_string(f(3), &spec(0, "FV"), 4);
    let b = make_string(f(3), &spec(1, "V"), 4);
    let m = a.direct_sum(&b).unwrap();
    let g = m.random_basis_change(&mut rng);
    let shuffled = m.conjugate(&g).unwrap();
    assert!(validate(&shuffled).valid);
    let mut expect = vec![spec(0, "FV"), spec(1, "V")];
    expect.sort();
    assert_eq!(decompose(&shuffled, 3).unwrap().strings, expect);
    assert!(matches!(brute_decompose(&shuffled), Err(DieudonneError::TooLarge(_))));
}

#[test]
fn repeated_summands_split() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for p in [2, 3] {
        let s = make_string(f(p), &spec(0, "F"), 3);
        let m = s.direct_sum(&s).unwrap().direct_sum(&make_string(f(p), &spec(0, "ε"), 3)).unwrap();
        let shuffled = m.conjugate(&m.random_basis_change(&mut rng)).unwrap();
        let d = decompose(&shuffled, 9).unwrap();
        assert_eq!(d.strings, vec![spec(0, "ε"), spec(0, "F"), spec(0, "F")]);
    }
}

#[test]
fn worked_signature_example() {
    let prof = |xs: &[u32]| -> Profile { xs.iter().map(|&x| (x, 1)).collect() };
    let sigma = signature_of(&[(prof(&[0, 1]), prof(&[0])), (prof(&[3]), prof(&[0, 3]))]);
    let phi1 = fake_truncation(&sigma, 1);
    assert_eq!(phi1, signature_of(&[(prof(&[0, 1]), prof(&[0]))]));
    assert!(fake_truncation(&sigma, 2).is_empty());
    let phis: Vec<_> = (0..=3).map(|k| fake_truncation(&sigma, k)).collect();
    assert_eq!(reconstruct_from_phi(&phis).unwrap(), sigma);
    assert!(fake_truncation(&SignatureMultiset::new(), 0).is_empty());
}

#[test]
fn inconsistent_phi_sequences_are_rejected() {
    let prof = |xs: &[u32]| -> Profile { xs.iter().map(|&x| (x, 1)).collect() };
    // φ_1 claims a pair over (I, 0), but φ_0 is empty.
    let phis = vec![SignatureMultiset::new(), signature_of(&[(prof(&[0, 1]), prof(&[]))])];
    assert!(reconstruct_from_phi(&phis).is_err());
    // An entry not supported at its level.
    let phis = vec![signature_of(&[(prof(&[1]), prof(&[]))])];
    assert!(reconstruct_from_phi(&phis).is_err());
}

pub(crate) fn random_sigma<R: Rng>(rng: &mut R, support: u32) -> SignatureMultiset {
    let n = rng.gen_range(0..6);
    let pairs: Vec<Pair> = (0..n)
        .map(|_| {
            let mut prof = || -> Profile {
                let mut out = Profile::new();
                for k in 0..=support {
                    if rng.gen_bool(0.3) {
                        out.insert(k, rng.gen_range(1..3));
                    }
                }
                out
            };
            let a = prof();
            (a, prof())
        })
        .collect();
    signature_of(&pairs)
}

#[test]
fn phi_round_trip_on_random_signatures() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..50 {
        let sigma = random_sigma(&mut rng, 6);
        let phis: Vec<_> = (0..=6).map(|k| fake_truncation(&sigma, k)).collect();
        assert_eq!(reconstruct_from_phi(&phis).unwrap(), sigma);
    }
}

#[test]
fn dieudonne_modules_of_catalogue_algebras() {
    let s = make(AlgebraKind::S, 3, GeneratorSpec::new(0, 2), Window::degree(54)).unwrap();
    let g = dieudonne_of(&s).unwrap();
    assert_eq!(g.columns.len(), 1);
    assert_eq!(g.columns[0].d0, 2);
    assert_eq!(decompose(&g.columns[0].module, 0).unwrap().strings, vec![spec(0, "FFF")]);

    let gam = make(AlgebraKind::Gamma, 3, GeneratorSpec::new(0, 2), Window::degree(54)).unwrap();
    let g = dieudonne_of(&gam).unwrap();
    assert_eq!(decompose(&g.columns[0].module, 0).unwrap().strings, vec![spec(0, "VVV")]);
    assert_eq!(g.pq_profiles(), direct_profiles(&gam).unwrap());

    let seq = gn_sequences(2, 1, 0, 2, 16).unwrap();
    let g = dieudonne_of(&seq.g_n).unwrap();
    // Degree 2 = 1·2¹: column 1, the string V F F starting at slot 1.
    assert_eq!(g.columns[0].d0, 1);
    assert_eq!(decompose(&g.columns[0].module, 0).unwrap().strings, vec![spec(1, "VFF")]);
    assert_eq!(g.pq_profiles(), direct_profiles(&seq.g_n).unwrap());

    let t = tensor_product(
        &make(AlgebraKind::SN(2), 3, GeneratorSpec::new(0, 2), Window::degree(54)).unwrap(),
        &make(AlgebraKind::Lambda, 3, GeneratorSpec::new(1, 3), Window::degree(54)).unwrap(),
    )
    .unwrap();
    assert_eq!(dieudonne_of(&t).unwrap().pq_profiles(), direct_profiles(&t).unwrap());

    let m = crate::catalogue::make_morava(3).unwrap();
    assert!(matches!(dieudonne_of(&m), Err(DieudonneError::Unsupported(_))));
}

#[test]
fn json_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let m = make_string(f(3), &spec(1, "FVV"), 5).direct_sum(&make_string(f(3), &spec(0, "V"), 5)).unwrap();
    let m = m.conjugate(&m.random_basis_change(&mut rng)).unwrap();
    let s = to_json(&m);
    assert_eq!(from_json(&s).unwrap(), m);
    let id = "{\"schema\":\"dieu-v1\",\"p\":2,\"degree_bound\":1,\"dims\":[1,1],\"F\":[[[1]]],\"V\":[[[1]]]}";
    assert!(matches!(from_json(id), Err(DieudonneError::Relation { .. })));
}

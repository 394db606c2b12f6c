//! Acceptance run: every criterion prints one `PASS`/`FAIL` line; the process exits
//! nonzero if any criterion fails.
//!
//! Objects built along the way (algebras, bar complexes, decompositions) are recorded and
//! re-examined by the global property suites of the last criterion.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::Parser;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use expfun::barhom::{
    euler_per_weight, expected_e, expected_tor, homology_table, identify_cofree, reduced_bar, regrade_e, tor_factors,
    tor_hopf, tor_iterated, BarBounds, BarComplex, BarError, CofreeGenerator, DimTable, EInput, FactorType, XKind,
};
use expfun::catalogue::{gn_sequences, make, make_morava, morava_self_duality, AlgebraKind, GeneratorSpec};
use expfun::cli::{run, RunConfig};
use expfun::dieudonne::{
    brute_decompose, decompose, dieudonne_of, direct_profiles, fake_truncation, make_string, reconstruct_from_phi,
    signature_of, validate, DieudonneModule, Letter, Pair, Profile, SignatureMultiset, StringSpec, Word,
};
use expfun::exactla::PrimeField;
use expfun::hopfcore::{
    associated_graded, augmentation_filtration, check_exact_triple, check_frobenius_verschiebung, find_section,
    indecomposables, primitive_filtration, primitives, tensor_product, trivial, verify_axioms, BlockKey, Filtration,
    Grading, GradedSubspace, HopfError, HopfPresentation, SectionSearch, Window,
};
use expfun::symgrp::{brute_group_homology, symgroup_homology_dims};

type Outcome = Result<Vec<String>, String>;

/// Everything the criteria construct, for the global suites.
#[derive(Default)]
struct Registry {
    algebras: Vec<(String, Arc<HopfPresentation>)>,
    /// Pairs whose tensor product was formed, with the product.
    tensors: Vec<(usize, usize, Arc<HopfPresentation>)>,
    /// Results of the per-complex checks, run when each complex is built.
    bar_checks: Vec<(String, Result<usize, String>)>,
    decompositions: Vec<(DieudonneModule, u64)>,
}

impl Registry {
    fn add(&mut self, name: impl Into<String>, h: HopfPresentation) -> Arc<HopfPresentation> {
        let h = Arc::new(h);
        self.algebras.push((name.into(), h.clone()));
        h
    }

    fn add_arc(&mut self, name: impl Into<String>, h: &Arc<HopfPresentation>) {
        self.algebras.push((name.into(), h.clone()));
    }

    /// Builds the bar complex and records `d² = 0` and the per-weight Euler characteristic.
    fn bar(&mut self, name: &str, h: &HopfPresentation, bounds: BarBounds) -> Result<BarComplex, String> {
        let c = reduced_bar(h, bounds).map_err(|e| format!("{name}: {e}"))?;
        self.bar_checks.push((name.to_string(), complex_checks(&c)));
        Ok(c)
    }
}

fn err<E: std::fmt::Display>(ctx: &str) -> impl Fn(E) -> String + '_ {
    move |e| format!("{ctx}: {e}")
}

fn alg(p: u32, kind: AlgebraKind, r: u32, i: u32, window: Window) -> Result<HopfPresentation, String> {
    make(kind, p, GeneratorSpec::new(r, i), window).map_err(|e| format!("make {kind:?} p={p} r={r} i={i}: {e}"))
}

fn compare(name: &str, got: &DimTable, want: &DimTable) -> Result<(), String> {
    let diff = got.mismatches(want);
    if diff.is_empty() && got == want {
        return Ok(());
    }
    let shown: Vec<String> =
        diff.iter().take(4).map(|(d, w, a, b)| format!("(deg {d}, wt {w}): computed {a}, expected {b}")).collect();
    Err(format!("{name}: {}", shown.join("; ")))
}

/// `d² = 0` on every block, and `χ(weight w)` of the chains equals that of the homology for
/// every weight that is complete in the window. Returns the number of checks.
fn complex_checks(c: &BarComplex) -> Result<usize, String> {
    let mut checked = 0;
    for &(s, i, w) in c.chains().keys() {
        if s < 2 {
            continue;
        }
        if let (Some(outer), Some(inner)) = (c.differential((s - 1, i, w)), c.differential((s, i, w))) {
            let dd = outer.mul(inner).map_err(|e| e.to_string())?;
            if !dd.is_zero() {
                return Err(format!("d² ≠ 0 out of block ({s}, {i}, {w})"));
            }
            checked += 1;
        }
    }
    let tor = homology_table(c);
    let max_w = c.chains().keys().map(|k| k.2).max().unwrap_or(0);
    for w in 0..=max_w {
        match euler_per_weight(c, w) {
            Ok(chi) => {
                let h: i64 = tor
                    .entries
                    .iter()
                    .filter(|(k, _)| k.2 == w)
                    .map(|(k, &n)| if k.0 % 2 == 0 { n as i64 } else { -(n as i64) })
                    .sum();
                if h != chi {
                    return Err(format!("χ at weight {w}: chains {chi}, homology {h}"));
                }
                checked += 1;
            }
            Err(BarError::IncompleteWeight(_)) => {}
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(checked)
}

fn x_kind(kind: AlgebraKind) -> XKind {
    match kind {
        AlgebraKind::S => XKind::S,
        AlgebraKind::Lambda => XKind::Lambda,
        AlgebraKind::SN(n) => XKind::SN(n),
        _ => XKind::Gamma,
    }
}

// ---------------------------------------------------------------------------------------
// 1–5: bar constructions.

fn tor_grid(reg: &mut Registry) -> Outcome {
    let d = 20;
    let mut cases = 0;
    for p in [2, 3, 5] {
        for kind in [AlgebraKind::S, AlgebraKind::Lambda, AlgebraKind::SN(1), AlgebraKind::SN(2)] {
            let degrees = if kind == AlgebraKind::Lambda && p != 2 { [1, 3] } else { [2, 4] };
            for r in [0, 1] {
                for i in degrees {
                    let name = format!("Tor {kind:?} p={p} r={r} i={i}");
                    let h = alg(p, kind, r, i, Window::degree(d))?;
                    let c = reg.bar(&name, &h, BarBounds::total(d))?;
                    reg.add(&name, h);
                    let want = expected_tor(x_kind(kind), p, r, i, 1, Some(d), None).map_err(err(&name))?;
                    compare(&name, &homology_table(&c).collapsed(), &want)?;
                    cases += 1;
                }
            }
        }
    }
    Ok(vec![format!("{cases} tables equal up to total degree {d}")])
}

fn gamma_input(reg: &mut Registry) -> Outcome {
    let d = 20;
    for p in [2, 3] {
        for r in [0, 1] {
            let name = format!("Tor Γ p={p} r={r} i=2");
            let h = alg(p, AlgebraKind::Gamma, r, 2, Window::degree(d))?;
            let c = reg.bar(&name, &h, BarBounds::total(d))?;
            reg.add(&name, h);
            let want = expected_tor(XKind::Gamma, p, r, 2, 1, Some(d), None).map_err(err(&name))?;
            compare(&name, &homology_table(&c).collapsed(), &want)?;
        }
    }
    Ok(vec![format!("Γ(x₂) at p = 2, 3 and r = 0, 1 up to degree {d}")])
}

/// The tensor product of catalogue algebras on cofree generators.
fn model_of(p: u32, gens: &[CofreeGenerator], window: Window) -> Result<HopfPresentation, String> {
    let mut model = trivial(PrimeField::new(p).map_err(err("field"))?, Grading::Natural, window);
    for g in gens {
        let r = g.level(p).ok_or_else(|| format!("generator weight {} is not a power of {p}", g.weight))?;
        model = tensor_product(&model, &alg(p, g.kind, r, g.degree, window)?).map_err(err("model"))?;
    }
    Ok(model)
}

fn describe(gens: &[CofreeGenerator]) -> String {
    let parts: Vec<String> = gens
        .iter()
        .map(|g| format!("{}({},{})", if g.kind == AlgebraKind::Lambda { "Λ" } else { "Γ" }, g.degree, g.weight))
        .collect();
    parts.join("⊗")
}

fn iterated_tor(reg: &mut Registry) -> Outcome {
    let d = 16;
    let mut notes = Vec::new();
    for p in [2, 3] {
        let name = format!("S(x₂) p={p}");
        let s = alg(p, AlgebraKind::S, 0, 2, Window::degree(d))?;
        let got = tor_iterated(&s, 2, BarBounds::total(d)).map_err(err(&name))?.collapsed();
        let want = expected_tor(XKind::S, p, 0, 2, 2, Some(d), None).map_err(err(&name))?;
        compare(&format!("Tor_[2] {name}"), &got, &want)?;
        // The stages, one by one.
        let mut current = s;
        let mut stages = Vec::new();
        for stage in 1..=2 {
            let sname = format!("{name} stage {stage}");
            let c = reg.bar(&sname, &current, BarBounds::total(d))?;
            let t = tor_hopf(&c).map_err(err(&sname))?;
            let gens = identify_cofree(&t).map_err(err(&sname))?;
            let factors = tor_factors(XKind::S, p, 0, 2, stage, Some(d), None).map_err(err(&sname))?;
            let want: Vec<(u64, u32)> = {
                let mut v: Vec<_> = factors.iter().map(|f| (f.degree, p.pow(f.r))).collect();
                v.sort();
                v
            };
            let mut have: Vec<(u64, u32)> = gens.iter().map(|g| (g.degree as u64, g.weight)).collect();
            have.sort();
            if have != want {
                return Err(format!("{sname}: cofree generators {} vs closed form {want:?}", describe(&gens)));
            }
            // Types are determined when the square of the generator is inside the window.
            for g in &gens {
                let f = factors.iter().find(|f| f.degree == g.degree as u64).expect("matched above");
                let ty = if g.kind == AlgebraKind::Lambda { FactorType::Lambda } else { FactorType::Gamma };
                if 2 * g.degree <= d && ty != f.ty {
                    return Err(format!("{sname}: generator in degree {} has the wrong type", g.degree));
                }
            }
            stages.push(describe(&gens));
            reg.add(format!("Tor Hopf {sname}"), t);
            current = model_of(p, &gens, Window::degree(d))?;
            reg.add(format!("cofree model {sname}"), current.clone());
        }
        notes.push(format!("p={p}: {}", stages.join(" → ")));
    }
    Ok(notes)
}

fn e_regrading(reg: &mut Registry) -> Outcome {
    let e_bound = 16;
    let mut cases = 0;
    let mut notes = Vec::new();
    for p in [2u32, 3] {
        for r in [0, 1] {
            let w = 9 * p.pow(r);
            for (inner, kind) in [(XKind::S, AlgebraKind::S), (XKind::SN(1), AlgebraKind::SN(1))] {
                let name = format!("E {inner:?} p={p} r={r}");
                let h = alg(p, kind, r, 0, Window::unbounded().with_weight(w))?;
                let c = reg.bar(&name, &h, BarBounds::weight(w))?;
                let tor = homology_table(&c).collapsed();
                let got = regrade_e(&tor, Some(e_bound)).map_err(err(&name))?;
                let want = expected_e(EInput::Lambda, inner, p, r, Some(e_bound), Some(w)).map_err(err(&name))?;
                compare(&format!("{name} (Λ)"), &got, &want)?;
                let tor2 = tor_iterated(&h, 2, BarBounds::weight(w)).map_err(err(&name))?.collapsed();
                let got2 = regrade_e(&tor2, Some(e_bound)).map_err(err(&name))?;
                let want2 = expected_e(EInput::S, inner, p, r, Some(e_bound), Some(w)).map_err(err(&name))?;
                compare(&format!("{name} (S)"), &got2, &want2)?;
                reg.add(&name, h);
                cases += 2;
            }
            notes.push(format!("p={p} r={r}: weight ≤ {w}"));
        }
    }
    notes.insert(0, format!("{cases} regraded tables equal up to degree {e_bound}"));
    Ok(notes)
}

/// Dims of `Λ(y) ⊗ Γ(z)` with `|y| = 3`, weight 1, and `|z| = 2N + 2`, weight `N`, by
/// (total degree, weight).
fn lambda_gamma_dims(n: u32, d: u32) -> BTreeMap<(u32, u32), usize> {
    let mut out = BTreeMap::new();
    for e in 0..=1u32 {
        for k in 0.. {
            let deg = 3 * e + k * (2 * n + 2);
            if deg > d {
                break;
            }
            *out.entry((deg, e + k * n)).or_default() += 1;
        }
    }
    out
}

fn group_pattern(reg: &mut Registry) -> Outcome {
    let d = 20;
    let mut notes = Vec::new();
    for (p, n) in [(2u32, 1), (3, 1), (2, 2), (2, 3), (3, 2), (3, 3)] {
        let order = p.pow(n);
        let name = format!("𝕜[x₂]/x^{order}");
        let h = alg(p, AlgebraKind::SN(n), 0, 2, Window::degree(d))?;
        let c = reg.bar(&name, &h, BarBounds::total(d))?;
        reg.add(&name, h);
        let got: BTreeMap<(u32, u32), usize> =
            homology_table(&c).collapsed().entries.into_iter().filter(|(_, n)| *n > 0).collect();
        let want = lambda_gamma_dims(order, d);
        if got != want {
            return Err(format!("{name}: computed {got:?}, Λ⊗Γ gives {want:?}"));
        }
        notes.push(format!("order {order}: {} classes", want.values().sum::<usize>()));
    }
    Ok(vec![notes.join(", ")])
}

// ---------------------------------------------------------------------------------------
// 6–7: the cyclically graded algebra and the exact sequences.

fn self_duality(reg: &mut Registry) -> Outcome {
    let mut notes = Vec::new();
    for p in [3, 5] {
        let h = make_morava(p).map_err(err("make_morava"))?;
        let axioms = verify_axioms(&h);
        if !axioms.passed() {
            return Err(format!("p={p}: axioms fail: {:?}", axioms.violation));
        }
        let report = morava_self_duality(p).map_err(err("self-duality"))?;
        if !report.passed() {
            return Err(format!("p={p}: {report:?}"));
        }
        // a_i ↦ a*_j must multiply degrees by p modulo 2(p² − 1).
        let modulus = 2 * (p * p - 1);
        for &(i, j, _) in &report.assignment {
            if (p * h.degree(i)) % modulus != h.degree(j) % modulus {
                return Err(format!("p={p}: a_{i} ↦ a*_{j} does not multiply the degree by p"));
            }
        }
        reg.add(format!("Morava p={p}"), h);
        notes.push(format!("p={p}: dim {}, {} axiom checks", report.dim, axioms.checked));
    }
    Ok(notes)
}

fn exact_triples(reg: &mut Registry) -> Outcome {
    let mut notes = Vec::new();
    for p in [2u32, 3] {
        for n in [1, 2] {
            let bound = 2 * p.pow(n + 1);
            let tag = format!("p={p} n={n}");
            let seq = gn_sequences(p, n, 0, 2, bound).map_err(err(&tag))?;
            for (name, h) in [
                ("Γ_n", &seq.gamma_n),
                ("G_n", &seq.g_n),
                ("S^(n)", &seq.s_n),
                ("S^(n+1)", &seq.s_n1),
                ("Γ_{n+1}", &seq.gamma_n1),
            ] {
                reg.add_arc(format!("{name} {tag}"), h);
            }
            for (which, f, g) in [("first", &seq.incl_gamma, &seq.proj_s), ("second", &seq.incl_s, &seq.proj_gamma)] {
                let report = check_exact_triple(f, g).map_err(err(&tag))?;
                if !report.exact() {
                    return Err(format!("{tag}: {which} sequence not exact: {:?}", report.detail));
                }
                for m in [f, g] {
                    if let Some(e) = m.check().failure {
                        return Err(format!("{tag}: {which} sequence map is not a Hopf map: {e}"));
                    }
                }
                match find_section(g, 1_000_000).map_err(err(&tag))? {
                    SectionSearch::NoSection { nodes } => {
                        notes.push(format!("{tag} {which}: exact, no section ({nodes} nodes)"))
                    }
                    SectionSearch::Found(_) => return Err(format!("{tag}: {which} sequence splits")),
                    SectionSearch::BudgetExhausted { nodes } => {
                        return Err(format!("{tag}: {which} section search undecided after {nodes} nodes"))
                    }
                }
            }
        }
    }
    Ok(notes)
}

// ---------------------------------------------------------------------------------------
// 8–10: Dieudonné modules and signatures.

fn random_string<R: Rng>(rng: &mut R, bound: usize) -> StringSpec {
    let r = rng.gen_range(0..=bound);
    let room = bound - r;
    let len = rng.gen_range(0..=room);
    let letter = |rng: &mut R| if rng.gen_bool(0.5) { Letter::F } else { Letter::V };
    let prefix: Vec<Letter> = (0..len).map(|_| letter(rng)).collect();
    let word = if len == room && rng.gen_bool(0.3) { Word::infinite(prefix, letter(rng)) } else { Word::finite(prefix) };
    StringSpec::new(r, word)
}

fn normalized(specs: &[StringSpec], bound: usize) -> Vec<StringSpec> {
    let mut out: Vec<StringSpec> = specs.iter().filter_map(|s| s.truncate(bound)).collect();
    out.sort();
    out
}

fn string_decomposition(reg: &mut Registry) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut instances, mut oracle_checked) = (0, 0);
    while instances < 100 {
        let p = if instances % 2 == 0 { 2 } else { 3 };
        let field = PrimeField::new(p).map_err(err("field"))?;
        // Every fourth instance is kept small enough for the brute-force oracle.
        let small = instances % 4 == 3;
        let bound = if small { rng.gen_range(0..=2) } else { rng.gen_range(1..=8) };
        let count = if small { rng.gen_range(1..=2) } else { rng.gen_range(1..=6) };
        let specs: Vec<StringSpec> = (0..count).map(|_| random_string(&mut rng, bound)).collect();
        let mut m = DieudonneModule::zero(field, bound);
        for s in &specs {
            m = m.direct_sum(&make_string(field, s, bound)).map_err(err("direct sum"))?;
        }
        if m.dims().iter().any(|&d| d > 5) {
            continue;
        }
        let g = m.random_basis_change(&mut rng);
        let m = m.conjugate(&g).map_err(err("conjugate"))?;
        if !validate(&m).valid {
            return Err(format!("instance {instances}: conjugated module fails the relations"));
        }
        let seed = rng.gen();
        let want = normalized(&specs, bound);
        let got = decompose(&m, seed).map_err(err("decompose"))?;
        if normalized(&got.strings, bound) != want {
            return Err(format!(
                "instance {instances} (p={p}, bound {bound}): decomposed {:?}, generated {:?}",
                got.strings.iter().map(ToString::to_string).collect::<Vec<_>>(),
                want.iter().map(ToString::to_string).collect::<Vec<_>>()
            ));
        }
        if m.total_dim() <= 4 {
            let brute = brute_decompose(&m).map_err(err("oracle"))?;
            if normalized(&brute, bound) != want {
                return Err(format!("instance {instances}: oracle found {brute:?}"));
            }
            oracle_checked += 1;
        }
        reg.decompositions.push((m, seed));
        instances += 1;
    }
    Ok(vec![format!("{instances} instances recovered; brute-force oracle agreed on {oracle_checked} of dimension ≤ 4")])
}

/// The catalogue at `p`, truncated at degree `bound`: every kind on generators of level 0
/// and 1 (odd degree for Λ at odd p).
fn catalogue(p: u32, bound: u32) -> Result<Vec<(String, HopfPresentation)>, String> {
    let mut out = Vec::new();
    let kinds = [
        AlgebraKind::S,
        AlgebraKind::Lambda,
        AlgebraKind::Gamma,
        AlgebraKind::SN(1),
        AlgebraKind::SN(2),
        AlgebraKind::GammaN(1),
        AlgebraKind::GammaN(2),
        AlgebraKind::GN(1),
        AlgebraKind::GN(2),
    ];
    for kind in kinds {
        for r in [0, 1] {
            let i = if kind == AlgebraKind::Lambda && p != 2 { 3 } else { 2 };
            if r == 1 && !matches!(kind, AlgebraKind::S | AlgebraKind::Lambda | AlgebraKind::Gamma) {
                continue;
            }
            out.push((format!("{kind:?}(F_{{{r},{i}}}) p={p}"), alg(p, kind, r, i, Window::degree(bound))?));
        }
    }
    Ok(out)
}

fn dictionary(reg: &mut Registry) -> Outcome {
    let mut notes = Vec::new();
    for p in [2u32, 3] {
        let bound = 2 * p.pow(3);
        let base = reg.algebras.len();
        for (name, h) in catalogue(p, bound)? {
            reg.add(name, h);
        }
        let ids: Vec<usize> = (base..reg.algebras.len()).collect();
        let check = |name: &str, h: &HopfPresentation| -> Result<(), String> {
            let via = dieudonne_of(h).map_err(err(name))?.pq_profiles();
            let direct = direct_profiles(h).map_err(err(name))?;
            if via != direct {
                return Err(format!("{name}: recovered {via:?}, direct {direct:?}"));
            }
            Ok(())
        };
        for &a in &ids {
            let (name, h) = reg.algebras[a].clone();
            check(&name, &h)?;
        }
        let mut pairs = 0;
        for (x, &a) in ids.iter().enumerate() {
            for &b in &ids[x..] {
                let (na, ha) = reg.algebras[a].clone();
                let (nb, hb) = reg.algebras[b].clone();
                let t = tensor_product(&ha, &hb).map_err(err("tensor"))?;
                check(&format!("{na} ⊗ {nb}"), &t)?;
                reg.tensors.push((a, b, Arc::new(t)));
                pairs += 1;
            }
        }
        notes.push(format!("p={p}: {} algebras, {pairs} tensor products, window {bound}", ids.len()));
    }
    Ok(notes)
}

fn random_profile<R: Rng>(rng: &mut R, support: u32) -> Profile {
    let mut out = Profile::new();
    for k in 0..=support {
        if rng.gen_bool(0.3) {
            out.insert(k, rng.gen_range(1..3));
        }
    }
    out
}

fn phis(sigma: &SignatureMultiset, top: u32) -> Vec<SignatureMultiset> {
    (0..=top).map(|k| fake_truncation(sigma, k)).collect()
}

fn phi_injectivity(_: &mut Registry) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let support = 6;
    for n in 0..50 {
        let size = rng.gen_range(1..=6);
        let pairs: Vec<Pair> = (0..size)
            .map(|_| {
                let a = random_profile(&mut rng, support);
                (a, random_profile(&mut rng, support))
            })
            .collect();
        let sigma = signature_of(&pairs);
        let back = reconstruct_from_phi(&phis(&sigma, support)).map_err(err("reconstruct"))?;
        if back != sigma {
            return Err(format!("multiset {n}: reconstructed {back:?} from {sigma:?}"));
        }
    }
    // {(I ⊕ I⁽¹⁾, I), (I⁽³⁾, I ⊕ I⁽³⁾)} with I⁽ᵏ⁾ in degree k.
    let prof = |xs: &[u32]| -> Profile { xs.iter().map(|&x| (x, 1)).collect() };
    let sigma = signature_of(&[(prof(&[0, 1]), prof(&[0])), (prof(&[3]), prof(&[0, 3]))]);
    let expected = [
        signature_of(&[(prof(&[0]), prof(&[0])), (prof(&[]), prof(&[0]))]),
        signature_of(&[(prof(&[0, 1]), prof(&[0]))]),
        SignatureMultiset::new(),
        signature_of(&[(prof(&[3]), prof(&[0, 3]))]),
        SignatureMultiset::new(),
        SignatureMultiset::new(),
    ];
    let got = phis(&sigma, 5);
    for (k, (g, e)) in got.iter().zip(&expected).enumerate() {
        if g != e {
            return Err(format!("worked example: φ_{k} = {g:?}, expected {e:?}"));
        }
    }
    if reconstruct_from_phi(&got).map_err(err("reconstruct"))? != sigma {
        return Err("worked example does not reconstruct".into());
    }
    Ok(vec!["50 random multisets and the worked example (φ_2 = ∅) reconstruct".into()])
}

// ---------------------------------------------------------------------------------------
// 11: symmetric groups.

fn symmetric_groups(_: &mut Registry) -> Outcome {
    let mut cells = 0;
    for p in [2, 3] {
        for d in 1..=3 {
            for m in 1..=2 {
                let series = symgroup_homology_dims(p, d, m, 4).map_err(err("series"))?;
                let brute = brute_group_homology(p, d, m, 4).map_err(err("oracle"))?;
                if series != brute {
                    return Err(format!("p={p} d={d} dim V={m}: series {series:?}, group homology {brute:?}"));
                }
                cells += series.len();
            }
        }
    }
    let dims = symgroup_homology_dims(3, 3, 1, 11).map_err(err("series"))?;
    let nonzero: Vec<usize> = (0..dims.len()).filter(|&i| dims[i] > 0).collect();
    if nonzero != [0, 3, 4, 7, 8, 11] {
        return Err(format!("p=3, d=3: nonzero degrees {nonzero:?}"));
    }
    Ok(vec![format!("{cells} (p, d, dim V, i) cells agree; p=3, d=3 nonzero in degrees {nonzero:?}")])
}

// ---------------------------------------------------------------------------------------
// 12: filtrations.

fn degree_dims(h: &HopfPresentation, modulus: u32) -> BTreeMap<u32, usize> {
    let mut out = BTreeMap::new();
    for (key, n) in h.block_dims() {
        *out.entry(key.degree % modulus).or_default() += n;
    }
    out
}

/// The level at which a filtration stops changing, after checking that it then stays put
/// for every later level up to `levels.len()`.
fn stabilization(levels: &[GradedSubspace]) -> Result<Option<usize>, String> {
    let mut first = None;
    for (i, w) in levels.windows(2).enumerate() {
        let same = w[0].same_span(&w[1]).map_err(|e| e.to_string())?;
        match (first, same) {
            (None, true) => first = Some(i),
            (Some(i0), false) => return Err(format!("stable at {i0} but changes at {}", i + 1)),
            _ => {}
        }
    }
    Ok(first)
}

fn filtration_properties(name: &str, h: &HopfPresentation) -> Result<(), String> {
    let top = h.dim() + 2;
    let p_levels: Vec<GradedSubspace> = (0..=top).map(|k| primitive_filtration(h, k)).collect();
    let q_levels: Vec<GradedSubspace> = (0..=top).map(|k| augmentation_filtration(h, k)).collect();
    let ps = stabilization(&p_levels).map_err(|e| format!("{name}: P {e}"))?;
    let qs = stabilization(&q_levels).map_err(|e| format!("{name}: Q {e}"))?;
    let (Some(ps), Some(qs)) = (ps, qs) else { return Err(format!("{name}: filtration never stabilizes")) };
    if p_levels[ps].total_dim() != h.dim() || q_levels[qs].total_dim() != 0 {
        return Err(format!("{name}: P is not exhaustive or Q is not separated"));
    }
    if h.grading() != Grading::Natural {
        return Ok(());
    }
    // With m the lowest positive degree, P_k and Q_{−(k+1)} are full and zero in degree ≤ mk.
    let dims = h.block_dims();
    let m = dims.keys().map(|k| k.degree).filter(|&d| d > 0).min().unwrap_or(1);
    for (key, &n) in &dims {
        let k = key.degree.div_ceil(m) as usize;
        if key.degree == 0 || k + 1 > top {
            continue;
        }
        if p_levels[k].dim_at(*key) != n || q_levels[k + 1].dim_at(*key) != 0 {
            return Err(format!("{name}: block {key:?} not reached by level {k}"));
        }
    }
    Ok(())
}

fn filtrations(reg: &mut Registry) -> Outcome {
    let p = 3;
    let h = make_morava(p).map_err(err("make_morava"))?;
    let modulus = 2 * (p * p - 1);
    let gr = associated_graded(&h, Filtration::Primitive).map_err(err("gr"))?;
    if let Some(v) = verify_axioms(&gr).violation {
        return Err(format!("gr fails {}: {}", v.axiom, v.detail));
    }
    let s2 = alg(p, AlgebraKind::SN(2), 0, 2, Window::degree(2 * (p * p - 1)))?;
    let (a, b) = (degree_dims(&gr, modulus), degree_dims(&s2, modulus));
    if a != b {
        return Err(format!("gr block dims {a:?} vs truncated polynomial {b:?}"));
    }
    let gr_q = associated_graded(&h, Filtration::Augmentation).map_err(err("gr"))?;
    let structure = |x: &HopfPresentation| (primitives(x).total_dim(), indecomposables(x).total_dim());
    let mut notes = vec![format!(
        "block dims of gr (coradical) equal those of 𝕜[x₂]/x^{}: {a:?}",
        p * p
    )];
    notes.push(format!(
        "(dim P, dim Q): gr coradical {:?}, gr augmentation {:?}, truncated polynomial {:?}",
        structure(&gr),
        structure(&gr_q),
        structure(&s2)
    ));
    reg.add("gr coradical Morava p=3", gr);
    reg.add("gr augmentation Morava p=3", gr_q);
    reg.add("𝕜[x₂]/x⁹", s2);

    let mut count = 0;
    for p in [2, 3] {
        for (name, h) in catalogue(p, 2 * p.pow(3))? {
            filtration_properties(&name, &h)?;
            count += 1;
        }
        let m = make_morava(p).map_err(err("make_morava"))?;
        filtration_properties(&format!("Morava p={p}"), &m)?;
        count += 1;
    }
    notes.push(format!("stabilization and connectivity bounds hold on {count} catalogue algebras"));
    Ok(notes)
}

// ---------------------------------------------------------------------------------------
// 13: global suites.

fn cli_bytes(args: &[&str]) -> Result<Vec<u8>, String> {
    let config = RunConfig::try_parse_from(std::iter::once("expfun").chain(args.iter().copied()))
        .map_err(|e| e.to_string())?;
    run(&config).map(|o| o.output).map_err(|e| e.to_string())
}

fn global_suites(reg: &mut Registry) -> Outcome {
    let (mut axioms, mut fv, mut odd) = (0, 0, 0);
    for (name, h) in &reg.algebras {
        let report = verify_axioms(h);
        if let Some(v) = report.violation {
            return Err(format!("{name}: {} fails: {}", v.axiom, v.detail));
        }
        axioms += report.checked;
        // F and V are only defined for even degrees when p is odd.
        match check_frobenius_verschiebung(h) {
            Ok(None) => fv += 1,
            Ok(Some(e)) => return Err(format!("{name}: F∘V ≠ Id^⋆p at {e}")),
            Err(HopfError::OddDegree(_)) if h.p() != 2 => odd += 1,
            Err(e) => return Err(format!("{name}: {e}")),
        }
    }
    for (a, b, t) in &reg.tensors {
        if let Some(v) = verify_axioms(t).violation {
            return Err(format!("tensor {a}⊗{b}: {} fails", v.axiom));
        }
        let (ha, hb) = (&reg.algebras[*a].1, &reg.algebras[*b].1);
        for (which, op) in [("P", primitives as fn(&HopfPresentation) -> GradedSubspace), ("Q", indecomposables)] {
            let mut sum: BTreeMap<BlockKey, usize> = op(ha).dims();
            for (k, n) in op(hb).dims() {
                *sum.entry(k).or_default() += n;
            }
            sum.retain(|_, n| *n > 0);
            let mut got = op(t).dims();
            got.retain(|_, n| *n > 0);
            if got != sum {
                return Err(format!("{which} not additive on {} ⊗ {}", reg.algebras[*a].0, reg.algebras[*b].0));
            }
        }
    }
    let mut bar = 0;
    for (name, r) in &reg.bar_checks {
        bar += r.as_ref().map_err(|e| format!("{name}: {e}"))?;
    }
    for (m, seed) in &reg.decompositions {
        if decompose(m, *seed).map_err(err("decompose"))? != decompose(m, *seed).map_err(err("decompose"))? {
            return Err("decomposition differs between identical runs".into());
        }
    }
    let dir = std::env::temp_dir().join(format!("expfun-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(err("tmp"))?;
    let module = dir.join("m.json");
    std::fs::write(&module, expfun::dieudonne::to_json(&reg.decompositions[0].0)).map_err(err("tmp"))?;
    let module = module.to_string_lossy().into_owned();
    let runs: [&[&str]; 5] = [
        &["tor", "S_2", "--p", "3", "--bound", "16"],
        &["catalogue", "G_1", "--p", "2", "--bound", "16"],
        &["decompose", &module, "--seed", "17"],
        &["signature", &module, "--seed", "17"],
        &["symhom", "--p", "3", "--d", "3", "--bound", "11"],
    ];
    for args in runs {
        if cli_bytes(args)? != cli_bytes(args)? {
            return Err(format!("output of {args:?} differs between runs"));
        }
    }
    std::fs::remove_dir_all(&dir).map_err(err("tmp"))?;
    Ok(vec![format!(
        "{} algebras ({axioms} axiom checks; F∘V = Id^⋆p on {fv}, {odd} with odd degrees at odd p), {} tensor products, {} bar complexes ({bar} d²/χ checks), {} decompositions and 5 CLI runs repeated byte-identically",
        reg.algebras.len(),
        reg.tensors.len(),
        reg.bar_checks.len(),
        reg.decompositions.len()
    )])
}

type Criterion = fn(&mut Registry) -> Outcome;

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 13] = [
        ("Tor formula grid", tor_grid),
        ("Γ-input formula", gamma_input),
        ("iterated Tor and cofree stages", iterated_tor),
        ("E-regrading", e_regrading),
        ("group-homology pattern Λ⊗Γ", group_pattern),
        ("self-duality of the cyclic algebra", self_duality),
        ("exact, non-split G_n sequences", exact_triples),
        ("string decomposition", string_decomposition),
        ("Dieudonné dictionary", dictionary),
        ("φ-injectivity", phi_injectivity),
        ("symmetric-group homology", symmetric_groups),
        ("filtrations", filtrations),
        ("global property suites", global_suites),
    ];
    let mut reg = Registry::default();
    let mut failed = 0;
    for (n, (title, criterion)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| criterion(&mut reg)))
            .unwrap_or_else(|e| Err(format!("panicked: {:?}", e.downcast_ref::<String>().map(String::as_str).or(e.downcast_ref::<&str>().copied()))));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(notes) => {
                println!("PASS {:>2} {title} ({secs:.1}s)", n + 1);
                for note in notes {
                    println!("        {note}");
                }
            }
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {title} ({secs:.1}s): {e}", n + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

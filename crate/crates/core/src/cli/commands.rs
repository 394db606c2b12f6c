use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{CliError, Command, FiltrationArg, Format, Outcome, RunConfig};
use crate::barhom::{
    expected_tor, homology_table, reduced_bar, tor_iterated, BarBounds, DimTable, TorTable, XKind,
};
use crate::catalogue::{make, morava_self_duality, AlgebraKind, GeneratorSpec};
use crate::dieudonne::{
    decompose, fake_truncation, make_string, reconstruct_from_phi, signature_of, string_profiles, validate, Pair,
    SignatureMultiset, StringSpec, Word,
};
use crate::exactla::PrimeField;
use crate::hopfcore::{associated_graded, verify_axioms, Filtration, HopfPresentation, Window};
use crate::symgrp::{brute_group_homology, nakaoka_tuples, symgroup_homology_dims};

pub(super) fn dispatch(c: &RunConfig) -> Result<Outcome, CliError> {
    match &c.command {
        Command::Catalogue { kind, gen_degree, r } => {
            let h = build(c, kind, *r, *gen_degree)?;
            Ok(Outcome::ok(crate::hopfcore::to_json(&h) + "\n"))
        }
        Command::Verify { file } => verify(file),
        Command::Tor { input, gen_degree, r, iterate } => {
            let h = match Path::new(input).is_file() {
                true => load_hopf(Path::new(input))?,
                false => build(c, input, *r, *gen_degree)?,
            };
            let table = tor_table(&h, *iterate, bar_bounds(c)?)?;
            Ok(Outcome::ok(render_tor(&table, c.format.unwrap_or(Format::Csv))))
        }
        Command::VerifyTor { all, kind, gen_degree, r, iterate } => {
            let p = prime(c)?;
            let d = c.bound.ok_or_else(|| CliError::Input("verify-tor needs --bound".into()))?;
            let cases = match (all, kind) {
                (true, _) => grid(p),
                (false, Some(k)) => vec![(parse_kind(k)?, *r, *gen_degree, *iterate)],
                (false, None) => return Err(CliError::Input("give a kind or --all".into())),
            };
            verify_tor(c, p, d, &cases)
        }
        Command::String { spec } => {
            let p = prime(c)?;
            let bound = c.bound.ok_or_else(|| CliError::Input("string needs --bound".into()))?;
            let s = parse_spec(spec)?;
            let m = make_string(PrimeField::new(p)?, &s, bound as usize);
            Ok(Outcome::ok(crate::dieudonne::to_json(&m) + "\n"))
        }
        Command::Decompose { file } => {
            let m = crate::dieudonne::from_json(&std::fs::read_to_string(file)?)?;
            let d = decompose(&m, c.seed)?;
            let doc = serde_json::json!({
                "strings": d.strings.iter().map(|s| format!("{}:{}", s.r, s.word)).collect::<Vec<_>>(),
                "degree_bound": d.bound,
                "draws": d.draws,
            });
            Ok(Outcome::ok(serde_json::to_string_pretty(&doc)? + "\n"))
        }
        Command::Signature { file } => {
            let m = crate::dieudonne::from_json(&std::fs::read_to_string(file)?)?;
            let d = decompose(&m, c.seed)?;
            let pairs: Vec<Pair> = d.strings.iter().map(|s| string_profiles(s, d.bound)).collect();
            Ok(Outcome::ok(signature_json(&signature_of(&pairs))?))
        }
        Command::Phi { file, k } => {
            let sigma = parse_signature(&std::fs::read_to_string(file)?)?;
            let top = k.unwrap_or_else(|| {
                sigma.keys().flat_map(|(a, b)| a.keys().chain(b.keys())).copied().max().unwrap_or(0)
            });
            let phis: Vec<SigDoc> = (0..=top).map(|k| SigDoc::from(&fake_truncation(&sigma, k))).collect();
            let doc = PhiDoc { schema: "phi-v1".into(), phis };
            Ok(Outcome::ok(serde_json::to_string_pretty(&doc)? + "\n"))
        }
        Command::Reconstruct { file } => {
            let doc: PhiDoc = serde_json::from_str(&std::fs::read_to_string(file)?)?;
            if doc.schema != "phi-v1" {
                return Err(CliError::Input(format!("expected schema phi-v1, found {}", doc.schema)));
            }
            let phis: Vec<SignatureMultiset> = doc.phis.iter().map(SigDoc::to_multiset).collect();
            Ok(Outcome::ok(signature_json(&reconstruct_from_phi(&phis)?)?))
        }
        Command::Nakaoka { k } => {
            let p = prime(c)?;
            let bound = c.bound.ok_or_else(|| CliError::Input("nakaoka needs --bound".into()))?;
            let mut out = String::new();
            for t in nakaoka_tuples(p, *k, bound)? {
                let line = serde_json::json!({"entries": t.entries, "degree": t.degree(), "level": t.level()});
                writeln!(out, "{line}").expect("string write");
            }
            Ok(Outcome::ok(out))
        }
        Command::Symhom { d, dim_v, check } => {
            let p = prime(c)?;
            let bound = c.bound.ok_or_else(|| CliError::Input("symhom needs --bound".into()))?;
            let dims = symgroup_homology_dims(p, *d, *dim_v, bound)?;
            let mut out = String::from("i,dim\n");
            for (i, n) in dims.iter().enumerate() {
                writeln!(out, "{i},{n}").expect("string write");
            }
            let failure = if *check {
                let brute = brute_group_homology(p, *d, *dim_v, bound)?;
                (brute != dims).then(|| format!("series {dims:?} vs group homology {brute:?}"))
            } else {
                None
            };
            Ok(Outcome::checked(out, failure))
        }
        Command::SelfdualCheck => {
            let p = prime(c)?;
            let r = morava_self_duality(p)?;
            let doc = serde_json::json!({
                "p": r.p,
                "dim": r.dim,
                "bijective": r.bijective,
                "block_preserving": r.block_preserving,
                "failure": r.failure,
                "passed": r.passed(),
            });
            let failure = (!r.passed()).then(|| r.failure.clone().unwrap_or_else(|| "not an isomorphism".into()));
            Ok(Outcome::checked(serde_json::to_string_pretty(&doc)? + "\n", failure))
        }
        Command::Gr { file, filtration } => {
            let h = load_hopf(file)?;
            let filt = match filtration {
                FiltrationArg::Coradical => Filtration::Primitive,
                FiltrationArg::Augmentation => Filtration::Augmentation,
            };
            Ok(Outcome::ok(crate::hopfcore::to_json(&associated_graded(&h, filt)?) + "\n"))
        }
    }
}

fn prime(c: &RunConfig) -> Result<u32, CliError> {
    c.p.ok_or_else(|| CliError::Input("missing --p".into()))
}

fn window(c: &RunConfig) -> Window {
    Window { degree: c.bound, weight: c.weight_bound, ereg: None }
}

fn bar_bounds(c: &RunConfig) -> Result<BarBounds, CliError> {
    if c.bound.is_none() && c.weight_bound.is_none() {
        return Err(CliError::Input("give --bound or --weight-bound".into()));
    }
    Ok(BarBounds { max_hom: c.hom_bound, max_total: c.bound, max_weight: c.weight_bound })
}

/// `S`, `Lambda`, `Gamma`, `Morava`, and `S_n`, `Gamma_n`, `G_n` with `n ≥ 1`.
fn parse_kind(s: &str) -> Result<AlgebraKind, CliError> {
    let bad = || CliError::Input(format!("unknown algebra kind {s:?}"));
    let (name, n) = match s.split_once('_') {
        Some((a, b)) => (a, Some(b.parse::<u32>().ok().filter(|&n| n >= 1).ok_or_else(bad)?)),
        None => (s, None),
    };
    Ok(match (name, n) {
        ("S", None) => AlgebraKind::S,
        ("Lambda" | "L", None) => AlgebraKind::Lambda,
        ("Gamma", None) => AlgebraKind::Gamma,
        ("Morava", None) => AlgebraKind::Morava,
        ("S", Some(n)) => AlgebraKind::SN(n),
        ("Gamma", Some(n)) => AlgebraKind::GammaN(n),
        ("G", Some(n)) => AlgebraKind::GN(n),
        _ => return Err(bad()),
    })
}

fn kind_name(k: AlgebraKind) -> String {
    match k {
        AlgebraKind::S => "S".into(),
        AlgebraKind::Lambda => "Lambda".into(),
        AlgebraKind::Gamma => "Gamma".into(),
        AlgebraKind::SN(n) => format!("S_{n}"),
        AlgebraKind::GammaN(n) => format!("Gamma_{n}"),
        AlgebraKind::GN(n) => format!("G_{n}"),
        AlgebraKind::Morava => "Morava".into(),
    }
}

fn build(c: &RunConfig, kind: &str, r: u32, degree: u32) -> Result<HopfPresentation, CliError> {
    let kind = parse_kind(kind)?;
    let p = prime(c)?;
    if kind != AlgebraKind::Morava && c.bound.is_none() && c.weight_bound.is_none() {
        return Err(CliError::Input("give --bound or --weight-bound".into()));
    }
    Ok(make(kind, p, GeneratorSpec::new(r, degree), window(c))?)
}

fn load_hopf(path: &Path) -> Result<HopfPresentation, CliError> {
    Ok(crate::hopfcore::from_json(&std::fs::read_to_string(path)?)?)
}

fn verify(file: &Path) -> Result<Outcome, CliError> {
    let text = std::fs::read_to_string(file)?;
    let schema: serde_json::Value = serde_json::from_str(&text)?;
    let doc = match schema.get("schema").and_then(|s| s.as_str()) {
        Some("dieu-v1") => {
            let r = validate(&crate::dieudonne::from_json(&text)?);
            serde_json::json!({"schema": "dieu-v1", "passed": r.valid, "degree": r.degree, "detail": r.detail})
        }
        _ => {
            let r = verify_axioms(&crate::hopfcore::from_json(&text)?);
            serde_json::json!({
                "schema": "hopf-v1",
                "passed": r.passed(),
                "checked": r.checked,
                "unknown": r.unknown,
                "axiom": r.violation.as_ref().map(|v| v.axiom.to_string()),
                "detail": r.violation.as_ref().map(|v| v.detail.clone()),
            })
        }
    };
    let failure = (doc["passed"] != true).then(|| format!("{} failed verification", file.display()));
    Ok(Outcome::checked(serde_json::to_string_pretty(&doc)? + "\n", failure))
}

fn tor_table(h: &HopfPresentation, j: usize, bounds: BarBounds) -> Result<TorTable, CliError> {
    Ok(if j == 1 { homology_table(&reduced_bar(h, bounds)?) } else { tor_iterated(h, j, bounds)? })
}

fn render_tor(t: &TorTable, format: Format) -> String {
    let collapsed = t.collapsed();
    match format {
        Format::Csv => {
            let mut out = String::from("s,internal_degree,weight,dim\n");
            for (&(s, i, w), &n) in &t.entries {
                writeln!(out, "{s},{i},{w},{n}").expect("string write");
            }
            out.push_str("\ntotal_degree,weight,dim\n");
            for (&(d, w), &n) in &collapsed.entries {
                writeln!(out, "{d},{w},{n}").expect("string write");
            }
            out
        }
        Format::Json => {
            let doc = serde_json::json!({
                "level": t.level,
                "entries": t.entries.iter().map(|(&(s, i, w), &n)| serde_json::json!(
                    {"s": s, "internal_degree": i, "weight": w, "dim": n})).collect::<Vec<_>>(),
                "collapsed": collapsed.entries.iter().map(|(&(d, w), &n)| serde_json::json!(
                    {"total_degree": d, "weight": w, "dim": n})).collect::<Vec<_>>(),
            });
            serde_json::to_string_pretty(&doc).expect("serialisable") + "\n"
        }
    }
}

type Case = (AlgebraKind, u32, u32, usize);

/// The closed-form grid at `p`: `S`, `Λ`, `S_1`, `S_2` and `Γ` on generators of levels 0, 1
/// and degrees 2, 4 (odd degrees 1, 3 for `Λ` at odd `p`), plus `Tor_{[2]}` of `S`.
fn grid(p: u32) -> Vec<Case> {
    let mut out = Vec::new();
    for kind in [AlgebraKind::S, AlgebraKind::Lambda, AlgebraKind::SN(1), AlgebraKind::SN(2), AlgebraKind::Gamma] {
        let degrees = if kind == AlgebraKind::Lambda && p != 2 { [1, 3] } else { [2, 4] };
        for r in [0, 1] {
            for i in degrees {
                out.push((kind, r, i, 1));
            }
        }
    }
    out.push((AlgebraKind::S, 0, 2, 2));
    out
}

fn x_kind(k: AlgebraKind) -> Result<XKind, CliError> {
    Ok(match k {
        AlgebraKind::S => XKind::S,
        AlgebraKind::Lambda => XKind::Lambda,
        AlgebraKind::Gamma => XKind::Gamma,
        AlgebraKind::SN(n) => XKind::SN(n),
        other => return Err(CliError::Input(format!("no closed form for {}", kind_name(other)))),
    })
}

fn verify_tor(c: &RunConfig, p: u32, d: u32, cases: &[Case]) -> Result<Outcome, CliError> {
    let mut out = String::from("case,status,mismatches\n");
    let mut failed = Vec::new();
    for &(kind, r, i, j) in cases {
        let name = format!("{} r={r} i={i} j={j}", kind_name(kind));
        let bounds = BarBounds { max_hom: c.hom_bound, max_total: Some(d), max_weight: c.weight_bound };
        let h = make(kind, p, GeneratorSpec::new(r, i), Window { degree: Some(d), weight: c.weight_bound, ereg: None })?;
        let got: DimTable = tor_table(&h, j, bounds)?.collapsed();
        let want = expected_tor(x_kind(kind)?, p, r, i, j, Some(d), c.weight_bound)?;
        let diff = got.mismatches(&want);
        let status = if diff.is_empty() { "PASS" } else { "FAIL" };
        let detail: Vec<String> =
            diff.iter().map(|(deg, w, a, b)| format!("({deg} {w}) computed {a} expected {b}")).collect();
        writeln!(out, "{name},{status},{}", detail.join("; ")).expect("string write");
        if !diff.is_empty() {
            failed.push(name);
        }
    }
    let failure = (!failed.is_empty()).then(|| format!("{} case(s) differ: {}", failed.len(), failed.join(", ")));
    Ok(Outcome::checked(out, failure))
}

/// `r:word`, e.g. `0:FVV` or `2:V^2F^∞`.
fn parse_spec(s: &str) -> Result<StringSpec, CliError> {
    let (r, w) = s.split_once(':').ok_or_else(|| CliError::Input(format!("expected r:word, got {s:?}")))?;
    let r = r.trim().parse().map_err(|_| CliError::Input(format!("bad start degree in {s:?}")))?;
    Ok(StringSpec::new(r, Word::parse(w.trim())?))
}

#[derive(Debug, Serialize, Deserialize)]
struct PairDoc {
    #[serde(rename = "P")]
    p: BTreeMap<u32, u32>,
    #[serde(rename = "Q")]
    q: BTreeMap<u32, u32>,
    mult: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct SigDoc {
    schema: String,
    pairs: Vec<PairDoc>,
}

impl From<&SignatureMultiset> for SigDoc {
    fn from(s: &SignatureMultiset) -> Self {
        SigDoc {
            schema: "sig-v1".into(),
            pairs: s.iter().map(|((a, b), &m)| PairDoc { p: a.clone(), q: b.clone(), mult: m }).collect(),
        }
    }
}

impl SigDoc {
    fn to_multiset(&self) -> SignatureMultiset {
        let mut pairs = Vec::new();
        for d in &self.pairs {
            for _ in 0..d.mult {
                pairs.push((d.p.clone(), d.q.clone()));
            }
        }
        signature_of(&pairs)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct PhiDoc {
    schema: String,
    phis: Vec<SigDoc>,
}

fn signature_json(s: &SignatureMultiset) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(&SigDoc::from(s))? + "\n")
}

fn parse_signature(text: &str) -> Result<SignatureMultiset, CliError> {
    let doc: SigDoc = serde_json::from_str(text)?;
    if doc.schema != "sig-v1" {
        return Err(CliError::Input(format!("expected schema sig-v1, found {}", doc.schema)));
    }
    Ok(doc.to_multiset())
}

//! The `hopf-v1` JSON interchange format.

use serde::{Deserialize, Serialize};

use super::presentation::{AlgebraKind, FactorTag, Grading, HopfBuilder, HopfPresentation, TensorVector, Vector, Window};
use super::HopfError;
use crate::exactla::PrimeField;

#[derive(Serialize, Deserialize)]
struct Doc {
    schema: String,
    p: u32,
    grading: GradingJson,
    degree_bound: Option<u32>,
    weight_bound: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    e_bound: Option<u32>,
    weight_graded: bool,
    unit: usize,
    basis: Vec<BasisJson>,
    mu: Vec<MuJson>,
    delta: Vec<DeltaJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    factors: Vec<FactorJson>,
}

#[derive(Serialize, Deserialize)]
struct GradingJson {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    modulus: Option<u32>,
}

#[derive(Serialize, Deserialize)]
struct BasisJson {
    label: String,
    degree: u32,
    weight: u32,
}

#[derive(Serialize, Deserialize)]
struct MuJson {
    i: usize,
    j: usize,
    out: Vec<MuTerm>,
}

#[derive(Serialize, Deserialize)]
struct MuTerm {
    k: usize,
    coeff: u32,
}

#[derive(Serialize, Deserialize)]
struct DeltaJson {
    i: usize,
    out: Vec<DeltaTerm>,
}

#[derive(Serialize, Deserialize)]
struct DeltaTerm {
    l: usize,
    r: usize,
    coeff: u32,
}

#[derive(Serialize, Deserialize)]
struct FactorJson {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<u32>,
    r: u32,
    degree: u32,
}

fn kind_to_json(k: AlgebraKind) -> (String, Option<u32>) {
    match k {
        AlgebraKind::S => ("S".into(), None),
        AlgebraKind::Lambda => ("Lambda".into(), None),
        AlgebraKind::Gamma => ("Gamma".into(), None),
        AlgebraKind::SN(n) => ("S_n".into(), Some(n)),
        AlgebraKind::GammaN(n) => ("Gamma_n".into(), Some(n)),
        AlgebraKind::GN(n) => ("G_n".into(), Some(n)),
        AlgebraKind::Morava => ("Morava".into(), None),
    }
}

fn kind_from_json(s: &str, n: Option<u32>) -> Result<AlgebraKind, HopfError> {
    let need = || n.ok_or_else(|| HopfError::Json(format!("factor kind {s} needs n")));
    Ok(match s {
        "S" => AlgebraKind::S,
        "Lambda" => AlgebraKind::Lambda,
        "Gamma" => AlgebraKind::Gamma,
        "S_n" => AlgebraKind::SN(need()?),
        "Gamma_n" => AlgebraKind::GammaN(need()?),
        "G_n" => AlgebraKind::GN(need()?),
        "Morava" => AlgebraKind::Morava,
        other => return Err(HopfError::Json(format!("unknown factor kind {other}"))),
    })
}

/// Serialises a presentation; the output is canonical, so parsing and re-serialising is
/// byte-identical.
pub fn to_json(h: &HopfPresentation) -> String {
    let n = h.dim();
    let grading = match h.grading() {
        Grading::Natural => GradingJson { kind: "natural".into(), modulus: None },
        Grading::Cyclic(m) => GradingJson { kind: "cyclic".into(), modulus: Some(m) },
    };
    let mut mu = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let out = h.mul_basis(i, j);
            if !out.is_empty() {
                mu.push(MuJson { i, j, out: out.iter().map(|&(k, coeff)| MuTerm { k, coeff }).collect() });
            }
        }
    }
    let delta = (0..n)
        .map(|i| DeltaJson {
            i,
            out: h.coproduct_basis(i).iter().map(|&(l, r, coeff)| DeltaTerm { l, r, coeff }).collect(),
        })
        .collect();
    let doc = Doc {
        schema: "hopf-v1".into(),
        p: h.p(),
        grading,
        degree_bound: h.window().degree,
        weight_bound: h.window().weight,
        e_bound: h.window().ereg,
        weight_graded: h.weight_graded(),
        unit: h.unit(),
        basis: h
            .basis()
            .iter()
            .map(|b| BasisJson { label: b.label.clone(), degree: b.degree, weight: b.weight })
            .collect(),
        mu,
        delta,
        factors: h
            .factors()
            .iter()
            .map(|t| {
                let (kind, n) = kind_to_json(t.kind);
                FactorJson { kind, n, r: t.r, degree: t.degree }
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serialisable");
    s.push('\n');
    s
}

pub fn from_json(s: &str) -> Result<HopfPresentation, HopfError> {
    let doc: Doc = serde_json::from_str(s).map_err(|e| HopfError::Json(e.to_string()))?;
    if doc.schema != "hopf-v1" {
        return Err(HopfError::Json(format!("unsupported schema {}", doc.schema)));
    }
    let field = PrimeField::new(doc.p)?;
    let grading = match (doc.grading.kind.as_str(), doc.grading.modulus) {
        ("natural", None) => Grading::Natural,
        ("cyclic", Some(m)) if m >= 1 => Grading::Cyclic(m),
        (k, m) => return Err(HopfError::Json(format!("bad grading {k} / {m:?}"))),
    };
    let window = Window { degree: doc.degree_bound, weight: doc.weight_bound, ereg: doc.e_bound };
    let factors = doc
        .factors
        .iter()
        .map(|f| Ok(FactorTag { kind: kind_from_json(&f.kind, f.n)?, r: f.r, degree: f.degree }))
        .collect::<Result<Vec<_>, HopfError>>()?;
    let mut b = HopfBuilder::new(field, grading, window).weight_graded(doc.weight_graded).factors(factors);
    for e in &doc.basis {
        if let Grading::Cyclic(m) = grading {
            if e.degree >= m {
                return Err(HopfError::Json(format!("degree {} of {} is not reduced", e.degree, e.label)));
            }
        }
        b.add_basis(e.label.clone(), e.degree as u64, e.weight);
    }
    let n = doc.basis.len();
    b.set_unit(doc.unit);
    let check = |c: u32| -> Result<u32, HopfError> {
        if c == 0 || c >= doc.p {
            Err(HopfError::Json(format!("coefficient {c} is not a nonzero residue mod {}", doc.p)))
        } else {
            Ok(c)
        }
    };
    for m in &doc.mu {
        let mut v = Vector::new();
        for t in &m.out {
            if t.k >= n || v.insert(t.k, check(t.coeff)?).is_some() {
                return Err(HopfError::Json(format!("bad product entry for ({}, {})", m.i, m.j)));
            }
        }
        if !v.is_empty() {
            b.set_product(m.i, m.j, v);
        }
    }
    for d in &doc.delta {
        let mut v = TensorVector::new();
        for t in &d.out {
            if v.insert((t.l, t.r), check(t.coeff)?).is_some() {
                return Err(HopfError::Json(format!("repeated coproduct term for {}", d.i)));
            }
        }
        b.set_coproduct(d.i, v);
    }
    b.build()
}

//! Closed forms for Tor of the basic exponential Hopf algebras and for the exponential
//! functors `𝔼(Λ, −)`, `𝔼(S, −)`.
//!
//! A generator `F_{s,d}` has degree `d` and weight `p^s`. With `⊗_k` running over `k ≥ 0`:
//!
//! | `A` | `Tor^A(𝕜, 𝕜)` |
//! |---|---|
//! | `S(F_{r,i})` | `Λ(F_{r,i+1})` |
//! | `Λ(F_{r,i})` | `Γ(F_{r,i+1})` |
//! | `S_n(F_{r,i})` | `Λ(F_{r,i+1}) ⊗ Γ(F_{r+n, p^n i+2})`; at `p = 2, n = 1` it is `Γ(F_{r,i+1})` |
//! | `Γ(F_{r,i})`, `p` odd | `⊗_k Λ(F_{r+k, p^k i+1}) ⊗ Γ(F_{r+k+1, p^{k+1} i+2})` |
//! | `Γ(F_{r,i})`, `p = 2` | `⊗_k Γ(F_{r+k, 2^k i+1})` |
//!
//! Tor of a tensor product is the tensor product of the Tors, so the iterated tables
//! `Tor_{[j]}` follow factor by factor.

use super::{BarError, DimTable};

/// The input algebras with closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum XKind {
    S,
    Lambda,
    Gamma,
    SN(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorType {
    Lambda,
    Gamma,
}

/// An exterior or divided-power factor on a generator of level `r` (weight `p^r`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub ty: FactorType,
    pub r: u32,
    pub degree: u64,
}

/// The outer functor of `𝔼(−, E)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EInput {
    Lambda,
    S,
}

#[derive(Clone, Copy)]
struct Limits {
    p: u64,
    degree: Option<u32>,
    weight: Option<u32>,
}

impl Limits {
    fn keeps(&self, f: &Factor) -> bool {
        let w = self.p.checked_pow(f.r);
        self.degree.is_none_or(|d| f.degree <= d as u64) && self.weight.is_none_or(|b| w.is_some_and(|w| w <= b as u64))
    }

    fn bounded(&self) -> Result<(), BarError> {
        if self.degree.is_none() && self.weight.is_none() {
            return Err(BarError::Unbounded);
        }
        Ok(())
    }

    /// Members `k = 0, 1, …` of an increasing family, while any of them is in range.
    fn family(&self, member: impl Fn(u32) -> Vec<Factor>) -> Result<Vec<Factor>, BarError> {
        self.bounded()?;
        let mut out = Vec::new();
        for k in 0..64 {
            let fs = member(k);
            if !fs.iter().any(|f| self.keeps(f)) {
                return Ok(out);
            }
            out.extend(fs.into_iter().filter(|f| self.keeps(f)));
        }
        Err(BarError::Unbounded)
    }
}

fn lam(r: u32, degree: u64) -> Factor {
    Factor { ty: FactorType::Lambda, r, degree }
}

fn gam(r: u32, degree: u64) -> Factor {
    Factor { ty: FactorType::Gamma, r, degree }
}

fn gamma_tor(lim: &Limits, r: u32, i: u64) -> Result<Vec<Factor>, BarError> {
    let p = lim.p;
    if p == 2 {
        lim.family(|k| vec![gam(r + k, (1 << k) * i + 1)])
    } else {
        lim.family(|k| vec![lam(r + k, p.pow(k) * i + 1), gam(r + k + 1, p.pow(k + 1) * i + 2)])
    }
}

fn first_tor(lim: &Limits, kind: XKind, r: u32, i: u64) -> Result<Vec<Factor>, BarError> {
    let p = lim.p;
    Ok(match kind {
        XKind::S => vec![lam(r, i + 1)],
        XKind::Lambda => vec![gam(r, i + 1)],
        XKind::SN(1) if p == 2 => vec![gam(r, i + 1)],
        XKind::SN(n) => vec![lam(r, i + 1), gam(r + n, p.pow(n) * i + 2)],
        XKind::Gamma => gamma_tor(lim, r, i)?,
    })
}

fn factor_tor(lim: &Limits, f: &Factor) -> Result<Vec<Factor>, BarError> {
    match f.ty {
        FactorType::Lambda => Ok(vec![gam(f.r, f.degree + 1)]),
        FactorType::Gamma => gamma_tor(lim, f.r, f.degree),
    }
}

/// Dimensions of `⊗ factors` by (degree, weight) within the bounds.
pub fn generators_table(
    p: u32,
    factors: &[Factor],
    max_degree: Option<u32>,
    max_weight: Option<u32>,
) -> Result<DimTable, BarError> {
    let lim = Limits { p: p as u64, degree: max_degree, weight: max_weight };
    lim.bounded()?;
    let mut table = DimTable::new(max_degree, max_weight);
    table.add(0, 0, 1);
    for f in factors.iter().filter(|f| lim.keeps(f)) {
        let w = (p as u64).pow(f.r);
        if f.degree == 0 && max_weight.is_none() && f.ty == FactorType::Gamma {
            return Err(BarError::Unbounded);
        }
        let cap = if f.ty == FactorType::Lambda { 1 } else { u64::MAX };
        let mut next = DimTable::new(max_degree, max_weight);
        for (&(d, wt), &n) in &table.entries {
            let mut k = 0u64;
            while k <= cap {
                let (d2, w2) = (d as u64 + k * f.degree, wt as u64 + k * w);
                if d2 > u32::MAX as u64 || w2 > u32::MAX as u64 || !next.admits(d2 as u32, w2 as u32) {
                    break;
                }
                next.add(d2 as u32, w2 as u32, n);
                k += 1;
            }
        }
        table = next;
    }
    Ok(table)
}

fn check_parity(kind: XKind, p: u32, i: u32) -> Result<(), BarError> {
    if let XKind::SN(0) = kind {
        return Err(BarError::OutOfRange("S_n needs n ≥ 1".into()));
    }
    if p != 2 && (i % 2 == 1) != (kind == XKind::Lambda) {
        return Err(BarError::OutOfRange(format!("{kind:?} on a generator of degree {i} at p = {p}")));
    }
    Ok(())
}

/// The factors of `Tor_{[j]}` of `kind` on `F_{r,i}`, those within the bounds.
pub fn tor_factors(
    kind: XKind,
    p: u32,
    r: u32,
    i: u32,
    j: usize,
    max_degree: Option<u32>,
    max_weight: Option<u32>,
) -> Result<Vec<Factor>, BarError> {
    check_parity(kind, p, i)?;
    if j == 0 {
        return Err(BarError::OutOfRange("the iteration starts at level 1".into()));
    }
    let lim = Limits { p: p as u64, degree: max_degree, weight: max_weight };
    lim.bounded()?;
    let mut factors = first_tor(&lim, kind, r, i as u64)?;
    for _ in 1..j {
        let mut next = Vec::new();
        for f in &factors {
            next.extend(factor_tor(&lim, f)?);
        }
        factors = next;
    }
    factors.retain(|f| lim.keeps(f));
    factors.sort();
    Ok(factors)
}

/// Closed-form dimensions of `Tor_{[j]}` by (total degree, weight).
pub fn expected_tor(
    kind: XKind,
    p: u32,
    r: u32,
    i: u32,
    j: usize,
    max_degree: Option<u32>,
    max_weight: Option<u32>,
) -> Result<DimTable, BarError> {
    let factors = tor_factors(kind, p, r, i, j, max_degree, max_weight)?;
    generators_table(p, &factors, max_degree, max_weight)
}

/// The factors of `𝔼(outer, X^{(r)})` for `X = S` or `S_n`, as generators `G_{s,d}`
/// (degree `d`, weight `p^s`).
pub fn e_factors(
    outer: EInput,
    inner: XKind,
    p: u32,
    r: u32,
    max_degree: Option<u32>,
    max_weight: Option<u32>,
) -> Result<Vec<Factor>, BarError> {
    let lim = Limits { p: p as u64, degree: max_degree, weight: max_weight };
    lim.bounded()?;
    let q = p as u64;
    let pr = q.pow(r);
    let mut out = match (outer, inner) {
        (EInput::Lambda, XKind::S) => vec![lam(r, 2 * pr - 1)],
        (EInput::Lambda, XKind::SN(1)) if p == 2 => vec![gam(r, 2 * pr - 1)],
        (EInput::Lambda, XKind::SN(n)) => vec![lam(r, 2 * pr - 1), gam(r + n, 2 * q.pow(r + n) - 2)],
        (EInput::S, XKind::S) => vec![gam(r, 2 * pr - 2)],
        (EInput::S, XKind::SN(1)) if p == 2 => {
            lim.family(|k| vec![gam(r + k, (1 << (r + k + 1)) - (1 << k) - 1)])?
        }
        (EInput::S, XKind::SN(n)) if p == 2 => {
            let mut v = vec![gam(r, (1 << (r + 1)) - 2)];
            v.extend(lim.family(|k| vec![gam(r + n + k, (1 << (r + n + k + 1)) - (1 << (k + 1)) - 1)])?);
            v
        }
        (EInput::S, XKind::SN(n)) => {
            let mut v = vec![gam(r, 2 * pr - 2)];
            v.extend(lim.family(|k| {
                vec![
                    lam(r + n + k, 2 * q.pow(r + n + k) - 2 * q.pow(k) - 1),
                    gam(r + n + k + 1, 2 * q.pow(r + n + k + 1) - 2 * q.pow(k + 1) - 2),
                ]
            })?);
            v
        }
        _ => return Err(BarError::OutOfRange(format!("𝔼({outer:?}, {inner:?})"))),
    };
    if let XKind::SN(0) = inner {
        return Err(BarError::OutOfRange("S_n needs n ≥ 1".into()));
    }
    out.retain(|f| lim.keeps(f));
    out.sort();
    Ok(out)
}

/// Closed-form dimensions of `𝔼(outer, X^{(r)})(𝕜)` by (degree, weight).
pub fn expected_e(
    outer: EInput,
    inner: XKind,
    p: u32,
    r: u32,
    max_degree: Option<u32>,
    max_weight: Option<u32>,
) -> Result<DimTable, BarError> {
    let factors = e_factors(outer, inner, p, r, max_degree, max_weight)?;
    generators_table(p, &factors, max_degree, max_weight)
}

/// `(i, k) ↦ (2k − i, k)`, keeping degrees `≤ max_degree`.
pub fn regrade_e(table: &DimTable, max_degree: Option<u32>) -> Result<DimTable, BarError> {
    let mut out = DimTable::new(max_degree, table.max_weight);
    for (&(i, k), &n) in &table.entries {
        let e = 2 * k as i64 - i as i64;
        if e < 0 {
            return Err(BarError::NegativeDegree { degree: i, weight: k });
        }
        out.add(e as u32, k, n);
    }
    Ok(out)
}

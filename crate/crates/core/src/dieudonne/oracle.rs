//! Brute-force decomposition by enumerating every graded submodule. Only for tiny modules;
//! it shares no code with the idempotent-splitting algorithm and serves as its oracle.

use super::{DieudonneError, DieudonneModule, Letter, StringSpec, Word};
use crate::exactla::{FpMatrix, PrimeField};

const MAX_DIM: usize = 4;

/// All subspaces of `F_p^d`, as reduced row-echelon row lists.
fn all_subspaces(field: PrimeField, d: usize) -> Vec<Vec<Vec<u32>>> {
    let p = field.p() as usize;
    let vectors: Vec<Vec<u32>> = (0..p.pow(d as u32))
        .map(|mut x| {
            (0..d)
                .map(|_| {
                    let c = (x % p) as u32;
                    x /= p;
                    c
                })
                .collect()
        })
        .collect();
    let canon = |rows: &[Vec<u32>]| -> Vec<Vec<u32>> {
        if rows.is_empty() {
            return Vec::new();
        }
        let m = FpMatrix::from_columns(field, d, rows).transpose();
        let r = m.rref();
        (0..r.rank).map(|i| r.matrix.row(i).to_vec()).collect()
    };
    let mut seen: Vec<Vec<Vec<u32>>> = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    while let Some(s) = frontier.pop() {
        for v in &vectors {
            let mut rows = s.clone();
            rows.push(v.clone());
            let c = canon(&rows);
            if !seen.contains(&c) {
                seen.push(c.clone());
                frontier.push(c);
            }
        }
    }
    seen
}

fn as_columns(field: PrimeField, d: usize, rows: &[Vec<u32>]) -> FpMatrix {
    FpMatrix::from_columns(field, d, rows)
}

fn stable(m: &DieudonneModule, sub: &[FpMatrix]) -> bool {
    for i in 0..m.degree_bound() {
        for (op, src, dst) in [(m.f_op(i), i, i + 1), (m.v_op(i), i + 1, i)] {
            let img = op.mul(&sub[src]).expect("shapes");
            let both = sub[dst].hcat(&img).expect("rows");
            if both.rank() != sub[dst].cols() {
                return false;
            }
        }
    }
    true
}

fn submodules(m: &DieudonneModule) -> Vec<Vec<FpMatrix>> {
    let f = m.field();
    let per_slot: Vec<Vec<FpMatrix>> = m
        .dims()
        .iter()
        .map(|&d| all_subspaces(f, d).iter().map(|rows| as_columns(f, d, rows)).collect())
        .collect();
    let mut out = vec![Vec::new()];
    for options in &per_slot {
        let mut next = Vec::new();
        for partial in &out {
            for o in options {
                let mut v: Vec<FpMatrix> = partial.clone();
                v.push(o.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().filter(|s| stable(m, s)).collect()
}

fn read_string(m: &DieudonneModule) -> Result<StringSpec, DieudonneError> {
    let dims = m.dims();
    let start = dims.iter().position(|&d| d > 0).ok_or_else(|| DieudonneError::NotString("zero module".into()))?;
    let end = dims.iter().rposition(|&d| d > 0).expect("nonzero");
    let mut prefix = Vec::new();
    for i in start..end {
        if dims[i] != 1 || dims[i + 1] != 1 {
            return Err(DieudonneError::NotString(format!("dimension > 1 near degree {i}")));
        }
        let (fz, vz) = (m.f_op(i).is_zero(), m.v_op(i).is_zero());
        prefix.push(match (fz, vz) {
            (false, true) => Letter::F,
            (true, false) => Letter::V,
            _ => return Err(DieudonneError::NotString(format!("edge {i} is not a single letter"))),
        });
    }
    if dims[end] != 1 {
        return Err(DieudonneError::NotString(format!("dimension > 1 at degree {end}")));
    }
    Ok(StringSpec::new(start, Word::finite(prefix)))
}

/// Decomposes a module of total dimension at most 4 by exhaustive search for complementary
/// pairs of submodules.
pub fn brute_decompose(m: &DieudonneModule) -> Result<Vec<StringSpec>, DieudonneError> {
    if m.total_dim() > MAX_DIM {
        return Err(DieudonneError::TooLarge(format!("total dimension {} > {MAX_DIM}", m.total_dim())));
    }
    if m.total_dim() == 0 {
        return Ok(Vec::new());
    }
    let subs = submodules(m);
    let total = m.total_dim();
    for a in &subs {
        let da: usize = a.iter().map(|b| b.cols()).sum();
        if da == 0 || da == total {
            continue;
        }
        for b in &subs {
            let db: usize = b.iter().map(|x| x.cols()).sum();
            if da + db != total {
                continue;
            }
            let complementary = a.iter().zip(b).all(|(x, y)| x.hcat(y).expect("rows").rank() == x.rows());
            if complementary {
                let mut out = brute_decompose(&m.restrict(a)?)?;
                out.extend(brute_decompose(&m.restrict(b)?)?);
                out.sort();
                return Ok(out);
            }
        }
    }
    Ok(vec![read_string(m)?])
}

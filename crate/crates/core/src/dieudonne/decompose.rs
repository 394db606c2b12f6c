//! Krull–Schmidt decomposition into string modules by idempotent splitting.
//!
//! A module is first cut into pieces that no nonzero operator connects. A piece that is
//! one-dimensional on an interval of degrees, with exactly one of `F`, `V` nonzero on each
//! edge, is a string and is read off directly. Otherwise it is decomposable, and a random
//! endomorphism `φ` is drawn from the solution space of the commutation equations: for some
//! `λ ∈ F_p` the Fitting decomposition `M = ker (φ−λ)^N ⊕ im (φ−λ)^N` is usually nontrivial.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DieudonneError, DieudonneModule, Letter, StringSpec, Word};
use crate::exactla::{column_basis, FpMatrix};

/// Random endomorphisms tried per splitting step before giving up.
const BUDGET: usize = 400;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// The summands, sorted.
    pub strings: Vec<StringSpec>,
    /// Degree window of the input.
    pub bound: usize,
    /// Random endomorphisms drawn in total.
    pub draws: usize,
}

/// Decomposes `m` into string modules; the random stream is seeded by `seed`.
pub fn decompose(m: &DieudonneModule, seed: u64) -> Result<Decomposition, DieudonneError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut strings = Vec::new();
    let mut draws = 0;
    let mut stack = components(m)?;
    while let Some(piece) = stack.pop() {
        if let Some(s) = as_string(&piece) {
            strings.push(s);
            continue;
        }
        match split(&piece, &mut rng, &mut draws)? {
            Some((a, b)) => {
                stack.extend(components(&a)?);
                stack.extend(components(&b)?);
            }
            None => {
                strings.sort();
                return Err(DieudonneError::Budget { partial: strings });
            }
        }
    }
    strings.sort();
    Ok(Decomposition { strings, bound: m.degree_bound(), draws })
}

fn coordinate_basis(m: &DieudonneModule, keep: impl Fn(usize) -> bool) -> Vec<FpMatrix> {
    let f = m.field();
    m.dims()
        .iter()
        .enumerate()
        .map(|(i, &d)| if keep(i) { FpMatrix::identity(f, d) } else { FpMatrix::zeros(f, d, 0) })
        .collect()
}

/// Pieces of `m` on maximal runs of degrees linked by a nonzero `F_i` or `V_i`.
pub(crate) fn components(m: &DieudonneModule) -> Result<Vec<DieudonneModule>, DieudonneError> {
    let n = m.degree_bound();
    let mut out = Vec::new();
    let mut i = 0;
    while i <= n {
        if m.dims()[i] == 0 {
            i += 1;
            continue;
        }
        let start = i;
        while i < n && (!m.f_op(i).is_zero() || !m.v_op(i).is_zero()) {
            i += 1;
        }
        let end = i;
        out.push(m.restrict(&coordinate_basis(m, |d| (start..=end).contains(&d)))?);
        i += 1;
    }
    Ok(out)
}

/// Reads `m` as a string module, if it is one.
pub(crate) fn as_string(m: &DieudonneModule) -> Option<StringSpec> {
    let dims = m.dims();
    let start = dims.iter().position(|&d| d > 0)?;
    let end = dims.iter().rposition(|&d| d > 0)?;
    if dims[start..=end].iter().any(|&d| d != 1) {
        return None;
    }
    let mut prefix = Vec::new();
    for i in start..end {
        match (m.f_op(i).is_zero(), m.v_op(i).is_zero()) {
            (false, true) => prefix.push(Letter::F),
            (true, false) => prefix.push(Letter::V),
            _ => return None,
        }
    }
    Some(StringSpec::new(start, Word::finite(prefix)))
}

/// A basis of `End(m)`, each element given by its per-degree matrices.
pub(crate) fn endomorphism_basis(m: &DieudonneModule) -> Result<Vec<Vec<FpMatrix>>, DieudonneError> {
    let f = m.field();
    let dims = m.dims();
    let n = m.degree_bound();
    let mut offset = vec![0; dims.len() + 1];
    for (i, &d) in dims.iter().enumerate() {
        offset[i + 1] = offset[i] + d * d;
    }
    let nvars = offset[dims.len()];
    let var = |i: usize, r: usize, c: usize| offset[i] + r * dims[i] + c;
    let mut rows: Vec<Vec<(usize, u32)>> = Vec::new();
    for i in 0..n {
        let (a, b) = (dims[i], dims[i + 1]);
        let (fi, vi) = (m.f_op(i), m.v_op(i));
        // φ_{i+1} F_i − F_i φ_i = 0, entry (r, c) of a b × a matrix.
        for r in 0..b {
            for c in 0..a {
                let mut row = Vec::new();
                for k in 0..b {
                    row.push((var(i + 1, r, k), fi.get(k, c)));
                }
                for k in 0..a {
                    row.push((var(i, k, c), f.neg(fi.get(r, k))));
                }
                rows.push(row);
            }
        }
        // φ_i V_i − V_i φ_{i+1} = 0, entry (r, c) of an a × b matrix.
        for r in 0..a {
            for c in 0..b {
                let mut row = Vec::new();
                for k in 0..a {
                    row.push((var(i, r, k), vi.get(k, c)));
                }
                for k in 0..b {
                    row.push((var(i + 1, k, c), f.neg(vi.get(r, k))));
                }
                rows.push(row);
            }
        }
    }
    let mut sys = FpMatrix::zeros(f, rows.len(), nvars);
    for (r, row) in rows.iter().enumerate() {
        for &(c, v) in row {
            sys.add_to(r, c, v);
        }
    }
    let kernel = sys.kernel_basis();
    Ok((0..kernel.cols())
        .map(|col| {
            dims.iter()
                .enumerate()
                .map(|(i, &d)| {
                    let mut phi = FpMatrix::zeros(f, d, d);
                    for r in 0..d {
                        for c in 0..d {
                            phi.set(r, c, kernel.get(var(i, r, c), col));
                        }
                    }
                    phi
                })
                .collect()
        })
        .collect())
}

fn matrix_power(m: &FpMatrix, k: usize) -> FpMatrix {
    let mut acc = FpMatrix::identity(m.field(), m.rows());
    for _ in 0..k {
        acc = acc.mul(m).expect("square");
    }
    acc
}

/// Tries random endomorphisms until one has a nontrivial Fitting decomposition.
fn split<R: Rng>(
    m: &DieudonneModule,
    rng: &mut R,
    draws: &mut usize,
) -> Result<Option<(DieudonneModule, DieudonneModule)>, DieudonneError> {
    let f = m.field();
    let basis = endomorphism_basis(m)?;
    let dims = m.dims();
    for _ in 0..BUDGET {
        *draws += 1;
        let coeffs: Vec<u32> = (0..basis.len()).map(|_| rng.gen_range(0..f.p())).collect();
        let phi: Vec<FpMatrix> = dims
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let mut acc = FpMatrix::zeros(f, d, d);
                for (e, &c) in basis.iter().zip(&coeffs) {
                    if c != 0 {
                        acc = acc.add(&e[i].scale(c)).expect("same shape");
                    }
                }
                acc
            })
            .collect();
        for lambda in 0..f.p() {
            let mut kers = Vec::new();
            let mut ims = Vec::new();
            for (i, &d) in dims.iter().enumerate() {
                let shifted = phi[i].add(&FpMatrix::identity(f, d).scale(f.neg(lambda))).expect("square");
                let power = matrix_power(&shifted, d);
                kers.push(power.kernel_basis());
                ims.push(column_basis(&power));
            }
            let k: usize = kers.iter().map(|b| b.cols()).sum();
            if k == 0 || k == m.total_dim() {
                continue;
            }
            return Ok(Some((m.restrict(&kers)?, m.restrict(&ims)?)));
        }
    }
    Ok(None)
}

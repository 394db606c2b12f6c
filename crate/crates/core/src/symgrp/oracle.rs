//! Group homology `H_*(𝔖_d, V^{⊗d})` from first principles, for tiny `d`.
//!
//! [`brute_group_homology`] builds a free resolution of `F_p` over `F_p[𝔖_d]` by repeatedly
//! taking kernels and choosing module generators, tensors it with `V^{⊗d}` over the group
//! and takes ranks. [`bar_group_homology`] uses the normalized bar complex instead; it grows
//! like `(d! − 1)^i` and serves as a cross-check in low degrees.

use std::collections::HashMap;

use super::{check_prime, SymError};
use crate::exactla::{Echelon, FpMatrix, PrimeField};

const MAX_D: u32 = 3;
const MAX_DIM_V: u32 = 2;
const MAX_I: u32 = 4;
const MAX_BAR_COLUMNS: usize = 20_000;

/// `𝔖_d` as permutations of `0..d`, identity first.
struct Group {
    elems: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl Group {
    fn symmetric(d: usize) -> Self {
        let mut elems = vec![(0..d).collect::<Vec<_>>()];
        let mut i = 0;
        // Close under adjacent transpositions.
        while i < elems.len() {
            for t in 0..d.saturating_sub(1) {
                let mut g = elems[i].clone();
                g.swap(t, t + 1);
                if !elems.contains(&g) {
                    elems.push(g);
                }
            }
            i += 1;
        }
        let index = elems.iter().enumerate().map(|(k, g)| (g.clone(), k)).collect();
        Self { elems, index }
    }

    fn order(&self) -> usize {
        self.elems.len()
    }

    /// Index of `g ∘ h`.
    fn mul(&self, g: usize, h: usize) -> usize {
        let (a, b) = (&self.elems[g], &self.elems[h]);
        self.index[&b.iter().map(|&x| a[x]).collect::<Vec<_>>()]
    }

    fn inv(&self, g: usize) -> usize {
        let a = &self.elems[g];
        let mut out = vec![0; a.len()];
        for (i, &x) in a.iter().enumerate() {
            out[x] = i;
        }
        self.index[&out]
    }
}

/// `V^{⊗d}` with `dim V = m`, `𝔖_d` permuting the tensor positions.
struct TensorPower {
    d: usize,
    m: usize,
}

impl TensorPower {
    fn dim(&self) -> usize {
        self.m.pow(self.d as u32)
    }

    /// The basis index of `σ · e_μ`: the factor in position `a` moves to position `σ(a)`.
    fn act(&self, sigma: &[usize], mu: usize) -> usize {
        let mut digits = vec![0; self.d];
        let mut x = mu;
        for digit in digits.iter_mut() {
            *digit = x % self.m;
            x /= self.m;
        }
        let mut out = vec![0; self.d];
        for (a, &s) in sigma.iter().enumerate() {
            out[s] = digits[a];
        }
        out.iter().rev().fold(0, |acc, &c| acc * self.m + c)
    }
}

fn check_caps(p: u32, d: u32, dim_v: u32, i_bound: u32) -> Result<(), SymError> {
    check_prime(p)?;
    if d == 0 || d > MAX_D || dim_v == 0 || dim_v > MAX_DIM_V || i_bound > MAX_I {
        return Err(SymError::TooLarge(format!(
            "(d, dim V, i) = ({d}, {dim_v}, {i_bound}) outside (≤ {MAX_D}, ≤ {MAX_DIM_V}, ≤ {MAX_I})"
        )));
    }
    Ok(())
}

/// `h · x` for `x ∈ F_p[G]^r` stored as `x[k·|G| + g]`.
fn left_act(group: &Group, h: usize, x: &[u32]) -> Vec<u32> {
    let n = group.order();
    let mut out = vec![0; x.len()];
    for (pos, &c) in x.iter().enumerate() {
        if c != 0 {
            let (k, g) = (pos / n, pos % n);
            out[k * n + group.mul(h, g)] = c;
        }
    }
    out
}

/// Generators of `F_p[G]`-submodules: greedily adds kernel vectors outside the span of the
/// translates of those chosen so far.
fn module_generators(f: PrimeField, group: &Group, kernel: &FpMatrix) -> Vec<Vec<u32>> {
    let mut span = Echelon::new(f, kernel.rows());
    let mut gens = Vec::new();
    for v in kernel.columns() {
        if span.rank() == kernel.cols() {
            break;
        }
        if span.contains(&v) {
            continue;
        }
        for h in 0..group.order() {
            span.insert(&left_act(group, h, &v));
        }
        gens.push(v);
    }
    gens
}

/// `H_i(𝔖_d, V^{⊗d})` for `i ≤ i_bound`, via a free resolution and coinvariants.
pub fn brute_group_homology(p: u32, d: u32, dim_v: u32, i_bound: u32) -> Result<Vec<usize>, SymError> {
    check_caps(p, d, dim_v, i_bound)?;
    let f = PrimeField::new(p)?;
    let group = Group::symmetric(d as usize);
    let n = group.order();
    let module = TensorPower { d: d as usize, m: dim_v as usize };
    let dm = module.dim();

    // images[i][j] = d_{i+1}(e_j) ∈ F_p[G]^{rank_i}; F_0 = F_p[G] with the augmentation.
    let mut ranks = vec![1usize];
    let mut images: Vec<Vec<Vec<u32>>> = Vec::new();
    let mut current = FpMatrix::from_columns(f, 1, &vec![vec![1]; n]);
    for _ in 0..=i_bound {
        let gens = module_generators(f, &group, &current.kernel_basis());
        let rank_below = *ranks.last().expect("nonempty");
        // The F_p-matrix of the new differential on the basis g·e_j.
        let cols: Vec<Vec<u32>> =
            gens.iter().flat_map(|v| (0..n).map(|g| left_act(&group, g, v)).collect::<Vec<_>>()).collect();
        current = FpMatrix::from_columns(f, rank_below * n, &cols);
        ranks.push(gens.len());
        images.push(gens);
    }

    // ∂_i on F_i ⊗_G M: e_j ⊗ μ ↦ Σ_k Σ_g a_{jk}(g) e_k ⊗ g⁻¹μ.
    let induced = |i: usize| -> FpMatrix {
        let (src, tgt) = (ranks[i], ranks[i - 1]);
        let mut m = FpMatrix::zeros(f, tgt * dm, src * dm);
        for (j, img) in images[i - 1].iter().enumerate() {
            for (pos, &c) in img.iter().enumerate().filter(|(_, &c)| c != 0) {
                let (k, g) = (pos / n, pos % n);
                let ginv = &group.elems[group.inv(g)];
                for mu in 0..dm {
                    m.add_to(k * dm + module.act(ginv, mu), j * dm + mu, c);
                }
            }
        }
        m
    };
    let rank = |i: usize| if i == 0 { 0 } else { induced(i).rank() };
    let mut ranks_out = Vec::new();
    for i in 0..=i_bound as usize + 1 {
        ranks_out.push(rank(i));
    }
    Ok((0..=i_bound as usize).map(|i| ranks[i] * dm - ranks_out[i] - ranks_out[i + 1]).collect())
}

/// `H_i(𝔖_d, V^{⊗d})` for `i ≤ i_bound` from the normalized bar complex
/// `C_i = V^{⊗d} ⊗ F_p[(G∖1)^i]`, with
/// `∂(m ⊗ [g₁|…|g_i]) = g₁⁻¹m ⊗ [g₂|…] + Σ (−1)^k m ⊗ […|g_k g_{k+1}|…] + (−1)^i m ⊗ […|g_{i−1}]`.
pub fn bar_group_homology(p: u32, d: u32, dim_v: u32, i_bound: u32) -> Result<Vec<usize>, SymError> {
    check_caps(p, d, dim_v, i_bound)?;
    let f = PrimeField::new(p)?;
    let group = Group::symmetric(d as usize);
    let module = TensorPower { d: d as usize, m: dim_v as usize };
    let dm = module.dim();
    let nontrivial: Vec<usize> = (1..group.order()).collect();
    let q = nontrivial.len();
    let size = |i: usize| q.pow(i as u32) * dm;
    if size(i_bound as usize + 1) > MAX_BAR_COLUMNS {
        return Err(SymError::TooLarge(format!("bar complex of size {}", size(i_bound as usize + 1))));
    }
    // Word index: base-q digits, first letter least significant.
    let encode = |word: &[usize]| word.iter().rev().fold(0, |acc, &g| acc * q + (g - 1));
    let decode = |mut x: usize, i: usize| -> Vec<usize> {
        (0..i)
            .map(|_| {
                let g = x % q + 1;
                x /= q;
                g
            })
            .collect()
    };
    let boundary = |i: usize| -> FpMatrix {
        let mut m = FpMatrix::zeros(f, size(i - 1), size(i));
        for w in 0..q.pow(i as u32) {
            let word = decode(w, i);
            for mu in 0..dm {
                let col = w * dm + mu;
                let ginv = &group.elems[group.inv(word[0])];
                m.add_to(encode(&word[1..]) * dm + module.act(ginv, mu), col, 1);
                for k in 0..i - 1 {
                    let prod = group.mul(word[k], word[k + 1]);
                    if prod == 0 {
                        continue;
                    }
                    let mut merged = word[..k].to_vec();
                    merged.push(prod);
                    merged.extend_from_slice(&word[k + 2..]);
                    m.add_to(encode(&merged) * dm + mu, col, f.sign((k + 1) % 2 == 1));
                }
                m.add_to(encode(&word[..i - 1]) * dm + mu, col, f.sign(i % 2 == 1));
            }
        }
        m
    };
    let mut ranks = vec![0usize];
    for i in 1..=i_bound as usize + 1 {
        let b = boundary(i);
        if i >= 2 && !boundary(i - 1).mul(&b)?.is_zero() {
            return Err(SymError::Invalid(format!("bar boundary squares to nonzero at {i}")));
        }
        ranks.push(b.rank());
    }
    Ok((0..=i_bound as usize).map(|i| size(i) - ranks[i] - ranks[i + 1]).collect())
}

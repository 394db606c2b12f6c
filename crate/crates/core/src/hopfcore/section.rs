//! Exhaustive search for Hopf sections of a surjection.
//!
//! A surjection `g: H → H''` of bicommutative Hopf algebras splits iff there is a Hopf map
//! `s: H'' → H` with `g ∘ s = id`. Working block by block in increasing (weight, degree)
//! order, every constraint on `s` restricted to a block is affine-linear once `s` is fixed on
//! lower blocks, so the search enumerates the affine solution space of each block and
//! backtracks.

use std::collections::{BTreeMap, HashMap};

use crate::exactla::FpMatrix;

use super::morphism::HopfMorphism;
use super::presentation::{add_term, BlockKey, Vector};
use super::HopfError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SectionSearch {
    /// A section, given by the images of the basis of `H''`.
    Found(Vec<Vector>),
    /// The search space was exhausted: no section exists within the window.
    NoSection { nodes: usize },
    /// The enumeration budget ran out before a decision.
    BudgetExhausted { nodes: usize },
}

struct Problem<'a> {
    g: &'a HopfMorphism,
    order: Vec<(BlockKey, Vec<usize>)>,
    target_blocks: BTreeMap<BlockKey, Vec<usize>>,
    budget: usize,
    nodes: usize,
}

/// Searches for a Hopf section of `g`, visiting at most `budget` partial assignments.
pub fn find_section(g: &HopfMorphism, budget: usize) -> Result<SectionSearch, HopfError> {
    let (h, h2) = (g.source(), g.target());
    let mut order: Vec<(BlockKey, Vec<usize>)> = h2.augmentation_blocks().into_iter().collect();
    order.sort_by_key(|(k, _)| (k.weight, k.degree));
    let mut prob = Problem { g, order, target_blocks: h.blocks(), budget, nodes: 0 };
    let mut s: Vec<Option<Vector>> = vec![None; h2.dim()];
    s[h2.unit()] = Some(h.basis_vector(h.unit()));
    match prob.search(0, &mut s)? {
        Some(done) => Ok(SectionSearch::Found(done)),
        None if prob.nodes >= prob.budget => Ok(SectionSearch::BudgetExhausted { nodes: prob.nodes }),
        None => Ok(SectionSearch::NoSection { nodes: prob.nodes }),
    }
}

impl Problem<'_> {
    fn search(&mut self, level: usize, s: &mut Vec<Option<Vector>>) -> Result<Option<Vec<Vector>>, HopfError> {
        if self.nodes >= self.budget {
            return Ok(None);
        }
        self.nodes += 1;
        if level == self.order.len() {
            // Products landing in slots where `H''` vanishes are only constrained here.
            let images: Vec<Vector> = s.iter().map(|v| v.clone().expect("all assigned")).collect();
            let (h, h2) = (self.g.source().clone(), self.g.target().clone());
            let candidate = HopfMorphism::new(h2, h, images.clone())?;
            return Ok(candidate.check().passed().then_some(images));
        }
        let (key, xs) = self.order[level].clone();
        let (h, h2) = (self.g.source().clone(), self.g.target().clone());
        let f = h.field();
        let ys = self.target_blocks.get(&key).cloned().unwrap_or_default();
        let (m, k) = (xs.len(), ys.len());
        let var = |xi: usize, yi: usize| xi * k + yi;
        // Rows: (tag, key) ↦ row; each row is Σ coeff · var = rhs.
        let mut rows: HashMap<(u8, usize, usize, usize), usize> = HashMap::new();
        let mut entries: Vec<(usize, usize, u32)> = Vec::new();
        let mut rhs: Vec<u32> = Vec::new();
        let mut row = |tag: (u8, usize, usize, usize), rhs: &mut Vec<u32>| -> usize {
            let len = rows.len();
            *rows.entry(tag).or_insert_with(|| {
                rhs.push(0);
                len
            })
        };
        for (xi, &x) in xs.iter().enumerate() {
            // g(s(x)) = x.
            for (yi, &y) in ys.iter().enumerate() {
                for (&z, &c) in self.g.image(y) {
                    let r = row((0, xi, z, 0), &mut rhs);
                    entries.push((r, var(xi, yi), c));
                }
            }
            let r = row((0, xi, x, 0), &mut rhs);
            rhs[r] = f.add(rhs[r], 1);
            // Δ̄ s(x) = (s ⊗ s) Δ̄ x.
            for (yi, &y) in ys.iter().enumerate() {
                for (&(l, rr), &c) in &h.reduced_coproduct(&h.basis_vector(y)) {
                    let r = row((1, xi, l, rr), &mut rhs);
                    entries.push((r, var(xi, yi), c));
                }
            }
            for (&(l, rr), &c) in &h2.reduced_coproduct(&h2.basis_vector(x)) {
                let (sl, sr) = (s[l].as_ref().expect("lower block"), s[rr].as_ref().expect("lower block"));
                for (&a, &u) in sl {
                    for (&b, &v) in sr {
                        let r = row((1, xi, a, b), &mut rhs);
                        rhs[r] = f.add(rhs[r], f.mul(c, f.mul(u, v)));
                    }
                }
            }
        }
        // Multiplicativity on pairs of lower basis elements whose product lands in this block.
        let aug2: Vec<usize> = (0..h2.dim()).filter(|&i| i != h2.unit()).collect();
        let local_x: HashMap<usize, usize> = xs.iter().enumerate().map(|(a, &x)| (x, a)).collect();
        for &a in &aug2 {
            for &b in &aug2 {
                if h2.block_sum(h2.block(a), h2.block(b)) != key || !h2.in_window(&[a, b]) {
                    continue;
                }
                let (sa, sb) = (s[a].as_ref().expect("lower block"), s[b].as_ref().expect("lower block"));
                let prod = h.mul(sa, sb);
                for &(x, c) in h2.mul_basis(a, b) {
                    let xi = local_x[&x];
                    for (yi, &y) in ys.iter().enumerate() {
                        let r = row((2, a, b, y), &mut rhs);
                        entries.push((r, var(xi, yi), c));
                    }
                }
                for &y in &ys {
                    let r = row((2, a, b, y), &mut rhs);
                    let c = prod.get(&y).copied().unwrap_or(0);
                    rhs[r] = f.add(rhs[r], c);
                }
            }
        }
        let nrows = rhs.len();
        let mut a = FpMatrix::zeros(f, nrows, m * k);
        for (r, c, v) in entries {
            a.add_to(r, c, v);
        }
        let Some(particular) = a.solve(&rhs)? else { return Ok(None) };
        let kernel = a.kernel_basis();
        let d = kernel.cols() as u32;
        let count = (f.p() as u64).checked_pow(d).unwrap_or(u64::MAX);
        for t in 0..count {
            if self.nodes >= self.budget {
                return Ok(None);
            }
            let mut sol = particular.clone();
            let mut tt = t;
            for c in 0..kernel.cols() {
                let coef = (tt % f.p() as u64) as u32;
                tt /= f.p() as u64;
                if coef != 0 {
                    for (r, x) in sol.iter_mut().enumerate() {
                        *x = f.add(*x, f.mul(coef, kernel.get(r, c)));
                    }
                }
            }
            for (xi, &x) in xs.iter().enumerate() {
                let mut v = Vector::new();
                for (yi, &y) in ys.iter().enumerate() {
                    add_term(&mut v, y, sol[var(xi, yi)], f);
                }
                s[x] = Some(v);
            }
            if let Some(done) = self.search(level + 1, s)? {
                return Ok(Some(done));
            }
        }
        for &x in &xs {
            s[x] = None;
        }
        Ok(None)
    }
}

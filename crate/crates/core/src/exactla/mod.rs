//! Exact linear algebra over prime fields.
//!
//! Every other module reduces its questions (primitives, homology, kernels of
//! Hopf maps, endomorphism algebras) to ranks and null spaces of small dense
//! matrices over F_p. Pivoting is always leftmost-nonzero, so bases returned
//! here are reproducible.

mod field;
mod matrix;

pub use field::{is_prime, PrimeField};
pub use matrix::{FpMatrix, Rref};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("rows of unequal length")]
    Ragged,
    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("subspaces live in ambient spaces of dimension {0} and {1}")]
    AmbientMismatch(usize, usize),
    #[error("matrices over different fields")]
    FieldMismatch,
}

/// Subspace operations on column spans.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubspaceOp {
    Intersect,
    Sum,
    /// Representatives of `(a + b) / a`; with `b` the whole ambient space this is a complement of `a`.
    Quotient,
}

/// Incrementally maintained echelon basis, used to test membership and extend bases.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: PrimeField,
    dim: usize,
    /// Reduced rows, each with a leading 1 at `pivots[i]`.
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        Self { field, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Pivot coordinates of the stored rows, in insertion order.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the stored rows (does not normalise the remainder).
    pub fn reduce(&self, v: &mut [u32]) {
        let f = self.field;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                let neg = f.neg(c);
                for (x, &r) in v.iter_mut().zip(row) {
                    if r != 0 {
                        *x = f.add(*x, f.mul(neg, r));
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Inserts `v`; returns `true` if it was independent of the current span.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.dim);
        let f = self.field;
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[pc]);
        w.iter_mut().for_each(|x| *x = f.mul(*x, inv));
        // Keep the stored rows fully reduced against the new pivot.
        for row in &mut self.rows {
            let c = row[pc];
            if c != 0 {
                let neg = f.neg(c);
                for (x, &r) in row.iter_mut().zip(&w) {
                    if r != 0 {
                        *x = f.add(*x, f.mul(neg, r));
                    }
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(pc);
        true
    }
}

/// A basis (as columns) of the column space of `m`.
pub fn column_basis(m: &FpMatrix) -> FpMatrix {
    let mut e = Echelon::new(m.field(), m.rows());
    let mut keep = Vec::new();
    for c in 0..m.cols() {
        let col = m.column(c);
        if e.insert(&col) {
            keep.push(col);
        }
    }
    FpMatrix::from_columns(m.field(), m.rows(), &keep)
}

/// Intersection, sum, or quotient representatives of two column spans.
pub fn subspace(op: SubspaceOp, a: &FpMatrix, b: &FpMatrix) -> Result<FpMatrix, LinAlgError> {
    if a.rows() != b.rows() {
        return Err(LinAlgError::AmbientMismatch(a.rows(), b.rows()));
    }
    if a.field() != b.field() {
        return Err(LinAlgError::FieldMismatch);
    }
    let f = a.field();
    match op {
        SubspaceOp::Sum => Ok(column_basis(&a.hcat(b)?)),
        SubspaceOp::Intersect => {
            let a = column_basis(a);
            let b = column_basis(b);
            let combined = a.hcat(&b.scale(f.neg(1)))?;
            let k = combined.kernel_basis();
            let alpha = k.select_rows(&(0..a.cols()).collect::<Vec<_>>());
            Ok(column_basis(&a.mul(&alpha)?))
        }
        SubspaceOp::Quotient => {
            let mut e = Echelon::new(f, a.rows());
            for c in 0..a.cols() {
                e.insert(&a.column(c));
            }
            let mut reps = Vec::new();
            for c in 0..b.cols() {
                let col = b.column(c);
                if e.insert(&col) {
                    reps.push(col);
                }
            }
            Ok(FpMatrix::from_columns(f, a.rows(), &reps))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn identity_is_its_own_rref() {
        let id = FpMatrix::identity(f(2), 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.rank, 3);
    }

    #[test]
    fn zero_matrix_has_no_pivots() {
        let z = FpMatrix::zeros(f(3), 2, 3);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert!(r.pivots.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn hand_reduced_example_mod_5() {
        let m = FpMatrix::from_rows(f(5), &[vec![1, 2], vec![2, 4]]).unwrap();
        let r = m.rref();
        assert_eq!(r.matrix, FpMatrix::from_rows(f(5), &[vec![1, 2], vec![0, 0]]).unwrap());
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn kernels_of_trivial_cases() {
        assert_eq!(FpMatrix::identity(f(3), 4).kernel_basis().cols(), 0);
        let k = FpMatrix::zeros(f(3), 3, 3).kernel_basis();
        assert_eq!(k, FpMatrix::identity(f(3), 3));
    }

    #[test]
    fn kernel_of_all_ones_row_over_f2_by_enumeration() {
        let m = FpMatrix::from_rows(f(2), &[vec![1, 1]]).unwrap();
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0), vec![1, 1]);
        // Independent check: enumerate all four vectors of F_2^2.
        let sols: Vec<_> = (0..4u32)
            .map(|v| vec![v & 1, v >> 1])
            .filter(|v| m.mul_vec(v).unwrap() == vec![0])
            .collect();
        assert_eq!(sols, vec![vec![0, 0], vec![1, 1]]);
    }

    #[test]
    fn subspace_examples() {
        let fld = f(2);
        let v = FpMatrix::from_rows(fld, &[vec![1, 0], vec![1, 1], vec![0, 1]]).unwrap();
        let i = subspace(SubspaceOp::Intersect, &v, &v).unwrap();
        assert_eq!(i.cols(), 2);
        let e1 = FpMatrix::from_columns(fld, 2, &[vec![1, 0]]);
        let e2 = FpMatrix::from_columns(fld, 2, &[vec![0, 1]]);
        assert_eq!(subspace(SubspaceOp::Sum, &e1, &e2).unwrap().cols(), 2);

        let fld3 = f(3);
        let e1 = FpMatrix::from_columns(fld3, 2, &[vec![1, 0]]);
        let q = subspace(SubspaceOp::Quotient, &e1, &FpMatrix::identity(fld3, 2)).unwrap();
        assert_eq!(q.columns(), vec![vec![0, 1]]);
        // Enumerate the cosets of span(e1) in F_3^2 as explicit sets of vectors; each must
        // meet the span of the returned representative exactly once.
        let all: Vec<(u32, u32)> = (0..9).map(|k| (k % 3, k / 3)).collect();
        let mut cosets: Vec<Vec<(u32, u32)>> = Vec::new();
        for &v in &all {
            if cosets.iter().any(|c| c.contains(&v)) {
                continue;
            }
            cosets.push((0..3).map(|t| ((v.0 + t) % 3, v.1)).collect());
        }
        assert_eq!(cosets.len(), 3);
        let rep_span: Vec<(u32, u32)> = (0..3).map(|t| (0, t)).collect();
        for c in &cosets {
            assert_eq!(c.iter().filter(|v| rep_span.contains(v)).count(), 1);
        }
    }

    #[test]
    fn ambient_mismatch_is_reported() {
        let a = FpMatrix::identity(f(2), 2);
        let b = FpMatrix::identity(f(2), 3);
        assert_eq!(subspace(SubspaceOp::Sum, &a, &b), Err(LinAlgError::AmbientMismatch(2, 3)));
    }

    #[test]
    fn inverse_and_left_inverse() {
        let fld = f(5);
        let m = FpMatrix::from_rows(fld, &[vec![2, 1], vec![1, 1]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), FpMatrix::identity(fld, 2));
        let tall = FpMatrix::from_rows(fld, &[vec![1, 0], vec![2, 1], vec![0, 3]]).unwrap();
        let l = tall.left_inverse().unwrap();
        assert_eq!(l.mul(&tall).unwrap(), FpMatrix::identity(fld, 2));
        assert!(FpMatrix::from_rows(fld, &[vec![1, 2], vec![2, 4]]).unwrap().inverse().is_none());
    }

    #[test]
    fn solve_finds_solutions_or_reports_none() {
        let fld = f(3);
        let m = FpMatrix::from_rows(fld, &[vec![1, 1], vec![0, 0]]).unwrap();
        let x = m.solve(&[2, 0]).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), vec![2, 0]);
        assert_eq!(m.solve(&[0, 1]).unwrap(), None);
    }

    #[test]
    fn non_primes_are_rejected() {
        assert_eq!(PrimeField::new(4), Err(LinAlgError::NotPrime(4)));
        assert!(PrimeField::new(7).is_ok());
    }
}

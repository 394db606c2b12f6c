//! Dense matrices over F_p with deterministic row reduction.

use super::{LinAlgError, PrimeField};
use std::fmt;

/// A dense row-major matrix over a prime field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Result of reduced row-echelon reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: FpMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix over F_{} ({}x{})", self.field.p(), self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from rows of integers, reducing every entry mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self, LinAlgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LinAlgError::Ragged);
            }
            data.extend(row.iter().map(|&x| field.reduce(x)));
        }
        Ok(Self { field, rows: r, cols: c, data })
    }

    /// Builds a matrix whose columns are the given vectors of length `len`.
    pub fn from_columns(field: PrimeField, len: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(field, len, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), len, "column length mismatch");
            for (i, &x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x % field.p();
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.p();
    }
    /// Adds `v` to entry (r, c).
    #[inline]
    pub fn add_to(&mut self, r: usize, c: usize, v: u32) {
        let i = r * self.cols + c;
        self.data[i] = self.field.add(self.data[i], v % self.field.p());
    }
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }
    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::Shape { expected: self.cols, found: other.rows });
        }
        let p = self.field.p() as u64;
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                for (c, &b) in orow.iter().enumerate() {
                    acc[c] += a * b as u64;
                }
                if k % 1024 == 1023 {
                    acc.iter_mut().for_each(|x| *x %= p);
                }
            }
            for c in 0..other.cols {
                out.data[r * other.cols + c] = (acc[c] % p) as u32;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::Shape { expected: self.cols, found: v.len() });
        }
        let p = self.field.p() as u64;
        Ok((0..self.rows)
            .map(|r| {
                let s: u64 = self.row(r).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64 % p).sum();
                (s % p) as u32
            })
            .collect())
    }

    pub fn add(&self, other: &FpMatrix) -> Result<FpMatrix, LinAlgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinAlgError::Shape { expected: self.rows * self.cols, found: other.rows * other.cols });
        }
        let f = self.field;
        Ok(Self {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
        })
    }

    pub fn scale(&self, s: u32) -> FpMatrix {
        let f = self.field;
        Self { field: f, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.mul(a, s)).collect() }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &FpMatrix) -> Result<FpMatrix, LinAlgError> {
        if self.rows != other.rows {
            return Err(LinAlgError::Shape { expected: self.rows, found: other.rows });
        }
        let mut out = Self::zeros(self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            out.data[r * out.cols..r * out.cols + self.cols].copy_from_slice(self.row(r));
            out.data[r * out.cols + self.cols..(r + 1) * out.cols].copy_from_slice(other.row(r));
        }
        Ok(out)
    }

    /// Sub-matrix made of the listed rows.
    pub fn select_rows(&self, rows: &[usize]) -> FpMatrix {
        let mut out = Self::zeros(self.field, rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            out.data[i * self.cols..(i + 1) * self.cols].copy_from_slice(self.row(r));
        }
        out
    }

    /// Sub-matrix made of the listed columns.
    pub fn select_columns(&self, cols: &[usize]) -> FpMatrix {
        let mut out = Self::zeros(self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.data[r * cols.len() + j] = self.get(r, c);
            }
        }
        out
    }

    /// In-place Gauss–Jordan elimination with leftmost-nonzero pivoting.
    /// Returns the pivot columns.
    fn reduce_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let p = f.p();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut prow = 0usize;
        for c in 0..cols {
            if prow == self.rows {
                break;
            }
            let Some(r) = (prow..self.rows).find(|&r| self.data[r * cols + c] != 0) else {
                continue;
            };
            if r != prow {
                for j in 0..cols {
                    self.data.swap(r * cols + j, prow * cols + j);
                }
            }
            let inv = f.inv(self.data[prow * cols + c]);
            if inv != 1 {
                for j in c..cols {
                    let x = self.data[prow * cols + j];
                    self.data[prow * cols + j] = f.mul(x, inv);
                }
            }
            let (before, rest) = self.data.split_at_mut(prow * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            let eliminate = |row: &mut [u32]| {
                let factor = row[c];
                if factor != 0 {
                    let neg = p - factor;
                    for j in c..cols {
                        let pj = pivot_row[j];
                        if pj != 0 {
                            row[j] = ((row[j] as u64 + neg as u64 * pj as u64) % p as u64) as u32;
                        }
                    }
                }
            };
            for row in before.chunks_mut(cols) {
                eliminate(row);
            }
            for row in after.chunks_mut(cols) {
                eliminate(row);
            }
            pivots.push(c);
            prow += 1;
        }
        pivots
    }

    /// Reduced row-echelon form, pivot columns and rank.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.reduce_in_place();
        let rank = pivots.len();
        Rref { matrix: m, pivots, rank }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // Eliminating along the shorter side is cheaper and gives the same rank.
        if self.rows > self.cols {
            self.transpose().rref().rank
        } else {
            self.rref().rank
        }
    }

    /// Basis of the right null space, returned as the columns of a `cols × nullity` matrix.
    pub fn kernel_basis(&self) -> FpMatrix {
        let f = self.field;
        let Rref { matrix: r, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = Self::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.data[fc * free.len() + j] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                let v = r.get(i, fc);
                if v != 0 {
                    k.data[pc * free.len() + j] = f.neg(v);
                }
            }
        }
        k
    }

    /// Solves `self · x = b`, returning one solution if any exists.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>, LinAlgError> {
        if b.len() != self.rows {
            return Err(LinAlgError::Shape { expected: self.rows, found: b.len() });
        }
        let aug = self.hcat(&FpMatrix::from_columns(self.field, self.rows, &[b.to_vec()]))?;
        let Rref { matrix: r, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols);
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix, if invertible.
    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hcat(&FpMatrix::identity(self.field, n)).ok()?;
        let r = aug.rref();
        if r.rank < n || r.pivots[..n].iter().enumerate().any(|(i, &c)| i != c) {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(r.matrix.select_rows(&(0..n).collect::<Vec<_>>()).select_columns(&cols))
    }

    /// For a matrix with linearly independent columns, a left inverse `L` with `L · self = I`.
    pub fn left_inverse(&self) -> Option<FpMatrix> {
        let n = self.rows;
        let k = self.cols;
        let aug = self.hcat(&FpMatrix::identity(self.field, n)).ok()?;
        let r = aug.rref();
        if r.pivots.len() < k || r.pivots[..k].iter().enumerate().any(|(i, &c)| i != c) {
            return None;
        }
        let cols: Vec<usize> = (k..k + n).collect();
        Some(r.matrix.select_rows(&(0..k).collect::<Vec<_>>()).select_columns(&cols))
    }
}

//! Compressed sparse row matrices.
//!
//! Every matrix produced here is in canonical form: column indices are
//! strictly increasing within each row. Exact zeros produced by summation or
//! cancellation are dropped, so structurally zero matrices store nothing.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    ptr: Vec<usize>,
    indices: Vec<usize>,
    data: Vec<f64>,
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix {}x{} nnz={} ", self.rows, self.cols, self.nnz())?;
        f.debug_list()
            .entries(self.iter().map(|(i, j, v)| ((i, j), v)))
            .finish()
    }
}

impl SparseMatrix {
    /// Validates a raw CSR triplet.
    pub fn from_csr(
        rows: usize,
        cols: usize,
        ptr: Vec<usize>,
        indices: Vec<usize>,
        data: Vec<f64>,
    ) -> Result<Self> {
        if ptr.len() != rows + 1 {
            return Err(Error::InvalidCsr(format!(
                "ptr has length {}, expected {}",
                ptr.len(),
                rows + 1
            )));
        }
        if ptr[0] != 0 || ptr[rows] != indices.len() || indices.len() != data.len() {
            return Err(Error::InvalidCsr("ptr endpoints do not match storage".into()));
        }
        for r in 0..rows {
            if ptr[r] > ptr[r + 1] {
                return Err(Error::InvalidCsr(format!("ptr decreases at row {r}")));
            }
            let row = &indices[ptr[r]..ptr[r + 1]];
            if row.iter().any(|&c| c >= cols) {
                return Err(Error::InvalidCsr(format!("column out of range in row {r}")));
            }
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidCsr(format!("row {r} is not strictly sorted")));
            }
        }
        Ok(Self { rows, cols, ptr, indices, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, ptr: vec![0; rows + 1], indices: Vec::new(), data: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![1.0; n])
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let triplets = diag.iter().enumerate().map(|(i, &v)| (i, i, v));
        Self::from_triplets(diag.len(), diag.len(), triplets)
            .expect("diagonal indices are in range")
    }

    /// Builds a matrix from coordinate triplets, summing duplicates.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut entries: Vec<(usize, usize, f64)> = triplets.into_iter().collect();
        if let Some(&(r, c, _)) = entries.iter().find(|&&(r, c, _)| r >= rows || c >= cols) {
            return Err(Error::DimensionMismatch(format!(
                "triplet ({r}, {c}) outside {rows}x{cols}"
            )));
        }
        entries.sort_by_key(|&(r, c, _)| (r, c));

        let mut ptr = vec![0usize; rows + 1];
        let mut indices = Vec::with_capacity(entries.len());
        let mut data = Vec::with_capacity(entries.len());
        let mut k = 0;
        while k < entries.len() {
            let (r, c, _) = entries[k];
            let mut sum = 0.0;
            while k < entries.len() && entries[k].0 == r && entries[k].1 == c {
                sum += entries[k].2;
                k += 1;
            }
            if sum != 0.0 {
                indices.push(c);
                data.push(sum);
                ptr[r + 1] += 1;
            }
        }
        for r in 0..rows {
            ptr[r + 1] += ptr[r];
        }
        Ok(Self { rows, cols, ptr, indices, data })
    }

    pub fn from_dense(rows: &[Vec<f64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let triplets = rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &v)| (i, j, v)));
        Self::from_triplets(nrows, ncols, triplets).expect("dense rows are rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.data.len()
    }

    pub fn ptr(&self) -> &[usize] {
        &self.ptr
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> (&[usize], &[f64]) {
        let span = self.ptr[r]..self.ptr[r + 1];
        (&self.indices[span.clone()], &self.data[span])
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        let (idx, vals) = self.row(r);
        idx.binary_search(&c).map_or(0.0, |k| vals[k])
    }

    /// Iterates stored entries as `(row, col, value)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.rows).flat_map(move |r| {
            let (idx, vals) = self.row(r);
            idx.iter().zip(vals).map(move |(&c, &v)| (r, c, v))
        })
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut out = vec![vec![0.0; self.cols]; self.rows];
        for (r, c, v) in self.iter() {
            out[r][c] = v;
        }
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut counts = vec![0usize; self.cols + 1];
        for &c in &self.indices {
            counts[c + 1] += 1;
        }
        for c in 0..self.cols {
            counts[c + 1] += counts[c];
        }
        let ptr = counts.clone();
        let mut next = counts;
        let mut indices = vec![0; self.nnz()];
        let mut data = vec![0.0; self.nnz()];
        // rows are visited in increasing order, so each output row stays sorted
        for (r, c, v) in self.iter() {
            let slot = next[c];
            indices[slot] = r;
            data[slot] = v;
            next[c] += 1;
        }
        SparseMatrix { rows: self.cols, cols: self.rows, ptr, indices, data }
    }

    /// `y = A x`
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.rows];
        self.mul_vec_into(x, &mut y);
        y
    }

    pub fn mul_vec_into(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.cols, "vector length does not match matrix columns");
        assert_eq!(y.len(), self.rows, "output length does not match matrix rows");
        for (r, out) in y.iter_mut().enumerate() {
            let (idx, vals) = self.row(r);
            *out = idx.iter().zip(vals).map(|(&c, &v)| v * x[c]).sum();
        }
    }

    pub fn scale(&self, alpha: f64) -> SparseMatrix {
        if alpha == 0.0 {
            return SparseMatrix::zeros(self.rows, self.cols);
        }
        let mut out = self.clone();
        out.data.iter_mut().for_each(|v| *v *= alpha);
        out
    }

    /// `diag(left) * A * diag(right)`
    pub fn scale_rows_cols(&self, left: Option<&[f64]>, right: Option<&[f64]>) -> SparseMatrix {
        let triplets = self.iter().map(|(r, c, v)| {
            let l = left.map_or(1.0, |d| d[r]);
            let rr = right.map_or(1.0, |d| d[c]);
            (r, c, l * v * rr)
        });
        SparseMatrix::from_triplets(self.rows, self.cols, triplets).expect("same shape")
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {:?} and {:?}",
                self.shape(),
                other.shape()
            )));
        }
        SparseMatrix::from_triplets(self.rows, self.cols, self.iter().chain(other.iter()))
    }

    /// Keeps the rows and columns listed (in the given order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let mut col_map = vec![usize::MAX; self.cols];
        for (k, &c) in cols.iter().enumerate() {
            col_map[c] = k;
        }
        let triplets = rows.iter().enumerate().flat_map(|(new_r, &r)| {
            let (idx, vals) = self.row(r);
            let col_map = &col_map;
            idx.iter()
                .zip(vals)
                .filter(move |(&c, _)| col_map[c] != usize::MAX)
                .map(move |(&c, &v)| (new_r, col_map[c], v))
        });
        SparseMatrix::from_triplets(rows.len(), cols.len(), triplets).expect("indices remapped")
    }

    /// Largest absolute entry of `A - A^T`.
    pub fn asymmetry(&self) -> f64 {
        if self.rows != self.cols {
            return f64::INFINITY;
        }
        self.iter()
            .map(|(r, c, v)| (v - self.get(c, r)).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }
}

/// Sparse matrix-matrix product in canonical CSR.
///
/// Row-by-row accumulation with a dense marker array; cancellation that
/// yields an exact zero is not stored.
pub fn spgemm(a: &SparseMatrix, b: &SparseMatrix) -> Result<SparseMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {:?} by {:?}",
            a.shape(),
            b.shape()
        )));
    }
    let mut ptr = Vec::with_capacity(a.rows + 1);
    ptr.push(0);
    let mut indices = Vec::new();
    let mut data = Vec::new();
    let mut acc = vec![0.0; b.cols];
    let mut touched = vec![false; b.cols];
    let mut pattern: Vec<usize> = Vec::new();

    for r in 0..a.rows {
        let (a_idx, a_vals) = a.row(r);
        for (&k, &av) in a_idx.iter().zip(a_vals) {
            let (b_idx, b_vals) = b.row(k);
            for (&c, &bv) in b_idx.iter().zip(b_vals) {
                if !touched[c] {
                    touched[c] = true;
                    pattern.push(c);
                }
                acc[c] += av * bv;
            }
        }
        pattern.sort_unstable();
        for &c in &pattern {
            if acc[c] != 0.0 {
                indices.push(c);
                data.push(acc[c]);
            }
            acc[c] = 0.0;
            touched[c] = false;
        }
        pattern.clear();
        ptr.push(indices.len());
    }
    Ok(SparseMatrix { rows: a.rows, cols: b.cols, ptr, indices, data })
}

/// Convenience for `A * B * C`.
pub fn spgemm3(a: &SparseMatrix, b: &SparseMatrix, c: &SparseMatrix) -> Result<SparseMatrix> {
    spgemm(&spgemm(a, b)?, c)
}

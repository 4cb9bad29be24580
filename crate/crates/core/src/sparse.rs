//! Compressed sparse row matrices and the block constructors used to set up
//! saddle-point systems.
//!
//! Storage is row-major CSR with strictly increasing column indices per row.
//! Explicit zeros are dropped during construction so patterns stay canonical.

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};

/// Dense entry budget for [`SparseMatrix::to_dense`].
const DENSE_ENTRY_BUDGET: usize = 100_000_000;

/// Sparse real matrix in compressed sparse row format.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    row_starts: Vec<usize>,
    col_indices: Vec<usize>,
    values: Vec<f64>,
}

impl SparseMatrix {
    /// Builds a matrix from (row, col, value) triplets. Duplicate positions are
    /// summed; entries that are exactly zero after summing are dropped.
    pub fn from_triplets(rows: usize, cols: usize, triplets: &[(usize, usize, f64)]) -> Result<Self> {
        for &(i, j, v) in triplets {
            if i >= rows || j >= cols {
                return Err(Error::InvalidDimension(format!(
                    "triplet ({i},{j}) outside {rows}x{cols}"
                )));
            }
            if !v.is_finite() {
                return Err(Error::InvalidInput(format!("non-finite value at ({i},{j})")));
            }
        }
        let mut sorted: Vec<(usize, usize, f64)> = triplets.to_vec();
        sorted.sort_unstable_by_key(|&(i, j, _)| (i, j));

        let mut row_starts = vec![0usize; rows + 1];
        let mut col_indices = Vec::with_capacity(sorted.len());
        let mut values = Vec::with_capacity(sorted.len());
        let mut it = sorted.into_iter().peekable();
        while let Some((i, j, mut v)) = it.next() {
            while let Some(&(i2, j2, v2)) = it.peek() {
                if i2 == i && j2 == j {
                    v += v2;
                    it.next();
                } else {
                    break;
                }
            }
            if v != 0.0 {
                row_starts[i + 1] += 1;
                col_indices.push(j);
                values.push(v);
            }
        }
        for r in 0..rows {
            row_starts[r + 1] += row_starts[r];
        }
        Ok(Self { rows, cols, row_starts, col_indices, values })
    }

    /// Builds directly from CSR parts, validating the storage invariants.
    pub fn from_csr(
        rows: usize,
        cols: usize,
        row_starts: Vec<usize>,
        col_indices: Vec<usize>,
        values: Vec<f64>,
    ) -> Result<Self> {
        let m = Self { rows, cols, row_starts, col_indices, values };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        if self.row_starts.len() != self.rows + 1 || self.row_starts[0] != 0 {
            return Err(Error::InvalidInput("malformed row_starts".into()));
        }
        if *self.row_starts.last().unwrap() != self.values.len()
            || self.col_indices.len() != self.values.len()
        {
            return Err(Error::InvalidInput("row_starts/value length mismatch".into()));
        }
        for r in 0..self.rows {
            let (lo, hi) = (self.row_starts[r], self.row_starts[r + 1]);
            if lo > hi {
                return Err(Error::InvalidInput("row_starts not non-decreasing".into()));
            }
            let mut prev: Option<usize> = None;
            for k in lo..hi {
                let j = self.col_indices[k];
                if j >= self.cols {
                    return Err(Error::InvalidInput("column index out of range".into()));
                }
                if let Some(p) = prev {
                    if j <= p {
                        return Err(Error::InvalidInput("columns not strictly increasing".into()));
                    }
                }
                prev = Some(j);
                if !self.values[k].is_finite() {
                    return Err(Error::InvalidInput("non-finite stored value".into()));
                }
            }
        }
        Ok(())
    }

    /// n-by-n identity.
    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            row_starts: (0..=n).collect(),
            col_indices: (0..n).collect(),
            values: vec![1.0; n],
        }
    }

    /// Matrix with no stored entries.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            row_starts: vec![0; rows + 1],
            col_indices: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Entry lookup by binary search within the row.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (lo, hi) = (self.row_starts[i], self.row_starts[i + 1]);
        match self.col_indices[lo..hi].binary_search(&j) {
            Ok(k) => self.values[lo + k],
            Err(_) => 0.0,
        }
    }

    /// Iterates the stored entries of row `i` as (col, value) pairs.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let (lo, hi) = (self.row_starts[i], self.row_starts[i + 1]);
        self.col_indices[lo..hi]
            .iter()
            .copied()
            .zip(self.values[lo..hi].iter().copied())
    }

    /// y = M x.
    pub fn spmv(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols {
            return Err(Error::InvalidDimension(format!(
                "spmv: {}x{} with vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        let mut y = vec![0.0; self.rows];
        for i in 0..self.rows {
            let mut acc = 0.0;
            for k in self.row_starts[i]..self.row_starts[i + 1] {
                acc += self.values[k] * x[self.col_indices[k]];
            }
            y[i] = acc;
        }
        Ok(y)
    }

    /// y = Mᵀ x, computed without materializing the transpose.
    pub fn spmv_t(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.rows {
            return Err(Error::InvalidDimension(format!(
                "spmv_t: {}x{} with vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        let mut y = vec![0.0; self.cols];
        for i in 0..self.rows {
            let xi = x[i];
            if xi == 0.0 {
                continue;
            }
            for k in self.row_starts[i]..self.row_starts[i + 1] {
                y[self.col_indices[k]] += self.values[k] * xi;
            }
        }
        Ok(y)
    }

    /// Explicit transpose.
    pub fn transpose(&self) -> Self {
        let mut counts = vec![0usize; self.cols + 1];
        for &j in &self.col_indices {
            counts[j + 1] += 1;
        }
        for c in 0..self.cols {
            counts[c + 1] += counts[c];
        }
        let mut row_starts = counts.clone();
        let mut col_indices = vec![0usize; self.nnz()];
        let mut values = vec![0.0; self.nnz()];
        let mut cursor = counts;
        for i in 0..self.rows {
            for k in self.row_starts[i]..self.row_starts[i + 1] {
                let j = self.col_indices[k];
                let slot = cursor[j];
                cursor[j] += 1;
                col_indices[slot] = i;
                values[slot] = self.values[k];
            }
        }
        row_starts.truncate(self.cols + 1);
        Self {
            rows: self.cols,
            cols: self.rows,
            row_starts,
            col_indices,
            values,
        }
    }

    /// Entrywise scaling; a zero factor collapses to the empty pattern.
    pub fn scale(&self, factor: f64) -> Self {
        if factor == 0.0 {
            return Self::zeros(self.rows, self.cols);
        }
        let mut out = self.clone();
        for v in &mut out.values {
            *v *= factor;
        }
        out
    }

    /// Entrywise sum; cancellations to exact zero are dropped.
    pub fn add(a: &Self, b: &Self) -> Result<Self> {
        if a.rows != b.rows || a.cols != b.cols {
            return Err(Error::InvalidDimension(format!(
                "add: {}x{} vs {}x{}",
                a.rows, a.cols, b.rows, b.cols
            )));
        }
        let mut row_starts = vec![0usize; a.rows + 1];
        let mut col_indices = Vec::with_capacity(a.nnz() + b.nnz());
        let mut values = Vec::with_capacity(a.nnz() + b.nnz());
        for i in 0..a.rows {
            let mut ka = a.row_starts[i];
            let mut kb = b.row_starts[i];
            let (ea, eb) = (a.row_starts[i + 1], b.row_starts[i + 1]);
            while ka < ea || kb < eb {
                let (j, v) = if kb >= eb || (ka < ea && a.col_indices[ka] < b.col_indices[kb]) {
                    let out = (a.col_indices[ka], a.values[ka]);
                    ka += 1;
                    out
                } else if ka >= ea || b.col_indices[kb] < a.col_indices[ka] {
                    let out = (b.col_indices[kb], b.values[kb]);
                    kb += 1;
                    out
                } else {
                    let out = (a.col_indices[ka], a.values[ka] + b.values[kb]);
                    ka += 1;
                    kb += 1;
                    out
                };
                if v != 0.0 {
                    col_indices.push(j);
                    values.push(v);
                }
            }
            row_starts[i + 1] = values.len();
        }
        Ok(Self {
            rows: a.rows,
            cols: a.cols,
            row_starts,
            col_indices,
            values,
        })
    }

    /// Symmetric/skew decomposition A = H + S with H = (A+Aᵀ)/2, S = (A−Aᵀ)/2.
    pub fn sym_skew_split(&self) -> Result<(Self, Self)> {
        if self.rows != self.cols {
            return Err(Error::InvalidDimension(format!(
                "sym_skew_split on {}x{}",
                self.rows, self.cols
            )));
        }
        let at = self.transpose();
        let h = Self::add(&self.scale(0.5), &at.scale(0.5))?;
        let s = Self::add(&self.scale(0.5), &at.scale(-0.5))?;
        Ok((h, s))
    }

    /// Dense copy, guarded by an entry budget.
    pub fn to_dense(&self) -> Result<DenseMatrix> {
        let total = self
            .rows
            .checked_mul(self.cols)
            .ok_or_else(|| Error::ResourceLimit("dense size overflows usize".into()))?;
        if total > DENSE_ENTRY_BUDGET {
            return Err(Error::ResourceLimit(format!(
                "dense {}x{} exceeds {DENSE_ENTRY_BUDGET} entries",
                self.rows, self.cols
            )));
        }
        let mut d = DenseMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for (j, v) in self.row(i) {
                *d.at_mut(i, j) = v;
            }
        }
        Ok(d)
    }

    /// Stacks blocks along the diagonal.
    pub fn block_diag(blocks: &[&Self]) -> Self {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let nnz: usize = blocks.iter().map(|b| b.nnz()).sum();
        let mut row_starts = Vec::with_capacity(rows + 1);
        let mut col_indices = Vec::with_capacity(nnz);
        let mut values = Vec::with_capacity(nnz);
        row_starts.push(0);
        let mut col_off = 0;
        for b in blocks {
            for i in 0..b.rows {
                for (j, v) in b.row(i) {
                    col_indices.push(col_off + j);
                    values.push(v);
                }
                row_starts.push(values.len());
            }
            col_off += b.cols;
        }
        Self { rows, cols, row_starts, col_indices, values }
    }

    /// Stacks blocks vertically; all blocks must share a column count.
    pub fn vstack(blocks: &[&Self]) -> Result<Self> {
        let cols = blocks.first().map(|b| b.cols).unwrap_or(0);
        if blocks.iter().any(|b| b.cols != cols) {
            return Err(Error::InvalidDimension("vstack: column counts differ".into()));
        }
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let nnz: usize = blocks.iter().map(|b| b.nnz()).sum();
        let mut row_starts = Vec::with_capacity(rows + 1);
        let mut col_indices = Vec::with_capacity(nnz);
        let mut values = Vec::with_capacity(nnz);
        row_starts.push(0);
        for b in blocks {
            for i in 0..b.rows {
                for (j, v) in b.row(i) {
                    col_indices.push(j);
                    values.push(v);
                }
                row_starts.push(values.len());
            }
        }
        Ok(Self { rows, cols, row_starts, col_indices, values })
    }

    /// Appends dense columns on the right.
    pub fn append_columns(&self, columns: &[Vec<f64>]) -> Result<Self> {
        for c in columns {
            if c.len() != self.rows {
                return Err(Error::InvalidDimension(format!(
                    "append_columns: column length {} vs {} rows",
                    c.len(),
                    self.rows
                )));
            }
        }
        let cols = self.cols + columns.len();
        let mut row_starts = Vec::with_capacity(self.rows + 1);
        let mut col_indices = Vec::new();
        let mut values = Vec::new();
        row_starts.push(0);
        for i in 0..self.rows {
            for (j, v) in self.row(i) {
                col_indices.push(j);
                values.push(v);
            }
            for (k, c) in columns.iter().enumerate() {
                if c[i] != 0.0 {
                    col_indices.push(self.cols + k);
                    values.push(c[i]);
                }
            }
            row_starts.push(values.len());
        }
        Ok(Self { rows: self.rows, cols, row_starts, col_indices, values })
    }
}

/// n-by-n tridiagonal matrix with constant bands (`lo` below, `di` on, `up`
/// above the diagonal).
pub fn tridiag(n: usize, lo: f64, di: f64, up: f64) -> Result<SparseMatrix> {
    if n == 0 {
        return Err(Error::InvalidDimension("tridiag of order 0".into()));
    }
    let mut triplets = Vec::with_capacity(3 * n);
    for i in 0..n {
        if i > 0 {
            triplets.push((i, i - 1, lo));
        }
        triplets.push((i, i, di));
        if i + 1 < n {
            triplets.push((i, i + 1, up));
        }
    }
    SparseMatrix::from_triplets(n, n, &triplets)
}

/// Kronecker product A ⊗ B.
pub fn kron(a: &SparseMatrix, b: &SparseMatrix) -> Result<SparseMatrix> {
    if a.rows == 0 || a.cols == 0 || b.rows == 0 || b.cols == 0 {
        return Err(Error::InvalidDimension("kron with empty operand".into()));
    }
    let rows = a
        .rows
        .checked_mul(b.rows)
        .ok_or_else(|| Error::InvalidDimension("kron row count overflows".into()))?;
    let cols = a
        .cols
        .checked_mul(b.cols)
        .ok_or_else(|| Error::InvalidDimension("kron column count overflows".into()))?;
    let mut row_starts = Vec::with_capacity(rows + 1);
    let mut col_indices = Vec::with_capacity(a.nnz() * b.nnz());
    let mut values = Vec::with_capacity(a.nnz() * b.nnz());
    row_starts.push(0);
    for ia in 0..a.rows {
        for ib in 0..b.rows {
            for (ja, va) in a.row(ia) {
                for (jb, vb) in b.row(ib) {
                    let v = va * vb;
                    if v != 0.0 {
                        col_indices.push(ja * b.cols + jb);
                        values.push(v);
                    }
                }
            }
            row_starts.push(values.len());
        }
    }
    Ok(SparseMatrix {
        rows,
        cols,
        row_starts,
        col_indices,
        values,
    })
}

/// Block saddle-point matrix [[A, B], [−Bᵀ, 0]] of size (m+n)×(m+n).
pub fn assemble_saddle(a: &SparseMatrix, b: &SparseMatrix) -> Result<SparseMatrix> {
    if a.rows != a.cols {
        return Err(Error::InvalidDimension(format!(
            "leading block must be square, got {}x{}",
            a.rows, a.cols
        )));
    }
    if b.rows != a.rows {
        return Err(Error::InvalidDimension(format!(
            "off-diagonal block has {} rows, expected {}",
            b.rows, a.rows
        )));
    }
    let (m, n) = (a.rows, b.cols);
    let bt = b.transpose();
    let total = m + n;
    let mut row_starts = Vec::with_capacity(total + 1);
    let mut col_indices = Vec::with_capacity(a.nnz() + 2 * b.nnz());
    let mut values = Vec::with_capacity(a.nnz() + 2 * b.nnz());
    row_starts.push(0);
    for i in 0..m {
        for (j, v) in a.row(i) {
            col_indices.push(j);
            values.push(v);
        }
        for (j, v) in b.row(i) {
            col_indices.push(m + j);
            values.push(v);
        }
        row_starts.push(values.len());
    }
    for i in 0..n {
        for (j, v) in bt.row(i) {
            col_indices.push(j);
            values.push(-v);
        }
        row_starts.push(values.len());
    }
    Ok(SparseMatrix {
        rows: total,
        cols: total,
        row_starts,
        col_indices,
        values,
    })
}

//! Dense matrices and the direct factorizations behind the inner solves:
//! LU with partial pivoting, Cholesky, and a complete-pivoting rank count.
//!
//! Everything here is O(n³) and meant for desk-scale problems where the
//! shifted inner matrix is formed explicitly.

use crate::error::{Error, Result};

/// Row-major dense real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = 1.0;
        }
        m
    }

    /// Builds from nested row slices; rows must have equal lengths.
    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            data.extend_from_slice(row);
        }
        Self { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }

    pub fn row_slice(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.at(i, j)).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[f64]) {
        assert_eq!(col.len(), self.rows);
        for (i, &v) in col.iter().enumerate() {
            *self.at_mut(i, j) = v;
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j);
            }
        }
        t
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols {
            return Err(Error::InvalidDimension(format!(
                "matvec: {}x{} with vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        let mut y = vec![0.0; self.rows];
        for i in 0..self.rows {
            let row = self.row_slice(i);
            y[i] = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
        Ok(y)
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::InvalidDimension(format!(
                "matmul: {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.at(i, k);
                if aik == 0.0 {
                    continue;
                }
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                let src = &other.data[k * other.cols..(k + 1) * other.cols];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += aik * s;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::InvalidDimension("add: shape mismatch".into()));
        }
        let mut out = self.clone();
        for (d, s) in out.data.iter_mut().zip(&other.data) {
            *d += s;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::InvalidDimension("sub: shape mismatch".into()));
        }
        let mut out = self.clone();
        for (d, s) in out.data.iter_mut().zip(&other.data) {
            *d -= s;
        }
        Ok(out)
    }

    pub fn scale(&self, factor: f64) -> Self {
        let mut out = self.clone();
        for d in &mut out.data {
            *d *= factor;
        }
        out
    }

    /// Largest absolute entry.
    pub fn norm_max(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Maximum absolute asymmetry |M − Mᵀ| relative to the largest entry.
    pub fn asymmetry(&self) -> f64 {
        let scale = self.norm_max().max(f64::MIN_POSITIVE);
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                worst = worst.max((self.at(i, j) - self.at(j, i)).abs());
            }
        }
        worst / scale
    }
}

/// LU factorization with partial pivoting, stored packed (unit lower triangle
/// below the diagonal of U).
#[derive(Debug, Clone)]
pub struct LUFactors {
    lu: DenseMatrix,
    pivots: Vec<usize>,
}

/// Factors a square matrix as PM = LU.
pub fn lu_factor(m: DenseMatrix) -> Result<LUFactors> {
    if m.rows != m.cols {
        return Err(Error::InvalidDimension(format!(
            "lu_factor on {}x{}",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    let mut lu = m;
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        let mut piv = k;
        let mut best = lu.at(k, k).abs();
        for i in (k + 1)..n {
            let cand = lu.at(i, k).abs();
            if cand > best {
                best = cand;
                piv = i;
            }
        }
        if best == 0.0 {
            return Err(Error::SingularMatrix(format!("zero pivot column at step {k}")));
        }
        pivots.push(piv);
        if piv != k {
            for j in 0..n {
                let tmp = lu.at(k, j);
                *lu.at_mut(k, j) = lu.at(piv, j);
                *lu.at_mut(piv, j) = tmp;
            }
        }
        let inv_pivot = 1.0 / lu.at(k, k);
        for i in (k + 1)..n {
            let factor = lu.at(i, k) * inv_pivot;
            *lu.at_mut(i, k) = factor;
            if factor == 0.0 {
                continue;
            }
            let (head, tail) = lu.data.split_at_mut(i * n);
            let pivot_row = &head[k * n + k + 1..k * n + n];
            let row = &mut tail[k + 1..n];
            for (r, p) in row.iter_mut().zip(pivot_row) {
                *r -= factor * p;
            }
        }
    }
    Ok(LUFactors { lu, pivots })
}

impl LUFactors {
    pub fn order(&self) -> usize {
        self.lu.rows
    }

    /// Solves M x = b using the stored factors.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.order();
        if b.len() != n {
            return Err(Error::InvalidDimension(format!(
                "lu_solve: length {} vs order {n}",
                b.len()
            )));
        }
        let mut x = b.to_vec();
        for (k, &piv) in self.pivots.iter().enumerate() {
            x.swap(k, piv);
        }
        // forward substitution with unit lower triangle
        for i in 1..n {
            let mut acc = x[i];
            let row = self.lu.row_slice(i);
            for (j, xv) in x[..i].iter().enumerate() {
                acc -= row[j] * xv;
            }
            x[i] = acc;
        }
        // back substitution
        for i in (0..n).rev() {
            let row = self.lu.row_slice(i);
            let mut acc = x[i];
            for j in (i + 1)..n {
                acc -= row[j] * x[j];
            }
            let d = row[i];
            if d == 0.0 {
                return Err(Error::SingularMatrix("zero diagonal in U".into()));
            }
            x[i] = acc / d;
        }
        Ok(x)
    }

    /// Unit lower-triangular factor, expanded.
    pub fn lower(&self) -> DenseMatrix {
        let n = self.order();
        let mut l = DenseMatrix::identity(n);
        for i in 0..n {
            for j in 0..i {
                *l.at_mut(i, j) = self.lu.at(i, j);
            }
        }
        l
    }

    /// Upper-triangular factor, expanded.
    pub fn upper(&self) -> DenseMatrix {
        let n = self.order();
        let mut u = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                *u.at_mut(i, j) = self.lu.at(i, j);
            }
        }
        u
    }

    /// Row permutation as swap indices in elimination order.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
}

/// Cholesky factor of a symmetric positive definite matrix.
#[derive(Debug, Clone)]
pub struct CholFactors {
    lower: DenseMatrix,
}

/// Relative asymmetry accepted before Cholesky refuses the input.
const CHOL_SYMMETRY_TOL: f64 = 1e-12;

/// Factors a symmetric positive definite matrix as M = LLᵀ.
pub fn chol_factor(m: &DenseMatrix) -> Result<CholFactors> {
    if m.rows != m.cols {
        return Err(Error::InvalidDimension(format!(
            "chol_factor on {}x{}",
            m.rows, m.cols
        )));
    }
    if m.asymmetry() > CHOL_SYMMETRY_TOL {
        return Err(Error::InvalidInput(format!(
            "matrix asymmetry {:.2e} exceeds {CHOL_SYMMETRY_TOL:.0e}",
            m.asymmetry()
        )));
    }
    let n = m.rows;
    let mut l = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut acc = m.at(i, j);
            for k in 0..j {
                acc -= l.at(i, k) * l.at(j, k);
            }
            if i == j {
                if acc <= 0.0 {
                    return Err(Error::NotPositiveDefinite(format!(
                        "pivot {acc:.3e} at step {i}"
                    )));
                }
                *l.at_mut(i, j) = acc.sqrt();
            } else {
                *l.at_mut(i, j) = acc / l.at(j, j);
            }
        }
    }
    Ok(CholFactors { lower: l })
}

impl CholFactors {
    pub fn order(&self) -> usize {
        self.lower.rows
    }

    pub fn lower(&self) -> &DenseMatrix {
        &self.lower
    }

    /// Solves M x = b via the two triangular solves.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.order();
        if b.len() != n {
            return Err(Error::InvalidDimension(format!(
                "chol_solve: length {} vs order {n}",
                b.len()
            )));
        }
        let mut x = b.to_vec();
        for i in 0..n {
            let mut acc = x[i];
            for j in 0..i {
                acc -= self.lower.at(i, j) * x[j];
            }
            x[i] = acc / self.lower.at(i, i);
        }
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in (i + 1)..n {
                acc -= self.lower.at(j, i) * x[j];
            }
            x[i] = acc / self.lower.at(i, i);
        }
        Ok(x)
    }
}

/// Number of pivots above `tol * max |entry of M|` under Gaussian elimination
/// with complete pivoting. The empty matrix has rank 0.
pub fn numerical_rank(m: &DenseMatrix, tol: f64) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let mut w = m.clone();
    let threshold = tol * w.norm_max();
    if w.norm_max() == 0.0 {
        return 0;
    }
    let steps = w.rows.min(w.cols);
    let mut row_perm: Vec<usize> = (0..w.rows).collect();
    let mut col_perm: Vec<usize> = (0..w.cols).collect();
    let mut rank = 0;
    for k in 0..steps {
        // complete pivoting: largest entry of the trailing block
        let (mut pi, mut pj, mut best) = (k, k, 0.0f64);
        for i in k..w.rows {
            for j in k..w.cols {
                let v = w.at(row_perm[i], col_perm[j]).abs();
                if v > best {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        }
        if best <= threshold {
            break;
        }
        row_perm.swap(k, pi);
        col_perm.swap(k, pj);
        rank += 1;
        let pivot = w.at(row_perm[k], col_perm[k]);
        for i in (k + 1)..w.rows {
            let factor = w.at(row_perm[i], col_perm[k]) / pivot;
            if factor == 0.0 {
                continue;
            }
            for j in k..w.cols {
                let upd = factor * w.at(row_perm[k], col_perm[j]);
                *w.at_mut(row_perm[i], col_perm[j]) -= upd;
            }
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn lu_identity() {
        let f = lu_factor(DenseMatrix::identity(3)).unwrap();
        assert_eq!(f.lower(), DenseMatrix::identity(3));
        assert_eq!(f.upper(), DenseMatrix::identity(3));
        assert_eq!(f.pivots(), &[0, 1, 2]);
        assert_eq!(f.solve(&[1.0, 2.0, 3.0]).unwrap(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn lu_forced_pivot() {
        let m = DenseMatrix::from_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let f = lu_factor(m).unwrap();
        assert_eq!(f.pivots(), &[1, 1]);
        assert_eq!(f.lower(), DenseMatrix::identity(2));
        let u = f.upper();
        assert_eq!(u.at(0, 0), 1.0);
        assert_eq!(u.at(0, 1), 0.0);
        assert_eq!(u.at(1, 1), 1.0);
    }

    #[test]
    fn lu_hand_elimination() {
        let m = DenseMatrix::from_rows(&[&[4.0, 3.0], &[6.0, 3.0]]);
        let f = lu_factor(m).unwrap();
        // pivot row 1 first, multiplier 4/6 = 2/3
        assert_eq!(f.pivots(), &[1, 1]);
        let l = f.lower();
        assert!((l.at(1, 0) - 2.0 / 3.0).abs() < 1e-15);
        let u = f.upper();
        assert_eq!(u.at(0, 0), 6.0);
        assert_eq!(u.at(0, 1), 3.0);
        assert!((u.at(1, 1) - 1.0).abs() < 1e-15);

        let x = f.solve(&[7.0, 9.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-14);
        assert!((x[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn lu_singular_detected() {
        let m = DenseMatrix::from_rows(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert!(matches!(lu_factor(m), Err(Error::SingularMatrix(_))));
    }

    #[test]
    fn lu_diag_solve() {
        let m = DenseMatrix::from_rows(&[&[2.0, 0.0], &[0.0, 4.0]]);
        let f = lu_factor(m).unwrap();
        assert_eq!(f.solve(&[2.0, 4.0]).unwrap(), vec![1.0, 1.0]);
    }

    #[test]
    fn lu_random_solve_residuals() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..100 {
            let n = 50;
            let mut m = DenseMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    *m.at_mut(i, j) = rng.gen_range(-1.0..1.0);
                }
                // diagonal dominance keeps the instances well conditioned
                *m.at_mut(i, i) += n as f64;
            }
            let b: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let f = lu_factor(m.clone()).unwrap();
            let x = f.solve(&b).unwrap();
            let ax = m.matvec(&x).unwrap();
            let res: f64 = ax
                .iter()
                .zip(&b)
                .map(|(a, bb)| (a - bb) * (a - bb))
                .sum::<f64>()
                .sqrt();
            let bn: f64 = b.iter().map(|v| v * v).sum::<f64>().sqrt();
            assert!(res / bn <= 1e-10, "relative residual {}", res / bn);
        }
    }

    #[test]
    fn lu_reconstruction() {
        let mut rng = StdRng::seed_from_u64(11);
        let n = 20;
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                *m.at_mut(i, j) = rng.gen_range(-1.0..1.0);
            }
        }
        let f = lu_factor(m.clone()).unwrap();
        let prod = f.lower().matmul(&f.upper()).unwrap();
        // apply recorded swaps to M to get PM
        let mut pm = m.clone();
        for (k, &p) in f.pivots().iter().enumerate() {
            if p != k {
                for j in 0..n {
                    let tmp = pm.at(k, j);
                    *pm.at_mut(k, j) = pm.at(p, j);
                    *pm.at_mut(p, j) = tmp;
                }
            }
        }
        let err = pm.sub(&prod).unwrap().norm_max();
        assert!(err <= 1e-12 * m.norm_max());
    }

    #[test]
    fn chol_examples() {
        let f = chol_factor(&DenseMatrix::identity(2)).unwrap();
        assert_eq!(f.lower(), &DenseMatrix::identity(2));

        let d = DenseMatrix::from_rows(&[&[4.0, 0.0], &[0.0, 9.0]]);
        let f = chol_factor(&d).unwrap();
        assert_eq!(f.lower().at(0, 0), 2.0);
        assert_eq!(f.lower().at(1, 1), 3.0);

        let m = DenseMatrix::from_rows(&[&[4.0, 2.0], &[2.0, 5.0]]);
        let f = chol_factor(&m).unwrap();
        assert_eq!(f.lower().at(0, 0), 2.0);
        assert_eq!(f.lower().at(1, 0), 1.0);
        assert_eq!(f.lower().at(1, 1), 2.0);

        let x = f.solve(&[8.0, 9.0]).unwrap();
        assert!((x[0] - 11.0 / 8.0).abs() < 1e-14);
        assert!((x[1] - 5.0 / 4.0).abs() < 1e-14);
    }

    #[test]
    fn chol_rejects_bad_inputs() {
        let asym = DenseMatrix::from_rows(&[&[4.0, 1.0], &[2.0, 5.0]]);
        assert!(matches!(chol_factor(&asym), Err(Error::InvalidInput(_))));

        let indef = DenseMatrix::from_rows(&[&[1.0, 2.0], &[2.0, 1.0]]);
        assert!(matches!(
            chol_factor(&indef),
            Err(Error::NotPositiveDefinite(_))
        ));
    }

    #[test]
    fn chol_random_spd_reconstruction() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..20 {
            let n = 30;
            let mut a = DenseMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    *a.at_mut(i, j) = rng.gen_range(-1.0..1.0);
                }
            }
            // MᵀM + I is symmetric positive definite
            let m = a
                .transpose()
                .matmul(&a)
                .unwrap()
                .add(&DenseMatrix::identity(n))
                .unwrap();
            let f = chol_factor(&m).unwrap();
            let rec = f.lower().matmul(&f.lower().transpose()).unwrap();
            assert!(rec.sub(&m).unwrap().norm_max() <= 1e-12 * m.norm_max());
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(numerical_rank(&DenseMatrix::identity(3), 1e-10), 3);
        assert_eq!(numerical_rank(&DenseMatrix::zeros(4, 4), 1e-10), 0);
        let rank1 = DenseMatrix::from_rows(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert_eq!(numerical_rank(&rank1, 1e-10), 1);
        assert_eq!(numerical_rank(&DenseMatrix::zeros(0, 0), 1e-10), 0);
    }

    #[test]
    fn rank_permutation_invariance() {
        let mut rng = StdRng::seed_from_u64(5);
        let mut m = DenseMatrix::zeros(8, 6);
        // rank 3 by construction: three independent outer products
        for _ in 0..3 {
            let u: Vec<f64> = (0..8).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let v: Vec<f64> = (0..6).map(|_| rng.gen_range(-1.0..1.0)).collect();
            for i in 0..8 {
                for j in 0..6 {
                    *m.at_mut(i, j) += u[i] * v[j];
                }
            }
        }
        let base = numerical_rank(&m, 1e-10);
        assert_eq!(base, 3);
        // permute rows and columns
        let mut p = DenseMatrix::zeros(8, 6);
        for i in 0..8 {
            for j in 0..6 {
                *p.at_mut((i + 3) % 8, (j + 2) % 6) = m.at(i, j);
            }
        }
        assert_eq!(numerical_rank(&p, 1e-10), base);
    }

    #[test]
    fn rank_gram_matrix_matches() {
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..10 {
            let mut m = DenseMatrix::zeros(10, 7);
            for _ in 0..4 {
                let u: Vec<f64> = (0..10).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let v: Vec<f64> = (0..7).map(|_| rng.gen_range(-1.0..1.0)).collect();
                for i in 0..10 {
                    for j in 0..7 {
                        *m.at_mut(i, j) += u[i] * v[j];
                    }
                }
            }
            let gram = m.transpose().matmul(&m).unwrap();
            assert_eq!(
                numerical_rank(&m, 1e-10),
                numerical_rank(&gram, 1e-10),
                "rank of MᵀM differs from rank of M"
            );
        }
    }
}

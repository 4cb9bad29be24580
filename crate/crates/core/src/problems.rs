//! Generators for the two benchmark saddle-point systems: a leapfrog-ordered
//! convection-diffusion discretization with full-column-rank constraint block
//! (example 1) and its rank-deficient variant with two dependent appended
//! columns (example 2).

use crate::error::{Error, Result};
use crate::sparse::{kron, tridiag, SparseMatrix};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Grid parameters: `p` interior points per direction, viscosity `v`, and the
/// mesh size `h = 1/(p+1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemParams {
    pub p: usize,
    pub v: f64,
    pub h: f64,
}

impl ProblemParams {
    pub fn new(p: usize, v: f64) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidParameter(format!("grid count p = {p}, need p >= 2")));
        }
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::InvalidParameter(format!("viscosity v = {v}, need v > 0")));
        }
        Ok(Self { p, v, h: 1.0 / (p as f64 + 1.0) })
    }
}

/// The block system {A, B, f, g} of dimensions m and n, n <= m, with A
/// positive definite and right-hand side (f; -g).
#[derive(Debug, Clone)]
pub struct SaddlePointSystem {
    a: SparseMatrix,
    b: SparseMatrix,
    f: Vec<f64>,
    g: Vec<f64>,
}

impl SaddlePointSystem {
    /// Validates dimensions and runs a probabilistic positive-definiteness
    /// check on A (20 deterministic pseudo-random unit vectors).
    pub fn new(a: SparseMatrix, b: SparseMatrix, f: Vec<f64>, g: Vec<f64>) -> Result<Self> {
        if a.rows() != a.cols() {
            return Err(Error::InvalidDimension(format!(
                "leading block must be square, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        let (m, n) = (a.rows(), b.cols());
        if b.rows() != m {
            return Err(Error::InvalidDimension(format!(
                "constraint block has {} rows, expected {m}",
                b.rows()
            )));
        }
        if n > m {
            return Err(Error::InvalidDimension(format!("n = {n} exceeds m = {m}")));
        }
        if f.len() != m || g.len() != n {
            return Err(Error::InvalidDimension(format!(
                "right-hand side lengths {}/{} vs dimensions {m}/{n}",
                f.len(),
                g.len()
            )));
        }
        if f.iter().chain(g.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite right-hand side entry".into()));
        }
        let mut rng = StdRng::seed_from_u64(0x5add1e);
        for _ in 0..20 {
            let x: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let norm: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm == 0.0 {
                continue;
            }
            let ax = a.spmv(&x)?;
            let quad: f64 = x.iter().zip(&ax).map(|(xi, yi)| xi * yi).sum();
            if quad <= 0.0 {
                return Err(Error::InvalidInput(format!(
                    "leading block failed the positive-definiteness probe (x'Ax = {quad:.3e})"
                )));
            }
        }
        Ok(Self { a, b, f, g })
    }

    pub fn a(&self) -> &SparseMatrix {
        &self.a
    }

    pub fn b(&self) -> &SparseMatrix {
        &self.b
    }

    pub fn f(&self) -> &[f64] {
        &self.f
    }

    pub fn g(&self) -> &[f64] {
        &self.g
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.b.cols()
    }

    /// Total dimension m + n.
    pub fn dim(&self) -> usize {
        self.m() + self.n()
    }

    /// Full right-hand side (f; -g) of the block system.
    pub fn rhs(&self) -> Vec<f64> {
        let mut b = Vec::with_capacity(self.dim());
        b.extend_from_slice(&self.f);
        b.extend(self.g.iter().map(|v| -v));
        b
    }
}

/// Convection-diffusion blocks shared by both examples:
/// T = (v/h²)·tridiag(-1,2,-1) + (1/2h)·tridiag(-1,0,1) and the velocity
/// blocks A = diag(I⊗T + T⊗I, I⊗T + T⊗I), B̂ = [I⊗F; F⊗I] with
/// F = (1/h)·tridiag(-1,1,0).
fn velocity_and_constraint(params: ProblemParams) -> Result<(SparseMatrix, SparseMatrix)> {
    let ProblemParams { p, v, h } = params;
    let diffusion = tridiag(p, -1.0, 2.0, -1.0)?.scale(v / (h * h));
    let convection = tridiag(p, -1.0, 0.0, 1.0)?.scale(1.0 / (2.0 * h));
    let t = SparseMatrix::add(&diffusion, &convection)?;
    let f = tridiag(p, -1.0, 1.0, 0.0)?.scale(1.0 / h);
    let eye = SparseMatrix::identity(p);

    let laplacian_like = SparseMatrix::add(&kron(&eye, &t)?, &kron(&t, &eye)?)?;
    let a = SparseMatrix::block_diag(&[&laplacian_like, &laplacian_like]);
    let bhat = SparseMatrix::vstack(&[&kron(&eye, &f)?, &kron(&f, &eye)?])?;
    Ok((a, bhat))
}

/// Nonsingular benchmark problem: B has full column rank p², A is 2p²-by-2p².
/// The right-hand side makes the all-ones vector the exact solution.
pub fn build_example1(p: usize, v: f64) -> Result<SaddlePointSystem> {
    let params = ProblemParams::new(p, v)?;
    let (a, b) = velocity_and_constraint(params)?;
    let (f, g) = rhs_for_ones(&a, &b)?;
    SaddlePointSystem::new(a, b, f, g)
}

/// Singular benchmark problem: B = [B̂, b₁, b₂] where b₁ = B̂(e;0) and
/// b₂ = B̂(0;e) with e the all-ones vector of length p²/2, so rank(B) = p²
/// while n = p²+2. Requires even p.
pub fn build_example2(p: usize, v: f64) -> Result<SaddlePointSystem> {
    let params = ProblemParams::new(p, v)?;
    if !p.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "grid count p = {p} must be even (appended columns use blocks of length p²/2)"
        )));
    }
    let (a, bhat) = velocity_and_constraint(params)?;
    let psq = p * p;
    let mut e_top = vec![0.0; psq];
    let mut e_bottom = vec![0.0; psq];
    for i in 0..psq / 2 {
        e_top[i] = 1.0;
        e_bottom[psq / 2 + i] = 1.0;
    }
    let b1 = bhat.spmv(&e_top)?;
    let b2 = bhat.spmv(&e_bottom)?;
    let b = bhat.append_columns(&[b1, b2])?;
    let (f, g) = rhs_for_ones(&a, &b)?;
    SaddlePointSystem::new(a, b, f, g)
}

/// Right-hand side for which the all-ones vector solves the block system:
/// f = A·1 + B·1 and g = Bᵀ·1.
pub fn rhs_for_ones(a: &SparseMatrix, b: &SparseMatrix) -> Result<(Vec<f64>, Vec<f64>)> {
    if a.rows() != a.cols() || b.rows() != a.rows() {
        return Err(Error::InvalidDimension("rhs_for_ones: block shapes inconsistent".into()));
    }
    let ones_m = vec![1.0; a.cols()];
    let ones_n = vec![1.0; b.cols()];
    let mut f = a.spmv(&ones_m)?;
    let bn = b.spmv(&ones_n)?;
    for (fi, bi) in f.iter_mut().zip(&bn) {
        *fi += bi;
    }
    let g = b.spmv_t(&ones_m)?;
    Ok((f, g))
}

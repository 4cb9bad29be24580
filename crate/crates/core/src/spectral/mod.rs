//! Spectral verification of the splitting iteration and the preconditioned
//! operator: iteration-matrix spectra, convergence and semi-convergence
//! predicates, and the closed-form eigenvalue predictions with their
//! clustering bounds.

mod eig;

pub use eig::{dense_eigenvalues, inverse_iteration, symmetric_extremes, EIG_DIM_GUARD};

use crate::dense::{numerical_rank, DenseMatrix};
use crate::error::{Error, Result};
use crate::precond::{FamilyKind, ShiftParams, ShiftSplitPreconditioner};
use crate::problems::SaddlePointSystem;
use crate::sparse::assemble_saddle;
use num_complex::Complex64;

/// Eigenvalues within this distance of 1 are excluded from the
/// pseudo-spectral radius.
pub const EXCLUDE_ONE_TOL: f64 = 1e-8;

/// Spectrum summary of an iteration matrix.
#[derive(Debug, Clone)]
pub struct SpectralReport {
    pub eigenvalues: Vec<Complex64>,
    pub spectral_radius: f64,
    /// Maximum modulus over eigenvalues excluding those within
    /// [`EXCLUDE_ONE_TOL`] of 1; zero when no eigenvalue remains.
    pub pseudo_spectral_radius: f64,
    pub index_condition_ok: bool,
    pub rank_i_minus_t: usize,
    pub rank_i_minus_t_squared: usize,
}

impl SpectralReport {
    /// Both semi-convergence conditions: index one and pseudo-spectral
    /// radius below one.
    pub fn semi_convergent(&self) -> bool {
        self.index_condition_ok && self.pseudo_spectral_radius < 1.0
    }
}

/// Per-eigenvector scalars of the preconditioned operator: a₁ + i·b₁ is the
/// Rayleigh quotient of A at u and c₁ = ||Bᵀu||²/||u||² ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayleighTriple {
    pub a1: f64,
    pub b1: f64,
    pub c1: f64,
}

/// Coefficients of the reduced quadratic x² − φx + ψ = 0 governing iteration
/// matrix eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticCoeffs {
    pub phi: Complex64,
    pub psi: Complex64,
}

/// Closed-form eigenvalue pair of the preconditioned operator for one
/// Rayleigh triple, together with the square root z₁ + i·z₂ used to form it.
#[derive(Debug, Clone, Copy)]
pub struct EigPrediction {
    pub z1: f64,
    pub z2: f64,
    pub lambda_plus: Complex64,
    pub lambda_minus: Complex64,
}

/// T(α,β) = P⁻¹Q of the splitting 𝒜 = P − Q, built column by column through
/// the factorized preconditioner.
pub fn iteration_matrix(
    system: &SaddlePointSystem,
    kind: FamilyKind,
    params: ShiftParams,
) -> Result<DenseMatrix> {
    let precond = ShiftSplitPreconditioner::build(kind, system, params)?;
    let q = precond.assemble_q(system)?;
    apply_to_columns(&precond, &q)
}

/// P⁻¹𝒜, built column by column.
pub fn preconditioned_matrix(
    system: &SaddlePointSystem,
    kind: FamilyKind,
    params: ShiftParams,
) -> Result<DenseMatrix> {
    let precond = ShiftSplitPreconditioner::build(kind, system, params)?;
    let saddle = assemble_saddle(system.a(), system.b())?.to_dense()?;
    apply_to_columns(&precond, &saddle)
}

fn apply_to_columns(
    precond: &ShiftSplitPreconditioner,
    m: &DenseMatrix,
) -> Result<DenseMatrix> {
    let dim = m.rows();
    if dim > EIG_DIM_GUARD {
        return Err(Error::ResourceLimit(format!(
            "iteration matrix guard: order {dim} exceeds {EIG_DIM_GUARD}"
        )));
    }
    let mut out = DenseMatrix::zeros(dim, dim);
    for j in 0..dim {
        let col = precond.apply(&m.column(j))?;
        out.set_column(j, &col);
    }
    Ok(out)
}

/// Spectral radius of T and the strict-contraction verdict ρ(T) < 1.
pub fn convergence_check(t: &DenseMatrix) -> Result<(f64, bool)> {
    let eigs = dense_eigenvalues(t)?;
    let rho = eigs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok((rho, rho < 1.0 - 1e-10))
}

/// Semi-convergence test for a (possibly singular) splitting: pseudo-spectral
/// radius excluding the eigenvalue 1, plus the index-one condition
/// rank(I−T) = rank((I−T)²).
pub fn semiconvergence_check(t: &DenseMatrix, rank_tol: f64) -> Result<SpectralReport> {
    let eigenvalues = dense_eigenvalues(t)?;
    let spectral_radius = eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let pseudo_spectral_radius = eigenvalues
        .iter()
        .filter(|z| (*z - Complex64::new(1.0, 0.0)).norm() > EXCLUDE_ONE_TOL)
        .map(|z| z.norm())
        .fold(0.0, f64::max);

    let n = t.rows();
    let mut i_minus_t = t.scale(-1.0);
    for i in 0..n {
        *i_minus_t.at_mut(i, i) += 1.0;
    }
    let squared = i_minus_t.matmul(&i_minus_t)?;
    let rank_i_minus_t = numerical_rank(&i_minus_t, rank_tol);
    let rank_i_minus_t_squared = numerical_rank(&squared, rank_tol);

    Ok(SpectralReport {
        eigenvalues,
        spectral_radius,
        pseudo_spectral_radius,
        index_condition_ok: rank_i_minus_t == rank_i_minus_t_squared,
        rank_i_minus_t,
        rank_i_minus_t_squared,
    })
}

/// True when both roots of x² − φx + ψ = 0 have modulus below one, decided by
/// the criterion |φ − φ̄ψ| + |ψ|² < 1.
pub fn root_modulus_predicate(q: &QuadraticCoeffs) -> bool {
    (q.phi - q.phi.conj() * q.psi).norm() + q.psi.norm_sqr() < 1.0
}

/// Rayleigh scalars of a (complex) candidate eigenvector component u.
pub fn rayleigh_triple(system: &SaddlePointSystem, u: &[Complex64]) -> Result<RayleighTriple> {
    if u.len() != system.m() {
        return Err(Error::InvalidDimension(format!(
            "rayleigh_triple: vector length {} vs m = {}",
            u.len(),
            system.m()
        )));
    }
    let norm_sqr: f64 = u.iter().map(|z| z.norm_sqr()).sum();
    if norm_sqr == 0.0 {
        return Err(Error::InvalidInput("rayleigh_triple of the zero vector".into()));
    }
    let (re, im): (Vec<f64>, Vec<f64>) = u.iter().map(|z| (z.re, z.im)).unzip();
    let a_re = system.a().spmv(&re)?;
    let a_im = system.a().spmv(&im)?;
    // u*Au with A real: sum over conj(u_i) * (A u)_i
    let mut quad = Complex64::new(0.0, 0.0);
    for i in 0..u.len() {
        quad += u[i].conj() * Complex64::new(a_re[i], a_im[i]);
    }
    let bt_re = system.b().spmv_t(&re)?;
    let bt_im = system.b().spmv_t(&im)?;
    let bt_norm_sqr: f64 = bt_re
        .iter()
        .zip(&bt_im)
        .map(|(r, i)| r * r + i * i)
        .sum();
    Ok(RayleighTriple {
        a1: quad.re / norm_sqr,
        b1: quad.im / norm_sqr,
        c1: bt_norm_sqr / norm_sqr,
    })
}

/// Relative size of the constraint component: ||Bᵀu|| / ||u||.
pub fn constraint_activity(system: &SaddlePointSystem, u: &[Complex64]) -> Result<f64> {
    let triple = rayleigh_triple(system, u)?;
    Ok(triple.c1.max(0.0).sqrt())
}

/// Closed-form eigenvalue pair for a Rayleigh triple: z₁ + i·z₂ is the square
/// root of a₂ + i·b₂ with a₂ = β²(a₁²−b₁²) − 4αβc₁ and b₂ = 2β²a₁b₁, taking
/// sign(0) := +1, and
///
/// ```text
/// λ± = 1/2 ± [(±z₁ − αβ − βa₁) + i(±z₂ − βb₁)] / [2(αβ + 2βa₁ + 4c₁ + 2iβb₁)]
/// ```
pub fn predict_eigenpair(t: &RayleighTriple, params: &ShiftParams) -> Result<EigPrediction> {
    let (alpha, beta) = (params.alpha(), params.beta());
    let (a1, b1, c1) = (t.a1, t.b1, t.c1);
    let denom_re = alpha * beta + 2.0 * beta * a1 + 4.0 * c1;
    if denom_re == 0.0 && b1 == 0.0 {
        return Err(Error::InvalidInput(
            "degenerate eigenvalue relation: alpha*beta + 2*beta*a1 + 4*c1 = 0 with b1 = 0".into(),
        ));
    }
    let a2 = beta * beta * (a1 * a1 - b1 * b1) - 4.0 * alpha * beta * c1;
    let modulus = (a2 * a2 + 4.0 * beta.powi(4) * a1 * a1 * b1 * b1).sqrt();
    let z1 = ((modulus + a2) / 2.0).max(0.0).sqrt();
    let sign_b1 = if b1 >= 0.0 { 1.0 } else { -1.0 };
    let z2 = sign_b1 * ((modulus - a2) / 2.0).max(0.0).sqrt();

    let denom = 2.0 * Complex64::new(denom_re, 2.0 * beta * b1);
    let shift = Complex64::new(alpha * beta + beta * a1, beta * b1);
    let z = Complex64::new(z1, z2);
    let half = Complex64::new(0.5, 0.0);
    let lambda_plus = half + (z - shift) / denom;
    let lambda_minus = half - (z + shift) / denom;
    Ok(EigPrediction {
        z1,
        z2,
        lambda_plus,
        lambda_minus,
    })
}

/// Clustering bound on |λ± − 1/2|²:
///
/// ```text
/// f(a₁,b₁,c₁) = [(αβ + 2βa₁)² + (β|b₁| + sqrt(β²b₁² + 4αβc₁))²]
///             / (4[(αβ + 2βa₁ + 4c₁)² + 4β²b₁²])
/// ```
pub fn disc_bound(t: &RayleighTriple, params: &ShiftParams) -> f64 {
    let (alpha, beta) = (params.alpha(), params.beta());
    let (a1, b1, c1) = (t.a1, t.b1, t.c1);
    let num = (alpha * beta + 2.0 * beta * a1).powi(2)
        + (beta * b1.abs() + (beta * beta * b1 * b1 + 4.0 * alpha * beta * c1).sqrt()).powi(2);
    let den = 4.0 * ((alpha * beta + 2.0 * beta * a1 + 4.0 * c1).powi(2) + 4.0 * beta * beta * b1 * b1);
    num / den
}

/// Bounds on eigenvalues whose eigenvector satisfies Bᵀu = 0, in terms of the
/// extremes of the symmetric part H, the skew radius ρ(S), and α:
/// real part in [re_lo, re_hi] and |imaginary part| ≤ im_abs.
pub fn btu_zero_bounds(
    min_h: f64,
    rho_h: f64,
    rho_s: f64,
    alpha: f64,
) -> Result<(f64, f64, f64)> {
    if min_h.is_nan() || min_h <= 0.0 || min_h > rho_h {
        return Err(Error::InvalidInput(format!(
            "need 0 < min_h <= rho_h, got min_h = {min_h}, rho_h = {rho_h}"
        )));
    }
    if rho_s < 0.0 || alpha < 0.0 {
        return Err(Error::InvalidInput(format!(
            "need rho_s >= 0 and alpha >= 0, got rho_s = {rho_s}, alpha = {alpha}"
        )));
    }
    let re_lo = min_h * (alpha + 2.0 * min_h)
        / ((alpha + 2.0 * rho_h).powi(2) + 4.0 * rho_s * rho_s);
    let re_hi = (rho_h * (alpha + 2.0 * rho_h) + 2.0 * rho_s * rho_s)
        / (alpha + 2.0 * min_h).powi(2);
    let im_abs = alpha * rho_s / (alpha + 2.0 * min_h).powi(2);
    Ok((re_lo, re_hi, im_abs))
}

/// ρ(S) = sqrt(λ_max(SᵀS)) for a skew-symmetric matrix.
pub fn skew_radius(s: &DenseMatrix) -> Result<f64> {
    if s.rows() != s.cols() {
        return Err(Error::InvalidDimension(format!(
            "skew_radius of {}x{}",
            s.rows(),
            s.cols()
        )));
    }
    let n = s.rows();
    let scale = s.norm_max().max(f64::MIN_POSITIVE);
    for i in 0..n {
        for j in i..n {
            if (s.at(i, j) + s.at(j, i)).abs() > 1e-12 * scale {
                return Err(Error::InvalidInput(format!(
                    "matrix is not skew-symmetric at ({i},{j})"
                )));
            }
        }
    }
    if s.norm_max() == 0.0 {
        return Ok(0.0);
    }
    let gram = s.transpose().matmul(s)?;
    let (_, hi) = symmetric_extremes(&gram)?;
    Ok(hi.max(0.0).sqrt())
}

/// Dimension of the eigenspace null(M − λI) at a fixed shift, via the rank of
/// the real 2n-by-2n embedding when λ is complex.
pub fn eigenspace_dim(m: &DenseMatrix, lambda: Complex64, tol: f64) -> usize {
    let n = m.rows();
    if lambda.im == 0.0 {
        let mut shifted = m.clone();
        for i in 0..n {
            *shifted.at_mut(i, i) -= lambda.re;
        }
        return n - numerical_rank(&shifted, tol);
    }
    // [[M - aI, bI], [-bI, M - aI]] has twice the complex nullity
    let mut emb = DenseMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let v = m.at(i, j);
            *emb.at_mut(i, j) = v;
            *emb.at_mut(n + i, n + j) = v;
        }
        *emb.at_mut(i, i) -= lambda.re;
        *emb.at_mut(n + i, n + i) -= lambda.re;
        *emb.at_mut(i, n + i) = lambda.im;
        *emb.at_mut(n + i, i) = -lambda.im;
    }
    (2 * n - numerical_rank(&emb, tol)) / 2
}

/// Eigenvalues with the matching eigenvectors, recovered by inverse
/// iteration seeded from the QR eigenvalues.
pub fn eigenpairs(m: &DenseMatrix) -> Result<Vec<(Complex64, Vec<Complex64>)>> {
    let eigenvalues = dense_eigenvalues(m)?;
    let mut out = Vec::with_capacity(eigenvalues.len());
    for lambda in eigenvalues {
        let v = inverse_iteration(m, lambda)?;
        out.push((lambda, v));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{build_example1, SaddlePointSystem};
    use crate::sparse::SparseMatrix;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn tiny_system() -> SaddlePointSystem {
        let a = SparseMatrix::identity(1);
        let b = SparseMatrix::from_triplets(1, 1, &[(0, 0, 1.0)]).unwrap();
        SaddlePointSystem::new(a, b, vec![2.0], vec![1.0]).unwrap()
    }

    #[test]
    fn iteration_matrix_scalar_case() {
        // P = [[3, 2], [-2, 1]], Q = [[2, 1], [-1, 1]], T = P⁻¹Q = [[4,-1],[1,5]]/7
        let sys = tiny_system();
        let t = iteration_matrix(&sys, FamilyKind::Mgssp, ShiftParams::new(1.0, 1.0).unwrap())
            .unwrap();
        let expected = [[4.0 / 7.0, -1.0 / 7.0], [1.0 / 7.0, 5.0 / 7.0]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((t.at(i, j) - expected[i][j]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn splitting_identity() {
        // T + P⁻¹𝒜 = I
        let sys = build_example1(2, 1.0).unwrap();
        let params = ShiftParams::new(0.5, 0.8).unwrap();
        let t = iteration_matrix(&sys, FamilyKind::Mgssp, params).unwrap();
        let pa = preconditioned_matrix(&sys, FamilyKind::Mgssp, params).unwrap();
        let sum = t.add(&pa).unwrap();
        let eye = DenseMatrix::identity(sys.dim());
        assert!(sum.sub(&eye).unwrap().norm_max() < 1e-12);
    }

    #[test]
    fn convergence_check_examples() {
        let zero = DenseMatrix::zeros(3, 3);
        let (rho, conv) = convergence_check(&zero).unwrap();
        assert_eq!(rho, 0.0);
        assert!(conv);

        let eye = DenseMatrix::identity(3);
        let (rho, conv) = convergence_check(&eye).unwrap();
        assert!((rho - 1.0).abs() < 1e-12);
        assert!(!conv);
    }

    #[test]
    fn semiconvergence_check_examples() {
        // 1x1 identity: the only eigenvalue is excluded, ranks are 0 = 0
        let report = semiconvergence_check(&DenseMatrix::identity(1), 1e-8).unwrap();
        assert_eq!(report.pseudo_spectral_radius, 0.0);
        assert!(report.index_condition_ok);
        assert_eq!(report.rank_i_minus_t, 0);
        assert!(report.semi_convergent());

        let t = DenseMatrix::from_rows(&[&[1.0, 0.0], &[0.0, 0.5]]);
        let report = semiconvergence_check(&t, 1e-8).unwrap();
        assert!((report.pseudo_spectral_radius - 0.5).abs() < 1e-12);
        assert_eq!(report.rank_i_minus_t, 1);
        assert_eq!(report.rank_i_minus_t_squared, 1);
        assert!(report.semi_convergent());
        assert!((report.spectral_radius - 1.0).abs() < 1e-12);
    }

    #[test]
    fn root_modulus_examples() {
        let zero = Complex64::new(0.0, 0.0);
        assert!(root_modulus_predicate(&QuadraticCoeffs { phi: zero, psi: zero }));
        // double root at 1 sits on the boundary
        assert!(!root_modulus_predicate(&QuadraticCoeffs {
            phi: Complex64::new(2.0, 0.0),
            psi: Complex64::new(1.0, 0.0)
        }));
        // roots ±2i
        assert!(!root_modulus_predicate(&QuadraticCoeffs {
            phi: zero,
            psi: Complex64::new(4.0, 0.0)
        }));
    }

    #[test]
    fn root_modulus_matches_brute_force() {
        let mut rng = StdRng::seed_from_u64(2024);
        for _ in 0..1000 {
            let phi = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let psi = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let disc = (phi * phi - 4.0 * psi).sqrt();
            let r1 = (phi + disc) / 2.0;
            let r2 = (phi - disc) / 2.0;
            let brute = r1.norm() < 1.0 && r2.norm() < 1.0;
            assert_eq!(
                root_modulus_predicate(&QuadraticCoeffs { phi, psi }),
                brute,
                "phi = {phi}, psi = {psi}"
            );
        }
    }

    #[test]
    fn rayleigh_examples() {
        let sys = tiny_system();
        let t = rayleigh_triple(&sys, &[Complex64::new(2.0, 0.0)]).unwrap();
        assert_eq!((t.a1, t.b1), (1.0, 0.0));
        assert_eq!(t.c1, 1.0);

        // u in null(Bᵀ) has c1 = 0
        let a = SparseMatrix::identity(2);
        let b = SparseMatrix::from_triplets(2, 1, &[(0, 0, 1.0)]).unwrap();
        let sys2 = SaddlePointSystem::new(a, b, vec![1.0, 1.0], vec![1.0]).unwrap();
        let t = rayleigh_triple(&sys2, &[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])
            .unwrap();
        assert_eq!(t.c1, 0.0);

        // nonsymmetric A probes the skew contribution
        let a = SparseMatrix::from_triplets(
            2,
            2,
            &[(0, 0, 2.0), (0, 1, 1.0), (1, 0, 3.0), (1, 1, 2.0)],
        )
        .unwrap();
        let sys3 =
            SaddlePointSystem::new(a, SparseMatrix::zeros(2, 0), vec![1.0, 1.0], vec![]).unwrap();
        let t = rayleigh_triple(&sys3, &[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)])
            .unwrap();
        assert_eq!((t.a1, t.b1), (2.0, 0.0));
        let inv_sqrt2 = 1.0 / 2.0_f64.sqrt();
        let u = [
            Complex64::new(inv_sqrt2, 0.0),
            Complex64::new(0.0, inv_sqrt2),
        ];
        let t = rayleigh_triple(&sys3, &u).unwrap();
        assert!((t.a1 - 2.0).abs() < 1e-15);
        assert!((t.b1 + 1.0).abs() < 1e-15);

        assert!(matches!(
            rayleigh_triple(&sys3, &[Complex64::new(0.0, 0.0); 2]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn predict_examples() {
        // c1 = 0 degenerates the quadratic to roots {1/2, 0} at alpha = 0
        let t = RayleighTriple { a1: 1.0, b1: 0.0, c1: 0.0 };
        let p = predict_eigenpair(&t, &ShiftParams::new(0.0, 1.0).unwrap()).unwrap();
        assert!((p.z1 - 1.0).abs() < 1e-15 && p.z2 == 0.0);
        assert!((p.lambda_plus - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        assert!(p.lambda_minus.norm() < 1e-15);

        let p = predict_eigenpair(&t, &ShiftParams::new(1.0, 1.0).unwrap()).unwrap();
        assert!((p.lambda_plus - Complex64::new(1.0 / 3.0, 0.0)).norm() < 1e-15);
        assert!(p.lambda_minus.norm() < 1e-15);
    }

    #[test]
    fn predict_square_root_property_and_quadratic_roots() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let t = RayleighTriple {
                a1: rng.gen_range(0.1..4.0),
                b1: rng.gen_range(-2.0..2.0),
                c1: rng.gen_range(0.0..3.0),
            };
            let params =
                ShiftParams::new(rng.gen_range(0.0..3.0), rng.gen_range(0.05..3.0)).unwrap();
            let p = predict_eigenpair(&t, &params).unwrap();
            let (alpha, beta) = (params.alpha(), params.beta());

            // (z1 + i z2)² = a2 + i b2
            let a2 = beta * beta * (t.a1 * t.a1 - t.b1 * t.b1) - 4.0 * alpha * beta * t.c1;
            let b2 = 2.0 * beta * beta * t.a1 * t.b1;
            let sq = Complex64::new(p.z1, p.z2) * Complex64::new(p.z1, p.z2);
            let scale = (a2 * a2 + b2 * b2).sqrt().max(1.0);
            assert!((sq - Complex64::new(a2, b2)).norm() <= 1e-10 * scale);
            assert!(p.z1 >= 0.0);

            // λ± solve λ² − λ(4c₁ + βa₁ + iβb₁)/Δ + c₁/Δ = 0
            let delta = Complex64::new(alpha * beta + 2.0 * beta * t.a1 + 4.0 * t.c1, 2.0 * beta * t.b1);
            let phi = Complex64::new(4.0 * t.c1 + beta * t.a1, beta * t.b1) / delta;
            let psi = Complex64::new(t.c1, 0.0) / delta;
            for lambda in [p.lambda_plus, p.lambda_minus] {
                let residual = lambda * lambda - phi * lambda + psi;
                assert!(
                    residual.norm() <= 1e-10,
                    "root residual {} for {lambda}",
                    residual.norm()
                );
            }
        }
    }

    #[test]
    fn disc_bound_examples() {
        // b1 = 0, c1 = 0 gives exactly 1/4
        let t = RayleighTriple { a1: 1.3, b1: 0.0, c1: 0.0 };
        let f = disc_bound(&t, &ShiftParams::new(0.7, 1.1).unwrap());
        assert!((f - 0.25).abs() < 1e-15);

        // alpha = 0 keeps the bound at or below 1/4
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..100 {
            let t = RayleighTriple {
                a1: rng.gen_range(0.1..4.0),
                b1: rng.gen_range(-2.0..2.0),
                c1: rng.gen_range(0.0..3.0),
            };
            let params = ShiftParams::new(0.0, rng.gen_range(0.05..3.0)).unwrap();
            assert!(disc_bound(&t, &params) <= 0.25 + 1e-15);
        }
    }

    #[test]
    fn predicted_roots_honor_disc_bound() {
        let mut rng = StdRng::seed_from_u64(29);
        for _ in 0..300 {
            let t = RayleighTriple {
                a1: rng.gen_range(0.1..4.0),
                b1: rng.gen_range(-2.0..2.0),
                c1: rng.gen_range(0.01..3.0),
            };
            let params =
                ShiftParams::new(rng.gen_range(0.0..3.0), rng.gen_range(0.05..3.0)).unwrap();
            let p = predict_eigenpair(&t, &params).unwrap();
            let f = disc_bound(&t, &params);
            let half = Complex64::new(0.5, 0.0);
            assert!((p.lambda_plus - half).norm_sqr() <= f + 1e-12);
            assert!((p.lambda_minus - half).norm_sqr() <= f + 1e-12);
        }
    }

    #[test]
    fn btu_zero_bound_examples() {
        // H = I, S = 0, alpha = 0 pins the eigenvalue at 1/2
        let (lo, hi, im) = btu_zero_bounds(1.0, 1.0, 0.0, 0.0).unwrap();
        assert!((lo - 0.5).abs() < 1e-15);
        assert!((hi - 0.5).abs() < 1e-15);
        assert_eq!(im, 0.0);

        // alpha = 0 kills the imaginary bound regardless of the skew radius
        let (_, _, im) = btu_zero_bounds(0.5, 2.0, 3.0, 0.0).unwrap();
        assert_eq!(im, 0.0);

        let (lo, hi, im) = btu_zero_bounds(1.0, 2.0, 1.0, 1.0).unwrap();
        assert!((lo - 3.0 / 29.0).abs() < 1e-15);
        assert!((hi - 4.0 / 3.0).abs() < 1e-15);
        assert!((im - 1.0 / 9.0).abs() < 1e-15);

        assert!(btu_zero_bounds(2.0, 1.0, 0.0, 0.0).is_err());
        assert!(btu_zero_bounds(1.0, 2.0, -1.0, 0.0).is_err());
    }

    #[test]
    fn skew_radius_examples() {
        assert_eq!(skew_radius(&DenseMatrix::zeros(3, 3)).unwrap(), 0.0);

        let s = DenseMatrix::from_rows(&[&[0.0, 3.0], &[-3.0, 0.0]]);
        assert!((skew_radius(&s).unwrap() - 3.0).abs() < 1e-12);

        let not_skew = DenseMatrix::identity(2);
        assert!(matches!(skew_radius(&not_skew), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn skew_radius_cross_checks_eigensolver() {
        let mut rng = StdRng::seed_from_u64(41);
        let n = 4;
        let mut s = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in (i + 1)..n {
                let v = rng.gen_range(-2.0..2.0);
                *s.at_mut(i, j) = v;
                *s.at_mut(j, i) = -v;
            }
        }
        let r = skew_radius(&s).unwrap();
        let eigs = dense_eigenvalues(&s).unwrap();
        let max_imag = eigs.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        assert!((r - max_imag).abs() < 1e-8);
    }

    #[test]
    fn eigenspace_dim_examples() {
        let half_eye = DenseMatrix::identity(3).scale(0.5);
        assert_eq!(eigenspace_dim(&half_eye, Complex64::new(0.5, 0.0), 1e-10), 3);

        let m = DenseMatrix::from_rows(&[
            &[0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0],
        ]);
        assert_eq!(eigenspace_dim(&m, Complex64::new(0.0, 0.0), 1e-10), 2);

        // complex shift through the real embedding: rotation block has
        // one-dimensional eigenspaces at ±i
        let rot = DenseMatrix::from_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]);
        assert_eq!(eigenspace_dim(&rot, Complex64::new(0.0, 1.0), 1e-10), 1);
        assert_eq!(eigenspace_dim(&rot, Complex64::new(0.0, 2.0), 1e-10), 0);
    }
}

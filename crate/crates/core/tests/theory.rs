//! Spectral behavior of the splitting iteration and the preconditioned
//! operator on desk-scale benchmark instances.

use num_complex::Complex64;
use shiftsplit::precond::{FamilyKind, ShiftParams, ShiftSplitPreconditioner};
use shiftsplit::problems::{build_example1, build_example2};
use shiftsplit::solver::{stationary_solve, SolveConfig};
use shiftsplit::spectral::{
    constraint_activity, convergence_check, dense_eigenvalues, eigenpairs, eigenspace_dim,
    iteration_matrix, preconditioned_matrix, predict_eigenpair, rayleigh_triple,
    semiconvergence_check, symmetric_extremes,
};
use shiftsplit::{numerical_rank, DenseMatrix};

const ALPHA_GRID: [f64; 4] = [0.0, 0.1, 1.0, 10.0];
const BETA_GRID: [f64; 3] = [0.1, 1.0, 10.0];

#[test]
fn stationary_grid_converges_with_decreasing_tail() {
    let sys = build_example1(4, 1.0).unwrap();
    let cfg = SolveConfig {
        max_iterations: 5000,
        ..SolveConfig::default()
    };
    for alpha in ALPHA_GRID {
        for beta in BETA_GRID {
            let p = ShiftSplitPreconditioner::build(
                FamilyKind::Mgssp,
                &sys,
                ShiftParams::new(alpha, beta).unwrap(),
            )
            .unwrap();
            let report = stationary_solve(&sys, &p, &cfg).unwrap();
            assert!(report.converged, "(alpha, beta) = ({alpha}, {beta})");
            // the residual history settles into a geometric decay: require a
            // non-increasing tail over the final quarter of the run
            let h = &report.res_history;
            let tail_start = h.len() - (h.len() / 4).max(2);
            for k in tail_start..h.len() - 1 {
                assert!(
                    h[k + 1] <= h[k] * (1.0 + 1e-12),
                    "(alpha, beta) = ({alpha}, {beta}): tail increased at step {k}"
                );
            }
        }
    }
}

#[test]
fn observed_contraction_matches_spectral_radius() {
    let sys = build_example1(4, 1.0).unwrap();
    let params = ShiftParams::new(1.0, 1.0).unwrap();
    let p = ShiftSplitPreconditioner::build(FamilyKind::Mgssp, &sys, params).unwrap();
    let cfg = SolveConfig {
        tolerance: 1e-12,
        max_iterations: 5000,
        ..SolveConfig::default()
    };
    let report = stationary_solve(&sys, &p, &cfg).unwrap();
    assert!(report.converged);

    let t = iteration_matrix(&sys, FamilyKind::Mgssp, params).unwrap();
    let (rho, _) = convergence_check(&t).unwrap();

    // geometric fit of the residual tail between 1e-3 and 1e-10
    let h = &report.res_history;
    let k0 = h.iter().position(|&r| r < 1e-3).unwrap();
    let k1 = h.iter().position(|&r| r < 1e-10).unwrap();
    assert!(k1 > k0 + 10, "window too short for a rate fit");
    let fitted = (h[k1] / h[k0]).powf(1.0 / (k1 - k0) as f64);
    assert!(
        (fitted - rho).abs() <= 0.1 * rho,
        "fitted contraction {fitted} vs spectral radius {rho}"
    );
}

#[test]
fn spectral_radius_below_one_across_grid() {
    let sys = build_example1(4, 1.0).unwrap();
    for alpha in ALPHA_GRID {
        for beta in BETA_GRID {
            let params = ShiftParams::new(alpha, beta).unwrap();
            let t = iteration_matrix(&sys, FamilyKind::Mgssp, params).unwrap();
            let (rho, converges) = convergence_check(&t).unwrap();
            assert!(
                converges,
                "(alpha, beta) = ({alpha}, {beta}): rho = {rho}"
            );
        }
    }
}

#[test]
fn no_eigenvalue_near_plus_minus_one() {
    let sys = build_example1(4, 1.0).unwrap();
    for alpha in ALPHA_GRID {
        for beta in BETA_GRID {
            let params = ShiftParams::new(alpha, beta).unwrap();
            let t = iteration_matrix(&sys, FamilyKind::Mgssp, params).unwrap();
            let eigs = dense_eigenvalues(&t).unwrap();
            for z in &eigs {
                assert!(
                    (z - Complex64::new(1.0, 0.0)).norm() > 1e-8,
                    "eigenvalue {z} touches +1 at ({alpha}, {beta})"
                );
                assert!(
                    (z + Complex64::new(1.0, 0.0)).norm() > 1e-8,
                    "eigenvalue {z} touches -1 at ({alpha}, {beta})"
                );
            }
        }
    }
}

#[test]
fn symmetric_part_is_positive_definite() {
    for &p in &[2usize, 4, 8] {
        for &v in &[1.0, 0.1, 0.01] {
            for singular in [false, true] {
                let sys = if singular {
                    build_example2(p, v).unwrap()
                } else {
                    build_example1(p, v).unwrap()
                };
                let (h, _) = sys.a().sym_skew_split().unwrap();
                let (lo, _) = symmetric_extremes(&h.to_dense().unwrap()).unwrap();
                assert!(
                    lo > 0.0,
                    "p = {p}, v = {v}, singular = {singular}: min eig {lo}"
                );
            }
        }
    }
}

#[test]
fn singular_problem_semi_converges_across_grid() {
    let sys = build_example2(4, 1.0).unwrap();
    for alpha in [0.0, 0.5, 2.0] {
        for beta in [0.5, 2.0] {
            let params = ShiftParams::new(alpha, beta).unwrap();
            let t = iteration_matrix(&sys, FamilyKind::Mgssp, params).unwrap();
            let report = semiconvergence_check(&t, 1e-8).unwrap();
            assert!(
                report.pseudo_spectral_radius < 1.0,
                "gamma = {} at ({alpha}, {beta})",
                report.pseudo_spectral_radius
            );
            assert!(
                report.index_condition_ok,
                "rank(I-T) = {} vs rank((I-T)²) = {} at ({alpha}, {beta})",
                report.rank_i_minus_t, report.rank_i_minus_t_squared
            );
            assert!(report.semi_convergent());
        }
    }
}

#[test]
fn closed_form_eigenvalues_match_observed_pairs() {
    let sys = build_example1(4, 1.0).unwrap();
    for (alpha, beta) in [(1.0, 1.0), (0.5, 2.0)] {
        let params = ShiftParams::new(alpha, beta).unwrap();
        let pa = preconditioned_matrix(&sys, FamilyKind::Mgssp, params).unwrap();
        let pairs = eigenpairs(&pa).unwrap();
        let mut checked = 0;
        for (lambda, vector) in &pairs {
            let u = &vector[..sys.m()];
            if constraint_activity(&sys, u).unwrap() <= 1e-8 {
                continue;
            }
            let triple = rayleigh_triple(&sys, u).unwrap();
            let prediction = predict_eigenpair(&triple, &params).unwrap();
            let dev = (lambda - prediction.lambda_plus)
                .norm()
                .min((lambda - prediction.lambda_minus).norm())
                / lambda.norm();
            assert!(
                dev <= 1e-6,
                "({alpha}, {beta}): eigenvalue {lambda} off the closed form by {dev:e}"
            );
            checked += 1;
        }
        assert!(checked > 0, "no eigenpair exercised the closed form");
    }
}

#[test]
fn rank_deficient_problem_has_null_eigenspace() {
    let sys = build_example2(4, 1.0).unwrap();
    let params = ShiftParams::new(0.5, 0.5).unwrap();
    let pa = preconditioned_matrix(&sys, FamilyKind::Mgssp, params).unwrap();
    let b_rank = numerical_rank(&sys.b().to_dense().unwrap(), 1e-10);
    let deficiency = sys.n() - b_rank;
    assert_eq!(deficiency, 2);
    let dim0 = eigenspace_dim(&pa, Complex64::new(0.0, 0.0), 1e-10);
    assert!(dim0 >= deficiency, "eigenspace at 0 has dimension {dim0}");
}

#[test]
fn zero_shift_produces_half_eigenspace() {
    let sys = build_example2(4, 1.0).unwrap();
    let params = ShiftParams::new(0.0, 1.0).unwrap();
    let pa = preconditioned_matrix(&sys, FamilyKind::Mgssp, params).unwrap();
    let dim_half = eigenspace_dim(&pa, Complex64::new(0.5, 0.0), 1e-10);
    assert!(
        dim_half >= sys.m(),
        "eigenspace at 1/2 has dimension {dim_half}, expected at least {}",
        sys.m()
    );
}

#[test]
fn report_excludes_unit_eigenvalue() {
    // iteration matrix of the singular problem carries the eigenvalue 1;
    // the pseudo-spectral radius must exclude it while the spectral radius
    // keeps it
    let sys = build_example2(4, 0.1).unwrap();
    let params = ShiftParams::new(0.5, 0.5).unwrap();
    let t = iteration_matrix(&sys, FamilyKind::Mgssp, params).unwrap();
    let report = semiconvergence_check(&t, 1e-8).unwrap();
    assert!((report.spectral_radius - 1.0).abs() <= 1e-8);
    assert!(report.pseudo_spectral_radius < 1.0 - 1e-3);
}

#[test]
fn half_circle_bound_and_positive_real_parts() {
    let sys = build_example1(4, 1.0).unwrap();
    let params = ShiftParams::new(1.0, 1.0).unwrap();
    let pa = preconditioned_matrix(&sys, FamilyKind::Mgssp, params).unwrap();
    let eigs = dense_eigenvalues(&pa).unwrap();
    let half = Complex64::new(0.5, 0.0);
    for z in &eigs {
        assert!(z.re > 0.0, "eigenvalue {z} has non-positive real part");
        assert!(
            (z - half).norm() <= 0.5 + 1e-8,
            "eigenvalue {z} outside the disc"
        );
    }
}

#[test]
fn preconditioned_matrix_is_identity_minus_iteration_matrix() {
    let sys = build_example1(2, 0.1).unwrap();
    let params = ShiftParams::new(0.3, 0.9).unwrap();
    let t = iteration_matrix(&sys, FamilyKind::Gmss, params).unwrap();
    let pa = preconditioned_matrix(&sys, FamilyKind::Gmss, params).unwrap();
    let sum = t.add(&pa).unwrap();
    assert!(
        sum.sub(&DenseMatrix::identity(sys.dim())).unwrap().norm_max() <= 1e-12,
        "splitting identity violated"
    );
}

//! Shift-splitting preconditioners and solvers for nonsymmetric saddle-point
//! systems [[A, B], [-Bᵀ, 0]](x; y) = (f; -g).
//!
//! The crate provides:
//!
//! - sparse/dense matrix primitives sized for desk-scale experiments
//!   ([`sparse`], [`dense`]),
//! - generators for the two standard benchmark problems, nonsingular and
//!   singular ([`problems`]),
//! - the six-member shift-splitting preconditioner family with factorized
//!   block application ([`precond`]),
//! - the induced stationary iteration and right-preconditioned full GMRES
//!   ([`solver`]),
//! - spectral verification tools: iteration-matrix spectra, convergence and
//!   semi-convergence predicates, closed-form eigenvalue predictions and
//!   clustering bounds ([`spectral`]).

// indexed loops in the factorization and QR kernels mirror the algorithms
#![allow(clippy::needless_range_loop)]

pub mod dense;
pub mod error;
pub mod precond;
pub mod problems;
pub mod solver;
pub mod sparse;
pub mod spectral;

pub use dense::{chol_factor, lu_factor, numerical_rank, CholFactors, DenseMatrix, LUFactors};
pub use error::{Error, Result};
pub use precond::{FamilyKind, ShiftParams, ShiftSplitPreconditioner};
pub use problems::{build_example1, build_example2, rhs_for_ones, ProblemParams, SaddlePointSystem};
pub use solver::{gmres_solve, gmres_solve_with, res_norm, stationary_solve, IterationReport, SolveConfig};
pub use sparse::{assemble_saddle, kron, tridiag, SparseMatrix};
pub use spectral::{
    btu_zero_bounds, convergence_check, dense_eigenvalues, disc_bound, eigenpairs,
    eigenspace_dim, iteration_matrix, preconditioned_matrix, predict_eigenpair, rayleigh_triple,
    root_modulus_predicate, semiconvergence_check, skew_radius, symmetric_extremes,
    EigPrediction, QuadraticCoeffs, RayleighTriple, SpectralReport,
};

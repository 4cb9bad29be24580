//! The shift-splitting preconditioner family for the block system
//! [[A, B], [-Bᵀ, 0]].
//!
//! All six members share one parameterized form
//!
//! ```text
//! P = s · [[ X(α),  t·B ],
//!          [ -t·Bᵀ,  β·I ]]
//! ```
//!
//! where the member fixes the overall scale `s`, the off-diagonal multiplier
//! `t`, the first block `X(α)`, and whether β is tied to α. Application uses
//! the block factorization of P, so each solve touches one factorized inner
//! matrix `X + (t²/β)·B·Bᵀ` of order m.

use crate::dense::{chol_factor, lu_factor, CholFactors, DenseMatrix, LUFactors};
use crate::error::{Error, Result};
use crate::problems::SaddlePointSystem;
use crate::sparse::{assemble_saddle, SparseMatrix};

/// Shift parameters: α ≥ 0 and β > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftParams {
    alpha: f64,
    beta: f64,
}

impl ShiftParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::InvalidParameter(format!("alpha = {alpha}, need alpha >= 0")));
        }
        if !beta.is_finite() || beta <= 0.0 {
            return Err(Error::InvalidParameter(format!("beta = {beta}, need beta > 0")));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// First-block recipe of a family member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FirstBlock {
    /// αI + A
    ShiftPlusA,
    /// αI + 2H with H = (A + Aᵀ)/2
    ShiftPlusTwiceSym,
    /// αI + 2A
    ShiftPlusTwiceA,
}

/// The six family members.
///
/// | kind  | s   | t | first block | β        |
/// |-------|-----|---|-------------|----------|
/// | SS    | 1/2 | 1 | αI + A      | tied = α |
/// | GSS   | 1/2 | 1 | αI + A      | free     |
/// | MSS   | 1/2 | 1 | αI + 2H     | tied = α |
/// | GMSS  | 1/2 | 1 | αI + 2H     | free     |
/// | MSSP  | 1   | 2 | αI + 2A     | tied = α |
/// | MGSSP | 1   | 2 | αI + 2A     | free     |
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Ss,
    Gss,
    Mss,
    Gmss,
    Mssp,
    Mgssp,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 6] = [
        FamilyKind::Ss,
        FamilyKind::Gss,
        FamilyKind::Mss,
        FamilyKind::Gmss,
        FamilyKind::Mssp,
        FamilyKind::Mgssp,
    ];

    /// Overall scale s of the preconditioner.
    pub fn scale(&self) -> f64 {
        match self {
            FamilyKind::Ss | FamilyKind::Gss | FamilyKind::Mss | FamilyKind::Gmss => 0.5,
            FamilyKind::Mssp | FamilyKind::Mgssp => 1.0,
        }
    }

    /// Off-diagonal multiplier t.
    pub fn off_multiplier(&self) -> f64 {
        match self {
            FamilyKind::Mssp | FamilyKind::Mgssp => 2.0,
            _ => 1.0,
        }
    }

    /// Whether β is forced to equal α.
    pub fn ties_beta(&self) -> bool {
        matches!(self, FamilyKind::Ss | FamilyKind::Mss | FamilyKind::Mssp)
    }

    fn first_block(&self) -> FirstBlock {
        match self {
            FamilyKind::Ss | FamilyKind::Gss => FirstBlock::ShiftPlusA,
            FamilyKind::Mss | FamilyKind::Gmss => FirstBlock::ShiftPlusTwiceSym,
            FamilyKind::Mssp | FamilyKind::Mgssp => FirstBlock::ShiftPlusTwiceA,
        }
    }

    /// Whether the inner matrix is symmetric positive definite, in which case
    /// it is factored by Cholesky rather than LU.
    pub fn symmetric_inner(&self) -> bool {
        self.first_block() == FirstBlock::ShiftPlusTwiceSym
    }

    pub fn label(&self) -> &'static str {
        match self {
            FamilyKind::Ss => "ss",
            FamilyKind::Gss => "gss",
            FamilyKind::Mss => "mss",
            FamilyKind::Gmss => "gmss",
            FamilyKind::Mssp => "mssp",
            FamilyKind::Mgssp => "mgssp",
        }
    }
}

impl std::fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ss" => Ok(FamilyKind::Ss),
            "gss" => Ok(FamilyKind::Gss),
            "mss" => Ok(FamilyKind::Mss),
            "gmss" => Ok(FamilyKind::Gmss),
            "mssp" => Ok(FamilyKind::Mssp),
            "mgssp" => Ok(FamilyKind::Mgssp),
            other => Err(Error::InvalidParameter(format!("unknown preconditioner kind '{other}'"))),
        }
    }
}

enum InnerFactors {
    Lu(LUFactors),
    Chol(CholFactors),
}

/// A built family member: shift parameters, a copy of B, the sparse first
/// block, and the factorized inner matrix, reusable across applications.
pub struct ShiftSplitPreconditioner {
    kind: FamilyKind,
    params: ShiftParams,
    b: SparseMatrix,
    bt: SparseMatrix,
    first_block: SparseMatrix,
    inner: InnerFactors,
    m: usize,
    n: usize,
}

impl ShiftSplitPreconditioner {
    /// Assembles and factorizes the inner matrix X + (t²/β)·B·Bᵀ for the
    /// given system. For tied kinds the β in `params` is ignored and set to α.
    pub fn build(
        kind: FamilyKind,
        system: &SaddlePointSystem,
        params: ShiftParams,
    ) -> Result<Self> {
        let params = if kind.ties_beta() {
            ShiftParams::new(params.alpha(), params.alpha()).map_err(|_| {
                Error::InvalidParameter(format!(
                    "{kind} ties beta to alpha; alpha = {} is not admissible",
                    params.alpha()
                ))
            })?
        } else {
            params
        };
        let (m, n) = (system.m(), system.n());
        let a = system.a();
        let shift = SparseMatrix::identity(m).scale(params.alpha());
        let first_block = match kind.first_block() {
            FirstBlock::ShiftPlusA => SparseMatrix::add(&shift, a)?,
            FirstBlock::ShiftPlusTwiceA => SparseMatrix::add(&shift, &a.scale(2.0))?,
            FirstBlock::ShiftPlusTwiceSym => {
                let (h, _) = a.sym_skew_split()?;
                SparseMatrix::add(&shift, &h.scale(2.0))?
            }
        };

        let t = kind.off_multiplier();
        let coef = t * t / params.beta();
        let mut inner = first_block.to_dense()?;
        let bt = system.b().transpose();
        for c in 0..n {
            let entries: Vec<(usize, f64)> = bt.row(c).collect();
            for &(i, vi) in &entries {
                for &(j, vj) in &entries {
                    *inner.at_mut(i, j) += coef * vi * vj;
                }
            }
        }

        let inner = if kind.symmetric_inner() {
            InnerFactors::Chol(chol_factor(&inner).map_err(|e| {
                Error::Internal(format!("inner matrix factorization failed: {e}"))
            })?)
        } else {
            InnerFactors::Lu(lu_factor(inner).map_err(|e| {
                Error::Internal(format!("inner matrix factorization failed: {e}"))
            })?)
        };

        Ok(Self {
            kind,
            params,
            b: system.b().clone(),
            bt,
            first_block,
            inner,
            m,
            n,
        })
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    /// Effective parameters (β already tied to α where the kind requires it).
    pub fn params(&self) -> ShiftParams {
        self.params
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn solve_inner(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        match &self.inner {
            InnerFactors::Lu(f) => f.solve(rhs),
            InnerFactors::Chol(f) => f.solve(rhs),
        }
    }

    /// z = P⁻¹ r through the block factorization:
    /// t₁ = r₁ − (t/β)·B·r₂, then the inner solve for z₁, then
    /// z₂ = (1/β)(t·Bᵀ·z₁ + r₂), and finally the 1/s rescale.
    pub fn apply(&self, r: &[f64]) -> Result<Vec<f64>> {
        if r.len() != self.m + self.n {
            return Err(Error::InvalidDimension(format!(
                "apply: residual length {} vs system dimension {}",
                r.len(),
                self.m + self.n
            )));
        }
        let (r1, r2) = r.split_at(self.m);
        let beta = self.params.beta();
        let t = self.kind.off_multiplier();

        let br2 = self.b.spmv(r2)?;
        let mut t1 = r1.to_vec();
        for (ti, bi) in t1.iter_mut().zip(&br2) {
            *ti -= (t / beta) * bi;
        }
        let z1 = self.solve_inner(&t1)?;
        let btz1 = self.bt.spmv(&z1)?;

        let inv_scale = 1.0 / self.kind.scale();
        let mut z = Vec::with_capacity(self.m + self.n);
        z.extend(z1.iter().map(|v| v * inv_scale));
        z.extend(
            btz1.iter()
                .zip(r2)
                .map(|(bv, rv)| (t * bv + rv) / beta * inv_scale),
        );
        Ok(z)
    }

    /// Dense P per the member's display.
    pub fn assemble_p(&self) -> Result<DenseMatrix> {
        let s = self.kind.scale();
        let t = self.kind.off_multiplier();
        let beta = self.params.beta();
        let total = self.m + self.n;
        let mut p = DenseMatrix::zeros(total, total);
        let x = self.first_block.to_dense()?;
        for i in 0..self.m {
            for j in 0..self.m {
                *p.at_mut(i, j) = s * x.at(i, j);
            }
        }
        for i in 0..self.m {
            for (j, v) in self.b.row(i) {
                *p.at_mut(i, self.m + j) = s * t * v;
                *p.at_mut(self.m + j, i) = -s * t * v;
            }
        }
        for j in 0..self.n {
            *p.at_mut(self.m + j, self.m + j) = s * beta;
        }
        Ok(p)
    }

    /// Dense Q = P − 𝒜 of the splitting 𝒜 = P − Q.
    pub fn assemble_q(&self, system: &SaddlePointSystem) -> Result<DenseMatrix> {
        if system.m() != self.m || system.n() != self.n {
            return Err(Error::InvalidDimension(
                "assemble_q: system does not match the built preconditioner".into(),
            ));
        }
        let p = self.assemble_p()?;
        let saddle = assemble_saddle(system.a(), system.b())?.to_dense()?;
        p.sub(&saddle)
    }
}

//! Complete-positivity constraints on the diffusion and friction
//! coefficients.

use nalgebra::DMatrix;

use super::DiffusionMatrix;
use crate::dynamics::{hermitian_min_eigenvalue, symmetric_min_eigenvalue};
use crate::error::{Error, Result};
use crate::model::{p_index, q_index, LindbladSpec, UnitSystem};

const RELATIVE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintKind {
    /// `D_{q_k q_k} D_{p_j p_j} − D_{q_k p_j}² ≥ ħ²λ_kj²/4`
    PositionMomentum,
    /// `D_{q_k q_k} D_{q_j q_j} − D_{q_k q_j}² ≥ ħ²α_kj²/4`
    Position,
    /// `D_{p_k p_k} D_{p_j p_j} − D_{p_k p_j}² ≥ ħ²η_kj²/4`
    Momentum,
}

impl ConstraintKind {
    pub fn name(self) -> &'static str {
        match self {
            ConstraintKind::PositionMomentum => "qp-lambda",
            ConstraintKind::Position => "qq-alpha",
            ConstraintKind::Momentum => "pp-eta",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintCheck {
    pub kind: ConstraintKind,
    pub k: usize,
    pub j: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub pass: bool,
}

impl ConstraintCheck {
    fn new(kind: ConstraintKind, k: usize, j: usize, lhs: f64, rhs: f64) -> Self {
        let margin = lhs - rhs;
        let tol = RELATIVE_TOL * lhs.abs().max(rhs.abs()).max(1.0);
        Self {
            kind,
            k,
            j,
            lhs,
            rhs,
            margin,
            pass: margin >= -tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintReport {
    /// One entry per ordered pair `(k, j)` and per inequality.
    pub checks: Vec<ConstraintCheck>,
    pub d_min_eigenvalue: f64,
    pub d_psd: bool,
    /// Smallest eigenvalue of the Hermitian `D + i(ħ/2)L`, whose 2×2
    /// principal minors are the three inequalities above.
    pub gram_min_eigenvalue: f64,
    pub gram_psd: bool,
}

impl ConstraintReport {
    pub fn inequalities_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Every hard constraint: the inequalities, D ⪰ 0 and the full
    /// Hermitian positivity.
    pub fn all_pass(&self) -> bool {
        self.inequalities_pass() && self.d_psd && self.gram_psd
    }

    pub fn check(&self, kind: ConstraintKind, k: usize, j: usize) -> Option<&ConstraintCheck> {
        self.checks
            .iter()
            .find(|c| c.kind == kind && c.k == k && c.j == j)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConstraintCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Antisymmetric matrix `L` pairing with D in the Gram matrix of the
/// Lindblad amplitudes.
fn friction_form(lind: &LindbladSpec) -> DMatrix<f64> {
    let n = lind.n();
    let mut l = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        for j in 0..n {
            l[(q_index(k), q_index(j))] = -lind.alpha()[(k, j)];
            l[(p_index(k), p_index(j))] = -lind.eta()[(k, j)];
            l[(q_index(k), p_index(j))] = lind.lambda()[(k, j)];
            l[(p_index(j), q_index(k))] = -lind.lambda()[(k, j)];
        }
    }
    l
}

pub fn verify_cp_constraints(
    d: &DiffusionMatrix,
    lind: &LindbladSpec,
    units: &UnitSystem,
) -> Result<ConstraintReport> {
    let n = lind.n();
    if d.modes() != n {
        return Err(Error::dim("diffusion matrix modes", n, d.modes()));
    }
    let quarter_h2 = 0.25 * units.hbar * units.hbar;
    let mut checks = Vec::with_capacity(3 * n * n);
    for k in 0..n {
        for j in 0..n {
            checks.push(ConstraintCheck::new(
                ConstraintKind::PositionMomentum,
                k,
                j,
                d.qq(k, k) * d.pp(j, j) - d.qp(k, j).powi(2),
                quarter_h2 * lind.lambda()[(k, j)].powi(2),
            ));
            checks.push(ConstraintCheck::new(
                ConstraintKind::Position,
                k,
                j,
                d.qq(k, k) * d.qq(j, j) - d.qq(k, j).powi(2),
                quarter_h2 * lind.alpha()[(k, j)].powi(2),
            ));
            checks.push(ConstraintCheck::new(
                ConstraintKind::Momentum,
                k,
                j,
                d.pp(k, k) * d.pp(j, j) - d.pp(k, j).powi(2),
                quarter_h2 * lind.eta()[(k, j)].powi(2),
            ));
        }
    }

    let scale = d.matrix().abs().max().max(1.0);
    let d_min = symmetric_min_eigenvalue(d.matrix());
    let gram_min =
        hermitian_min_eigenvalue(d.matrix(), &(friction_form(lind) * (0.5 * units.hbar)));
    Ok(ConstraintReport {
        checks,
        d_min_eigenvalue: d_min,
        d_psd: d_min >= -RELATIVE_TOL * scale,
        gram_min_eigenvalue: gram_min,
        gram_psd: gram_min >= -RELATIVE_TOL * scale,
    })
}

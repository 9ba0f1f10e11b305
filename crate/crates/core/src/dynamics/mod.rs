//! Covariance dynamics `dσ/dt = Mσ + σMᵀ + 2D`.
//!
//! The drift `M` combines the Hamiltonian flow `J·G` with the friction
//! terms of the Lindblad generators. Propagation uses the closed-form
//! solution `σ(t) = e^{Mt}(σ(0) − σ̃)e^{Mᵀt} + σ̃`, where σ̃ solves the
//! steady condition `Mσ̃ + σ̃Mᵀ + 2D = 0`.

mod expm;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;

pub use expm::matrix_exponential;

use crate::diffusion::{coth, DiffusionMatrix};
use crate::error::{Error, Result};
use crate::model::{
    hamiltonian_matrix, p_index, q_index, EquilibriumSpec, LindbladSpec, OscillatorNetwork,
    UnitSystem,
};

/// Block-diagonal symplectic form with `[q_k, p_k] = iħ` encoded as
/// `J = ⊕ [[0, 1], [−1, 0]]`.
pub fn symplectic_form(n: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        j[(q_index(k), p_index(k))] = 1.0;
        j[(p_index(k), q_index(k))] = -1.0;
    }
    j
}

pub(crate) fn symmetrized(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

/// Smallest eigenvalue of the Hermitian matrix `re + i·im` (`im`
/// antisymmetric), via its real symmetric embedding `[[re, −im], [im, re]]`.
pub(crate) fn hermitian_min_eigenvalue(re: &DMatrix<f64>, im: &DMatrix<f64>) -> f64 {
    let n = re.nrows();
    let mut big = DMatrix::zeros(2 * n, 2 * n);
    big.view_mut((0, 0), (n, n)).copy_from(re);
    big.view_mut((n, n), (n, n)).copy_from(re);
    big.view_mut((0, n), (n, n)).copy_from(&(-im));
    big.view_mut((n, 0), (n, n)).copy_from(im);
    symmetric_min_eigenvalue(&symmetrized(&big))
}

pub(crate) fn symmetric_min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    SymmetricEigen::new(m.clone())
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Symmetric second-moment matrix of a zero-mean Gaussian state.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    sigma: DMatrix<f64>,
}

impl CovarianceMatrix {
    /// Accepts any square matrix of even size and stores its symmetric part.
    pub fn new(sigma: DMatrix<f64>) -> Result<Self> {
        if sigma.nrows() != sigma.ncols() || !sigma.nrows().is_multiple_of(2) || sigma.nrows() == 0
        {
            return Err(Error::dim(
                "covariance matrix",
                "2N x 2N",
                format!("{}x{}", sigma.nrows(), sigma.ncols()),
            ));
        }
        Ok(Self {
            sigma: symmetrized(&sigma),
        })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.sigma
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.sigma
    }

    pub fn modes(&self) -> usize {
        self.sigma.nrows() / 2
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.sigma[(row, col)]
    }

    /// Smallest eigenvalue of the Hermitian matrix `σ + (iħ/2)J`.
    pub fn uncertainty_min_eigenvalue(&self, units: &UnitSystem) -> f64 {
        let j = symplectic_form(self.modes()) * (0.5 * units.hbar);
        hermitian_min_eigenvalue(&self.sigma, &j)
    }

    pub fn is_physical(&self, units: &UnitSystem) -> bool {
        self.uncertainty_min_eigenvalue(units) >= -1e-10
    }
}

/// Generator of the covariance flow.
#[derive(Debug, Clone, PartialEq)]
pub struct DriftMatrix {
    m: DMatrix<f64>,
}

impl DriftMatrix {
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() || !m.nrows().is_multiple_of(2) || m.nrows() == 0 {
            return Err(Error::dim(
                "drift matrix",
                "2N x 2N",
                format!("{}x{}", m.nrows(), m.ncols()),
            ));
        }
        Ok(Self { m })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.m.complex_eigenvalues().iter().copied().collect()
    }

    /// Eigenvalue with the largest real part.
    pub fn spectral_abscissa(&self) -> Complex64 {
        self.eigenvalues()
            .into_iter()
            .max_by(|a, b| a.re.total_cmp(&b.re))
            .expect("drift matrix is never empty")
    }

    pub fn ensure_hurwitz(&self) -> Result<()> {
        let lead = self.spectral_abscissa();
        if lead.re < 0.0 {
            Ok(())
        } else {
            Err(Error::NotHurwitz { eigenvalue: lead })
        }
    }

    pub fn is_hurwitz(&self) -> bool {
        self.ensure_hurwitz().is_ok()
    }
}

/// `M = J·G + M_diss` in the `(q1, p1, …)` ordering.
///
/// Row `q_k` carries `−λ_kj` on `q_j` and `−α_kj` on `p_j`; row `p_k`
/// carries `+η_kj` on `q_j` and `−λ_jk` on `p_j`.
pub fn drift_matrix(net: &OscillatorNetwork, lind: &LindbladSpec) -> Result<DriftMatrix> {
    let n = net.n();
    if lind.n() != n {
        return Err(Error::dim("lindblad coefficients", n, lind.n()));
    }
    let mut m = symplectic_form(n) * hamiltonian_matrix(net);
    let (lambda, alpha, eta) = (lind.lambda(), lind.alpha(), lind.eta());
    for k in 0..n {
        for j in 0..n {
            m[(q_index(k), q_index(j))] -= lambda[(k, j)];
            m[(q_index(k), p_index(j))] -= alpha[(k, j)];
            m[(p_index(k), q_index(j))] += eta[(k, j)];
            m[(p_index(k), p_index(j))] -= lambda[(j, k)];
        }
    }
    DriftMatrix::new(m)
}

/// Covariance of the Gibbs state `exp(−βH_eq)/Z`.
///
/// Each oscillator contributes the block
/// `c_k [[1/m_k, −μ̃_kk], [−μ̃_kk, m_k ω_k²]]` with
/// `c_k = ħ/(2Ω_k) coth(ħβΩ_k/2)`.
pub fn gibbs_covariance(
    net: &OscillatorNetwork,
    eq: &EquilibriumSpec,
    units: &UnitSystem,
) -> Result<CovarianceMatrix> {
    let n = net.n();
    if eq.n() != n {
        return Err(Error::dim("mu_tilde", n, eq.n()));
    }
    let beta = eq.beta(units);
    let mut sigma = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        let omega_eff = eq.effective_frequency(net, k)?;
        let c = units.hbar / (2.0 * omega_eff) * coth(0.5 * units.hbar * beta * omega_eff);
        let (m, w) = (net.mass(k), net.frequency(k));
        let (qk, pk) = (q_index(k), p_index(k));
        sigma[(qk, qk)] = c / m;
        sigma[(pk, pk)] = c * m * w * w;
        sigma[(qk, pk)] = -c * eq.mu_tilde[k];
        sigma[(pk, qk)] = -c * eq.mu_tilde[k];
    }
    CovarianceMatrix::new(sigma)
}

/// `D = −(Mσ̃ + σ̃Mᵀ)/2`, the diffusion that makes σ̃ stationary.
pub fn oracle_diffusion(
    m: &DriftMatrix,
    sigma_tilde: &CovarianceMatrix,
) -> Result<DiffusionMatrix> {
    if m.dim() != sigma_tilde.matrix().nrows() {
        return Err(Error::dim(
            "steady covariance",
            m.dim(),
            sigma_tilde.matrix().nrows(),
        ));
    }
    let ms = m.matrix() * sigma_tilde.matrix();
    let d = -(&ms + ms.transpose()) * 0.5;
    DiffusionMatrix::new(symmetrized(&d))
}

/// Unique symmetric σ̃ with `Mσ̃ + σ̃Mᵀ + 2D = 0` for Hurwitz `M`.
pub fn solve_steady_state(m: &DriftMatrix, d: &DiffusionMatrix) -> Result<CovarianceMatrix> {
    let dim = m.dim();
    if d.matrix().nrows() != dim {
        return Err(Error::dim("diffusion matrix", dim, d.matrix().nrows()));
    }
    m.ensure_hurwitz()?;
    let id = DMatrix::<f64>::identity(dim, dim);
    // column-major vec: vec(MX) = (I⊗M)vec X, vec(XMᵀ) = (M⊗I)vec X
    let op = id.kronecker(m.matrix()) + m.matrix().kronecker(&id);
    let rhs = nalgebra::DVector::from_column_slice((d.matrix() * -2.0).as_slice());
    let x = op
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::NumericalDomain("steady-state system is singular".into()))?;
    CovarianceMatrix::new(DMatrix::from_column_slice(dim, dim, x.as_slice()))
}

/// Closed-form propagation of σ(0) to time `t`.
pub fn evolve_covariance(
    sigma0: &CovarianceMatrix,
    m: &DriftMatrix,
    sigma_tilde: &CovarianceMatrix,
    t: f64,
) -> Result<CovarianceMatrix> {
    CovariancePropagator::new(sigma0, m, sigma_tilde)?.at(t)
}

/// Reusable form of [`evolve_covariance`] for sampling many times.
#[derive(Debug, Clone)]
pub struct CovariancePropagator {
    drift: DMatrix<f64>,
    offset: DMatrix<f64>,
    sigma_tilde: DMatrix<f64>,
}

impl CovariancePropagator {
    pub fn new(
        sigma0: &CovarianceMatrix,
        m: &DriftMatrix,
        sigma_tilde: &CovarianceMatrix,
    ) -> Result<Self> {
        let dim = m.dim();
        if sigma0.matrix().nrows() != dim {
            return Err(Error::dim(
                "initial covariance",
                dim,
                sigma0.matrix().nrows(),
            ));
        }
        if sigma_tilde.matrix().nrows() != dim {
            return Err(Error::dim(
                "steady covariance",
                dim,
                sigma_tilde.matrix().nrows(),
            ));
        }
        Ok(Self {
            drift: m.matrix().clone(),
            offset: sigma0.matrix() - sigma_tilde.matrix(),
            sigma_tilde: sigma_tilde.matrix().clone(),
        })
    }

    pub fn at(&self, t: f64) -> Result<CovarianceMatrix> {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "time must be finite and >= 0, got {t}"
            )));
        }
        if t == 0.0 {
            return CovarianceMatrix::new(&self.offset + &self.sigma_tilde);
        }
        let e = matrix_exponential(&(&self.drift * t))?;
        CovarianceMatrix::new(&e * &self.offset * e.transpose() + &self.sigma_tilde)
    }

    /// σ(t) at every time; each point is computed independently, so the
    /// result does not depend on the rayon schedule.
    pub fn sample(&self, times: &[f64]) -> Result<Vec<CovarianceMatrix>> {
        times.par_iter().map(|&t| self.at(t)).collect()
    }
}

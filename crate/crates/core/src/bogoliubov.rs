//! Bosonic mode Hamiltonian `Σ K_ℓm a†_ℓ a_m + ½Σ(Δ_ℓm a†_ℓ a†_m + h.c.)`
//! mapped onto the canonical oscillator network.
//!
//! The mapping `a_ℓ = √(K_ℓℓ/2)(q_ℓ + i p_ℓ/(ħK_ℓℓ))` is only dimensionally
//! coherent with the two-mode drift at ħ = 1; other values are accepted but
//! untested.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::dynamics::DriftMatrix;
use crate::error::{Error, Result};
use crate::model::{EquilibriumSpec, LindbladSpec, OscillatorNetwork, UnitSystem};

const HERMITICITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct BogoliubovModel {
    k: DMatrix<Complex64>,
    delta: DMatrix<Complex64>,
    delta_tilde_diag: Vec<Complex64>,
}

fn near(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= HERMITICITY_TOL * a.norm().max(b.norm()).max(1.0)
}

impl BogoliubovModel {
    /// Checks `K = K†`, `Δ = Δᵀ` and `K_ℓℓ > |Re Δ_ℓℓ|`.
    pub fn new(
        k: DMatrix<Complex64>,
        delta: DMatrix<Complex64>,
        delta_tilde_diag: Vec<Complex64>,
    ) -> Result<Self> {
        let n = k.nrows();
        if n == 0 || k.ncols() != n {
            return Err(Error::dim(
                "K",
                "square N x N",
                format!("{}x{}", k.nrows(), k.ncols()),
            ));
        }
        if delta.nrows() != n || delta.ncols() != n {
            return Err(Error::dim(
                "Delta",
                format!("{n}x{n}"),
                format!("{}x{}", delta.nrows(), delta.ncols()),
            ));
        }
        if delta_tilde_diag.len() != n {
            return Err(Error::dim(
                "Delta_tilde diagonal",
                n,
                delta_tilde_diag.len(),
            ));
        }
        for l in 0..n {
            if k[(l, l)].im != 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "K_{i}{i} must be real (Hermitian), got imaginary part {}",
                    k[(l, l)].im,
                    i = l + 1
                )));
            }
            for m in l + 1..n {
                if !near(k[(l, m)], k[(m, l)].conj()) {
                    return Err(Error::InvalidArgument(format!(
                        "K is not Hermitian at ({}, {})",
                        l + 1,
                        m + 1
                    )));
                }
                if !near(delta[(l, m)], delta[(m, l)]) {
                    return Err(Error::InvalidArgument(format!(
                        "Delta is not symmetric at ({}, {})",
                        l + 1,
                        m + 1
                    )));
                }
            }
            let (kd, rd) = (k[(l, l)].re, delta[(l, l)].re);
            if !(kd > rd.abs()) {
                return Err(Error::UnstableMode {
                    mode: l + 1,
                    k_diag: kd,
                    re_delta: rd.abs(),
                });
            }
        }
        Ok(Self {
            k,
            delta,
            delta_tilde_diag,
        })
    }

    pub fn n(&self) -> usize {
        self.k.nrows()
    }

    pub fn k(&self) -> &DMatrix<Complex64> {
        &self.k
    }

    pub fn delta(&self) -> &DMatrix<Complex64> {
        &self.delta
    }

    pub fn delta_tilde_diag(&self) -> &[Complex64] {
        &self.delta_tilde_diag
    }

    /// Same model with every steady-state coupling set to `Δ̃_ℓℓ = iζ`.
    pub fn with_zeta(mut self, zeta: f64) -> Self {
        self.delta_tilde_diag = vec![Complex64::new(0.0, zeta); self.n()];
        self
    }
}

/// Network parameters and steady-state self couplings of a mode model.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalModel {
    pub network: OscillatorNetwork,
    pub mu_tilde: Vec<f64>,
}

impl CanonicalModel {
    pub fn equilibrium(&self, temperature: f64) -> Result<EquilibriumSpec> {
        EquilibriumSpec::new(self.mu_tilde.clone(), temperature)
    }
}

pub fn to_canonical(bog: &BogoliubovModel, units: &UnitSystem) -> Result<CanonicalModel> {
    let n = bog.n();
    let h = units.hbar;
    let (k, d) = (bog.k(), bog.delta());
    let kd: Vec<f64> = (0..n).map(|l| k[(l, l)].re).collect();

    let mut masses = Vec::with_capacity(n);
    let mut freqs = Vec::with_capacity(n);
    for l in 0..n {
        let rd = d[(l, l)].re;
        if !(kd[l] > rd.abs()) {
            return Err(Error::UnstableMode {
                mode: l + 1,
                k_diag: kd[l],
                re_delta: rd.abs(),
            });
        }
        freqs.push(((kd[l] - rd) * (kd[l] + rd)).sqrt() / h);
        masses.push(kd[l] / (kd[l] - rd));
    }

    let mut mu = DMatrix::zeros(n, n);
    let mut nu = DMatrix::zeros(n, n);
    let mut kappa = DMatrix::zeros(n, n);
    for l in 0..n {
        for m in 0..n {
            mu[(l, m)] = (d[(l, m)] - k[(l, m)]).im / h * (kd[l] / kd[m]).sqrt();
            if l != m {
                let root = (kd[l] * kd[m]).sqrt();
                nu[(l, m)] = (k[(l, m)] + d[(l, m)]).re * root;
                kappa[(l, m)] = (k[(l, m)] - d[(l, m)]).re / (h * h * root);
            }
        }
    }
    let network = OscillatorNetwork::new(masses, freqs, mu, nu, kappa)?;
    let mu_tilde = bog.delta_tilde_diag().iter().map(|z| z.im / h).collect();
    Ok(CanonicalModel { network, mu_tilde })
}

/// Two-mode drift matrix written directly in terms of `K` and `Δ`.
pub fn two_mode_drift(
    bog: &BogoliubovModel,
    lind: &LindbladSpec,
    units: &UnitSystem,
) -> Result<DriftMatrix> {
    if bog.n() != 2 {
        return Err(Error::dim("two_mode_drift modes", 2, bog.n()));
    }
    if lind.n() != 2 {
        return Err(Error::dim("lindblad coefficients", 2, lind.n()));
    }
    let h = units.hbar;
    let (k, d) = (bog.k(), bog.delta());
    let (lam, alpha, eta) = (lind.lambda(), lind.alpha(), lind.eta());
    let k11 = k[(0, 0)].re;
    let k22 = k[(1, 1)].re;
    let r12 = (k11 / k22).sqrt();
    let r21 = (k22 / k11).sqrt();
    let root = (k11 * k22).sqrt();
    let im_d_minus_k_12 = (d[(0, 1)] - k[(0, 1)]).im;
    let im_d_minus_k_21 = (d[(1, 0)] - k[(1, 0)]).im;
    let re_k_minus_d_12 = (k[(0, 1)] - d[(0, 1)]).re;
    let re_k_plus_d_12 = (k[(0, 1)] + d[(0, 1)]).re;

    let mut m = DMatrix::zeros(4, 4);
    m[(0, 0)] = -lam[(0, 0)] + d[(0, 0)].im / h;
    m[(0, 1)] = (k11 - d[(0, 0)].re) / k11;
    m[(0, 2)] = -lam[(0, 1)] + im_d_minus_k_12 / h * r12;
    m[(0, 3)] = -alpha[(0, 1)] + re_k_minus_d_12 / root;

    m[(1, 0)] = -k11 * (k11 + d[(0, 0)].re) / (h * h);
    m[(1, 1)] = -lam[(0, 0)] - d[(0, 0)].im / h;
    m[(1, 2)] = eta[(0, 1)] - re_k_plus_d_12 / (h * h) * root;
    m[(1, 3)] = -lam[(1, 0)] - im_d_minus_k_21 / h * r21;

    m[(2, 0)] = -lam[(1, 0)] + im_d_minus_k_21 / h * r21;
    m[(2, 1)] = alpha[(0, 1)] + re_k_minus_d_12 / root;
    m[(2, 2)] = -lam[(1, 1)] + d[(1, 1)].im / h;
    m[(2, 3)] = (k22 - d[(1, 1)].re) / k22;

    m[(3, 0)] = -eta[(0, 1)] - re_k_plus_d_12 / (h * h) * root;
    m[(3, 1)] = -lam[(0, 1)] - im_d_minus_k_12 / h * r12;
    m[(3, 2)] = -k22 * (k22 + d[(1, 1)].re) / (h * h);
    m[(3, 3)] = -lam[(1, 1)] - d[(1, 1)].im / h;
    DriftMatrix::new(m)
}

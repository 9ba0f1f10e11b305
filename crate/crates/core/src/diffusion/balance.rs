//! Φ, Ψ, Γ and the four linear balance equations linking them to the
//! closed-form diffusion coefficients. Diagnostic only: the Γ expression is
//! evaluated verbatim and its residuals are reported, not corrected.

use super::{check_dims, check_index, cross_diffusion, diagonal_diffusion, mode, Mode};
use crate::error::Result;
use crate::model::{EquilibriumSpec, LindbladSpec, OscillatorNetwork, UnitSystem};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BalanceDiagnostics {
    pub k: usize,
    pub j: usize,
    pub phi: f64,
    pub psi: f64,
    pub gamma_kj: f64,
    pub gamma_jk: f64,
    /// `lhs − rhs` of the four balance equations, in order.
    pub residuals: [f64; 4],
}

/// Coupling lookups with the diagonal substitutions
/// ν_kk = m_k ω_k², κ_kk = 1/m_k, α_kk = η_kk = 0.
struct Couplings<'a> {
    net: &'a OscillatorNetwork,
    lind: &'a LindbladSpec,
}

impl Couplings<'_> {
    fn lam(&self, a: usize, b: usize) -> f64 {
        self.lind.lambda()[(a, b)]
    }
    fn mu(&self, a: usize, b: usize) -> f64 {
        self.net.mu()[(a, b)]
    }
    fn nu(&self, a: usize, b: usize) -> f64 {
        self.net.nu_entry(a, b)
    }
    fn kappa(&self, a: usize, b: usize) -> f64 {
        self.net.kappa_entry(a, b)
    }
    fn alpha(&self, a: usize, b: usize) -> f64 {
        if a == b {
            0.0
        } else {
            self.lind.alpha()[(a, b)]
        }
    }
    fn eta(&self, a: usize, b: usize) -> f64 {
        if a == b {
            0.0
        } else {
            self.lind.eta()[(a, b)]
        }
    }
}

fn phi(c: &Couplings, a: &Mode, b: &Mode, k: usize, j: usize, h: f64) -> f64 {
    let pre_k = (a.w - a.mt) / (a.w * a.omega_eff);
    let br_k = (c.eta(k, j) + c.nu(k, j)) / b.w - a.m * b.m * a.w * (c.alpha(k, j) + c.kappa(k, j))
        + a.m * a.w / b.w * (c.lam(k, j) + c.mu(k, j))
        + b.m * (c.lam(j, k) - c.mu(j, k));
    let pre_j = (b.w - b.mt) / (b.w * b.omega_eff);
    let br_j = (c.eta(j, k) + c.nu(k, j)) / a.w - a.m * b.m * b.w * (c.alpha(j, k) + c.kappa(k, j))
        + b.m * b.w / a.w * (c.lam(j, k) + c.mu(j, k))
        + a.m * (c.lam(k, j) - c.mu(k, j));
    0.25 * h * (pre_k * br_k * a.coth + pre_j * br_j * b.coth)
}

fn psi(c: &Couplings, a: &Mode, b: &Mode, k: usize, j: usize, h: f64) -> f64 {
    let pre_k = a.w * a.omega_eff / (a.w - a.mt);
    let br_k = -(c.eta(k, j) + c.nu(k, j)) / a.w
        + a.m * b.m * b.w * (c.alpha(k, j) + c.kappa(k, j))
        + b.m * b.w / a.w * (c.lam(j, k) - c.mu(j, k))
        + a.m * (c.lam(k, j) + c.mu(k, j));
    let pre_j = b.w * b.omega_eff / (b.w - b.mt);
    let br_j = -(c.eta(j, k) + c.nu(j, k)) / b.w
        + b.m * a.m * a.w * (c.alpha(j, k) + c.kappa(j, k))
        + a.m * a.w / b.w * (c.lam(k, j) - c.mu(k, j))
        + b.m * (c.lam(j, k) + c.mu(j, k));
    h / 16.0 * (pre_k * br_k * a.coth + pre_j * br_j * b.coth)
}

fn gamma(c: &Couplings, a: &Mode, b: &Mode, k: usize, j: usize, h: f64) -> f64 {
    let pre_k = (a.w - a.mt) / (a.w * a.omega_eff);
    let br_k = c.eta(k, j) + c.nu(k, j) - a.m * b.m * a.w * b.w * (c.alpha(k, j) + c.kappa(k, j))
        + a.m * a.w * (c.lam(k, j) + c.mu(k, j))
        - b.m * b.w * (c.lam(j, k) - c.mu(j, k));
    let pre_j = b.w * b.omega_eff / (b.w - b.mt);
    let br_j = (c.eta(j, k) - c.nu(j, k)) / (a.w * b.w)
        + a.m * b.m * (c.alpha(j, k) - c.kappa(j, k))
        - a.m / b.w * (c.lam(k, j) - c.mu(k, j))
        + b.m / a.w * (c.lam(j, k) + c.mu(j, k));
    0.125 * h * (pre_k * br_k * a.coth + pre_j * br_j * b.coth)
}

/// Evaluate Φ_kj, Ψ_kj, Γ_kj, Γ_jk and the balance residuals using the
/// closed-form diffusion coefficients. `k == j` is allowed.
pub fn phi_psi_gamma_residuals(
    net: &OscillatorNetwork,
    lind: &LindbladSpec,
    eq: &EquilibriumSpec,
    units: &UnitSystem,
    k: usize,
    j: usize,
) -> Result<BalanceDiagnostics> {
    check_dims(net, lind, eq)?;
    check_index(net, k)?;
    check_index(net, j)?;
    let h = units.hbar;
    let a = mode(net, eq, units, k)?;
    let b = mode(net, eq, units, j)?;
    let c = Couplings { net, lind };

    let phi_kj = phi(&c, &a, &b, k, j, h);
    let psi_kj = psi(&c, &a, &b, k, j, h);
    let gamma_kj = gamma(&c, &a, &b, k, j, h);
    let gamma_jk = gamma(&c, &b, &a, j, k, h);

    let (dqq, dpp, dqkpj, dqjpk) = if k == j {
        let d = diagonal_diffusion(net, lind, eq, units, k)?;
        (d.dqq, d.dpp, d.dqp, d.dqp)
    } else {
        let d = cross_diffusion(net, lind, eq, units, k, j)?;
        (d.dqkqj, d.dpkpj, d.dqkpj, d.dqjpk)
    };

    let mmww = a.m * b.m * a.w * b.w;
    let ww = a.w * b.w;
    let residuals = [
        mmww * dqq + dpp - (0.5 * ww * phi_kj + 2.0 * psi_kj),
        a.m * a.w * dqkpj + b.m * b.w * dqjpk - (0.5 * ww * phi_kj - 2.0 * psi_kj),
        -mmww * dqq + dpp - (a.w * gamma_kj + b.w * gamma_jk),
        a.m * a.w * dqkpj - b.m * b.w * dqjpk - (a.w * gamma_kj - b.w * gamma_jk),
    ];

    Ok(BalanceDiagnostics {
        k,
        j,
        phi: phi_kj,
        psi: psi_kj,
        gamma_kj,
        gamma_jk,
        residuals,
    })
}

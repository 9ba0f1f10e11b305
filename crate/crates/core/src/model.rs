//! Domain types for the oscillator network, its Lindblad coefficients and
//! the target equilibrium, plus physical validation.
//!
//! Phase-space vectors are ordered `(q1, p1, q2, p2, ...)` throughout the
//! crate; [`q_index`] and [`p_index`] map an oscillator to its slots.

use std::fmt;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Relative tolerance for the symmetry checks of [`validate_model`].
const SYMMETRY_TOL: f64 = 1e-12;

#[inline]
pub fn q_index(k: usize) -> usize {
    2 * k
}

#[inline]
pub fn p_index(k: usize) -> usize {
    2 * k + 1
}

/// Values of ħ and k_B. Both default to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    pub hbar: f64,
    pub kb: f64,
}

impl UnitSystem {
    pub fn new(hbar: f64, kb: f64) -> Result<Self> {
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "hbar must be positive, got {hbar}"
            )));
        }
        if !(kb > 0.0 && kb.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "kb must be positive, got {kb}"
            )));
        }
        Ok(Self { hbar, kb })
    }
}

impl Default for UnitSystem {
    fn default() -> Self {
        Self { hbar: 1.0, kb: 1.0 }
    }
}

fn check_square(what: &str, m: &DMatrix<f64>, n: usize) -> Result<()> {
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::dim(
            what,
            format!("{n}x{n}"),
            format!("{}x{}", m.nrows(), m.ncols()),
        ));
    }
    Ok(())
}

/// Masses, frequencies and Hamiltonian couplings of `N` oscillators.
///
/// `mu` is a full matrix: its diagonal holds the self position-momentum
/// couplings μ_kk and the off-diagonal entries multiply `p_k q_j`.
/// Only the off-diagonal parts of `nu` and `kappa` are read; their
/// diagonals follow the convention ν_kk = m_k ω_k², κ_kk = 1/m_k.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillatorNetwork {
    masses: Vec<f64>,
    frequencies: Vec<f64>,
    mu: DMatrix<f64>,
    nu: DMatrix<f64>,
    kappa: DMatrix<f64>,
}

impl OscillatorNetwork {
    pub fn new(
        masses: Vec<f64>,
        frequencies: Vec<f64>,
        mu: DMatrix<f64>,
        nu: DMatrix<f64>,
        kappa: DMatrix<f64>,
    ) -> Result<Self> {
        let n = masses.len();
        if n == 0 {
            return Err(Error::dim("masses", "at least 1 oscillator", 0));
        }
        if frequencies.len() != n {
            return Err(Error::dim("frequencies", n, frequencies.len()));
        }
        check_square("mu", &mu, n)?;
        check_square("nu", &nu, n)?;
        check_square("kappa", &kappa, n)?;
        Ok(Self {
            masses,
            frequencies,
            mu,
            nu,
            kappa,
        })
    }

    /// Independent oscillators with no couplings at all.
    pub fn uncoupled(masses: Vec<f64>, frequencies: Vec<f64>) -> Result<Self> {
        let n = masses.len();
        Self::new(
            masses,
            frequencies,
            DMatrix::zeros(n, n),
            DMatrix::zeros(n, n),
            DMatrix::zeros(n, n),
        )
    }

    pub fn with_mu(mut self, mu: DMatrix<f64>) -> Result<Self> {
        check_square("mu", &mu, self.n())?;
        self.mu = mu;
        Ok(self)
    }

    pub fn with_nu(mut self, nu: DMatrix<f64>) -> Result<Self> {
        check_square("nu", &nu, self.n())?;
        self.nu = nu;
        Ok(self)
    }

    pub fn with_kappa(mut self, kappa: DMatrix<f64>) -> Result<Self> {
        check_square("kappa", &kappa, self.n())?;
        self.kappa = kappa;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.masses.len()
    }

    pub fn mass(&self, k: usize) -> f64 {
        self.masses[k]
    }

    pub fn frequency(&self, k: usize) -> f64 {
        self.frequencies[k]
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn mu(&self) -> &DMatrix<f64> {
        &self.mu
    }

    pub fn nu(&self) -> &DMatrix<f64> {
        &self.nu
    }

    pub fn kappa(&self) -> &DMatrix<f64> {
        &self.kappa
    }

    /// ν_kj with the diagonal convention ν_kk = m_k ω_k².
    pub fn nu_entry(&self, k: usize, j: usize) -> f64 {
        if k == j {
            self.masses[k] * self.frequencies[k] * self.frequencies[k]
        } else {
            self.nu[(k, j)]
        }
    }

    /// κ_kj with the diagonal convention κ_kk = 1/m_k.
    pub fn kappa_entry(&self, k: usize, j: usize) -> f64 {
        if k == j {
            1.0 / self.masses[k]
        } else {
            self.kappa[(k, j)]
        }
    }
}

/// Dissipative coefficients of the Lindblad generators.
#[derive(Debug, Clone, PartialEq)]
pub struct LindbladSpec {
    lambda: DMatrix<f64>,
    alpha: DMatrix<f64>,
    eta: DMatrix<f64>,
}

impl LindbladSpec {
    pub fn new(lambda: DMatrix<f64>, alpha: DMatrix<f64>, eta: DMatrix<f64>) -> Result<Self> {
        let n = lambda.nrows();
        check_square("lambda", &lambda, n)?;
        check_square("alpha", &alpha, n)?;
        check_square("eta", &eta, n)?;
        Ok(Self { lambda, alpha, eta })
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            lambda: DMatrix::zeros(n, n),
            alpha: DMatrix::zeros(n, n),
            eta: DMatrix::zeros(n, n),
        }
    }

    /// Diagonal friction only.
    pub fn diagonal_friction(lambda: &[f64]) -> Self {
        let n = lambda.len();
        Self {
            lambda: DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(lambda)),
            alpha: DMatrix::zeros(n, n),
            eta: DMatrix::zeros(n, n),
        }
    }

    pub fn n(&self) -> usize {
        self.lambda.nrows()
    }

    pub fn lambda(&self) -> &DMatrix<f64> {
        &self.lambda
    }

    pub fn alpha(&self) -> &DMatrix<f64> {
        &self.alpha
    }

    pub fn eta(&self) -> &DMatrix<f64> {
        &self.eta
    }
}

/// Steady-state self couplings μ̃_kk and temperature of the target Gibbs state.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumSpec {
    pub mu_tilde: Vec<f64>,
    pub temperature: f64,
}

impl EquilibriumSpec {
    pub fn new(mu_tilde: Vec<f64>, temperature: f64) -> Result<Self> {
        if !(temperature > 0.0 && temperature.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "temperature must be positive, got {temperature}"
            )));
        }
        Ok(Self {
            mu_tilde,
            temperature,
        })
    }

    pub fn n(&self) -> usize {
        self.mu_tilde.len()
    }

    pub fn beta(&self, units: &UnitSystem) -> f64 {
        1.0 / (units.kb * self.temperature)
    }

    /// Ω_k = √(ω_k² − μ̃_kk²).
    pub fn effective_frequency(&self, net: &OscillatorNetwork, k: usize) -> Result<f64> {
        let omega = net.frequency(k);
        let mt = self.mu_tilde[k];
        if !(omega > mt.abs()) {
            return Err(Error::Unstable {
                oscillator: k + 1,
                omega,
                mu_tilde: mt,
            });
        }
        Ok(((omega - mt) * (omega + mt)).sqrt())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    Stability,
    Onsager,
    Antisymmetry,
    Positivity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// Physical violations found by [`validate_model`]; empty means valid.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, kind: ViolationKind, message: String) {
        self.violations.push(Violation { kind, message });
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= SYMMETRY_TOL * a.abs().max(b.abs()).max(1.0)
}

fn symmetric_off_diagonal(m: &DMatrix<f64>) -> bool {
    let n = m.nrows();
    (0..n).all(|k| (k + 1..n).all(|j| close(m[(k, j)], m[(j, k)])))
}

fn antisymmetric(m: &DMatrix<f64>) -> bool {
    let n = m.nrows();
    (0..n).all(|k| close(m[(k, k)], 0.0) && (k + 1..n).all(|j| close(m[(k, j)], -m[(j, k)])))
}

/// Check every physical invariant of the model.
///
/// Dimension mismatches between the three inputs are returned as
/// [`Error::Dimension`]; everything else lands in the report.
pub fn validate_model(
    net: &OscillatorNetwork,
    lind: &LindbladSpec,
    eq: &EquilibriumSpec,
) -> Result<ValidationReport> {
    let n = net.n();
    if lind.n() != n {
        return Err(Error::dim("lindblad coefficients", n, lind.n()));
    }
    if eq.n() != n {
        return Err(Error::dim("mu_tilde", n, eq.n()));
    }

    let mut report = ValidationReport::default();
    for k in 0..n {
        let (m, w) = (net.mass(k), net.frequency(k));
        if !(m > 0.0 && m.is_finite()) {
            report.push(
                ViolationKind::Positivity,
                format!("positivity: m_{} = {m} is not > 0", k + 1),
            );
        }
        if !(w > 0.0 && w.is_finite()) {
            report.push(
                ViolationKind::Positivity,
                format!("positivity: ω_{} = {w} is not > 0", k + 1),
            );
        }
    }
    if !(eq.temperature > 0.0) {
        report.push(
            ViolationKind::Positivity,
            format!("positivity: T = {} is not > 0", eq.temperature),
        );
    }
    for k in 0..n {
        let w = net.frequency(k);
        let mt = eq.mu_tilde[k];
        if !(w > mt.abs()) {
            report.push(
                ViolationKind::Stability,
                format!(
                    "stability: ω_{i} ≤ |μ̃_{i}{i}| ({w} ≤ {})",
                    mt.abs(),
                    i = k + 1
                ),
            );
        }
    }
    if !symmetric_off_diagonal(net.nu()) {
        report.push(ViolationKind::Onsager, "Onsager: ν not symmetric".into());
    }
    if !symmetric_off_diagonal(net.kappa()) {
        report.push(ViolationKind::Onsager, "Onsager: κ not symmetric".into());
    }
    if !antisymmetric(lind.alpha()) {
        report.push(
            ViolationKind::Antisymmetry,
            "antisymmetry: α not antisymmetric".into(),
        );
    }
    if !antisymmetric(lind.eta()) {
        report.push(
            ViolationKind::Antisymmetry,
            "antisymmetry: η not antisymmetric".into(),
        );
    }
    Ok(report)
}

/// Symmetric matrix `G` with `H = ½ zᵀ G z`, `z = (q1, p1, …)`.
pub fn hamiltonian_matrix(net: &OscillatorNetwork) -> DMatrix<f64> {
    let n = net.n();
    let mut g = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        let (qk, pk) = (q_index(k), p_index(k));
        g[(qk, qk)] = net.nu_entry(k, k);
        g[(pk, pk)] = net.kappa_entry(k, k);
        g[(qk, pk)] = net.mu()[(k, k)];
        g[(pk, qk)] = net.mu()[(k, k)];
        for j in 0..n {
            if j == k {
                continue;
            }
            let (qj, pj) = (q_index(j), p_index(j));
            g[(qk, qj)] = 0.5 * (net.nu()[(k, j)] + net.nu()[(j, k)]);
            g[(pk, pj)] = 0.5 * (net.kappa()[(k, j)] + net.kappa()[(j, k)]);
            // μ_kj multiplies p_k q_j
            g[(pk, qj)] = net.mu()[(k, j)];
            g[(qj, pk)] = net.mu()[(k, j)];
        }
    }
    g
}

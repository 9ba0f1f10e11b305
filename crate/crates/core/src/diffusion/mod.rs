//! Diffusion coefficients that drive the network to its Gibbs state.
//!
//! Two independent routes produce the diffusion matrix:
//!
//! * [`DiffusionSource::ClosedForm`] evaluates the analytic expressions for
//!   the diagonal (`D_qq`, `D_pp`, `D_qp`) and cross coefficients exactly as
//!   they are written, including their known index and sign quirks for the
//!   cross terms;
//! * [`DiffusionSource::Oracle`] takes `D = −(Mσ̃ + σ̃Mᵀ)/2` from the drift
//!   and the Gibbs covariance, which is stationary by construction.
//!
//! [`compare_diffusion`] reports entrywise where the two disagree.

mod balance;
mod constraints;
mod einstein;

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;

pub use balance::{phi_psi_gamma_residuals, BalanceDiagnostics};
pub use constraints::{verify_cp_constraints, ConstraintCheck, ConstraintKind, ConstraintReport};
pub use einstein::{einstein_report, EinsteinReport, TemperatureBound, EINSTEIN_REGIME_THRESHOLD};

use crate::dynamics::{drift_matrix, gibbs_covariance, oracle_diffusion};
use crate::error::{Error, Result};
use crate::model::{
    p_index, q_index, EquilibriumSpec, LindbladSpec, OscillatorNetwork, UnitSystem,
};

/// Below this argument coth uses its Laurent series.
const COTH_SERIES_CUTOFF: f64 = 1e-4;
/// Above this argument coth is 1 to double precision.
const COTH_SATURATION: f64 = 20.0;

/// Relative tolerance for [`compare_diffusion`].
pub const COMPARISON_TOL: f64 = 1e-10;

/// Hyperbolic cotangent, stable for small and large arguments.
pub fn coth(x: f64) -> f64 {
    if x < 0.0 {
        return -coth(-x);
    }
    if x < COTH_SERIES_CUTOFF {
        1.0 / x + x / 3.0 - x * x * x / 45.0
    } else if x > COTH_SATURATION {
        1.0
    } else {
        1.0 / x.tanh()
    }
}

/// Symmetric `2N × 2N` diffusion matrix in the `(q1, p1, …)` ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffusionMatrix {
    d: DMatrix<f64>,
}

impl DiffusionMatrix {
    pub fn new(d: DMatrix<f64>) -> Result<Self> {
        if d.nrows() != d.ncols() || !d.nrows().is_multiple_of(2) || d.nrows() == 0 {
            return Err(Error::dim(
                "diffusion matrix",
                "2N x 2N",
                format!("{}x{}", d.nrows(), d.ncols()),
            ));
        }
        Ok(Self { d })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.d
    }

    pub fn modes(&self) -> usize {
        self.d.nrows() / 2
    }

    pub fn qq(&self, k: usize, j: usize) -> f64 {
        self.d[(q_index(k), q_index(j))]
    }

    pub fn pp(&self, k: usize, j: usize) -> f64 {
        self.d[(p_index(k), p_index(j))]
    }

    /// `D_{q_k p_j}`.
    pub fn qp(&self, k: usize, j: usize) -> f64 {
        self.d[(q_index(k), p_index(j))]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DiffusionSource {
    ClosedForm,
    #[default]
    Oracle,
}

impl fmt::Display for DiffusionSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiffusionSource::ClosedForm => "closed-form",
            DiffusionSource::Oracle => "oracle",
        })
    }
}

impl FromStr for DiffusionSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed-form" | "closed_form" => Ok(DiffusionSource::ClosedForm),
            "oracle" => Ok(DiffusionSource::Oracle),
            other => Err(Error::InvalidArgument(format!(
                "unknown diffusion source '{other}' (expected 'closed-form' or 'oracle')"
            ))),
        }
    }
}

/// Per-oscillator quantities shared by every closed form.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Mode {
    pub m: f64,
    pub w: f64,
    pub mt: f64,
    /// Ω = √(ω² − μ̃²)
    pub omega_eff: f64,
    /// coth(ħβΩ/2)
    pub coth: f64,
    /// ħβΩ/2
    pub x: f64,
}

pub(crate) fn mode(
    net: &OscillatorNetwork,
    eq: &EquilibriumSpec,
    units: &UnitSystem,
    k: usize,
) -> Result<Mode> {
    let omega_eff = eq.effective_frequency(net, k)?;
    let x = 0.5 * units.hbar * eq.beta(units) * omega_eff;
    Ok(Mode {
        m: net.mass(k),
        w: net.frequency(k),
        mt: eq.mu_tilde[k],
        omega_eff,
        coth: coth(x),
        x,
    })
}

pub(crate) fn check_dims(
    net: &OscillatorNetwork,
    lind: &LindbladSpec,
    eq: &EquilibriumSpec,
) -> Result<()> {
    let n = net.n();
    if lind.n() != n {
        return Err(Error::dim("lindblad coefficients", n, lind.n()));
    }
    if eq.n() != n {
        return Err(Error::dim("mu_tilde", n, eq.n()));
    }
    Ok(())
}

fn check_index(net: &OscillatorNetwork, k: usize) -> Result<()> {
    if k >= net.n() {
        return Err(Error::InvalidArgument(format!(
            "oscillator index {k} out of range for {} oscillators",
            net.n()
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagonalDiffusion {
    pub dqq: f64,
    pub dpp: f64,
    pub dqp: f64,
}

/// `D_{q_k q_k}`, `D_{p_k p_k}` and `D_{q_k p_k}` of oscillator `k`.
pub fn diagonal_diffusion(
    net: &OscillatorNetwork,
    lind: &LindbladSpec,
    eq: &EquilibriumSpec,
    units: &UnitSystem,
    k: usize,
) -> Result<DiagonalDiffusion> {
    check_dims(net, lind, eq)?;
    check_index(net, k)?;
    let md = mode(net, eq, units, k)?;
    let h = units.hbar;
    let lam = lind.lambda()[(k, k)];
    let mu = net.mu()[(k, k)];
    let dqq = 0.5 * h * (lam - mu + md.mt) / (md.m * md.omega_eff) * md.coth;
    let dpp = 0.5 * h * md.m * md.w * md.w * (lam + mu - md.mt) / md.omega_eff * md.coth;
    let dqp = -(h * lam * md.mt / (2.0 * md.omega_eff)) * md.coth;
    Ok(DiagonalDiffusion { dqq, dpp, dqp })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossDiffusion {
    pub dqkqj: f64,
    pub dpkpj: f64,
    pub dqkpj: f64,
    pub dqjpk: f64,
}

fn mixed_closed_form(
    net: &OscillatorNetwork,
    lind: &LindbladSpec,
    a: &Mode,
    b: &Mode,
    k: usize,
    j: usize,
    h: f64,
) -> f64 {
    let (lam, alpha, eta, mu) = (lind.lambda(), lind.alpha(), lind.eta(), net.mu());
    let (nu, kappa) = (net.nu()[(k, j)], net.kappa()[(k, j)]);
    let first = ((eta[(k, j)] + nu) / (a.m * a.omega_eff)
        - a.mt * (lam[(k, j)] + mu[(k, j)]) / a.omega_eff)
        * a.coth;
    let second = (b.m * b.w * b.w * (alpha[(k, j)] - kappa) / b.omega_eff
        - b.mt * (lam[(k, j)] - mu[(k, j)]) / b.omega_eff)
        * b.coth;
    0.25 * h * (first + second)
}

/// Cross coefficients between oscillators `k ≠ j`, evaluated as printed.
pub fn cross_diffusion(
    net: &OscillatorNetwork,
    lind: &LindbladSpec,
    eq: &EquilibriumSpec,
    units: &UnitSystem,
    k: usize,
    j: usize,
) -> Result<CrossDiffusion> {
    check_dims(net, lind, eq)?;
    check_index(net, k)?;
    check_index(net, j)?;
    if k == j {
        return Err(Error::InvalidArgument(
            "cross_diffusion requires k != j; use diagonal_diffusion".into(),
        ));
    }
    let a = mode(net, eq, units, k)?;
    let b = mode(net, eq, units, j)?;
    let h = units.hbar;
    let (lam, alpha, eta, mu) = (lind.lambda(), lind.alpha(), lind.eta(), net.mu());
    let (nu, kappa) = (net.nu()[(k, j)], net.kappa()[(k, j)]);

    let dqkqj = 0.25
        * h
        * (((lam[(j, k)] - mu[(j, k)]) / (a.m * a.omega_eff)
            + a.mt * (alpha[(k, j)] - kappa) / a.omega_eff)
            * a.coth
            + ((lam[(k, j)] - mu[(k, j)]) / (b.m * b.omega_eff)
                - b.mt * (alpha[(k, j)] + kappa) / b.omega_eff)
                * b.coth);

    let dpkpj = 0.25
        * h
        * ((a.m * a.w * a.w * (lam[(j, k)] + mu[(j, k)]) / a.omega_eff
            - a.mt * (eta[(k, j)] + nu) / a.omega_eff)
            * a.coth
            + (b.m * b.w * b.w * (lam[(k, j)] + mu[(k, j)]) / b.omega_eff
                + b.mt * (eta[(k, j)] - nu) / b.omega_eff)
                * b.coth);

    let dqkpj = mixed_closed_form(net, lind, &a, &b, k, j, h);
    let dqjpk = mixed_closed_form(net, lind, &b, &a, j, k, h);

    Ok(CrossDiffusion {
        dqkqj,
        dpkpj,
        dqkpj,
        dqjpk,
    })
}

/// Full diffusion matrix from the chosen source.
pub fn assemble_diffusion(
    net: &OscillatorNetwork,
    lind: &LindbladSpec,
    eq: &EquilibriumSpec,
    units: &UnitSystem,
    source: DiffusionSource,
) -> Result<DiffusionMatrix> {
    check_dims(net, lind, eq)?;
    match source {
        DiffusionSource::Oracle => {
            let m = drift_matrix(net, lind)?;
            m.ensure_hurwitz()?;
            let sigma = gibbs_covariance(net, eq, units)?;
            oracle_diffusion(&m, &sigma)
        }
        DiffusionSource::ClosedForm => {
            let n = net.n();
            let mut d = DMatrix::zeros(2 * n, 2 * n);
            let mut put = |r: usize, c: usize, v: f64| {
                d[(r, c)] = v;
                d[(c, r)] = v;
            };
            for k in 0..n {
                let diag = diagonal_diffusion(net, lind, eq, units, k)?;
                put(q_index(k), q_index(k), diag.dqq);
                put(p_index(k), p_index(k), diag.dpp);
                put(q_index(k), p_index(k), diag.dqp);
                for j in k + 1..n {
                    let c = cross_diffusion(net, lind, eq, units, k, j)?;
                    put(q_index(k), q_index(j), c.dqkqj);
                    put(p_index(k), p_index(j), c.dpkpj);
                    put(q_index(k), p_index(j), c.dqkpj);
                    put(q_index(j), p_index(k), c.dqjpk);
                }
            }
            DiffusionMatrix::new(d)
        }
    }
}

/// Canonical label of a phase-space slot, e.g. `q1` or `p2`.
pub fn slot_label(index: usize) -> String {
    let kind = if index.is_multiple_of(2) { 'q' } else { 'p' };
    format!("{kind}{}", index / 2 + 1)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonEntry {
    pub row: usize,
    pub col: usize,
    pub label: String,
    pub closed_form: f64,
    pub oracle: f64,
    pub abs_diff: f64,
    pub agrees: bool,
}

/// Entrywise comparison of the two diffusion sources (upper triangle).
#[derive(Debug, Clone, PartialEq)]
pub struct DiffusionComparison {
    pub entries: Vec<ComparisonEntry>,
}

impl DiffusionComparison {
    pub fn all_agree(&self) -> bool {
        self.entries.iter().all(|e| e.agrees)
    }

    pub fn discrepancies(&self) -> impl Iterator<Item = &ComparisonEntry> {
        self.entries.iter().filter(|e| !e.agrees)
    }

    pub fn entry(&self, row: usize, col: usize) -> Option<&ComparisonEntry> {
        let (r, c) = if row <= col { (row, col) } else { (col, row) };
        self.entries.iter().find(|e| e.row == r && e.col == c)
    }
}

pub fn compare_diffusion(
    net: &OscillatorNetwork,
    lind: &LindbladSpec,
    eq: &EquilibriumSpec,
    units: &UnitSystem,
) -> Result<DiffusionComparison> {
    let closed = assemble_diffusion(net, lind, eq, units, DiffusionSource::ClosedForm)?;
    let oracle = assemble_diffusion(net, lind, eq, units, DiffusionSource::Oracle)?;
    let dim = closed.matrix().nrows();
    let mut entries = Vec::with_capacity(dim * (dim + 1) / 2);
    for row in 0..dim {
        for col in row..dim {
            let (c, o) = (closed.matrix()[(row, col)], oracle.matrix()[(row, col)]);
            let abs_diff = (c - o).abs();
            let scale = c.abs().max(o.abs()).max(1.0);
            entries.push(ComparisonEntry {
                row,
                col,
                label: format!("D_{}{}", slot_label(row), slot_label(col)),
                closed_form: c,
                oracle: o,
                abs_diff,
                agrees: abs_diff <= COMPARISON_TOL * scale,
            });
        }
    }
    Ok(DiffusionComparison { entries })
}

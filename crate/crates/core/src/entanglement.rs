//! Two-mode entanglement: squeezed thermal states, logarithmic negativity,
//! critical squeezing and sudden death.
//!
//! Vacuum variances are 1/2 (ħ = 1), so a two-mode Gaussian state is
//! separable iff the smallest symplectic eigenvalue ν̃ of its partial
//! transpose satisfies ν̃ ≥ 1/2.

use nalgebra::{DMatrix, Matrix2};

use crate::dynamics::CovarianceMatrix;
use crate::error::{Error, Result};

const BISECTION_LO: f64 = 0.0;
const BISECTION_HI: f64 = 5.0;
const BISECTION_TOL: f64 = 1e-8;

/// Mean thermal occupations of both modes and the two-mode squeezing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezedThermalSpec {
    pub n1: f64,
    pub n2: f64,
    pub r: f64,
}

impl SqueezedThermalSpec {
    pub fn new(n1: f64, n2: f64, r: f64) -> Result<Self> {
        for (name, v) in [("n1", n1), ("n2", n2), ("r", r)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be finite and >= 0, got {v}"
                )));
            }
        }
        Ok(Self { n1, n2, r })
    }

    pub fn xi1(&self) -> f64 {
        let (c, s) = (self.r.cosh(), self.r.sinh());
        self.n1 * c * c + self.n2 * s * s + 0.5 * (2.0 * self.r).cosh()
    }

    pub fn xi2(&self) -> f64 {
        let (c, s) = (self.r.cosh(), self.r.sinh());
        self.n2 * c * c + self.n1 * s * s + 0.5 * (2.0 * self.r).cosh()
    }

    pub fn theta(&self) -> f64 {
        0.5 * (self.n1 + self.n2 + 1.0) * (2.0 * self.r).sinh()
    }
}

/// `[[ξ₁I, C], [Cᵀ, ξ₂I]]` with `C = diag(θ, −θ)`.
pub fn squeezed_thermal_covariance(spec: &SqueezedThermalSpec) -> CovarianceMatrix {
    let (x1, x2, th) = (spec.xi1(), spec.xi2(), spec.theta());
    #[rustfmt::skip]
    let sigma = DMatrix::from_row_slice(4, 4, &[
        x1,  0.0, th,  0.0,
        0.0, x1,  0.0, -th,
        th,  0.0, x2,  0.0,
        0.0, -th, 0.0, x2,
    ]);
    CovarianceMatrix::new(sigma).expect("4x4 is a valid two-mode shape")
}

fn block(sigma: &DMatrix<f64>, r: usize, c: usize) -> Matrix2<f64> {
    Matrix2::new(
        sigma[(r, c)],
        sigma[(r, c + 1)],
        sigma[(r + 1, c)],
        sigma[(r + 1, c + 1)],
    )
}

fn two_mode(sigma: &CovarianceMatrix) -> Result<&DMatrix<f64>> {
    let s = sigma.matrix();
    if s.nrows() != 4 {
        return Err(Error::dim(
            "two-mode covariance",
            "4x4",
            format!("{}x{}", s.nrows(), s.ncols()),
        ));
    }
    Ok(s)
}

/// `(Δ̃, det σ)` with `Δ̃ = det A + det B − 2 det C`.
fn invariants(s: &DMatrix<f64>) -> (f64, f64) {
    let a = block(s, 0, 0).determinant();
    let b = block(s, 2, 2).determinant();
    let c = block(s, 0, 2);
    (a + b - 2.0 * c.determinant(), determinant(s))
}

/// `det A · det(B − Cᵀ A⁻¹ C)`, which keeps its accuracy for strongly
/// squeezed states where a plain LU determinant cancels catastrophically.
fn determinant(s: &DMatrix<f64>) -> f64 {
    let a = block(s, 0, 0);
    let b = block(s, 2, 2);
    let c = block(s, 0, 2);
    match a.try_inverse() {
        Some(a_inv) => a.determinant() * (b - c.transpose() * a_inv * c).determinant(),
        None => s.determinant(),
    }
}

/// ν̃², the squared smallest symplectic eigenvalue of the partial transpose.
fn pt_eigenvalue_squared(sigma: &CovarianceMatrix) -> Result<f64> {
    let s = two_mode(sigma)?;
    let (delta, det) = invariants(s);
    let disc = delta * delta - 4.0 * det;
    if disc < -1e-12 * (delta * delta).max(1.0) {
        return Err(Error::NumericalDomain(format!(
            "negative discriminant {disc:e} in the partially transposed spectrum"
        )));
    }
    // 2 det σ / (Δ̃ + √disc) is the smaller root without cancellation
    let nu2 = 2.0 * det / (delta + disc.max(0.0).sqrt());
    if !(nu2 > 0.0) {
        return Err(Error::NumericalDomain(format!("non-positive ν̃² = {nu2:e}")));
    }
    Ok(nu2)
}

pub fn pt_symplectic_eigenvalue(sigma: &CovarianceMatrix) -> Result<f64> {
    pt_eigenvalue_squared(sigma).map(f64::sqrt)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NegativityForm {
    /// `max(0, −log₂(2ν̃))`
    #[default]
    Standard,
    /// The literal expression `−log₂(Δ̃ − √(Δ̃² − 4 det σ)) = −log₂(2ν̃²)`,
    /// kept for comparison only. It is not clipped at zero.
    Printed,
}

pub fn log_negativity(sigma: &CovarianceMatrix) -> Result<f64> {
    log_negativity_with(sigma, NegativityForm::Standard)
}

pub fn log_negativity_with(sigma: &CovarianceMatrix, form: NegativityForm) -> Result<f64> {
    let nu2 = pt_eigenvalue_squared(sigma)?;
    Ok(match form {
        NegativityForm::Standard => (-(2.0 * nu2.sqrt()).log2()).max(0.0),
        NegativityForm::Printed => -(2.0 * nu2).log2(),
    })
}

/// Smallest squeezing at which the squeezed thermal state becomes entangled.
///
/// Returns 0 when the state is entangled for every `r > 0`.
pub fn critical_squeezing(n1: f64, n2: f64) -> Result<f64> {
    let gap = |r: f64| -> Result<f64> {
        let spec = SqueezedThermalSpec::new(n1, n2, r)?;
        Ok(pt_symplectic_eigenvalue(&squeezed_thermal_covariance(&spec))? - 0.5)
    };
    let (mut lo, mut hi) = (BISECTION_LO, BISECTION_HI);
    let g_lo = gap(lo)?;
    if g_lo <= 1e-12 {
        return Ok(0.0);
    }
    if gap(hi)? > 0.0 {
        return Err(Error::NumericalDomain(format!(
            "no separability threshold in r ∈ [{BISECTION_LO}, {BISECTION_HI}] for n1 = {n1}, n2 = {n2}"
        )));
    }
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if gap(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `acosh((n₁+1)(n₂+1)/(n₁+n₂+1))`, reported alongside
/// [`critical_squeezing`] for comparison. It does not match the PPT
/// threshold (e.g. 0.795 instead of ½ln3 for n₁ = n₂ = 1).
pub fn printed_critical_squeezing(n1: f64, n2: f64) -> f64 {
    ((n1 + 1.0) * (n2 + 1.0) / (n1 + n2 + 1.0)).acosh()
}

/// Logarithmic negativity sampled on a time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct NegativityTrajectory {
    times: Vec<f64>,
    values: Vec<f64>,
}

impl NegativityTrajectory {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::dim("negativity values", times.len(), values.len()));
        }
        if times.is_empty() {
            return Err(Error::InvalidArgument("empty trajectory".into()));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidArgument(
                "trajectory times must be strictly increasing".into(),
            ));
        }
        if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::InvalidArgument(
                "negativity values must be finite and >= 0".into(),
            ));
        }
        Ok(Self { times, values })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn initial(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }
}

pub const DEFAULT_SUDDEN_DEATH_EPS: f64 = 1e-9;

/// Earliest grid time after which the negativity never exceeds `eps`;
/// `None` if it still exceeds `eps` at the last sample.
pub fn sudden_death_time(traj: &NegativityTrajectory, eps: f64) -> Option<f64> {
    match traj.values.iter().rposition(|&v| v > eps) {
        None => Some(traj.times[0]),
        Some(last) if last + 1 == traj.times.len() => None,
        Some(last) => Some(traj.times[last + 1]),
    }
}

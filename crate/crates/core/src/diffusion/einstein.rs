//! Einstein-relation diagnostics: `D_pp ≈ γ_eff m k_B T` when ħβΩ/2 is small.

use super::{check_dims, check_index, diagonal_diffusion, mode};
use crate::error::Result;
use crate::model::{EquilibriumSpec, LindbladSpec, OscillatorNetwork, UnitSystem};

/// ħβΩ/2 below this value counts as the Einstein regime.
pub const EINSTEIN_REGIME_THRESHOLD: f64 = 0.05;

/// Lowest temperature at which the diagonal position-momentum constraint
/// can hold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TemperatureBound {
    /// μ_kk = μ̃_kk: satisfied at every temperature.
    Unconstrained,
    AtLeast(f64),
    /// λ_kk is below |μ_kk − μ̃_kk| ω_k / Ω_k.
    Unattainable,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EinsteinReport {
    pub oscillator: usize,
    /// ω²(λ + μ − μ̃)/(ω² − μ̃²)
    pub effective_friction: f64,
    /// ħβΩ/2
    pub thermal_argument: f64,
    pub regime: bool,
    pub dpp_over_mkt: f64,
    /// `None` when the effective friction vanishes.
    pub limit_ratio: Option<f64>,
    pub lambda_lower_bound: f64,
    pub min_temperature: TemperatureBound,
}

pub fn einstein_report(
    net: &OscillatorNetwork,
    lind: &LindbladSpec,
    eq: &EquilibriumSpec,
    units: &UnitSystem,
    k: usize,
) -> Result<EinsteinReport> {
    check_dims(net, lind, eq)?;
    check_index(net, k)?;
    let md = mode(net, eq, units, k)?;
    let lam = lind.lambda()[(k, k)];
    let mu = net.mu()[(k, k)];
    let delta = (mu - md.mt).abs();

    let effective_friction = md.w * md.w * (lam + mu - md.mt) / (md.omega_eff * md.omega_eff);
    let dpp = diagonal_diffusion(net, lind, eq, units, k)?.dpp;
    let dpp_over_mkt = dpp / (md.m * units.kb * eq.temperature);
    let limit_ratio = (effective_friction != 0.0).then(|| dpp_over_mkt / effective_friction);

    let threshold = delta * md.w / md.omega_eff;
    let lambda_lower_bound = threshold * md.x.cosh();
    let min_temperature = if delta == 0.0 {
        TemperatureBound::Unconstrained
    } else {
        let arg = lam / threshold;
        if arg > 1.0 {
            TemperatureBound::AtLeast(units.hbar * md.omega_eff / (2.0 * units.kb * arg.acosh()))
        } else {
            TemperatureBound::Unattainable
        }
    };

    Ok(EinsteinReport {
        oscillator: k,
        effective_friction,
        thermal_argument: md.x,
        regime: md.x < EINSTEIN_REGIME_THRESHOLD,
        dpp_over_mkt,
        limit_ratio,
        lambda_lower_bound,
        min_temperature,
    })
}

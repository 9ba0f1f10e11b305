//! End-to-end workflows: steady state, covariance trajectories and ζ sweeps.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::bogoliubov::{to_canonical, BogoliubovModel};
use crate::diffusion::{assemble_diffusion, DiffusionMatrix, DiffusionSource};
use crate::dynamics::{
    drift_matrix, gibbs_covariance, solve_steady_state, CovarianceMatrix, CovariancePropagator,
    DriftMatrix,
};
use crate::entanglement::{
    log_negativity, squeezed_thermal_covariance, sudden_death_time, NegativityTrajectory,
    SqueezedThermalSpec, DEFAULT_SUDDEN_DEATH_EPS,
};
use crate::error::{Error, Result};
use crate::model::{EquilibriumSpec, LindbladSpec, OscillatorNetwork, UnitSystem};

/// Uniform grid `0, dt, 2dt, …` up to `tmax` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub tmax: f64,
    pub dt: f64,
}

impl TimeGrid {
    pub fn new(tmax: f64, dt: f64) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidArgument(format!("dt must be > 0, got {dt}")));
        }
        if !(tmax >= dt && tmax.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "tmax must be >= dt, got tmax = {tmax}, dt = {dt}"
            )));
        }
        Ok(Self { tmax, dt })
    }

    pub fn steps(&self) -> usize {
        (self.tmax / self.dt + 1e-9).floor() as usize
    }

    pub fn times(&self) -> Vec<f64> {
        (0..=self.steps()).map(|i| i as f64 * self.dt).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum InitialState {
    SqueezedThermal(SqueezedThermalSpec),
    /// Start in the steady state itself.
    Steady,
    Covariance(CovarianceMatrix),
}

/// Drift, diffusion and the matching stationary covariance.
#[derive(Debug, Clone, PartialEq)]
pub struct SteadyState {
    pub drift: DriftMatrix,
    pub diffusion: DiffusionMatrix,
    pub sigma: CovarianceMatrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<CovarianceMatrix>,
}

impl Trajectory {
    /// Logarithmic negativity at every sample (two modes only).
    pub fn negativity(&self) -> Result<NegativityTrajectory> {
        let values = self
            .states
            .iter()
            .map(log_negativity)
            .collect::<Result<Vec<_>>>()?;
        NegativityTrajectory::new(self.times.clone(), values)
    }
}

/// A fully specified open network.
#[derive(Debug, Clone, PartialEq)]
pub struct Simulation {
    pub network: OscillatorNetwork,
    pub lindblad: LindbladSpec,
    pub equilibrium: EquilibriumSpec,
    pub units: UnitSystem,
}

impl Simulation {
    pub fn from_bogoliubov(
        bog: &BogoliubovModel,
        lindblad: LindbladSpec,
        temperature: f64,
        units: UnitSystem,
    ) -> Result<Self> {
        let canon = to_canonical(bog, &units)?;
        let equilibrium = canon.equilibrium(temperature)?;
        Ok(Self {
            network: canon.network,
            lindblad,
            equilibrium,
            units,
        })
    }

    pub fn modes(&self) -> usize {
        self.network.n()
    }

    /// With the oracle source σ̃ is the Gibbs covariance itself; with the
    /// closed-form source it is the solution of the steady condition for the
    /// closed-form D.
    pub fn steady_state(&self, source: DiffusionSource) -> Result<SteadyState> {
        let drift = drift_matrix(&self.network, &self.lindblad)?;
        drift.ensure_hurwitz()?;
        let diffusion = assemble_diffusion(
            &self.network,
            &self.lindblad,
            &self.equilibrium,
            &self.units,
            source,
        )?;
        let sigma = match source {
            DiffusionSource::Oracle => {
                gibbs_covariance(&self.network, &self.equilibrium, &self.units)?
            }
            DiffusionSource::ClosedForm => solve_steady_state(&drift, &diffusion)?,
        };
        Ok(SteadyState {
            drift,
            diffusion,
            sigma,
        })
    }

    pub fn initial_covariance(
        &self,
        initial: &InitialState,
        steady: &SteadyState,
    ) -> Result<CovarianceMatrix> {
        let sigma0 = match initial {
            InitialState::SqueezedThermal(spec) => squeezed_thermal_covariance(spec),
            InitialState::Steady => steady.sigma.clone(),
            InitialState::Covariance(s) => s.clone(),
        };
        let dim = 2 * self.modes();
        if sigma0.matrix().nrows() != dim {
            return Err(Error::dim(
                "initial covariance",
                dim,
                sigma0.matrix().nrows(),
            ));
        }
        Ok(sigma0)
    }

    pub fn trajectory(
        &self,
        initial: &InitialState,
        grid: &TimeGrid,
        source: DiffusionSource,
    ) -> Result<Trajectory> {
        let steady = self.steady_state(source)?;
        let sigma0 = self.initial_covariance(initial, &steady)?;
        let propagator = CovariancePropagator::new(&sigma0, &steady.drift, &steady.sigma)?;
        let times = grid.times();
        let states = propagator.sample(&times)?;
        Ok(Trajectory { times, states })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepStats {
    pub t_sudden_death: Option<f64>,
    pub e_initial: f64,
    pub e_max: f64,
}

pub fn negativity_stats(traj: &NegativityTrajectory) -> SweepStats {
    SweepStats {
        t_sudden_death: sudden_death_time(traj, DEFAULT_SUDDEN_DEATH_EPS),
        e_initial: traj.initial(),
        e_max: traj.max(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub zeta: f64,
    pub outcome: Result<SweepStats>,
}

/// A Bogoliubov mode model together with its bath.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSetup {
    pub model: BogoliubovModel,
    pub lindblad: LindbladSpec,
    pub temperature: f64,
    pub units: UnitSystem,
}

impl ModeSetup {
    /// Symmetric pair of identical modes used throughout the examples and
    /// acceptance tests (energies in units of K = K₁₁ = K₂₂):
    /// K₁₂ = 0.2, Im Δ_ℓℓ = 0.05, Re Δ₁₂ = 0.05, λ_ℓℓ = 0.15, T = 0.5,
    /// Im Δ̃_ℓℓ = ζ, everything else zero, ħ = k_B = 1.
    pub fn reference_pair(zeta: f64) -> Self {
        let c = Complex64::new;
        let k =
            DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.2, 0.0), c(0.2, 0.0), c(1.0, 0.0)]);
        let delta = DMatrix::from_row_slice(
            2,
            2,
            &[c(0.0, 0.05), c(0.05, 0.0), c(0.05, 0.0), c(0.0, 0.05)],
        );
        let model =
            BogoliubovModel::new(k, delta, vec![c(0.0, zeta); 2]).expect("reference pair is valid");
        Self {
            model,
            lindblad: LindbladSpec::diagonal_friction(&[0.15, 0.15]),
            temperature: 0.5,
            units: UnitSystem::default(),
        }
    }

    pub fn with_zeta(&self, zeta: f64) -> Self {
        Self {
            model: self.model.clone().with_zeta(zeta),
            ..self.clone()
        }
    }

    pub fn simulation(&self) -> Result<Simulation> {
        Simulation::from_bogoliubov(
            &self.model,
            self.lindblad.clone(),
            self.temperature,
            self.units,
        )
    }
}

/// Entanglement statistics for each ζ, in the order given. `build` turns a
/// ζ value into a simulation; points run in parallel.
pub fn sweep<F>(
    build: F,
    initial: &InitialState,
    grid: &TimeGrid,
    source: DiffusionSource,
    zetas: &[f64],
) -> Vec<SweepRow>
where
    F: Fn(f64) -> Result<Simulation> + Sync,
{
    zetas
        .par_iter()
        .map(|&zeta| {
            let outcome = build(zeta)
                .and_then(|sim| sim.trajectory(initial, grid, source))
                .and_then(|traj| traj.negativity())
                .map(|neg| negativity_stats(&neg));
            SweepRow { zeta, outcome }
        })
        .collect()
}

/// [`sweep`] over the steady-state coupling `Δ̃_ℓℓ = iζ` of a mode model.
pub fn zeta_sweep(
    setup: &ModeSetup,
    initial: &InitialState,
    grid: &TimeGrid,
    source: DiffusionSource,
    zetas: &[f64],
) -> Vec<SweepRow> {
    sweep(
        |zeta| setup.with_zeta(zeta).simulation(),
        initial,
        grid,
        source,
        zetas,
    )
}

//! Gaussian dynamics of open networks of coupled harmonic oscillators whose
//! bath drives them towards a Gibbs state with persistent position-momentum
//! correlations.
//!
//! Phase-space vectors are ordered `(q₁, p₁, q₂, p₂, …)`; see
//! [`model::q_index`] and [`model::p_index`].
//!
//! ```
//! use oscnet::prelude::*;
//!
//! let setup = ModeSetup::reference_pair(0.1);
//! let sim = setup.simulation().unwrap();
//! let init = InitialState::SqueezedThermal(SqueezedThermalSpec::new(1.0, 1.0, 0.6).unwrap());
//! let grid = TimeGrid::new(5.0, 0.05).unwrap();
//! let neg = sim.trajectory(&init, &grid, DiffusionSource::Oracle).unwrap().negativity().unwrap();
//! assert!(neg.initial() > 0.14);
//! ```
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bogoliubov;
pub mod cli;
pub mod diffusion;
pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod model;
pub mod scenario;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::bogoliubov::{to_canonical, two_mode_drift, BogoliubovModel, CanonicalModel};
    pub use crate::diffusion::{
        assemble_diffusion, compare_diffusion, cross_diffusion, diagonal_diffusion,
        einstein_report, phi_psi_gamma_residuals, verify_cp_constraints, DiffusionMatrix,
        DiffusionSource,
    };
    pub use crate::dynamics::{
        drift_matrix, evolve_covariance, gibbs_covariance, oracle_diffusion, solve_steady_state,
        CovarianceMatrix, CovariancePropagator, DriftMatrix,
    };
    pub use crate::entanglement::{
        critical_squeezing, log_negativity, squeezed_thermal_covariance, sudden_death_time,
        NegativityTrajectory, SqueezedThermalSpec,
    };
    pub use crate::error::{Error, Result};
    pub use crate::model::{
        validate_model, EquilibriumSpec, LindbladSpec, OscillatorNetwork, UnitSystem,
    };
    pub use crate::scenario::{zeta_sweep, InitialState, ModeSetup, Simulation, TimeGrid};
}

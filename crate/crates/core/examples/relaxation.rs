//! Relaxation of a two-oscillator network towards its Gibbs state.
//!
//! cargo run --example relaxation

use nalgebra::{dmatrix, DMatrix};
use oscnet::diffusion::{assemble_diffusion, DiffusionSource};
use oscnet::dynamics::{
    drift_matrix, gibbs_covariance, solve_steady_state, CovarianceMatrix, CovariancePropagator,
};
use oscnet::model::{EquilibriumSpec, LindbladSpec, OscillatorNetwork, UnitSystem};

fn main() -> oscnet::Result<()> {
    let units = UnitSystem::default();
    let net = OscillatorNetwork::uncoupled(vec![1.0, 1.0], vec![1.0, 1.3])?
        .with_mu(dmatrix![0.2, 0.0; 0.0, 0.2])?
        .with_kappa(dmatrix![0.0, 0.1; 0.1, 0.0])?;
    let lind = LindbladSpec::diagonal_friction(&[0.2, 0.1]);
    let eq = EquilibriumSpec::new(vec![0.2, 0.2], 0.8)?;

    let m = drift_matrix(&net, &lind)?;
    let d = assemble_diffusion(&net, &lind, &eq, &units, DiffusionSource::Oracle)?;
    let gibbs = gibbs_covariance(&net, &eq, &units)?;
    let steady = solve_steady_state(&m, &d)?;
    println!("slowest decay rate {:.4}", -m.spectral_abscissa().re);
    println!(
        "steady state vs Gibbs: {:.2e}",
        (steady.matrix() - gibbs.matrix()).abs().max()
    );

    let start = CovarianceMatrix::new(DMatrix::identity(4, 4) * 3.0)?;
    let prop = CovariancePropagator::new(&start, &m, &gibbs)?;
    println!("{:>6} {:>14} {:>14}", "t", "|σ(t) − σ̃|", "uncertainty");
    for t in [0.0, 1.0, 5.0, 10.0, 20.0, 40.0, 80.0] {
        let s = prop.at(t)?;
        println!(
            "{t:>6} {:>14.4e} {:>14.4e}",
            (s.matrix() - gibbs.matrix()).abs().max(),
            s.uncertainty_min_eigenvalue(&units)
        );
    }
    Ok(())
}

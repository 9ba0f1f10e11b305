//! Complete-positivity constraints and the high-temperature Einstein
//! relation for a single oscillator.
//!
//! cargo run --example constraints_and_einstein

use nalgebra::dmatrix;
use oscnet::diffusion::{
    assemble_diffusion, einstein_report, verify_cp_constraints, DiffusionSource, TemperatureBound,
};
use oscnet::model::{EquilibriumSpec, LindbladSpec, OscillatorNetwork, UnitSystem};

fn main() -> oscnet::Result<()> {
    let units = UnitSystem::default();
    let lind = LindbladSpec::diagonal_friction(&[0.05]);

    // steady-state correlation larger than the Hamiltonian term
    let net = OscillatorNetwork::uncoupled(vec![1.0], vec![1.0])?.with_mu(dmatrix![0.08])?;
    let bound = einstein_report(
        &net,
        &lind,
        &EquilibriumSpec::new(vec![0.1], 1.0)?,
        &units,
        0,
    )?
    .min_temperature;
    match bound {
        TemperatureBound::AtLeast(t) => {
            println!("μ = 0.08, μ̃ = 0.1, λ = 0.05: constraints need T ≥ {t:.4}")
        }
        other => println!("μ = 0.08, μ̃ = 0.1, λ = 0.05: {other:?}"),
    }
    println!("{:>8} {:>12} {:>12} {:>6}", "T", "lhs", "ħ²λ²/4", "ok");
    for t in [0.05, 0.1, 0.2, 0.5, 1.0, 2.0] {
        let eq = EquilibriumSpec::new(vec![0.1], t)?;
        let d = assemble_diffusion(&net, &lind, &eq, &units, DiffusionSource::ClosedForm)?;
        let report = verify_cp_constraints(&d, &lind, &units)?;
        let c = report.checks[0];
        println!(
            "{t:>8} {:>12.4e} {:>12.4e} {:>6}",
            c.lhs,
            c.rhs,
            report.all_pass()
        );
    }

    println!("\nEinstein relation, ω = 1, μ = μ̃ = 0.6, λ = 0.5");
    let net = OscillatorNetwork::uncoupled(vec![1.0], vec![1.0])?.with_mu(dmatrix![0.6])?;
    let lind = LindbladSpec::diagonal_friction(&[0.5]);
    println!(
        "{:>8} {:>10} {:>14} {:>8}",
        "T", "ħβΩ/2", "D_pp/(mkTγ)", "regime"
    );
    for t in [0.5, 1.0, 5.0, 10.0, 50.0] {
        let r = einstein_report(&net, &lind, &EquilibriumSpec::new(vec![0.6], t)?, &units, 0)?;
        println!(
            "{t:>8} {:>10.4} {:>14.6} {:>8}",
            r.thermal_argument,
            r.limit_ratio.unwrap_or(f64::NAN),
            r.regime
        );
    }
    Ok(())
}

//! Diffusion coefficients that make a correlated Gibbs state stationary:
//! closed forms against the stationarity oracle.
//!
//! cargo run --example diffusion_coefficients

use nalgebra::dmatrix;
use oscnet::diffusion::{compare_diffusion, diagonal_diffusion};
use oscnet::model::{EquilibriumSpec, LindbladSpec, OscillatorNetwork, UnitSystem};

fn main() -> oscnet::Result<()> {
    let units = UnitSystem::default();

    println!("single oscillator, m = ω = 1, λ = 0.5, T = 5");
    println!(
        "{:>6} {:>6} {:>12} {:>12} {:>12}",
        "μ", "μ̃", "D_qq", "D_pp", "D_qp"
    );
    for (mu, mt) in [(0.0, 0.0), (0.6, 0.6), (0.0, 0.6), (0.3, -0.4)] {
        let net = OscillatorNetwork::uncoupled(vec![1.0], vec![1.0])?.with_mu(dmatrix![mu])?;
        let lind = LindbladSpec::diagonal_friction(&[0.5]);
        let eq = EquilibriumSpec::new(vec![mt], 5.0)?;
        let d = diagonal_diffusion(&net, &lind, &eq, &units, 0)?;
        println!(
            "{mu:>6} {mt:>6} {:>12.6} {:>12.6} {:>12.6}",
            d.dqq, d.dpp, d.dqp
        );
    }

    // two oscillators with a directional momentum-position coupling
    let net = OscillatorNetwork::uncoupled(vec![1.0, 1.5], vec![1.0, 0.8])?
        .with_mu(dmatrix![0.0, 0.1; -0.05, 0.0])?
        .with_nu(dmatrix![0.0, 0.2; 0.2, 0.0])?;
    let lind = LindbladSpec::diagonal_friction(&[0.3, 0.2]);
    for mt in [0.0, 0.3] {
        let eq = EquilibriumSpec::new(vec![mt, mt], 1.0)?;
        let cmp = compare_diffusion(&net, &lind, &eq, &units)?;
        println!(
            "\ntwo oscillators, μ̃ = {mt}: {} of {} entries agree",
            cmp.entries.iter().filter(|e| e.agrees).count(),
            cmp.entries.len()
        );
        for e in cmp.discrepancies() {
            println!(
                "  {:<8} closed form {:>10.6}  oracle {:>10.6}",
                e.label, e.closed_form, e.oracle
            );
        }
    }
    Ok(())
}

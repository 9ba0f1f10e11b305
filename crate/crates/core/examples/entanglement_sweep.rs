//! Sudden death and generation of two-mode entanglement as the steady-state
//! coupling ζ grows.
//!
//! cargo run --release --example entanglement_sweep

use oscnet::diffusion::DiffusionSource;
use oscnet::entanglement::{critical_squeezing, printed_critical_squeezing, SqueezedThermalSpec};
use oscnet::scenario::{zeta_sweep, InitialState, ModeSetup, TimeGrid};

fn main() -> oscnet::Result<()> {
    println!(
        "separability threshold for n1 = n2 = 1: r_c = {:.6} (acosh form gives {:.6})",
        critical_squeezing(1.0, 1.0)?,
        printed_critical_squeezing(1.0, 1.0)
    );
    let grid = TimeGrid::new(50.0, 0.05)?;
    let setup = ModeSetup::reference_pair(0.0);
    for (r, zetas) in [
        (0.6, vec![0.0, 0.05, 0.1, 0.15, 0.2]),
        (0.549, vec![0.0, 0.1, 0.2, 0.3, 0.4, 0.5]),
    ] {
        let init = InitialState::SqueezedThermal(SqueezedThermalSpec::new(1.0, 1.0, r)?);
        println!("\nr = {r}");
        println!("{:>6} {:>10} {:>10} {:>10}", "ζ", "t*", "E(0)", "max E");
        for row in zeta_sweep(&setup, &init, &grid, DiffusionSource::Oracle, &zetas) {
            match row.outcome {
                Ok(s) => println!(
                    "{:>6} {:>10} {:>10.5} {:>10.5}",
                    row.zeta,
                    s.t_sudden_death
                        .map_or("none".into(), |t| format!("{t:.2}")),
                    s.e_initial,
                    s.e_max
                ),
                Err(e) => println!("{:>6} {e}", row.zeta),
            }
        }
    }
    Ok(())
}

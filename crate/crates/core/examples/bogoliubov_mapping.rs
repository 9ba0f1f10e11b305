//! Two bosonic modes mapped onto canonical oscillator parameters.
//!
//! cargo run --example bogoliubov_mapping

use oscnet::bogoliubov::{to_canonical, two_mode_drift};
use oscnet::dynamics::drift_matrix;
use oscnet::scenario::ModeSetup;

fn main() -> oscnet::Result<()> {
    let setup = ModeSetup::reference_pair(0.1);
    let canon = to_canonical(&setup.model, &setup.units)?;
    let net = &canon.network;
    for l in 0..net.n() {
        println!(
            "mode {}: m = {:.6}, ω = {:.6}, μ = {:.4}, μ̃ = {:.4}",
            l + 1,
            net.mass(l),
            net.frequency(l),
            net.mu()[(l, l)],
            canon.mu_tilde[l]
        );
    }
    println!(
        "ν_12 = {:.4}, κ_12 = {:.4}, μ_12 = {:.4}",
        net.nu()[(0, 1)],
        net.kappa()[(0, 1)],
        net.mu()[(0, 1)]
    );

    let direct = two_mode_drift(&setup.model, &setup.lindblad, &setup.units)?;
    let routed = drift_matrix(net, &setup.lindblad)?;
    println!("drift matrix{}", direct.matrix());
    println!(
        "difference from the canonical route: {:.1e}",
        (direct.matrix() - routed.matrix()).abs().max()
    );
    println!("eigenvalues: {:?}", direct.eigenvalues());
    Ok(())
}

//! Tune the effective charge of the truncated Coulomb potential.
//!
//! The TDSE reference uses V(r) = −z_eff/r cut off at r_c = 2 a.u.; cutting
//! the tail removes binding, so z_eff must exceed the hydrogenic charge to
//! keep I_p = 0.5 a.u. This prints the tuned charges for the 1s-like (ℓ=0)
//! and 2p-like (ℓ=1) initial states, the resulting level positions, and the
//! hydrogen limit as a sanity check.
//!
//! Run with: cargo run --release --example zeff_tuning

use strongfield::tdse::{bound_states, find_zeff, radial_eigenstate, CutCoulomb, RadialGrid};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = RadialGrid::new(0.05, 2000, 0.9)?;
    let target_ip = 0.5;
    let r_c = 2.0;

    println!("grid: dr = {}, r_max = {} a.u.; target I_p = {target_ip} a.u.\n", grid.dr, grid.r_max());

    for (ell, label) in [(0usize, "1s-like (ℓ=0)"), (1usize, "2p-like (ℓ=1)")] {
        let z = find_zeff(target_ip, ell, r_c, &grid, false)?;
        let pot = CutCoulomb::new(z, r_c)?;
        let (energy, u) = radial_eigenstate(&pot, ell, 0, &grid)?;
        let r_mean: f64 = u
            .iter()
            .enumerate()
            .map(|(j, &uj)| grid.r(j) * uj * uj)
            .sum::<f64>()
            * grid.dr;
        println!("{label}: z_eff = {z:.6}  (E = {energy:.8} a.u., ⟨r⟩ = {r_mean:.3} a.u.)");
        let n_bound = bound_states(&pot, ell, &grid).len();
        println!("         bound states in this channel: {n_bound}");
    }

    // Hydrogen limit: with the cut pushed past the box edge the tuned charge
    // must come back to 1.
    let z_hydrogen = find_zeff(target_ip, 0, 2.0 * grid.r_max(), &grid, false)?;
    println!("\nno cut (r_c > r_max): z_eff = {z_hydrogen:.6} (hydrogen: 1)");

    // The continuous variant lifts the well bottom by +z_eff/r_c to meet
    // zero at the cut, so it binds less at equal charge and needs even more
    // charge than the hard cut does.
    let z_continuous = find_zeff(target_ip, 0, r_c, &grid, true)?;
    println!("continuous variant at r_c = {r_c}: z_eff = {z_continuous:.6}");

    Ok(())
}

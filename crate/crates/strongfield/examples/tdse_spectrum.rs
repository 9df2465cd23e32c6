//! A complete TDSE run, small enough to finish in about a minute.
//!
//! Pipeline: tune the truncated-Coulomb charge so the ground state sits at
//! I_p, propagate through the pulse in length gauge, project the final wave
//! function on numerical continuum eigenstates (bound part removed), and
//! read off the ATI comb along the polarization axis.
//!
//! A gentler pulse than the reference one is used here (half the field,
//! three cycles) so the partial-wave ladder and the box stay small: the
//! full-strength run needs l_max ≈ 90 and a 500 a.u. box — that variant
//! lives in the repository README and takes a few minutes.
//!
//! Run with: cargo run --release --example tdse_spectrum

use std::time::Instant;

use strongfield::field::{Pulse, PulseParams};
use strongfield::spectrum::find_peaks;
use strongfield::states::StateKind;
use strongfield::tdse::{
    find_zeff, photoelectron_spectrum, propagate, radial_eigenstate, CutCoulomb,
    PartialWaveFunction, PropagationSettings, RadialGrid,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let omega = 0.056;
    let pulse = Pulse::new(PulseParams { e0: 0.0417, omega, n_cycles: 3, cep: 0.0 })?;
    let grid = RadialGrid::new(0.1, 2500, 0.9)?;
    let (l_max, dt) = (40, 0.025);

    let t = Instant::now();
    let z_eff = find_zeff(0.5, 0, 2.0, &grid, false)?;
    let potential = CutCoulomb::new(z_eff, 2.0)?;
    let (level, u) = radial_eigenstate(&potential, 0, 0, &grid)?;
    println!("tuned z_eff = {z_eff:.6} -> E_1s = {level:.8} a.u.  [{:.1?}]", t.elapsed());

    let psi0 = PartialWaveFunction::from_radial(l_max, 0, &u, grid.dr);
    let t = Instant::now();
    let settings = PropagationSettings { dt, absorber: true };
    let psi = propagate(&psi0, &potential, &pulse, &grid, &settings)?;
    println!(
        "propagated {} partial waves on {} radial points  [{:.1?}]",
        l_max + 1,
        grid.n_r,
        t.elapsed()
    );

    let survival = psi.channel_population(0);
    println!("ground-channel population after the pulse: {survival:.6}");

    let energies: Vec<f64> = (0..200).map(|i| 0.012 + 0.4 * i as f64 / 199.0).collect();
    let t = Instant::now();
    let spectrum = photoelectron_spectrum(&psi, &potential, &grid, &energies, 0.0, StateKind::SEven)?;
    println!(
        "ionized fraction = {:.2e}, absorbed at the box edge = {:.2e}  [{:.1?}]",
        spectrum.ionized_fraction, spectrum.absorbed_fraction, t.elapsed()
    );

    let peaks = find_peaks(&energies, &spectrum.grid.values, 0.5 * omega, 0.2);
    println!("\nATI peaks along θ = 0:");
    let mut prev: Option<f64> = None;
    for &i in &peaks {
        let e = energies[i];
        match prev {
            Some(p) => println!(
                "  E = {e:.4} a.u.  ({:.3e})  spacing {:.3} ω",
                spectrum.grid.values[i],
                (e - p) / omega
            ),
            None => println!("  E = {e:.4} a.u.  ({:.3e})", spectrum.grid.values[i]),
        }
        prev = Some(e);
    }
    Ok(())
}

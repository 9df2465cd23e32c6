//! Scratch: dt/dr refinement study for the gentle 3-cycle pulse.

use strongfield::field::{Pulse, PulseParams};
use strongfield::states::StateKind;
use strongfield::tdse::{
    find_zeff, photoelectron_spectrum, propagate, radial_eigenstate, CutCoulomb,
    PartialWaveFunction, PropagationSettings, RadialGrid,
};

fn main() {
    let gentle =
        Pulse::new(PulseParams { e0: 0.0417, omega: 0.056, n_cycles: 3, cep: 0.0 }).unwrap();
    let energies: Vec<f64> = (0..61).map(|i| 0.02 + 0.01 * i as f64).collect();
    let spectrum_at = |dr: f64, n_r: usize, dt: f64| -> Vec<f64> {
        let grid = RadialGrid::new(dr, n_r, 0.9).unwrap();
        let z = find_zeff(0.5, 0, 2.0, &grid, false).unwrap();
        let pot = CutCoulomb::new(z, 2.0).unwrap();
        let (e0, u) = radial_eigenstate(&pot, 0, 0, &grid).unwrap();
        eprintln!("dr={dr} dt={dt}: z_eff={z:.8} E0={e0:.8}");
        let psi0 = PartialWaveFunction::from_radial(30, 0, &u, grid.dr);
        let settings = PropagationSettings { dt, absorber: true };
        let psi = propagate(&psi0, &pot, &gentle, &grid, &settings).unwrap();
        let sp =
            photoelectron_spectrum(&psi, &pot, &grid, &energies, 0.0, StateKind::SEven).unwrap();
        eprintln!("  absorbed={:.3e} ionized={:.3e}", sp.absorbed_fraction, sp.ionized_fraction);
        sp.grid.values
    };
    let base = spectrum_at(0.05, 8000, 0.025);
    let fine_dt = spectrum_at(0.05, 8000, 0.0125);
    let fine_dr = spectrum_at(0.025, 16000, 0.025);
    let max = base.iter().cloned().fold(0.0, f64::max);
    println!("{:>6} {:>12} {:>12} {:>12} {:>9} {:>9} {:>10}", "E", "base", "dt/2", "dr/2", "d_dt%", "d_dr%", "base/max");
    for i in 0..energies.len() {
        println!(
            "{:6.3} {:12.4e} {:12.4e} {:12.4e} {:9.3} {:9.3} {:10.2e}",
            energies[i],
            base[i],
            fine_dt[i],
            fine_dr[i],
            100.0 * (fine_dt[i] - base[i]) / base[i],
            100.0 * (fine_dr[i] - base[i]) / base[i],
            base[i] / max
        );
    }
}

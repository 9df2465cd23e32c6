//! Scratch: full-scale TDSE run at the reference pulse parameters, compared
//! against the direct SFA length-gauge spectrum.
//!
//! args: [l_max] [dt] [state s|p] [n_cycles] [r_max]

use std::time::Instant;

use strongfield::field::{Pulse, PulseParams};
use strongfield::sfa::{Gauge, QuadratureSpec, SfaEngine};
use strongfield::spectrum::{compare_grids, find_peaks};
use strongfield::states::{BoundStateModel, StateKind};
use strongfield::tdse::{
    find_zeff, photoelectron_spectrum, propagate, radial_eigenstate, CutCoulomb,
    PartialWaveFunction, PropagationSettings, RadialGrid,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let omega = 0.056;
    let args: Vec<String> = std::env::args().collect();
    let l_max: usize = args.get(1).map_or(90, |s| s.parse().unwrap());
    let dt: f64 = args.get(2).map_or(0.025, |s| s.parse().unwrap());
    let state = args.get(3).map_or("s".to_string(), |s| s.clone());
    let n_cycles: u32 = args.get(4).map_or(4, |s| s.parse().unwrap());
    let r_max: f64 = args.get(5).map_or(500.0, |s| s.parse().unwrap());
    let e0_field: f64 = args.get(6).map_or(0.0834, |s| s.parse().unwrap());
    let (kind, ell) = match state.as_str() {
        "s" => (StateKind::SEven, 0usize),
        "p" => (StateKind::POdd, 1usize),
        _ => panic!("state must be s|p"),
    };
    let tag = format!("l{l_max}_dt{dt}_{state}_n{n_cycles}_r{r_max}");

    let pulse = Pulse::new(PulseParams { e0: e0_field, omega, n_cycles, cep: 0.0 })?;
    let grid = RadialGrid::new(0.1, (r_max / 0.1) as usize, 0.9)?;

    let t0 = Instant::now();
    let z = find_zeff(0.5, ell, 2.0, &grid, false)?;
    let pot = CutCoulomb::new(z, 2.0)?;
    let (e0_level, u) = radial_eigenstate(&pot, ell, 0, &grid)?;
    println!("tuned z_eff = {z:.6}, E = {e0_level:.8}  [{:?}]", t0.elapsed());

    let psi0 = PartialWaveFunction::from_radial(l_max, ell, &u, grid.dr);
    let t0 = Instant::now();
    let psi = propagate(&psi0, &pot, &pulse, &grid, &PropagationSettings { dt, absorber: true })?;
    println!("propagation: {:?}  (norm after: {:.6})", t0.elapsed(), psi.norm());
    for l in 0..=l_max {
        let pop = psi.channel_population(l);
        if pop > 1e-8 {
            print!("l{l}:{pop:.2e} ");
        }
    }
    println!();

    let energies: Vec<f64> = (0..=450).map(|i| 0.012 + 0.002 * i as f64).collect();
    let t0 = Instant::now();
    let spec = photoelectron_spectrum(&psi, &pot, &grid, &energies, 0.0, kind)?;
    println!(
        "spectrum: {:?}  absorbed = {:.4}, ionized = {:.4}, loss flag = {}",
        t0.elapsed(),
        spec.absorbed_fraction,
        spec.ionized_fraction,
        spec.absorber_loss_significant()
    );

    let peaks = find_peaks(&energies, &spec.grid.values, 0.5 * omega, 0.2);
    println!("TDSE peaks ({}):", peaks.len());
    let mut prev: Option<f64> = None;
    for &i in &peaks {
        let e = energies[i];
        let spacing = prev.map(|p| (e - p) / omega);
        prev = Some(e);
        match spacing {
            Some(s) => println!("  E = {e:.4}  ({:.3e})  spacing {s:.3} w", spec.grid.values[i]),
            None => println!("  E = {e:.4}  ({:.3e})", spec.grid.values[i]),
        }
    }

    // Backward direction for the asymmetry picture.
    let spec_back =
        photoelectron_spectrum(&psi, &pot, &grid, &energies, std::f64::consts::PI, kind)?;
    let fw: f64 = spec.grid.values.iter().sum();
    let bw: f64 = spec_back.grid.values.iter().sum();
    println!("forward/backward integrated ratio: {:.4}", fw / bw);

    // SFA length gauge, same state, same energies.
    let t0 = Instant::now();
    let engine =
        SfaEngine::new(&pulse, BoundStateModel::new(kind, 0.5)?, QuadratureSpec::default())?;
    let sfa = engine.spectrum(Gauge::Length, &energies, 0.0)?;
    println!("SFA-L direct: {:?}", t0.elapsed());
    let sfa_peaks = find_peaks(&energies, &sfa.values, 0.5 * omega, 0.2);
    println!("SFA-L peaks ({}):", sfa_peaks.len());
    for &i in &sfa_peaks {
        println!("  E = {:.4}  ({:.3e})", energies[i], sfa.values[i]);
    }

    match compare_grids(&spec.grid, &sfa, (0.012, 0.912), omega, 0.2) {
        Ok(rep) => {
            println!(
                "compare TDSE vs SFA-L over [0.012, 0.912]: scale = {:.3e}, max offset = {:.3} w",
                rep.scale_factor, rep.max_offset_omega
            );
            for p in &rep.peak_table {
                println!(
                    "  tdse {:.4} <-> sfa {:.4}  offset {:+.3} w",
                    p.energy_a, p.energy_b, p.offset_omega
                );
            }
        }
        Err(e) => println!("compare failed: {e}"),
    }

    // Dump for offline inspection.
    let mut out = String::from("energy,tdse,tdse_back,sfa_l\n");
    for (i, &e) in energies.iter().enumerate() {
        out.push_str(&format!(
            "{e},{},{},{}\n",
            spec.grid.values[i], spec_back.grid.values[i], sfa.values[i]
        ));
    }
    std::fs::write(format!("/tmp/tdse_scan_{tag}.csv"), out)?;
    println!("wrote /tmp/tdse_scan_{tag}.csv");
    Ok(())
}

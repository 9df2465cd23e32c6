//! Gauge complementarity of ATI spectra for s-like and p-like initial states.
//!
//! For a p ground state the length-gauge spectrum shows pronounced dips where
//! the s-state spectrum has humps (and vice versa), while in velocity gauge
//! the p and s envelopes dip together. The effect comes from the form factor:
//! in length gauge it is evaluated at the saddle velocity p + A(t_s), whose
//! zero sweeps across the comb, whereas in velocity gauge the p-state node
//! sits at the fixed drift momentum p.
//!
//! This computes the four direct-quadrature spectra {s, p} × {L, V} along the
//! polarization axis, extracts the ATI comb of each, and reports where the
//! envelope dips of the p spectra fall relative to the envelope extrema of
//! the matching s spectra.
//!
//! Run with: cargo run --release --example gauge_spectra

use strongfield::field::{Pulse, PulseParams};
use strongfield::sfa::{Gauge, QuadratureSpec, SfaEngine};
use strongfield::spectrum::{peak_tops, sequence_maxima, sequence_minima, SpectrumGrid};
use strongfield::states::{BoundStateModel, StateKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let omega = 0.056;
    let pulse = Pulse::new(PulseParams { e0: 0.0834, omega, n_cycles: 4, cep: 0.0 })?;
    let energies: Vec<f64> = (0..500).map(|i| 0.1 + 0.9 * i as f64 / 499.0).collect();

    let mut grids: Vec<(Gauge, StateKind, SpectrumGrid)> = Vec::new();
    for gauge in [Gauge::Length, Gauge::Velocity] {
        for kind in [StateKind::SEven, StateKind::POdd] {
            let state = BoundStateModel::new(kind, 0.5)?;
            let engine = SfaEngine::new(&pulse, state, QuadratureSpec::default())?;
            let grid = engine.spectrum(gauge, &energies, 0.0)?;
            grids.push((gauge, kind, grid));
        }
    }

    for (gauge, kind, grid) in &grids {
        let comb = peak_tops(grid, 0.5 * omega, 0.05);
        let dips = sequence_minima(&comb);
        println!(
            "{gauge:?} {kind}: {} comb teeth, envelope dips at {:?}",
            comb.len(),
            dips.iter().map(|d| format!("{d:.3}")).collect::<Vec<_>>()
        );
    }
    println!();

    // Pair each p-state envelope dip with the nearest s-state envelope
    // extremum in the same gauge.
    for gauge in [Gauge::Length, Gauge::Velocity] {
        let comb_of = |want: StateKind| {
            let grid = &grids.iter().find(|(g, k, _)| *g == gauge && *k == want).unwrap().2;
            peak_tops(grid, 0.5 * omega, 0.05)
        };
        let p_dips = sequence_minima(&comb_of(StateKind::POdd));
        let s_comb = comb_of(StateKind::SEven);
        let s_humps = sequence_maxima(&s_comb);
        let s_dips = sequence_minima(&s_comb);

        println!("{gauge:?} gauge: p-state dips vs s-state envelope");
        for dip in &p_dips {
            let nearest = |list: &[f64]| {
                list.iter()
                    .map(|&x| (x - dip).abs())
                    .fold(f64::INFINITY, f64::min)
            };
            let (to_hump, to_dip) = (nearest(&s_humps), nearest(&s_dips));
            let verdict = if to_hump < to_dip { "s-state HUMP" } else { "s-state dip" };
            println!(
                "  p dip at {dip:.3} a.u.: {:.2} w from nearest s hump, {:.2} w from nearest s dip -> sits on {verdict}",
                to_hump / omega,
                to_dip / omega,
            );
        }
        println!();
    }
    Ok(())
}

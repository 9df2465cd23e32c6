//! Complex ionization times ("quantum orbits") behind the ATI spectrum.
//!
//! The saddle points of the modified action solve (p − e A(t_s))²/2 + I_p = 0
//! with e = −1; because I_p > 0 they sit off the real axis, and Im t_s plays
//! the role of a tunneling time — it shrinks as the field strength grows.
//! Each saddle is one ionization burst; the ATI fringes are the interference
//! of their complex exponentials.
//!
//! For the monochromatic field and p = 0 the root is analytic,
//! ω·Im t_s = arcsinh(κω/E₀) with κ = √(2 I_p), which pins the solver to a
//! closed form. The sin² pulse has no closed form, but every root is checked
//! against its defining equation here (residual column).
//!
//! Run with: cargo run --release --example saddle_orbits

use strongfield::field::{LaserField, Monochromatic, Pulse, PulseParams};
use strongfield::saddle::solve_saddles;
use strongfield::states::{BoundStateModel, StateKind};
use strongfield::Vec3;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (e0, omega, ip) = (0.0834, 0.056, 0.5);
    let pulse = Pulse::new(PulseParams { e0, omega, n_cycles: 4, cep: 0.0 })?;
    let period = pulse.period();
    let field = LaserField::Pulse(pulse);
    let state = BoundStateModel::new(StateKind::SEven, ip)?;

    for energy in [0.1, 0.3, 0.6] {
        let p = Vec3::from_energy_angle(energy, 0.0);
        let saddles = solve_saddles(p, &state, &field)?;
        println!("E = {energy} a.u. (p_z = {:.4}): {} saddles", p.z, saddles.len());
        println!(
            "  {:>12} {:>12} {:>14} {:>12} {:>10}",
            "Re t_s / T", "Im t_s", "Im S(t_s)", "|v_z(t_s)|", "residual"
        );
        for s in &saddles {
            println!(
                "  {:>12.4} {:>12.4} {:>14.4} {:>12.4} {:>10.1e}",
                s.t_s.re / period,
                s.t_s.im,
                s.action_phase.im,
                s.velocity.z.norm(),
                s.residual
            );
        }
        println!();
    }

    // Monochromatic benchmark at p = 0: the tunneling time in closed form.
    let mono = Monochromatic { a0: e0 / omega, omega, n_cycles: 1 };
    let saddles = solve_saddles(Vec3::default(), &state, &LaserField::Monochromatic(mono))?;
    let kappa = (2.0 * ip).sqrt();
    let analytic = (kappa * omega / e0).asinh();
    println!("monochromatic, p = 0: ω·Im t_s vs arcsinh(κω/E0) = {analytic:.6}");
    for s in &saddles {
        println!(
            "  t_s = {:.4} {:+.4}i  ->  ω·Im t_s = {:.6}  (diff {:.1e})",
            s.t_s.re,
            s.t_s.im,
            omega * s.t_s.im,
            (omega * s.t_s.im - analytic).abs()
        );
    }
    Ok(())
}

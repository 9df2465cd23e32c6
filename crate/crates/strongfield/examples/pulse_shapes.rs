//! The sin² laser pulse and its derived quantities.
//!
//! Everything downstream — SFA quadrature, saddle points, TDSE coupling —
//! consumes the same pulse object, so this prints the field/vector-potential
//! profile and the handful of numbers that characterize the interaction
//! regime: ponderomotive energy U_p, Keldysh parameter γ = √(2 I_p) ω / E₀,
//! quiver amplitude α₀ = E₀/ω², and the sideband structure of the envelope.
//!
//! Run with: cargo run --release --example pulse_shapes

use strongfield::field::{Pulse, PulseParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // ~2.4e14 W/cm² at 800 nm.
    let params = PulseParams { e0: 0.0834, omega: 0.056, n_cycles: 4, cep: 0.0 };
    let pulse = Pulse::new(params)?;
    let t_p = pulse.duration();
    let ip: f64 = 0.5;

    println!("sin² pulse: E0 = {} a.u., omega = {} a.u., {} cycles, CEP = {}", params.e0, params.omega, params.n_cycles, params.cep);
    println!("  period        T   = {:.3} a.u.", pulse.period());
    println!("  duration      T_p = {:.3} a.u. ({:.2} fs)", t_p, t_p * 0.024_189);
    println!("  ponderomotive U_p = {:.4} a.u. ({:.2} photons)", params.ponderomotive_energy(), params.ponderomotive_energy() / params.omega);
    println!("  Keldysh       γ   = {:.3}", (2.0 * ip).sqrt() * params.omega / params.e0);
    println!("  quiver        a0  = {:.1} a.u.", params.e0 / (params.omega * params.omega));
    println!("  min photons to threshold: {}", ((ip + params.ponderomotive_energy()) / params.omega).ceil());
    println!();

    // Profile table: ten samples per cycle is enough to see the envelope.
    println!("{:>10} {:>12} {:>12} {:>12}", "t (a.u.)", "E(t)", "A(t)", "alpha(t)");
    let n_samples = 10 * params.n_cycles as usize;
    for i in 0..=n_samples {
        let t = t_p * i as f64 / n_samples as f64;
        let ints = pulse.integrals(t);
        println!(
            "{t:>10.2} {:>12.6} {:>12.6} {:>12.4}",
            pulse.electric_field(t),
            pulse.vector_potential(t),
            ints.int_a
        );
    }
    println!();

    // The identities the quadrature and the saddle solver lean on: A and the
    // excursion ∫A vanish at both endpoints, so the photoelectron drift
    // momentum is the canonical p and boundary terms collapse.
    let a_end = pulse.vector_potential(t_p);
    let alpha_end = pulse.integrals(t_p).int_a;
    println!("A(T_p)  = {a_end:.2e}  (exactly 0 by construction)");
    println!("∫A dt   = {alpha_end:.2e}  (net displacement-free for CEP = 0)");
    Ok(())
}

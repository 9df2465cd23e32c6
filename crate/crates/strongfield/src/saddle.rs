//! Saddle-point analysis of the strong-field amplitude: complex ionization
//! times, per-saddle classification data, and the saddle-point-approximation
//! (SPA) amplitude with gauge-dependent form factors.
//!
//! The saddle equation for the phase Φ(t) = S_p(t) + I_p·t reads
//!
//! ```text
//! f(t) ≡ (p − eA(t))² + 2I_p = 0,      Φ'(t) = f(t)/2,
//! ```
//!
//! solved by Newton iteration in the complex t plane with the analytic
//! derivative f'(t) = −2(p_z + A(t))·E(t) (e = −1, dA/dt = −E). The closed
//! forms for A(t) and S_p(t) are entire, so the iteration works directly on
//! them; only roots with Im t_s > 0 and Re t_s inside the pulse window are
//! physical.
//!
//! Each saddle contributes  (−i)·V_s·√(2πi/Φ''(t_s))·e^{iΦ(t_s)}  to the
//! amplitude, where Φ''(t_s) = −E(t_s)·v_z(t_s) and V_s is the form factor
//! at the saddle momentum: at p in V gauge, at v(t_s) = p + A(t_s)ẑ in L
//! gauge.
//!
//! One special case needs care. At the saddle, v² = −2I_p = −κ² exactly, so
//! the odd-state L-gauge form factor −N·v_z/(2(v²+κ²)) has its pole *at* the
//! saddle point: the standard SPA (smooth prefactor × Gaussian) does not
//! apply. Treating the integrand properly as a simple pole colliding with
//! the saddle — v²+κ² = f(t) = 2Φ'(t) vanishes linearly at t_s — the local
//! integral is a principal value (zero by symmetry) plus the half-residue
//! picked up when the contour is deformed past the pole, giving the finite
//! contribution
//!
//! ```text
//! M_s = −(πN/2) · v_z(t_s) · e^{iΦ(t_s)} / f'(t_s).
//! ```
//!
//! The `form_factor_l` stored for that case is the *effective* value that
//! reproduces M_s through the uniform assembly formula above; it is finite,
//! and the product with the prefactor is independent of the square-root
//! branch. (The overall sign convention from the deformation side is global
//! across saddles and drops out of |M|².)

use num_complex::Complex64;
use thiserror::Error;

use crate::field::LaserField;
use crate::spectrum::{Method, SpectrumError, SpectrumGrid};
use crate::states::{BoundStateModel, StateKind};
use crate::{CVec3, Vec3};

#[derive(Debug, Error)]
pub enum SaddleError {
    #[error("no saddle points found (kinematics outside the tunneling-accessible region)")]
    EmptyResult,
    #[error(
        "saddle coalescence at p=({px:.6}, {py:.6}, {pz:.6}): |E(t_s)·v_z(t_s)| = {magnitude:.3e} < 1e-8"
    )]
    SaddleCoalescence { px: f64, py: f64, pz: f64, magnitude: f64 },
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

/// One solution of the saddle-point equation with everything the SPA needs.
#[derive(Debug, Clone, Copy)]
pub struct SaddleSolution {
    /// Complex ionization time, Im t_s > 0.
    pub t_s: Complex64,
    /// Complex instantaneous velocity p − eA(t_s) = p + A(t_s)ẑ.
    pub velocity: CVec3,
    /// Φ(t_s) = S_p(t_s) + I_p·t_s.
    pub action_phase: Complex64,
    /// √(2πi/Φ''(t_s)) with Φ'' = −E(t_s)·v_z(t_s), principal branch.
    pub prefactor: Complex64,
    /// L-gauge form factor at the saddle. For the odd state this is the
    /// effective (pole-regularized) value described in the module docs.
    pub form_factor_l: Complex64,
    /// V-gauge form factor (evaluated at the real drift momentum p).
    pub form_factor_v: Complex64,
    /// |(p − eA(t_s))² + 2I_p| at the accepted root.
    pub residual: f64,
}

impl SaddleSolution {
    /// Gauge-resolved form factor.
    #[must_use]
    pub fn form_factor(&self, gauge: crate::sfa::Gauge) -> Complex64 {
        match gauge {
            crate::sfa::Gauge::Length => self.form_factor_l,
            crate::sfa::Gauge::Velocity => self.form_factor_v,
        }
    }

    /// Φ''(t_s) = −E(t_s)·v_z(t_s); its magnitude gates the isolated-saddle
    /// regime.
    #[must_use]
    pub fn phase_curvature(&self, field: &LaserField) -> Complex64 {
        -field.electric_field_complex(self.t_s) * self.velocity.z
    }
}

/// Instantaneous complex velocities of a saddle set.
#[must_use]
pub fn saddle_velocities(solutions: &[SaddleSolution]) -> Vec<CVec3> {
    solutions.iter().map(|s| s.velocity).collect()
}

const RESIDUAL_TOL: f64 = 1e-9;
const COALESCENCE_TOL: f64 = 1e-8;

/// Solve the saddle-point equation for drift momentum `p` and the given
/// state/field. Newton iteration on f(t) = (p+A(t)ẑ)² + 2I_p, seeded on a
/// quarter-cycle grid across the pulse window at two imaginary offsets
/// (0.2/ω and 1/ω); converged roots are deduplicated at 1e-6/ω, and only
/// roots with Im t_s > 0, Re t_s within the window, and residual < 1e-9 are
/// kept, sorted by Re t_s.
pub fn solve_saddles(
    p: Vec3,
    state: &BoundStateModel,
    field: &LaserField,
) -> Result<Vec<SaddleSolution>, SaddleError> {
    let omega = field.omega();
    let t_p = field.duration();
    let c = p.perp() * p.perp() + 2.0 * state.ip;
    let f = |t: Complex64| -> Complex64 {
        let a = field.vector_potential_complex(t);
        let vz = a + p.z;
        vz * vz + c
    };
    let fp = |t: Complex64| -> Complex64 {
        let a = field.vector_potential_complex(t);
        let e = field.electric_field_complex(t);
        (a + p.z) * e * -2.0
    };

    let quarter = 0.5 * std::f64::consts::PI / omega;
    let n_re = (t_p / quarter).round() as usize; // 4 per cycle
    let dedup_tol = 1e-6 / omega;
    let mut roots: Vec<Complex64> = Vec::new();
    for i in 0..=n_re {
        for im in [0.2 / omega, 1.0 / omega] {
            let mut t = Complex64::new(i as f64 * quarter, im);
            let mut converged = false;
            for _ in 0..80 {
                let fv = f(t);
                if fv.norm() < 1e-12 {
                    converged = true;
                    break;
                }
                let dv = fp(t);
                if dv.norm() < 1e-14 || !dv.is_finite() {
                    break;
                }
                let step = fv / dv;
                t -= step;
                if !t.is_finite() || t.im.abs() > 50.0 / omega || t.re.abs() > 3.0 * t_p {
                    break;
                }
                if step.norm() < 1e-13 * (1.0 + t.norm()) {
                    converged = f(t).norm() < RESIDUAL_TOL;
                    break;
                }
            }
            if !converged {
                continue;
            }
            if t.im <= 0.0 || t.re < -1e-9 || t.re > t_p + 1e-9 {
                continue;
            }
            if f(t).norm() >= RESIDUAL_TOL {
                continue;
            }
            if roots.iter().all(|r| (r - t).norm() > dedup_tol) {
                roots.push(t);
            }
        }
    }
    if roots.is_empty() {
        return Err(SaddleError::EmptyResult);
    }
    roots.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());

    let solutions = roots
        .into_iter()
        .map(|t_s| {
            let a = field.vector_potential_complex(t_s);
            let velocity = CVec3::new(
                Complex64::new(p.x, 0.0),
                Complex64::new(p.y, 0.0),
                a + p.z,
            );
            let residual = (velocity.z * velocity.z + c).norm();
            let action_phase = field.action_complex(p, t_s) + state.ip * t_s;
            let e_s = field.electric_field_complex(t_s);
            let curvature = -e_s * velocity.z; // Φ''(t_s)
            let prefactor =
                (2.0 * std::f64::consts::PI * Complex64::i() / curvature).sqrt();
            let form_factor_v = Complex64::new(state.form_factor(p), 0.0);
            let form_factor_l = match state.kind {
                // Zero-range s state: the form factor is the same constant
                // at any momentum — both gauges literally coincide.
                StateKind::SEven => form_factor_v,
                // Odd state: pole at the saddle; store the effective value
                // M_s / [(−i)·prefactor·e^{iΦ}] of the half-residue result
                // M_s = −(πN/2)·v_z·e^{iΦ}/f', f' = 2Φ''.
                StateKind::POdd => {
                    let n_norm = state.normalization();
                    let f_prime = 2.0 * curvature;
                    let m_over_exp = -(std::f64::consts::PI * n_norm / 2.0) * velocity.z / f_prime;
                    m_over_exp / (-Complex64::i() * prefactor)
                }
            };
            SaddleSolution {
                t_s,
                velocity,
                action_phase,
                prefactor,
                form_factor_l,
                form_factor_v,
                residual,
            }
        })
        .collect();
    Ok(solutions)
}

/// Sum the saddle contributions into the SPA amplitude, with the square-root
/// branch of each prefactor taken as given in the solutions (principal for
/// [`solve_saddles`]). Fails with `SaddleCoalescence` if any saddle sits too
/// close to a neighbor for the isolated-saddle formula (|Φ''| < 1e-8).
pub fn assemble_spa(
    p: Vec3,
    gauge: crate::sfa::Gauge,
    solutions: &[SaddleSolution],
    field: &LaserField,
) -> Result<Complex64, SaddleError> {
    if solutions.is_empty() {
        return Err(SaddleError::EmptyResult);
    }
    let mut m = Complex64::new(0.0, 0.0);
    for s in solutions {
        let curv = s.phase_curvature(field);
        if curv.norm() < COALESCENCE_TOL {
            return Err(SaddleError::SaddleCoalescence {
                px: p.x,
                py: p.y,
                pz: p.z,
                magnitude: curv.norm(),
            });
        }
        let phase = (Complex64::i() * s.action_phase).exp();
        m += -Complex64::i() * s.form_factor(gauge) * s.prefactor * phase;
    }
    Ok(m)
}

/// SPA transition amplitude at a single momentum (principal-branch
/// prefactors). For spectra over an energy grid use [`spa_spectrum`], which
/// tracks the square-root branch continuously from point to point.
pub fn spa_amplitude(
    p: Vec3,
    gauge: crate::sfa::Gauge,
    state: &BoundStateModel,
    field: &LaserField,
) -> Result<Complex64, SaddleError> {
    let sols = solve_saddles(p, state, field)?;
    assemble_spa(p, gauge, &sols, field)
}

/// SPA spectrum over an ascending energy grid at fixed θ. The square-root
/// branch of each saddle's prefactor is chosen continuously along the grid:
/// at the first point the principal branch, afterwards the sign that keeps
/// the prefactor closest to the matched saddle's prefactor at the previous
/// point (saddles are matched by proximity of t_s).
pub fn spa_spectrum(
    state: &BoundStateModel,
    gauge: crate::sfa::Gauge,
    field: &LaserField,
    energies: &[f64],
    theta: f64,
) -> Result<SpectrumGrid, SaddleError> {
    let mut values = Vec::with_capacity(energies.len());
    // (t_s, prefactor) of each saddle at the previous grid point.
    let mut prev: Vec<(Complex64, Complex64)> = Vec::new();
    for &e in energies {
        let p = Vec3::from_energy_angle(e, theta);
        let mut sols = solve_saddles(p, state, field)?;
        for s in &mut sols {
            if let Some((_, prev_pref)) = prev
                .iter()
                .min_by(|a, b| {
                    let da = (a.0 - s.t_s).norm();
                    let db = (b.0 - s.t_s).norm();
                    da.partial_cmp(&db).unwrap()
                })
                .filter(|(t_prev, _)| (t_prev - s.t_s).norm() < 0.25 * field.duration())
            {
                if (-s.prefactor - prev_pref).norm() < (s.prefactor - prev_pref).norm() {
                    // Branch continuity: flip to the sheet the neighbor used.
                    // The odd-state effective L form factor carries the
                    // inverse prefactor, so flip it in step.
                    s.prefactor = -s.prefactor;
                    if state.kind == StateKind::POdd {
                        s.form_factor_l = -s.form_factor_l;
                    }
                }
            }
        }
        prev = sols.iter().map(|s| (s.t_s, s.prefactor)).collect();
        let m = assemble_spa(p, gauge, &sols, field)?;
        values.push(m.norm_sqr());
    }
    Ok(SpectrumGrid::new(
        energies.to_vec(),
        theta,
        values,
        Method::SfaSpa,
        Some(gauge),
        state.kind,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Monochromatic, Pulse, PulseParams};
    use crate::sfa::Gauge;

    const OMEGA: f64 = 0.056;
    const E0: f64 = 0.0834;

    fn mono_field() -> LaserField {
        // A₀ = E₀/ω = 1.48929 a.u.
        LaserField::Monochromatic(Monochromatic { a0: E0 / OMEGA, omega: OMEGA, n_cycles: 2 })
    }

    fn pulse_field() -> LaserField {
        LaserField::Pulse(
            Pulse::new(PulseParams { e0: E0, omega: OMEGA, n_cycles: 4, cep: 0.0 }).unwrap(),
        )
    }

    fn s_state() -> BoundStateModel {
        BoundStateModel::new(StateKind::SEven, 0.5).unwrap()
    }

    fn p_state() -> BoundStateModel {
        BoundStateModel::new(StateKind::POdd, 0.5).unwrap()
    }

    #[test]
    fn monochromatic_zero_momentum_roots_match_the_closed_form() {
        let field = mono_field();
        let sols = solve_saddles(Vec3::ZERO, &s_state(), &field).unwrap();
        assert_eq!(sols.len(), 4, "two roots per cycle over two cycles");
        // ω·t_s = π/2 + i·arcsinh γ and 3π/2 + i·arcsinh γ (mod 2π),
        // γ = κω/E₀.
        let gamma = (2.0f64 * 0.5).sqrt() * OMEGA / E0;
        let im_expected = gamma.asinh();
        for (k, s) in sols.iter().enumerate() {
            let wt = s.t_s * OMEGA;
            assert!(
                (wt.im - im_expected).abs() < 1e-8,
                "ω·Im t_s = {}, expected {im_expected}",
                wt.im
            );
            let re_expected = std::f64::consts::FRAC_PI_2 * (1.0 + 2.0 * k as f64);
            assert!((wt.re - re_expected).abs() < 1e-8, "ω·Re t_s = {}", wt.re);
            assert!(s.residual < 1e-9);
        }
    }

    #[test]
    fn monochromatic_velocities_are_plus_minus_i_kappa() {
        let field = mono_field();
        for p_perp in [0.0, 0.3] {
            let p = Vec3::new(p_perp, 0.0, 0.0);
            let sols = solve_saddles(p, &s_state(), &field).unwrap();
            let expected = (2.0 * 0.5 + p_perp * p_perp).sqrt();
            let velocities = saddle_velocities(&sols);
            for v in &velocities {
                assert!(v.z.re.abs() < 1e-8, "Re v_z = {}", v.z.re);
                assert!(
                    (v.z.im.abs() - expected).abs() < 1e-8,
                    "|Im v_z| = {}, expected {expected}",
                    v.z.im.abs()
                );
                assert!((v.x.re - p_perp).abs() < 1e-14);
            }
            // Per cycle the two roots carry opposite velocity signs.
            for pair in velocities.chunks(2) {
                assert!(pair[0].z.im * pair[1].z.im < 0.0, "signs must alternate");
            }
        }
    }

    #[test]
    fn monochromatic_sign_pattern_at_parallel_momentum() {
        let field = mono_field();
        let p = Vec3::along_z(0.5);
        let sols = solve_saddles(p, &s_state(), &field).unwrap();
        assert!(sols.len() >= 4);
        // Group roots by optical cycle of Re t_s: within a cycle,
        // sign(cos ωt_R) is the same for both roots and sign(sin ωt_R)
        // alternates.
        let period = 2.0 * std::f64::consts::PI / OMEGA;
        for cycle in 0..2 {
            let in_cycle: Vec<_> = sols
                .iter()
                .filter(|s| {
                    let c = (s.t_s.re / period).floor() as i32;
                    c == cycle
                })
                .collect();
            assert_eq!(in_cycle.len(), 2, "two roots in cycle {cycle}");
            let (a, b) = (in_cycle[0], in_cycle[1]);
            let cos_signs =
                ((a.t_s.re * OMEGA).cos() > 0.0, (b.t_s.re * OMEGA).cos() > 0.0);
            let sin_signs =
                ((a.t_s.re * OMEGA).sin() > 0.0, (b.t_s.re * OMEGA).sin() > 0.0);
            assert_eq!(cos_signs.0, cos_signs.1, "cos ωt_R signs must agree");
            assert_ne!(sin_signs.0, sin_signs.1, "sin ωt_R signs must alternate");
        }
    }

    #[test]
    fn zero_field_has_no_saddles() {
        let field = LaserField::Pulse(
            Pulse::new(PulseParams { e0: 0.0, omega: OMEGA, n_cycles: 4, cep: 0.0 }).unwrap(),
        );
        match solve_saddles(Vec3::along_z(0.5), &s_state(), &field) {
            Err(SaddleError::EmptyResult) => {}
            other => panic!("expected EmptyResult, got {other:?}"),
        }
    }

    #[test]
    fn pulse_saddles_satisfy_the_invariants() {
        let field = pulse_field();
        for p in [
            Vec3::along_z(0.3),
            Vec3::along_z(-0.7),
            Vec3::new(0.2, 0.1, 0.5),
            Vec3::new(0.4, 0.0, -0.2),
        ] {
            let sols = solve_saddles(p, &s_state(), &field).unwrap();
            assert!(sols.len() >= 4, "expected several saddles, got {}", sols.len());
            for s in &sols {
                assert!(s.residual < 1e-9, "residual {}", s.residual);
                assert!(s.t_s.im > 0.0);
                assert!(s.t_s.re >= -1e-9 && s.t_s.re <= field.duration() + 1e-9);
            }
            // Deduplicated: pairwise distinct.
            for i in 0..sols.len() {
                for j in i + 1..sols.len() {
                    assert!((sols[i].t_s - sols[j].t_s).norm() > 1e-6 / OMEGA);
                }
            }
        }
    }

    #[test]
    fn s_state_spa_is_gauge_invariant() {
        // The zero-range form factor is the same constant at any momentum,
        // so every saddle carries identical L and V factors.
        let field = pulse_field();
        let p = Vec3::along_z(0.9);
        let ml = spa_amplitude(p, Gauge::Length, &s_state(), &field).unwrap();
        let mv = spa_amplitude(p, Gauge::Velocity, &s_state(), &field).unwrap();
        assert!((ml - mv).norm() <= 1e-14 * ml.norm());
    }

    #[test]
    fn odd_state_weights_invert_between_gauges() {
        // Monochromatic, p⊥ = 0: the two saddles of a cycle are related by
        // the reflection t → T − t̄ of the cosine cycle, which maps the full
        // per-saddle contribution w = (−i)·V·pref·e^{iΦ} as
        //
        //   w_B = r · conj(w_A),
        //
        // with the SAME unit-modulus r for the even state in both gauges and
        // for the odd state in V gauge, but r → −r for the odd state in L
        // gauge (v_z flips sign between the pair). That sign is exactly the
        // constructive/destructive interference inversion between gauges.
        let field = mono_field();
        let weight = |s: &SaddleSolution, gauge: Gauge| -> Complex64 {
            -Complex64::i()
                * s.form_factor(gauge)
                * s.prefactor
                * (Complex64::i() * s.action_phase).exp()
        };
        let p = Vec3::along_z(0.1);
        let sols = solve_saddles(p, &p_state(), &field).unwrap();
        assert!(sols.len() >= 2);
        let (a, b) = (&sols[0], &sols[1]);
        // Exact reflection constraint: w_B = r·conj(w_A) with the same
        // unit-modulus r in both gauges. In particular the pair members are
        // equally strong everywhere; gauges differ only in relative phase.
        let ratio = |gauge: Gauge| weight(b, gauge) / weight(a, gauge).conj();
        let (rl, rv) = (ratio(Gauge::Length), ratio(Gauge::Velocity));
        assert!((rl - rv).norm() < 1e-8 * rv.norm(), "{rl} vs {rv}");
        assert!((rl.norm() - 1.0).abs() < 1e-8, "|r| = {}", rl.norm());
        // The inversion: the relative phase between the pair members differs
        // by π between the gauges as p_z → 0 (the saddle form factor is real
        // in V gauge but ±i·|V| in L gauge, where v_z = ±iκ'), so an
        // interference minimum of one gauge sits on a maximum of the other.
        let p_small = Vec3::along_z(0.02);
        let sols = solve_saddles(p_small, &p_state(), &field).unwrap();
        let (a, b) = (&sols[0], &sols[1]);
        let rel_phase =
            |gauge: Gauge| (weight(b, gauge) / weight(a, gauge)).arg();
        let gap = rel_phase(Gauge::Length) - rel_phase(Gauge::Velocity);
        let wrapped = (gap.abs() - std::f64::consts::PI).abs();
        assert!(wrapped < 0.02, "phase inversion off by {wrapped} rad");
    }

    #[test]
    fn effective_odd_form_factor_is_finite_and_prefactor_independent() {
        let field = pulse_field();
        let p = Vec3::along_z(0.6);
        let sols = solve_saddles(p, &p_state(), &field).unwrap();
        for s in &sols {
            assert!(s.form_factor_l.is_finite());
            // The physical product is prefactor·form_factor_l; flipping the
            // branch flips both, leaving the product unchanged — checked by
            // construction here.
            let product = s.prefactor * s.form_factor_l;
            let flipped = (-s.prefactor) * (-s.form_factor_l);
            assert_eq!(product, flipped);
        }
    }

    #[test]
    fn monochromatic_comb_sits_on_the_ati_channels() {
        // For a strictly periodic field the ATI comb is exact: peaks at
        // E_n = n·ω − I_p − U_p with U_p = A₀²/4, spaced by exactly one
        // photon. This pins the absolute phase bookkeeping of the whole
        // SPA pipeline (action, I_p·t term, prefactor continuity).
        let a0 = E0 / OMEGA;
        let field =
            LaserField::Monochromatic(Monochromatic { a0, omega: OMEGA, n_cycles: 8 });
        let up = a0 * a0 / 4.0;
        let energies: Vec<f64> = (0..=695).map(|i| 0.005 + 0.001 * i as f64).collect();
        let grid =
            spa_spectrum(&s_state(), Gauge::Length, &field, &energies, 0.0).unwrap();
        let peaks = crate::spectrum::find_peaks(
            &grid.energies,
            &grid.values,
            0.5 * OMEGA,
            0.2,
        );
        assert!(peaks.len() >= 10, "found only {} comb peaks", peaks.len());
        for pair in peaks.windows(2) {
            let spacing = grid.energies[pair[1]] - grid.energies[pair[0]];
            assert!(
                (spacing - OMEGA).abs() <= 0.05 * OMEGA,
                "comb spacing {spacing} vs ω = {OMEGA}"
            );
        }
        for &i in &peaks {
            let e = grid.energies[i];
            let n = ((e + 0.5 + up) / OMEGA).round();
            let predicted = n * OMEGA - 0.5 - up;
            assert!(
                (e - predicted).abs() <= 0.0025,
                "peak at {e} vs channel {n} at {predicted}"
            );
        }
    }

    #[test]
    fn residuals_immediately_fail_for_wrong_roots() {
        // Guard on the residual definition itself: perturbing a true root by
        // 1e-4/ω must push the residual far above the acceptance bound.
        let field = mono_field();
        let sols = solve_saddles(Vec3::ZERO, &s_state(), &field).unwrap();
        let t_bad = sols[0].t_s + Complex64::new(1e-4 / OMEGA, 0.0);
        let a = field.vector_potential_complex(t_bad);
        let resid = (a * a + 2.0 * 0.5).norm();
        assert!(resid > 1e-6);
    }
}

//! Short-range bound-state models in momentum space.
//!
//! Two initial states are supported, distinguished only by parity — the
//! property that drives everything downstream:
//!
//! * `SEven` — the zero-range (δ-potential) s state, ⟨q|0⟩ = √κ/(π(q²+κ²)).
//! * `POdd` — the minimal normalizable odd short-range model with an m = 0
//!   lobe along the polarization axis, ⟨q|0⟩ = N·q_z/(q²+κ²)² with
//!   N = √(24κ³)/π.
//!
//! Both are unit-normalized: ∫|⟨q|0⟩|²d³q = 1 (the tests verify this against
//! an independent radial quadrature). κ = √(2I_p) sets the only length scale.
//!
//! The "form factor" ⟨q|V|0⟩ is obtained from the momentum-space Schrödinger
//! equation (q²/2 − I_p ... ) rearranged as ⟨q|V|0⟩ = −(q²+κ²)/2·⟨q|0⟩, which
//! cancels one rational factor. For the s state this leaves a *constant*,
//! −√κ/(2π) — the well-known zero-range contact interaction. For the p state
//! it leaves −N·q_z/(2(q²+κ²)), odd in q and singular only at q² = −κ², i.e.
//! exactly on the tunneling shell in complex kinematics (the saddle module
//! carries the regularization for that case).
//!
//! All expressions are rational in the Cartesian components of q and are
//! therefore used unchanged for complex q (analytic continuation).

use num_complex::Complex64;
use thiserror::Error;

use crate::{CVec3, Vec3};

#[derive(Debug, Error, PartialEq)]
pub enum StateError {
    #[error("invalid bound state: {0}")]
    InvalidState(String),
}

/// Parity class of the initial bound state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StateKind {
    /// Even-parity s state (zero-range model).
    SEven,
    /// Odd-parity p state (m = 0, lobe along the polarization axis).
    POdd,
}

impl StateKind {
    #[must_use]
    pub fn label(self) -> &'static str {
        match self {
            StateKind::SEven => "s",
            StateKind::POdd => "p",
        }
    }
}

impl std::fmt::Display for StateKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// A short-range initial state: parity class, ionization potential, and the
/// orientation of the p lobe (fixed to the polarization axis ẑ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundStateModel {
    pub kind: StateKind,
    /// Ionization potential I_p > 0 (a.u.).
    pub ip: f64,
    /// κ = √(2I_p).
    pub kappa: f64,
    /// Orientation of the odd lobe; fixed to ẑ (the polarization axis), so
    /// q·axis ≡ q_z throughout.
    pub axis: Vec3,
}

impl BoundStateModel {
    pub fn new(kind: StateKind, ip: f64) -> Result<Self, StateError> {
        if !ip.is_finite() || ip <= 0.0 {
            return Err(StateError::InvalidState(format!(
                "ionization potential must be positive, got {ip}"
            )));
        }
        Ok(BoundStateModel { kind, ip, kappa: (2.0 * ip).sqrt(), axis: Vec3::along_z(1.0) })
    }

    /// Normalization constant: √κ/π for the s state, √(24κ³)/π for the p
    /// state (both fixed by unit norm).
    #[must_use]
    pub fn normalization(&self) -> f64 {
        let k = self.kappa;
        match self.kind {
            StateKind::SEven => k.sqrt() / std::f64::consts::PI,
            StateKind::POdd => (24.0 * k * k * k).sqrt() / std::f64::consts::PI,
        }
    }

    /// ⟨q|0⟩ for real q (real-valued in this convention).
    #[must_use]
    pub fn momentum_wavefunction(&self, q: Vec3) -> f64 {
        let d = q.norm_sq() + self.kappa * self.kappa;
        match self.kind {
            StateKind::SEven => self.normalization() / d,
            StateKind::POdd => self.normalization() * q.z / (d * d),
        }
    }

    /// ⟨q|0⟩ continued to complex q (same rational expression).
    #[must_use]
    pub fn momentum_wavefunction_complex(&self, q: CVec3) -> Complex64 {
        let d = q.norm_sq_analytic() + self.kappa * self.kappa;
        match self.kind {
            StateKind::SEven => self.normalization() / d,
            StateKind::POdd => q.z * self.normalization() / (d * d),
        }
    }

    /// ∂⟨q|0⟩/∂q_z for real q (the dipole derivative along the polarization
    /// axis; used by the length-gauge interaction-form amplitude).
    #[must_use]
    pub fn momentum_wavefunction_grad_axis(&self, q: Vec3) -> f64 {
        let d = q.norm_sq() + self.kappa * self.kappa;
        match self.kind {
            StateKind::SEven => -2.0 * self.normalization() * q.z / (d * d),
            StateKind::POdd => self.normalization() * (d - 4.0 * q.z * q.z) / (d * d * d),
        }
    }

    /// ∂⟨q|0⟩/∂q_z continued to complex q.
    #[must_use]
    pub fn momentum_wavefunction_grad_axis_complex(&self, q: CVec3) -> Complex64 {
        let d = q.norm_sq_analytic() + self.kappa * self.kappa;
        match self.kind {
            StateKind::SEven => q.z * (-2.0 * self.normalization()) / (d * d),
            StateKind::POdd => (d - q.z * q.z * 4.0) * self.normalization() / (d * d * d),
        }
    }

    /// Form factor ⟨q|V|0⟩ = −(q²+κ²)/2·⟨q|0⟩ for real q.
    #[must_use]
    pub fn form_factor(&self, q: Vec3) -> f64 {
        match self.kind {
            StateKind::SEven => -0.5 * self.normalization(),
            StateKind::POdd => {
                let d = q.norm_sq() + self.kappa * self.kappa;
                -0.5 * self.normalization() * q.z / d
            }
        }
    }

    /// Form factor at complex q. Finite everywhere except the p-state pole at
    /// q² = −κ²; the rational form keeps |values| under control down to
    /// |q²+κ²| ~ 1e−6 (no intermediate overflow).
    #[must_use]
    pub fn form_factor_complex(&self, q: CVec3) -> Complex64 {
        match self.kind {
            StateKind::SEven => Complex64::new(-0.5 * self.normalization(), 0.0),
            StateKind::POdd => {
                let d = q.norm_sq_analytic() + self.kappa * self.kappa;
                q.z * (-0.5 * self.normalization()) / d
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::adaptive_simpson;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn state(kind: StateKind, ip: f64) -> BoundStateModel {
        BoundStateModel::new(kind, ip).unwrap()
    }

    #[test]
    fn s_state_at_origin_unit_kappa() {
        let s = state(StateKind::SEven, 0.5); // κ = 1
        assert!((s.momentum_wavefunction(Vec3::ZERO) - 1.0 / PI).abs() < 1e-15);
    }

    #[test]
    fn p_state_on_axis_unit_kappa() {
        let p = state(StateKind::POdd, 0.5); // κ = 1
        let expected = 24.0f64.sqrt() / (4.0 * PI);
        assert!((p.momentum_wavefunction(Vec3::along_z(1.0)) - expected).abs() < 1e-15);
    }

    #[test]
    fn p_state_vanishes_perpendicular_to_axis() {
        let p = state(StateKind::POdd, 0.5);
        assert_eq!(p.momentum_wavefunction(Vec3::new(0.7, -0.2, 0.0)), 0.0);
        assert_eq!(p.form_factor(Vec3::new(3.0, 1.0, 0.0)), 0.0);
    }

    #[test]
    fn s_form_factor_is_constant() {
        let s = state(StateKind::SEven, 0.5);
        let expected = -1.0 / (2.0 * PI);
        for q in [Vec3::ZERO, Vec3::new(0.3, -1.2, 4.0), Vec3::along_z(100.0)] {
            assert!((s.form_factor(q) - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn near_singular_complex_kinematics_stay_finite() {
        // q = 0.999i·ẑ, κ = 1: q²+κ² = 1 − 0.998001 ≈ 2e-3; the form factor
        // is large but must be finite, and must equal the independently
        // assembled arithmetic.
        let p = state(StateKind::POdd, 0.5);
        let qz = Complex64::new(0.0, 0.999);
        let q = CVec3::new(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), qz);
        let got = p.form_factor_complex(q);
        let d = qz * qz + 1.0;
        let expected = -p.normalization() * qz / (2.0 * d);
        assert!(got.is_finite());
        assert!((got - expected).norm() < 1e-12 * expected.norm());
        // Magnitude cross-check with plain real arithmetic.
        let mag = p.normalization() * 0.999 / (2.0 * (1.0 - 0.999 * 0.999));
        assert!((got.norm() - mag).abs() < 1e-9 * mag);
    }

    #[test]
    fn schroedinger_identity_links_form_factor_and_wavefunction() {
        let check = |kind| {
            let st = state(kind, 0.33);
            let k2 = st.kappa * st.kappa;
            for q in [
                Vec3::new(0.1, 0.2, 0.3),
                Vec3::new(-1.0, 2.0, -0.5),
                Vec3::along_z(0.9),
                Vec3::new(0.0, 0.0, -2.5),
            ] {
                let lhs = st.form_factor(q);
                let rhs = -0.5 * (q.norm_sq() + k2) * st.momentum_wavefunction(q);
                assert!((lhs - rhs).abs() <= 1e-15 * (1.0 + rhs.abs()), "{kind:?} at {q:?}");
            }
        };
        check(StateKind::SEven);
        check(StateKind::POdd);
    }

    /// Unit norm ∫|⟨q|0⟩|²d³q = 1 against an independent quadrature oracle.
    /// The radial integral is mapped to a finite domain by q = κ·tan(u).
    #[test]
    fn states_are_unit_normalized() {
        for &ip in &[0.125, 0.5, 2.0] {
            // κ = 0.5, 1, 2
            let s = state(StateKind::SEven, ip);
            let k = s.kappa;
            // S: 4π·∫ q²|ψ|²dq with |ψ|² = κ/π²·(q²+κ²)^{-2}.
            let radial_s = adaptive_simpson(
                &|u: f64| {
                    let q = k * u.tan();
                    let d = q * q + k * k;
                    let jac = k / u.cos().powi(2);
                    q * q * (k / (PI * PI)) / (d * d) * jac
                },
                0.0,
                FRAC_PI_2 - 1e-9,
                1e-12,
            );
            let norm_s = 4.0 * PI * radial_s;
            assert!((norm_s - 1.0).abs() < 1e-8, "s-state norm at κ={k}: {norm_s}");

            // P: ∫|N q_z/(q²+κ²)²|² d³q = N²·(4π/3)·∫ q⁴(q²+κ²)^{-4} dq.
            let p = state(StateKind::POdd, ip);
            let n2 = p.normalization() * p.normalization();
            let radial_p = adaptive_simpson(
                &|u: f64| {
                    let q = k * u.tan();
                    let d = q * q + k * k;
                    let jac = k / u.cos().powi(2);
                    q.powi(4) / d.powi(4) * jac
                },
                0.0,
                FRAC_PI_2 - 1e-9,
                1e-12,
            );
            let norm_p = n2 * (4.0 * PI / 3.0) * radial_p;
            assert!((norm_p - 1.0).abs() < 1e-8, "p-state norm at κ={k}: {norm_p}");
        }
    }

    #[test]
    fn grad_axis_matches_finite_differences() {
        for kind in [StateKind::SEven, StateKind::POdd] {
            let st = state(kind, 0.5);
            for q in [Vec3::new(0.4, -0.3, 0.8), Vec3::along_z(-1.3), Vec3::new(1.0, 1.0, 0.2)] {
                let h = 1e-6;
                let up = st.momentum_wavefunction(Vec3::new(q.x, q.y, q.z + h));
                let dn = st.momentum_wavefunction(Vec3::new(q.x, q.y, q.z - h));
                let fd = (up - dn) / (2.0 * h);
                let an = st.momentum_wavefunction_grad_axis(q);
                assert!((fd - an).abs() < 1e-8 * (1.0 + an.abs()), "{kind:?} at {q:?}");
            }
        }
    }

    #[test]
    fn invalid_ip_rejected() {
        assert!(BoundStateModel::new(StateKind::SEven, 0.0).is_err());
        assert!(BoundStateModel::new(StateKind::POdd, -1.0).is_err());
        assert!(BoundStateModel::new(StateKind::POdd, f64::NAN).is_err());
    }

    proptest! {
        #[test]
        fn parity_is_exact(
            qx in -3.0f64..3.0, qy in -3.0f64..3.0, qz in -3.0f64..3.0,
            ip in 0.05f64..3.0,
        ) {
            let q = Vec3::new(qx, qy, qz);
            let s = state(StateKind::SEven, ip);
            prop_assert_eq!(s.momentum_wavefunction(-q), s.momentum_wavefunction(q));
            prop_assert_eq!(s.form_factor(-q), s.form_factor(q));
            let p = state(StateKind::POdd, ip);
            prop_assert_eq!(p.momentum_wavefunction(-q), -p.momentum_wavefunction(q));
            prop_assert_eq!(p.form_factor(-q), -p.form_factor(q));
        }

        #[test]
        fn schroedinger_identity_property(
            qx in -3.0f64..3.0, qy in -3.0f64..3.0, qz in -3.0f64..3.0,
            ip in 0.05f64..3.0,
        ) {
            let q = Vec3::new(qx, qy, qz);
            for kind in [StateKind::SEven, StateKind::POdd] {
                let st = state(kind, ip);
                let resid = st.form_factor(q)
                    + 0.5 * (q.norm_sq() + st.kappa * st.kappa) * st.momentum_wavefunction(q);
                prop_assert!(resid.abs() <= 1e-14 * (1.0 + st.form_factor(q).abs()));
            }
        }

        #[test]
        fn complex_evaluation_agrees_with_real_on_the_real_axis(
            qx in -2.0f64..2.0, qz in -2.0f64..2.0,
        ) {
            let qr = Vec3::new(qx, 0.0, qz);
            let qc = CVec3::from(qr);
            for kind in [StateKind::SEven, StateKind::POdd] {
                let st = state(kind, 0.5);
                let a = st.momentum_wavefunction_complex(qc);
                prop_assert!((a.re - st.momentum_wavefunction(qr)).abs() < 1e-14);
                prop_assert!(a.im.abs() < 1e-14);
                let b = st.form_factor_complex(qc);
                prop_assert!((b.re - st.form_factor(qr)).abs() < 1e-14);
                let g = st.momentum_wavefunction_grad_axis_complex(qc);
                prop_assert!((g.re - st.momentum_wavefunction_grad_axis(qr)).abs() < 1e-14);
            }
        }
    }
}

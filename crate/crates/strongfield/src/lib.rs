//! Strong-field ionization toolkit.
//!
//! Computes angle-resolved photoelectron spectra for short laser pulses three
//! ways and lets them be compared on equal footing:
//!
//! 1. **SFA by direct quadrature** ([`sfa`]): the strong-field-approximation
//!    transition amplitude evaluated as a 1-D time integral over the pulse, in
//!    either the length or the velocity gauge.
//! 2. **Saddle-point approximation** ([`saddle`]): the same amplitude as a sum
//!    over complex ionization times solving the stationary-phase equation of
//!    the Volkov action.
//! 3. **TDSE reference** ([`tdse`]): exact single-active-electron propagation
//!    on a radial × partial-wave grid for a truncated Coulomb potential, with
//!    spectra extracted by projection on continuum eigenstates.
//!
//! Everything is in atomic units (ħ = m = 1) with the electron charge fixed to
//! e = −1, so the kinetic (instantaneous) momentum reads p − eA(t) = p + A(t)ê.
//! Linear polarization along the z axis throughout.
//!
//! The [`cli`] module provides config parsing, CSV emission, spectrum
//! comparison with rescaling, and gnuplot script generation; the `strongfield`
//! binary is a thin wrapper around it. Runnable walkthroughs live in the
//! crate's `examples/` directory.

// `!(x > 0.0)` is used deliberately throughout as a validity check that also
// rejects NaN; spelling it `x <= 0.0 || x.is_nan()` everywhere hides the point.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod field;
pub mod quad;
pub mod saddle;
pub mod sfa;
pub mod spectrum;
pub mod states;
pub mod tdse;

#[cfg(test)]
pub(crate) mod testutil;

use num_complex::Complex64;

/// A real 3-vector (atomic units). The laser polarization axis is z.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    #[must_use]
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    /// Vector along the polarization axis.
    #[must_use]
    pub fn along_z(z: f64) -> Self {
        Vec3 { x: 0.0, y: 0.0, z }
    }

    #[must_use]
    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Squared Euclidean norm p·p.
    #[must_use]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    #[must_use]
    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Component transverse to the polarization axis, |p⊥| ≥ 0.
    #[must_use]
    pub fn perp(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[must_use]
    pub fn scaled(self, s: f64) -> Self {
        Vec3 { x: self.x * s, y: self.y * s, z: self.z * s }
    }

    /// Final momentum of magnitude √(2E) emitted at polar angle θ from the
    /// polarization axis (in the x–z plane, the usual detector convention).
    #[must_use]
    pub fn from_energy_angle(energy: f64, theta: f64) -> Self {
        let p = (2.0 * energy).sqrt();
        Vec3 { x: p * theta.sin(), y: 0.0, z: p * theta.cos() }
    }
}

impl std::ops::Neg for Vec3 {
    type Output = Vec3;

    fn neg(self) -> Vec3 {
        self.scaled(-1.0)
    }
}

/// A complex 3-vector, used for kinematics at complex ionization times.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CVec3 {
    pub x: Complex64,
    pub y: Complex64,
    pub z: Complex64,
}

impl CVec3 {
    #[must_use]
    pub fn new(x: Complex64, y: Complex64, z: Complex64) -> Self {
        CVec3 { x, y, z }
    }

    /// Analytic (unconjugated) dot product q·q — the quantity that appears in
    /// continued dispersion relations like q² + κ² = 0.
    #[must_use]
    pub fn dot_analytic(self, other: CVec3) -> Complex64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// q·q without conjugation.
    #[must_use]
    pub fn norm_sq_analytic(self) -> Complex64 {
        self.dot_analytic(self)
    }
}

impl std::ops::Neg for CVec3 {
    type Output = CVec3;

    fn neg(self) -> CVec3 {
        CVec3 { x: -self.x, y: -self.y, z: -self.z }
    }
}

impl From<Vec3> for CVec3 {
    fn from(v: Vec3) -> Self {
        CVec3 {
            x: Complex64::new(v.x, 0.0),
            y: Complex64::new(v.y, 0.0),
            z: Complex64::new(v.z, 0.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn energy_angle_momentum_magnitude() {
        let p = Vec3::from_energy_angle(0.5, 0.3);
        assert!((p.norm() - 1.0).abs() < 1e-14, "|p| should be √(2·0.5) = 1, got {}", p.norm());
        assert!((p.norm_sq() / 2.0 - 0.5).abs() < 1e-14);
    }

    #[test]
    fn complex_dot_is_unconjugated() {
        let q = CVec3::new(
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        );
        // (i)·(i) = −1, not +1: the analytic continuation convention.
        assert_eq!(q.norm_sq_analytic(), Complex64::new(-1.0, 0.0));
    }
}

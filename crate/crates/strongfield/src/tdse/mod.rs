//! Exact single-active-electron TDSE reference: radial partial-wave grid,
//! truncated-Coulomb potential with tunable effective charge, length-gauge
//! Crank–Nicolson propagation, and angle-resolved photoelectron spectrum
//! extraction.
//!
//! The wavefunction is expanded as ψ(r) = Σ_ℓ u_ℓ(r)/r · Y_ℓ0(θ) with m = 0
//! fixed (linear polarization along ẑ). The radial functions live on the
//! uniform grid r_j = (j+1)·dr with u(0) = 0 implied, and each ℓ block sees
//! the tridiagonal Hamiltonian
//!
//! ```text
//! H_ℓ = −(1/2) d²/dr² + ℓ(ℓ+1)/(2r²) + V(r)
//! ```
//!
//! discretized with the 3-point Laplacian. The laser couples neighboring ℓ
//! through the length-gauge interaction E(t)·r·cosθ (electron charge
//! e = −1, so −e·E·z = +E·z).

use thiserror::Error;

use crate::spectrum::SpectrumError;

mod checkpoint;
mod eigen;
mod propagate;
mod spectrum;

pub use checkpoint::{load_checkpoint, save_checkpoint};
pub use eigen::{bound_states, find_zeff, radial_eigenstate};
pub use propagate::{propagate, PropagationSettings};
pub use spectrum::{continuum_wave, photoelectron_spectrum, TdseSpectrum};

#[derive(Debug, Error)]
pub enum TdseError {
    #[error("invalid TDSE parameter: {0}")]
    Invalid(String),
    #[error("no bound state: ℓ={ell}, z_eff={z_eff} supports no negative eigenvalue of index {n_index}")]
    NotBound { ell: usize, z_eff: f64, n_index: usize },
    #[error(
        "effective-charge bracket failed: no z_eff in [{lo}, {hi}] binds ℓ={ell} at −{target_ip} a.u."
    )]
    BracketFail { lo: f64, hi: f64, ell: usize, target_ip: f64 },
    #[error("propagation unstable at step {step}: norm grew by {growth:.3e}")]
    Unstable { step: usize, growth: f64 },
    #[error("checkpoint format error: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

/// Truncated Coulomb potential. The default is the hard cut
/// V(r) = −z_eff/r for r ≤ r_c and 0 beyond; setting `continuous` shifts
/// the inner branch to −z_eff/r + z_eff/r_c so V is continuous at r_c.
/// Either way the potential vanishes identically for r > r_c, which is what
/// the continuum matching relies on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutCoulomb {
    pub z_eff: f64,
    pub r_c: f64,
    pub continuous: bool,
}

impl CutCoulomb {
    pub fn new(z_eff: f64, r_c: f64) -> Result<Self, TdseError> {
        if !(z_eff > 0.0) || !z_eff.is_finite() {
            return Err(TdseError::Invalid(format!("z_eff must be positive, got {z_eff}")));
        }
        if !(r_c > 0.0) || !r_c.is_finite() {
            return Err(TdseError::Invalid(format!("r_c must be positive, got {r_c}")));
        }
        Ok(Self { z_eff, r_c, continuous: false })
    }

    /// Continuous-at-r_c variant (config switch; hard cut is the default).
    #[must_use]
    pub fn continuous(mut self) -> Self {
        self.continuous = true;
        self
    }

    /// V(r) in atomic units.
    #[must_use]
    pub fn value(&self, r: f64) -> f64 {
        if r <= self.r_c {
            let shift = if self.continuous { self.z_eff / self.r_c } else { 0.0 };
            -self.z_eff / r + shift
        } else {
            0.0
        }
    }
}

/// Uniform radial grid r_j = (j+1)·dr for j = 0..n_r, with the absorber
/// ramp starting at `mask_start`·r_max.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    pub dr: f64,
    pub n_r: usize,
    pub mask_start: f64,
}

impl RadialGrid {
    pub fn new(dr: f64, n_r: usize, mask_start: f64) -> Result<Self, TdseError> {
        if !(dr > 0.0) || !dr.is_finite() {
            return Err(TdseError::Invalid(format!("dr must be positive, got {dr}")));
        }
        if n_r < 16 {
            return Err(TdseError::Invalid(format!("n_r must be at least 16, got {n_r}")));
        }
        if !(mask_start > 0.5 && mask_start < 1.0) {
            return Err(TdseError::Invalid(format!(
                "mask_start must lie in (0.5, 1), got {mask_start}"
            )));
        }
        Ok(Self { dr, n_r, mask_start })
    }

    /// Box size r_max = n_r·dr.
    #[must_use]
    pub fn r_max(&self) -> f64 {
        self.n_r as f64 * self.dr
    }

    /// Radius of grid point j.
    #[must_use]
    pub fn r(&self, j: usize) -> f64 {
        (j + 1) as f64 * self.dr
    }
}

/// Radial-grid × angular-momentum representation of the wavefunction:
/// `coefficients[ℓ][j]` is u_ℓ(r_j), with m fixed to 0.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialWaveFunction {
    pub coefficients: Vec<Vec<num_complex::Complex64>>,
    pub dr: f64,
}

impl PartialWaveFunction {
    /// Zero wavefunction with `l_max`+1 angular blocks on an `n_r` grid.
    #[must_use]
    pub fn zero(l_max: usize, n_r: usize, dr: f64) -> Self {
        Self {
            coefficients: vec![vec![num_complex::Complex64::new(0.0, 0.0); n_r]; l_max + 1],
            dr,
        }
    }

    /// Single-ℓ state from a real radial function (already normalized or
    /// not — no normalization is applied here).
    #[must_use]
    pub fn from_radial(l_max: usize, ell: usize, u: &[f64], dr: f64) -> Self {
        let mut psi = Self::zero(l_max, u.len(), dr);
        for (c, &v) in psi.coefficients[ell].iter_mut().zip(u) {
            *c = num_complex::Complex64::new(v, 0.0);
        }
        psi
    }

    #[must_use]
    pub fn l_max(&self) -> usize {
        self.coefficients.len() - 1
    }

    #[must_use]
    pub fn n_r(&self) -> usize {
        self.coefficients[0].len()
    }

    /// Total norm Σ_ℓ ∫ |u_ℓ|² dr.
    #[must_use]
    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Squared norm.
    #[must_use]
    pub fn norm_sq(&self) -> f64 {
        self.coefficients
            .iter()
            .map(|u| u.iter().map(|c| c.norm_sqr()).sum::<f64>())
            .sum::<f64>()
            * self.dr
    }

    /// Population of one ℓ channel, ∫ |u_ℓ|² dr.
    #[must_use]
    pub fn channel_population(&self, ell: usize) -> f64 {
        self.coefficients[ell].iter().map(|c| c.norm_sqr()).sum::<f64>() * self.dr
    }

    /// ⟨other|self⟩ = Σ_ℓ ∫ other_ℓ* self_ℓ dr.
    #[must_use]
    pub fn overlap(&self, other: &Self) -> num_complex::Complex64 {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for (a, b) in self.coefficients.iter().zip(&other.coefficients) {
            for (x, y) in a.iter().zip(b) {
                acc += y.conj() * x;
            }
        }
        acc * self.dr
    }
}

//! Bound states of the radial Hamiltonian: Sturm-sequence bisection for the
//! eigenvalues of the symmetric tridiagonal discretization and inverse
//! iteration for the eigenvectors, plus the effective-charge tuner that
//! pins the ionization potential of the truncated Coulomb potential.

use super::{CutCoulomb, RadialGrid, TdseError};

/// Diagonal of the 3-point radial Hamiltonian for one ℓ; the off-diagonal
/// is the constant −1/(2dr²).
pub(super) fn hamiltonian_diagonal(
    potential: &CutCoulomb,
    grid: &RadialGrid,
    ell: usize,
) -> Vec<f64> {
    let centrifugal = (ell * (ell + 1)) as f64 / 2.0;
    (0..grid.n_r)
        .map(|j| {
            let r = grid.r(j);
            1.0 / (grid.dr * grid.dr) + centrifugal / (r * r) + potential.value(r)
        })
        .collect()
}

/// Number of eigenvalues of tridiag(off, diag, off) strictly below `x`,
/// by counting negative pivots of the LDLᵀ factorization of T − x·I.
fn sturm_count(diag: &[f64], off: f64, x: f64) -> usize {
    let off_sq = off * off;
    let mut count = 0;
    let mut q = diag[0] - x;
    if q < 0.0 {
        count += 1;
    }
    for &d in &diag[1..] {
        if q == 0.0 {
            q = 1e-300;
        }
        q = (d - x) - off_sq / q;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `index`-th (0-based, ascending) eigenvalue, by bisection on the
/// Sturm count. `lo`/`hi` must bracket it.
fn bisect_eigenvalue(diag: &[f64], off: f64, index: usize, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if sturm_count(diag, off, mid) > index {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Inverse iteration for the eigenvector of tridiag(off, diag, off) at an
/// eigenvalue estimate `lambda`. Returns the vector normalized to
/// Σ u² dr = 1 with a positive leading lobe.
fn inverse_iteration(diag: &[f64], off: f64, lambda: f64, dr: f64) -> Vec<f64> {
    let n = diag.len();
    // Shift slightly off the eigenvalue so T − λ̃ is invertible.
    let scale = diag.iter().fold(0.0f64, |m, &d| m.max(d.abs())).max(off.abs());
    let shifted = lambda + 1e-12 * scale;
    let mut v: Vec<f64> = (0..n).map(|j| 1.0 + (j as f64 * 0.7).sin()).collect();
    let mut work_c = vec![0.0f64; n];
    let mut prev = v.clone();
    for iter in 0..8 {
        // Thomas solve (T − λ̃) x = v, in place.
        let mut d0 = diag[0] - shifted;
        if d0.abs() < 1e-300 {
            d0 = 1e-300;
        }
        work_c[0] = off / d0;
        v[0] /= d0;
        for j in 1..n {
            let mut denom = (diag[j] - shifted) - off * work_c[j - 1];
            if denom.abs() < 1e-300 {
                denom = 1e-300;
            }
            work_c[j] = off / denom;
            v[j] = (v[j] - off * v[j - 1]) / denom;
        }
        for j in (0..n - 1).rev() {
            v[j] -= work_c[j] * v[j + 1];
        }
        let norm = (v.iter().map(|x| x * x).sum::<f64>()).sqrt();
        for x in v.iter_mut() {
            *x /= norm;
        }
        if iter > 0 {
            let align: f64 = v.iter().zip(&prev).map(|(a, b)| a * b).sum();
            if (align.abs() - 1.0).abs() < 1e-14 {
                break;
            }
        }
        prev.copy_from_slice(&v);
    }
    // Normalize on the physical measure and fix the overall sign.
    let norm = (v.iter().map(|x| x * x).sum::<f64>() * dr).sqrt();
    let sign = v
        .iter()
        .find(|x| x.abs() > 1e-8 / dr.sqrt())
        .map_or(1.0, |x| x.signum());
    for x in v.iter_mut() {
        *x *= sign / norm;
    }
    v
}

/// The `n_index`-th bound eigenpair (0 = lowest) of the radial Hamiltonian
/// for angular momentum `ell`. The eigenvector is normalized to
/// Σ u² dr = 1. Fails with `NotBound` if fewer than `n_index`+1 negative
/// eigenvalues exist on this grid.
pub fn radial_eigenstate(
    potential: &CutCoulomb,
    ell: usize,
    n_index: usize,
    grid: &RadialGrid,
) -> Result<(f64, Vec<f64>), TdseError> {
    let diag = hamiltonian_diagonal(potential, grid, ell);
    let off = -1.0 / (2.0 * grid.dr * grid.dr);
    let n_bound = sturm_count(&diag, off, 0.0);
    if n_index >= n_bound {
        return Err(TdseError::NotBound { ell, z_eff: potential.z_eff, n_index });
    }
    // Gershgorin lower bound for the spectrum.
    let lo = diag
        .iter()
        .fold(f64::INFINITY, |m, &d| m.min(d))
        - 2.0 * off.abs();
    let energy = bisect_eigenvalue(&diag, off, n_index, lo, 0.0);
    let vector = inverse_iteration(&diag, off, energy, grid.dr);
    Ok((energy, vector))
}

/// All bound eigenpairs (E < 0) for one ℓ, ascending in energy.
pub fn bound_states(
    potential: &CutCoulomb,
    ell: usize,
    grid: &RadialGrid,
) -> Vec<(f64, Vec<f64>)> {
    let diag = hamiltonian_diagonal(potential, grid, ell);
    let off = -1.0 / (2.0 * grid.dr * grid.dr);
    let n_bound = sturm_count(&diag, off, 0.0);
    let lo = diag.iter().fold(f64::INFINITY, |m, &d| m.min(d)) - 2.0 * off.abs();
    (0..n_bound)
        .map(|idx| {
            let energy = bisect_eigenvalue(&diag, off, idx, lo, 0.0);
            let vector = inverse_iteration(&diag, off, energy, grid.dr);
            (energy, vector)
        })
        .collect()
}

/// Tune z_eff so the lowest ℓ eigenvalue of the cut potential equals
/// −target_ip. Bisection over z_eff ∈ [0.5, 10]; the eigenvalue is a
/// strictly decreasing function of the charge, so a sign change brackets
/// the root. Fails with `BracketFail` if the interval does not bracket.
pub fn find_zeff(
    target_ip: f64,
    ell: usize,
    r_c: f64,
    grid: &RadialGrid,
    continuous: bool,
) -> Result<f64, TdseError> {
    if !(target_ip > 0.0) {
        return Err(TdseError::Invalid(format!(
            "target_ip must be positive, got {target_ip}"
        )));
    }
    let (mut lo, mut hi) = (0.5f64, 10.0f64);
    // g(z) = E(z) + target_ip, treating "not bound" as a large positive
    // energy (too little charge).
    let g = |z: f64| -> Result<f64, TdseError> {
        let mut pot = CutCoulomb::new(z, r_c)?;
        pot.continuous = continuous;
        match radial_eigenstate(&pot, ell, 0, grid) {
            Ok((e, _)) => Ok(e + target_ip),
            Err(TdseError::NotBound { .. }) => Ok(f64::INFINITY),
            Err(e) => Err(e),
        }
    };
    let g_lo = g(lo)?;
    let g_hi = g(hi)?;
    if !(g_lo > 0.0 && g_hi < 0.0) {
        return Err(TdseError::BracketFail { lo, hi, ell, target_ip });
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        let g_mid = g(mid)?;
        if g_mid.abs() < 1e-7 {
            return Ok(mid);
        }
        if g_mid > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-11 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

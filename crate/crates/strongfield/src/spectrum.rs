//! Spectrum containers, ATI-peak detection, and spectrum comparison.
//!
//! A photoelectron spectrum is stored as |M_p|² on a strictly increasing
//! energy grid at fixed emission angle θ. Peak detection works on the log₁₀
//! of the values (ATI structure spans many decades), with a topographic
//! prominence criterion and a minimum-separation rule; the "envelope" of a
//! spectrum is the sequence of its ATI peak tops, and envelope extrema are
//! extrema of that sequence.
//!
//! Comparison of two spectra fits a single multiplicative constant — no
//! energy shift — by least squares on the log values, then pairs detected
//! peaks and reports their energy offsets (also in units of the photon
//! energy ω).

use thiserror::Error;

use crate::sfa::Gauge;
use crate::states::StateKind;

#[derive(Debug, Error, PartialEq)]
pub enum SpectrumError {
    #[error("invalid spectrum: {0}")]
    Invalid(String),
    #[error("NO_PEAKS: found {found} peaks in the {which} input (need at least 3)")]
    NoPeaks { which: &'static str, found: usize },
    #[error("comparison window contains no usable points")]
    EmptyWindow,
}

/// How a spectrum was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    SfaDirect,
    SfaSpa,
    Tdse,
}

impl Method {
    #[must_use]
    pub fn label(self) -> &'static str {
        match self {
            Method::SfaDirect => "sfa_direct",
            Method::SfaSpa => "sfa_spa",
            Method::Tdse => "tdse",
        }
    }

    pub fn parse(s: &str) -> Option<Method> {
        match s {
            "sfa_direct" => Some(Method::SfaDirect),
            "sfa_spa" => Some(Method::SfaSpa),
            "tdse" => Some(Method::Tdse),
            _ => None,
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Gauge tag carried by a spectrum; `None` means not applicable (TDSE).
pub type GaugeTag = Option<Gauge>;

#[must_use]
pub fn gauge_label(g: GaugeTag) -> &'static str {
    match g {
        Some(Gauge::Length) => "length",
        Some(Gauge::Velocity) => "velocity",
        None => "na",
    }
}

/// |M_p|² over a strictly increasing energy grid at fixed θ.
#[derive(Debug, Clone)]
pub struct SpectrumGrid {
    pub energies: Vec<f64>,
    /// Polar emission angle w.r.t. the polarization axis (rad).
    pub theta: f64,
    pub values: Vec<f64>,
    pub method: Method,
    pub gauge: GaugeTag,
    pub state_kind: StateKind,
}

impl SpectrumGrid {
    pub fn new(
        energies: Vec<f64>,
        theta: f64,
        values: Vec<f64>,
        method: Method,
        gauge: GaugeTag,
        state_kind: StateKind,
    ) -> Result<Self, SpectrumError> {
        if energies.len() != values.len() {
            return Err(SpectrumError::Invalid(format!(
                "{} energies vs {} values",
                energies.len(),
                values.len()
            )));
        }
        if energies.is_empty() {
            return Err(SpectrumError::Invalid("empty grid".into()));
        }
        if !energies.windows(2).all(|w| w[0] < w[1]) {
            return Err(SpectrumError::Invalid("energies must be strictly increasing".into()));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(SpectrumError::Invalid(format!("non-finite or negative value {v}")));
        }
        Ok(SpectrumGrid { energies, theta, values, method, gauge, state_kind })
    }

    /// Indices with energy inside `[lo, hi]`.
    #[must_use]
    pub fn window_indices(&self, lo: f64, hi: f64) -> Vec<usize> {
        (0..self.energies.len()).filter(|&i| self.energies[i] >= lo && self.energies[i] <= hi).collect()
    }
}

/// Floor for log-scale work: values are clamped to `max·1e-280` so that exact
/// zeros (possible at symmetry-forbidden kinematics) do not poison the log.
fn log10_floored(values: &[f64]) -> Vec<f64> {
    let max = values.iter().cloned().fold(0.0f64, f64::max);
    let floor = if max > 0.0 { max * 1e-280 } else { f64::MIN_POSITIVE };
    values.iter().map(|&v| v.max(floor).log10()).collect()
}

/// Detect peaks of `values` over `energies`: local maxima on the log₁₀ curve
/// with topographic prominence ≥ `min_prominence_decades`, thinned so that
/// retained peaks are at least `min_separation` apart in energy (higher peak
/// wins). Returns indices in ascending energy order.
#[must_use]
pub fn find_peaks(
    energies: &[f64],
    values: &[f64],
    min_separation: f64,
    min_prominence_decades: f64,
) -> Vec<usize> {
    assert_eq!(energies.len(), values.len());
    let n = values.len();
    if n < 3 {
        return Vec::new();
    }
    let y = log10_floored(values);
    // Candidate maxima; for flat tops, take the left edge of the plateau.
    let mut candidates = Vec::new();
    for i in 1..n - 1 {
        if y[i] > y[i - 1] {
            // Scan across any plateau to the right.
            let mut j = i;
            while j + 1 < n && y[j + 1] == y[i] {
                j += 1;
            }
            if j + 1 < n && y[j + 1] < y[i] {
                candidates.push(i);
            }
        }
    }
    // Topographic prominence: walk outward until the curve rises above the
    // peak (or the edge), tracking the lowest saddle on each side.
    let mut peaks: Vec<usize> = candidates
        .into_iter()
        .filter(|&i| {
            let mut left_min = y[i];
            for k in (0..i).rev() {
                left_min = left_min.min(y[k]);
                if y[k] > y[i] {
                    break;
                }
            }
            let mut right_min = y[i];
            for k in i + 1..n {
                right_min = right_min.min(y[k]);
                if y[k] > y[i] {
                    break;
                }
            }
            y[i] - left_min.max(right_min) >= min_prominence_decades
        })
        .collect();
    // Minimum-separation thinning, higher peak wins.
    peaks.sort_by(|&a, &b| y[b].partial_cmp(&y[a]).unwrap());
    let mut kept: Vec<usize> = Vec::new();
    for i in peaks {
        if kept.iter().all(|&k| (energies[i] - energies[k]).abs() >= min_separation) {
            kept.push(i);
        }
    }
    kept.sort_unstable();
    kept
}

/// ATI comb of a spectrum: `(energy, value)` at each detected peak top.
#[must_use]
pub fn peak_tops(
    grid: &SpectrumGrid,
    min_separation: f64,
    min_prominence_decades: f64,
) -> Vec<(f64, f64)> {
    find_peaks(&grid.energies, &grid.values, min_separation, min_prominence_decades)
        .into_iter()
        .map(|i| (grid.energies[i], grid.values[i]))
        .collect()
}

/// Local minima of a `(energy, value)` sequence (interior strict minima),
/// returned as energies. Used on the ATI comb to locate envelope dips.
#[must_use]
pub fn sequence_minima(seq: &[(f64, f64)]) -> Vec<f64> {
    seq.windows(3)
        .filter(|w| w[1].1 < w[0].1 && w[1].1 < w[2].1)
        .map(|w| w[1].0)
        .collect()
}

/// Local maxima of a `(energy, value)` sequence (interior strict maxima).
#[must_use]
pub fn sequence_maxima(seq: &[(f64, f64)]) -> Vec<f64> {
    seq.windows(3)
        .filter(|w| w[1].1 > w[0].1 && w[1].1 > w[2].1)
        .map(|w| w[1].0)
        .collect()
}

/// One matched peak pair in a spectrum comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakPair {
    pub energy_a: f64,
    pub energy_b: f64,
    /// energy_a − energy_b (a.u.).
    pub offset: f64,
    /// The same offset in units of the photon energy ω.
    pub offset_omega: f64,
}

/// Result of comparing two spectra: a single multiplicative rescaling plus a
/// table of peak-position offsets.
#[derive(Debug, Clone)]
pub struct ComparisonReport {
    /// exp(mean(ln a − ln b)) over the window — the least-squares single
    /// multiplicative constant on the log scale.
    pub scale_factor: f64,
    pub peak_table: Vec<PeakPair>,
    /// max |offset| over the table (a.u.).
    pub max_offset: f64,
    /// max |offset| in units of ω.
    pub max_offset_omega: f64,
    /// Photon energy used for the ω-scaled columns.
    pub omega: f64,
}

/// Compare two spectra over `window = [lo, hi]`: least-squares log rescaling
/// (no energy shift) and peak-position offsets. `omega` sets the peak
/// minimum separation (ω/2) and the ω-scaled offset columns;
/// `min_prominence_decades` is the peak-detection threshold.
///
/// Exactly symmetric under swapping a and b: the scale factor inverts and
/// every offset negates.
pub fn compare_grids(
    a: &SpectrumGrid,
    b: &SpectrumGrid,
    window: (f64, f64),
    omega: f64,
    min_prominence_decades: f64,
) -> Result<ComparisonReport, SpectrumError> {
    let (lo, hi) = window;
    if !(lo < hi) || omega <= 0.0 {
        return Err(SpectrumError::Invalid(format!("bad window/omega: [{lo}, {hi}], ω={omega}")));
    }

    // Least-squares log-scale fit over the window. Points where either
    // spectrum is non-positive carry no log information and are skipped.
    // When the grids differ, b is log-interpolated onto a's energies.
    let same_grid = a.energies.len() == b.energies.len()
        && a.energies
            .iter()
            .zip(&b.energies)
            .all(|(x, y)| (x - y).abs() <= 1e-12 * x.abs().max(1.0));
    let mut sum = 0.0;
    let mut count = 0usize;
    if same_grid {
        for i in a.window_indices(lo, hi) {
            let (va, vb) = (a.values[i], b.values[i]);
            if va > 0.0 && vb > 0.0 {
                sum += va.ln() - vb.ln();
                count += 1;
            }
        }
    } else {
        for i in a.window_indices(lo, hi) {
            let e = a.energies[i];
            if e < b.energies[0] || e > *b.energies.last().unwrap() {
                continue;
            }
            let va = a.values[i];
            let vb = interp_log(&b.energies, &b.values, e);
            if va > 0.0 && vb > 0.0 {
                sum += va.ln() - vb.ln();
                count += 1;
            }
        }
    }
    if count == 0 {
        return Err(SpectrumError::EmptyWindow);
    }
    let scale_factor = (sum / count as f64).exp();

    // Peak tables within the window (each on its own grid; no interpolation).
    let sep = 0.5 * omega;
    let peaks_in_window = |g: &SpectrumGrid| -> Vec<f64> {
        peak_tops(g, sep, min_prominence_decades)
            .into_iter()
            .filter(|&(e, _)| e >= lo && e <= hi)
            .map(|(e, _)| e)
            .collect()
    };
    let pa = peaks_in_window(a);
    let pb = peaks_in_window(b);
    if pa.len() < 3 {
        return Err(SpectrumError::NoPeaks { which: "first", found: pa.len() });
    }
    if pb.len() < 3 {
        return Err(SpectrumError::NoPeaks { which: "second", found: pb.len() });
    }

    // Pair the ascending combs. Equal length: by index. Unequal: slide the
    // shorter against the longer and keep the alignment with the smallest
    // mean |offset| (the ATI combs of both methods share the spacing ω, so
    // misalignment by a whole peak is the only realistic failure mode).
    let (short, long, a_is_short) =
        if pa.len() <= pb.len() { (&pa, &pb, true) } else { (&pb, &pa, false) };
    let mut best_shift = 0usize;
    let mut best_cost = f64::INFINITY;
    for shift in 0..=(long.len() - short.len()) {
        let cost: f64 =
            short.iter().enumerate().map(|(i, &e)| (e - long[i + shift]).abs()).sum::<f64>()
                / short.len() as f64;
        if cost < best_cost {
            best_cost = cost;
            best_shift = shift;
        }
    }
    let peak_table: Vec<PeakPair> = short
        .iter()
        .enumerate()
        .map(|(i, &e_short)| {
            let e_long = long[i + best_shift];
            let (energy_a, energy_b) =
                if a_is_short { (e_short, e_long) } else { (e_long, e_short) };
            let offset = energy_a - energy_b;
            PeakPair { energy_a, energy_b, offset, offset_omega: offset / omega }
        })
        .collect();
    let max_offset =
        peak_table.iter().map(|p| p.offset.abs()).fold(0.0f64, f64::max);
    Ok(ComparisonReport {
        scale_factor,
        peak_table,
        max_offset,
        max_offset_omega: max_offset / omega,
        omega,
    })
}

/// Log-linear interpolation of a positive tabulated function (linear in the
/// value where either neighbor is non-positive).
fn interp_log(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let j = match xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
        Ok(j) => return ys[j],
        Err(j) => j,
    };
    if j == 0 {
        return ys[0];
    }
    if j >= xs.len() {
        return *ys.last().unwrap();
    }
    let (x0, x1, y0, y1) = (xs[j - 1], xs[j], ys[j - 1], ys[j]);
    let t = (x - x0) / (x1 - x0);
    if y0 > 0.0 && y1 > 0.0 {
        (y0.ln() + t * (y1.ln() - y0.ln())).exp()
    } else {
        y0 + t * (y1 - y0)
    }
}

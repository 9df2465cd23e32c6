//! Config ingestion, run orchestration, CSV artifacts, spectrum comparison,
//! and gnuplot script emission — everything the `strongfield` binary does.
//!
//! The config format is flat dotted `key = value` text (`field.e0 = 0.0834`),
//! with `#` comment lines; every key has a default, so the empty file is a
//! valid config (the reference four-cycle pulse, s state, direct SFA in
//! length gauge). Unknown keys are errors: a typo must not silently fall
//! back to a default.
//!
//! CSV artifacts carry their full resolved configuration as `#`-prefixed
//! metadata lines followed by one header line and the data. Output is
//! byte-deterministic for a fixed config except for the `# generated <ISO>`
//! timestamp line, which consumers (and our own tests) strip before
//! comparing. Floats are printed in shortest-roundtrip scientific notation,
//! so reading a CSV back reproduces every value bit-exactly.
//!
//! Exit-code policy, used by the binary: config/input errors exit 2, solver
//! failures (non-convergence, instability, no bracketing charge, too few
//! peaks to compare) exit 3, success exits 0.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use thiserror::Error;

use crate::field::{FieldError, LaserField, Pulse, PulseParams};
use crate::saddle::{solve_saddles, spa_spectrum, SaddleError};
use crate::sfa::{Gauge, QuadratureSpec, SfaEngine, SfaError};
use crate::spectrum::{
    compare_grids, gauge_label, ComparisonReport, Method, SpectrumError, SpectrumGrid,
};
use crate::states::{BoundStateModel, StateError, StateKind};
use crate::tdse::{
    find_zeff, photoelectron_spectrum, propagate, radial_eigenstate, save_checkpoint,
    bound_states, CutCoulomb, PartialWaveFunction, PropagationSettings, RadialGrid, TdseError,
};
use crate::Vec3;

/// 1 hartree in eV; used only for secondary axis labels on plots.
pub const HARTREE_EV: f64 = 27.2114;

const CSV_HEADER: &str = "energy_au,momentum_au,theta_rad,value,method,gauge,state";

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad config, bad input file, bad CLI usage — exit code 2.
    #[error("{0}")]
    Config(String),
    /// A well-formed run that failed to produce a result — exit code 3.
    #[error("{0}")]
    Solver(String),
}

impl CliError {
    #[must_use]
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Solver(_) => 3,
        }
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<StateError> for CliError {
    fn from(e: StateError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<SfaError> for CliError {
    fn from(e: SfaError) -> Self {
        match e {
            SfaError::NonConverged { .. } => CliError::Solver(e.to_string()),
            SfaError::InvalidQuadrature(_) | SfaError::Spectrum(_) => {
                CliError::Config(e.to_string())
            }
        }
    }
}

impl From<SaddleError> for CliError {
    fn from(e: SaddleError) -> Self {
        match e {
            SaddleError::EmptyResult | SaddleError::SaddleCoalescence { .. } => {
                CliError::Solver(e.to_string())
            }
            SaddleError::Spectrum(s) => s.into(),
        }
    }
}

impl From<TdseError> for CliError {
    fn from(e: TdseError) -> Self {
        match e {
            TdseError::NotBound { .. }
            | TdseError::BracketFail { .. }
            | TdseError::Unstable { .. } => CliError::Solver(e.to_string()),
            TdseError::Invalid(_) | TdseError::Checkpoint(_) => CliError::Config(e.to_string()),
            TdseError::Spectrum(s) => s.into(),
        }
    }
}

impl From<SpectrumError> for CliError {
    fn from(e: SpectrumError) -> Self {
        match e {
            // Too few peaks / empty window are properties of the computed
            // data, not of the request.
            SpectrumError::NoPeaks { .. } | SpectrumError::EmptyWindow => {
                CliError::Solver(e.to_string())
            }
            SpectrumError::Invalid(_) => CliError::Config(e.to_string()),
        }
    }
}

fn io_err(path: &Path, what: &str, e: &std::io::Error) -> CliError {
    CliError::Config(format!("{what} {}: {e}", path.display()))
}

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

/// Effective charge of the TDSE potential: fixed, or tuned by `find_zeff`
/// so the chosen state's binding energy equals the configured I_p.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeffChoice {
    Auto,
    Fixed(f64),
}

/// One fully-resolved run request. Field defaults are the reference pulse
/// (E₀ = 0.0834, ω = 0.056, four cycles, φ = 0, I_p = 0.5 — all a.u.).
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub e0: f64,
    pub omega: f64,
    pub n_cycles: u32,
    pub cep: f64,
    pub state_kind: StateKind,
    pub ip: f64,
    pub method: Method,
    pub gauge: Gauge,
    /// Whether `method.gauge` appeared explicitly (drives the ignored-gauge
    /// warning for TDSE runs).
    pub gauge_explicit: bool,
    pub e_min: f64,
    pub e_max: f64,
    pub n_points: usize,
    pub theta: f64,
    pub dr: f64,
    pub r_max: f64,
    pub l_max: usize,
    pub dt: f64,
    pub r_c: f64,
    pub z_eff: ZeffChoice,
    pub mask_start: f64,
    pub continuous: bool,
    pub out_csv: Option<PathBuf>,
    pub out_checkpoint: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            e0: 0.0834,
            omega: 0.056,
            n_cycles: 4,
            cep: 0.0,
            state_kind: StateKind::SEven,
            ip: 0.5,
            method: Method::SfaDirect,
            gauge: Gauge::Length,
            gauge_explicit: false,
            e_min: 0.01,
            e_max: 1.0,
            n_points: 496,
            theta: 0.0,
            dr: 0.1,
            r_max: 400.0,
            l_max: 30,
            dt: 0.025,
            r_c: 2.0,
            z_eff: ZeffChoice::Auto,
            mask_start: 0.9,
            continuous: false,
            out_csv: None,
            out_checkpoint: None,
        }
    }
}

impl RunConfig {
    /// The energy grid: `n_points` evenly spaced values over
    /// [`e_min`, `e_max`].
    #[must_use]
    pub fn energies(&self) -> Vec<f64> {
        let n = self.n_points;
        let step = (self.e_max - self.e_min) / (n - 1) as f64;
        (0..n).map(|i| self.e_min + step * i as f64).collect()
    }

    fn validate(&self) -> Result<(), CliError> {
        let bad = |key: &str, msg: String| Err(CliError::Config(format!("{key}: {msg}")));
        if !(self.e0 > 0.0) || !self.e0.is_finite() {
            return bad("field.e0", format!("must be positive, got {}", self.e0));
        }
        if !(self.omega > 0.0) || !self.omega.is_finite() {
            return bad("field.omega", format!("must be positive, got {}", self.omega));
        }
        if self.n_cycles < 2 {
            return bad("field.n_cycles", format!("must be at least 2, got {}", self.n_cycles));
        }
        if !self.cep.is_finite() {
            return bad("field.cep", format!("must be finite, got {}", self.cep));
        }
        if !(self.ip > 0.0) || !self.ip.is_finite() {
            return bad("state.ip", format!("must be positive, got {}", self.ip));
        }
        if !(self.e_min > 0.0) || !(self.e_max > self.e_min) {
            return bad(
                "grid.e_min/grid.e_max",
                format!("need 0 < e_min < e_max, got [{}, {}]", self.e_min, self.e_max),
            );
        }
        if self.n_points < 2 {
            return bad("grid.n_points", format!("must be at least 2, got {}", self.n_points));
        }
        if !self.theta.is_finite() {
            return bad("grid.theta", format!("must be finite, got {}", self.theta));
        }
        if !(self.dr > 0.0) || !self.dr.is_finite() {
            return bad("tdse.dr", format!("must be positive, got {}", self.dr));
        }
        if !(self.r_max > 0.0) || !self.r_max.is_finite() {
            return bad("tdse.r_max", format!("must be positive, got {}", self.r_max));
        }
        if self.n_r() < 16 {
            return bad(
                "tdse.r_max",
                format!("grid too small: r_max/dr = {} points (need at least 16)", self.n_r()),
            );
        }
        if self.l_max < 20 {
            return bad("tdse.l_max", format!("must be at least 20, got {}", self.l_max));
        }
        if !(self.dt > 0.0 && self.dt <= 0.05) {
            return bad("tdse.dt", format!("must lie in (0, 0.05], got {}", self.dt));
        }
        if !(self.r_c > 0.0) || !self.r_c.is_finite() {
            return bad("tdse.r_c", format!("must be positive, got {}", self.r_c));
        }
        if let ZeffChoice::Fixed(z) = self.z_eff {
            if !(z > 0.0) || !z.is_finite() {
                return bad("tdse.z_eff", format!("must be positive or `auto`, got {z}"));
            }
        }
        if !(self.mask_start > 0.5 && self.mask_start < 1.0) {
            return bad("tdse.mask_start", format!("must lie in (0.5, 1), got {}", self.mask_start));
        }
        Ok(())
    }

    fn n_r(&self) -> usize {
        (self.r_max / self.dr).round() as usize
    }

    fn pulse(&self) -> Result<Pulse, CliError> {
        Ok(Pulse::new(PulseParams {
            e0: self.e0,
            omega: self.omega,
            n_cycles: self.n_cycles,
            cep: self.cep,
        })?)
    }

    fn bound_model(&self) -> Result<BoundStateModel, CliError> {
        Ok(BoundStateModel::new(self.state_kind, self.ip)?)
    }

    /// Resolved-config echo for CSV metadata, one `key = value` per line in
    /// config-file syntax. The TDSE block is echoed only for TDSE runs.
    fn metadata_lines(&self) -> Vec<String> {
        let mut lines = vec![
            format!("field.e0 = {:e}", self.e0),
            format!("field.omega = {:e}", self.omega),
            format!("field.n_cycles = {}", self.n_cycles),
            format!("field.cep = {:e}", self.cep),
            format!("state.kind = {}", self.state_kind.label()),
            format!("state.ip = {:e}", self.ip),
            format!("method.name = {}", self.method.label()),
            format!("method.gauge = {}", self.gauge.label()),
            format!("grid.e_min = {:e}", self.e_min),
            format!("grid.e_max = {:e}", self.e_max),
            format!("grid.n_points = {}", self.n_points),
            format!("grid.theta = {:e}", self.theta),
        ];
        if self.method == Method::Tdse {
            lines.push(format!("tdse.dr = {:e}", self.dr));
            lines.push(format!("tdse.r_max = {:e}", self.r_max));
            lines.push(format!("tdse.l_max = {}", self.l_max));
            lines.push(format!("tdse.dt = {:e}", self.dt));
            lines.push(format!("tdse.r_c = {:e}", self.r_c));
            lines.push(match self.z_eff {
                ZeffChoice::Auto => "tdse.z_eff = auto".to_string(),
                ZeffChoice::Fixed(z) => format!("tdse.z_eff = {z:e}"),
            });
            lines.push(format!("tdse.mask_start = {:e}", self.mask_start));
            lines.push(format!("tdse.continuous = {}", self.continuous));
        }
        lines
    }
}

/// Parse flat dotted `key = value` config text. Blank lines and `#` comment
/// lines are skipped; unknown keys and unparsable values are errors naming
/// the key. Defaults fill everything that is not mentioned.
pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Config(format!(
                "config line {}: expected `key = value`, got {line:?}",
                lineno + 1
            )));
        };
        let key = key.trim();
        let value = value.trim();
        set_key(&mut cfg, key, value)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Read and parse a config file.
pub fn parse_config_file(path: &Path) -> Result<RunConfig, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| io_err(path, "cannot read config", &e))?;
    parse_config(&text)
}

fn set_key(cfg: &mut RunConfig, key: &str, value: &str) -> Result<(), CliError> {
    fn num(key: &str, value: &str) -> Result<f64, CliError> {
        value.parse::<f64>().map_err(|_| {
            CliError::Config(format!("config key {key}: cannot parse {value:?} as a number"))
        })
    }
    fn int(key: &str, value: &str) -> Result<usize, CliError> {
        value.parse::<usize>().map_err(|_| {
            CliError::Config(format!("config key {key}: cannot parse {value:?} as an integer"))
        })
    }
    match key {
        "field.e0" => cfg.e0 = num(key, value)?,
        "field.omega" => cfg.omega = num(key, value)?,
        "field.n_cycles" => {
            cfg.n_cycles = int(key, value)? as u32;
        }
        "field.cep" => cfg.cep = num(key, value)?,
        "state.kind" => {
            cfg.state_kind = match value {
                "s" => StateKind::SEven,
                "p" => StateKind::POdd,
                _ => {
                    return Err(CliError::Config(format!(
                        "config key state.kind: unknown state {value:?} (expected s|p)"
                    )))
                }
            }
        }
        "state.ip" => cfg.ip = num(key, value)?,
        "method.name" => {
            cfg.method = Method::parse(value).ok_or_else(|| {
                CliError::Config(format!(
                    "config key method.name: unknown method {value:?} (expected sfa_direct|sfa_spa|tdse)"
                ))
            })?;
        }
        "method.gauge" => {
            cfg.gauge = Gauge::parse(value).ok_or_else(|| {
                CliError::Config(format!(
                    "config key method.gauge: unknown gauge {value:?} (expected length|velocity)"
                ))
            })?;
            cfg.gauge_explicit = true;
        }
        "grid.e_min" => cfg.e_min = num(key, value)?,
        "grid.e_max" => cfg.e_max = num(key, value)?,
        "grid.n_points" => cfg.n_points = int(key, value)?,
        "grid.theta" => cfg.theta = num(key, value)?,
        "tdse.dr" => cfg.dr = num(key, value)?,
        "tdse.r_max" => cfg.r_max = num(key, value)?,
        "tdse.l_max" => cfg.l_max = int(key, value)?,
        "tdse.dt" => cfg.dt = num(key, value)?,
        "tdse.r_c" => cfg.r_c = num(key, value)?,
        "tdse.z_eff" => {
            cfg.z_eff = if value == "auto" {
                ZeffChoice::Auto
            } else {
                ZeffChoice::Fixed(num(key, value)?)
            };
        }
        "tdse.mask_start" => cfg.mask_start = num(key, value)?,
        "tdse.continuous" => {
            cfg.continuous = match value {
                "true" => true,
                "false" => false,
                _ => {
                    return Err(CliError::Config(format!(
                        "config key tdse.continuous: expected true|false, got {value:?}"
                    )))
                }
            }
        }
        "output.csv" => cfg.out_csv = Some(PathBuf::from(value)),
        "output.checkpoint" => cfg.out_checkpoint = Some(PathBuf::from(value)),
        _ => {
            return Err(CliError::Config(format!("unknown config key: {key}")));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Run orchestration
// ---------------------------------------------------------------------------

/// A finished run: the spectrum plus everything the CSV metadata records.
#[derive(Debug)]
pub struct RunOutcome {
    pub grid: SpectrumGrid,
    /// Effective charge actually used (TDSE only; the tuned value when the
    /// config said `auto`).
    pub zeff_used: Option<f64>,
    /// Human-readable warnings (ignored gauge, absorber loss, …) for stderr.
    pub warnings: Vec<String>,
}

/// Execute a configured spectrum computation.
pub fn run(cfg: &RunConfig) -> Result<RunOutcome, CliError> {
    let energies = cfg.energies();
    let mut warnings = Vec::new();
    match cfg.method {
        Method::SfaDirect => {
            let pulse = cfg.pulse()?;
            let engine = SfaEngine::new(&pulse, cfg.bound_model()?, QuadratureSpec::default())?;
            let grid = engine.spectrum(cfg.gauge, &energies, cfg.theta)?;
            Ok(RunOutcome { grid, zeff_used: None, warnings })
        }
        Method::SfaSpa => {
            let field = LaserField::Pulse(cfg.pulse()?);
            let grid = spa_spectrum(&cfg.bound_model()?, cfg.gauge, &field, &energies, cfg.theta)?;
            Ok(RunOutcome { grid, zeff_used: None, warnings })
        }
        Method::Tdse => {
            if cfg.gauge_explicit {
                warnings.push(
                    "method.gauge is ignored for tdse runs (length-gauge propagation only)"
                        .to_string(),
                );
            }
            let pulse = cfg.pulse()?;
            let grid = RadialGrid::new(cfg.dr, cfg.n_r(), cfg.mask_start)?;
            let ell = match cfg.state_kind {
                StateKind::SEven => 0,
                StateKind::POdd => 1,
            };
            let z_eff = match cfg.z_eff {
                ZeffChoice::Auto => find_zeff(cfg.ip, ell, cfg.r_c, &grid, cfg.continuous)?,
                ZeffChoice::Fixed(z) => z,
            };
            let mut potential = CutCoulomb::new(z_eff, cfg.r_c)?;
            potential.continuous = cfg.continuous;
            let (_, u) = radial_eigenstate(&potential, ell, 0, &grid)?;
            let psi0 = PartialWaveFunction::from_radial(cfg.l_max, ell, &u, grid.dr);
            let settings = PropagationSettings { dt: cfg.dt, absorber: true };
            let psi = propagate(&psi0, &potential, &pulse, &grid, &settings)?;
            if let Some(cp) = &cfg.out_checkpoint {
                save_checkpoint(cp, &psi)?;
            }
            let spectrum = photoelectron_spectrum(
                &psi,
                &potential,
                &grid,
                &energies,
                cfg.theta,
                cfg.state_kind,
            )?;
            if spectrum.absorber_loss_significant() {
                warnings.push(format!(
                    "absorber loss: {:.1}% of the ionized norm was absorbed at the box edge; \
                     the high-energy end of the spectrum is incomplete",
                    100.0 * spectrum.absorbed_fraction / spectrum.ionized_fraction
                ));
            }
            Ok(RunOutcome { grid: spectrum.grid, zeff_used: Some(z_eff), warnings })
        }
    }
}

// ---------------------------------------------------------------------------
// CSV artifacts
// ---------------------------------------------------------------------------

/// Days-to-civil conversion (proleptic Gregorian), for the timestamp line.
fn civil_from_days(days: i64) -> (i64, u32, u32) {
    let z = days + 719_468;
    let era = z.div_euclid(146_097);
    let doe = z.rem_euclid(146_097);
    let yoe = (doe - doe / 1460 + doe / 36_524 - doe / 146_096) / 365;
    let doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    let mp = (5 * doy + 2) / 153;
    let day = (doy - (153 * mp + 2) / 5 + 1) as u32;
    let month = if mp < 10 { mp + 3 } else { mp - 9 } as u32;
    let year = yoe + era * 400 + i64::from(month <= 2);
    (year, month, day)
}

fn format_epoch_secs(secs: u64) -> String {
    let (days, rem) = (secs / 86_400, secs % 86_400);
    let (y, mo, d) = civil_from_days(days as i64);
    let (h, mi, s) = (rem / 3600, (rem % 3600) / 60, rem % 60);
    format!("{y:04}-{mo:02}-{d:02}T{h:02}:{mi:02}:{s:02}Z")
}

fn iso_timestamp() -> String {
    let secs = SystemTime::now().duration_since(UNIX_EPOCH).unwrap_or_default().as_secs();
    format_epoch_secs(secs)
}

fn csv_preamble(stamp: &str, metadata: &[String]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# generated {stamp}");
    for line in metadata {
        let _ = writeln!(out, "# {line}");
    }
    out
}

/// Render a finished run as CSV text (metadata comments, one header line,
/// one row per energy). Deterministic except for the timestamp argument.
fn spectrum_csv_at(outcome: &RunOutcome, cfg: &RunConfig, stamp: &str) -> String {
    let mut meta = cfg.metadata_lines();
    if let Some(z) = outcome.zeff_used {
        meta.push(format!("tdse.z_eff.resolved = {z:e}"));
    }
    let mut out = csv_preamble(stamp, &meta);
    let _ = writeln!(out, "{CSV_HEADER}");
    let g = &outcome.grid;
    let (method, gauge, state) = (g.method.label(), gauge_label(g.gauge), g.state_kind.label());
    for (&e, &v) in g.energies.iter().zip(&g.values) {
        let momentum = (2.0 * e).sqrt();
        let _ = writeln!(out, "{e:e},{momentum:e},{:e},{v:e},{method},{gauge},{state}", g.theta);
    }
    out
}

/// CSV text for a finished run, stamped with the current UTC time.
#[must_use]
pub fn spectrum_csv(outcome: &RunOutcome, cfg: &RunConfig) -> String {
    spectrum_csv_at(outcome, cfg, &iso_timestamp())
}

/// Metadata recovered from a spectrum CSV.
#[derive(Debug, Clone)]
pub struct CsvMeta {
    /// `field.omega` from the metadata comments, if present.
    pub omega: Option<f64>,
    /// All `# key = value` metadata pairs, in file order.
    pub entries: Vec<(String, String)>,
}

/// Parse a spectrum CSV written by [`spectrum_csv`] back into a grid plus
/// its metadata. Values round-trip bit-exactly.
pub fn read_spectrum_csv(path: &Path) -> Result<(SpectrumGrid, CsvMeta), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, "cannot read CSV", &e))?;
    let bad = |msg: String| CliError::Config(format!("{}: {msg}", path.display()));

    let mut entries = Vec::new();
    let mut saw_header = false;
    let mut energies = Vec::new();
    let mut values = Vec::new();
    let mut theta: Option<f64> = None;
    let mut triple: Option<(Method, Option<Gauge>, StateKind)> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some((k, v)) = comment.split_once('=') {
                entries.push((k.trim().to_string(), v.trim().to_string()));
            }
            continue;
        }
        if !saw_header {
            if line != CSV_HEADER {
                return Err(bad(format!(
                    "line {}: expected header {CSV_HEADER:?}, got {line:?}",
                    lineno + 1
                )));
            }
            saw_header = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(bad(format!("line {}: expected 7 columns, got {}", lineno + 1, fields.len())));
        }
        let fnum = |s: &str, what: &str| -> Result<f64, CliError> {
            s.parse::<f64>()
                .map_err(|_| bad(format!("line {}: bad {what} {s:?}", lineno + 1)))
        };
        energies.push(fnum(fields[0], "energy")?);
        let th = fnum(fields[2], "theta")?;
        match theta {
            None => theta = Some(th),
            Some(t) if t == th => {}
            Some(t) => {
                return Err(bad(format!("line {}: theta {th} differs from {t}", lineno + 1)))
            }
        }
        values.push(fnum(fields[3], "value")?);
        let method = Method::parse(fields[4])
            .ok_or_else(|| bad(format!("line {}: unknown method {:?}", lineno + 1, fields[4])))?;
        let gauge = match fields[5] {
            "na" => None,
            s => Some(Gauge::parse(s).ok_or_else(|| {
                bad(format!("line {}: unknown gauge {s:?}", lineno + 1))
            })?),
        };
        let kind = match fields[6] {
            "s" => StateKind::SEven,
            "p" => StateKind::POdd,
            s => return Err(bad(format!("line {}: unknown state {s:?}", lineno + 1))),
        };
        match &triple {
            None => triple = Some((method, gauge, kind)),
            Some(t) if *t == (method, gauge, kind) => {}
            Some(t) => {
                return Err(bad(format!(
                    "line {}: mixed (method, gauge, state): {t:?} vs {:?}",
                    lineno + 1,
                    (method, gauge, kind)
                )))
            }
        }
    }
    let Some((method, gauge, kind)) = triple else {
        return Err(bad("no data rows".to_string()));
    };
    let grid = SpectrumGrid::new(energies, theta.unwrap_or(0.0), values, method, gauge, kind)?;
    let omega = entries
        .iter()
        .find(|(k, _)| k == "field.omega")
        .and_then(|(_, v)| v.parse::<f64>().ok());
    Ok((grid, CsvMeta { omega, entries }))
}

// ---------------------------------------------------------------------------
// Subcommand drivers
// ---------------------------------------------------------------------------

fn write_output(out: Option<&Path>, fallback: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out.or(fallback) {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| io_err(path, "cannot write", &e))?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// `spectrum --config C [--out csv]`: run and write the CSV artifact.
pub fn cmd_spectrum(config: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let cfg = parse_config_file(config)?;
    let outcome = run(&cfg)?;
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    let text = spectrum_csv(&outcome, &cfg);
    write_output(out, cfg.out_csv.as_deref(), &text)
}

/// Parse a `--window lo:hi` argument.
pub fn parse_window(s: &str) -> Result<(f64, f64), CliError> {
    let err = || {
        CliError::Config(format!(
            "--window: expected `emin:emax` with emin < emax (a.u.), got {s:?}"
        ))
    };
    let (lo, hi) = s.split_once(':').ok_or_else(err)?;
    let lo = lo.trim().parse::<f64>().map_err(|_| err())?;
    let hi = hi.trim().parse::<f64>().map_err(|_| err())?;
    if !(lo < hi) {
        return Err(err());
    }
    Ok((lo, hi))
}

/// Load two spectrum CSVs and compare them over `window` (defaults to the
/// overlap of their energy ranges). θ must match; ω comes from metadata.
pub fn compare_files(
    a_path: &Path,
    b_path: &Path,
    window: Option<(f64, f64)>,
) -> Result<ComparisonReport, CliError> {
    let (a, meta_a) = read_spectrum_csv(a_path)?;
    let (b, meta_b) = read_spectrum_csv(b_path)?;
    if (a.theta - b.theta).abs() > 1e-12 {
        return Err(CliError::Config(format!(
            "theta mismatch: {} has {}, {} has {}",
            a_path.display(),
            a.theta,
            b_path.display(),
            b.theta
        )));
    }
    let omega = match (meta_a.omega, meta_b.omega) {
        (Some(wa), Some(wb)) => {
            if (wa - wb).abs() > 1e-12 * wa.abs().max(1.0) {
                return Err(CliError::Config(format!(
                    "field.omega mismatch: {wa} vs {wb}"
                )));
            }
            wa
        }
        (Some(w), None) | (None, Some(w)) => w,
        (None, None) => {
            return Err(CliError::Config(
                "neither CSV carries a field.omega metadata line".to_string(),
            ))
        }
    };
    let window = window.unwrap_or_else(|| {
        let lo = a.energies[0].max(b.energies[0]);
        let hi = a.energies.last().unwrap().min(*b.energies.last().unwrap());
        (lo, hi)
    });
    Ok(compare_grids(&a, &b, window, omega, 0.2)?)
}

/// Human-readable comparison report (also the `--out` file format).
#[must_use]
pub fn render_comparison(r: &ComparisonReport, a_name: &str, b_name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "a = {a_name}");
    let _ = writeln!(out, "b = {b_name}");
    let _ = writeln!(out, "scale_factor = {:e}  (fit of a/b on the log scale)", r.scale_factor);
    let _ = writeln!(out, "omega = {:e}", r.omega);
    let _ = writeln!(out, "peaks = {}", r.peak_table.len());
    let _ = writeln!(out, "{:>14} {:>14} {:>13} {:>11}", "E_a (a.u.)", "E_b (a.u.)", "offset (a.u.)", "offset (w)");
    for p in &r.peak_table {
        let _ = writeln!(
            out,
            "{:>14.6} {:>14.6} {:>+13.6} {:>+11.4}",
            p.energy_a, p.energy_b, p.offset, p.offset_omega
        );
    }
    let _ = writeln!(out, "max_offset = {:e} a.u. ({:.4} w)", r.max_offset, r.max_offset_omega);
    out
}

/// `compare A B [--window lo:hi] [--out path]`.
pub fn cmd_compare(
    a: &Path,
    b: &Path,
    window: Option<&str>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let window = window.map(parse_window).transpose()?;
    let report = compare_files(a, b, window)?;
    let text = render_comparison(
        &report,
        &a.display().to_string(),
        &b.display().to_string(),
    );
    write_output(out, None, &text)
}

/// Saddle-point tables over the configured energy grid, as CSV.
pub fn saddles_csv(cfg: &RunConfig) -> Result<String, CliError> {
    saddles_csv_at(cfg, &iso_timestamp())
}

fn saddles_csv_at(cfg: &RunConfig, stamp: &str) -> Result<String, CliError> {
    let field = LaserField::Pulse(cfg.pulse()?);
    let state = cfg.bound_model()?;
    let mut out = csv_preamble(stamp, &cfg.metadata_lines());
    let _ = writeln!(
        out,
        "energy_au,momentum_au,theta_rad,saddle_index,t_s_re,t_s_im,velocity_z_re,velocity_z_im,action_re,action_im,residual"
    );
    for e in cfg.energies() {
        let p = Vec3::from_energy_angle(e, cfg.theta);
        let sols = solve_saddles(p, &state, &field)?;
        let momentum = (2.0 * e).sqrt();
        for (i, s) in sols.iter().enumerate() {
            let _ = writeln!(
                out,
                "{e:e},{momentum:e},{:e},{i},{:e},{:e},{:e},{:e},{:e},{:e},{:e}",
                cfg.theta,
                s.t_s.re,
                s.t_s.im,
                s.velocity.z.re,
                s.velocity.z.im,
                s.action_phase.re,
                s.action_phase.im,
                s.residual
            );
        }
    }
    Ok(out)
}

/// `saddles --config C [--out csv]`.
pub fn cmd_saddles(config: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let cfg = parse_config_file(config)?;
    let text = saddles_csv(&cfg)?;
    write_output(out, cfg.out_csv.as_deref(), &text)
}

/// Effective-charge tuning table for the configured TDSE grid: tuned z_eff,
/// achieved ground-level energy, and bound-state count for the 1s (ℓ=0) and
/// 2p (ℓ=1) wells, as CSV.
pub fn eigen_csv(cfg: &RunConfig) -> Result<String, CliError> {
    eigen_csv_at(cfg, &iso_timestamp())
}

fn eigen_csv_at(cfg: &RunConfig, stamp: &str) -> Result<String, CliError> {
    let grid = RadialGrid::new(cfg.dr, cfg.n_r(), cfg.mask_start)?;
    let mut out = csv_preamble(stamp, &cfg.metadata_lines());
    let _ = writeln!(out, "state,ell,r_c,dr,r_max,z_eff,energy_au,n_bound");
    for (label, ell) in [("s", 0usize), ("p", 1usize)] {
        let z = find_zeff(cfg.ip, ell, cfg.r_c, &grid, cfg.continuous)?;
        let mut pot = CutCoulomb::new(z, cfg.r_c)?;
        pot.continuous = cfg.continuous;
        let (energy, _) = radial_eigenstate(&pot, ell, 0, &grid)?;
        let n_bound = bound_states(&pot, ell, &grid).len();
        let _ = writeln!(
            out,
            "{label},{ell},{:e},{:e},{:e},{z:e},{energy:e},{n_bound}",
            cfg.r_c, cfg.dr, cfg.r_max
        );
    }
    Ok(out)
}

/// `eigen --config C [--out csv]`.
pub fn cmd_eigen(config: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let cfg = parse_config_file(config)?;
    let text = eigen_csv(&cfg)?;
    write_output(out, cfg.out_csv.as_deref(), &text)
}

// ---------------------------------------------------------------------------
// Plot script emission
// ---------------------------------------------------------------------------

struct Curve {
    title: String,
    gauge: Option<Gauge>,
    energies: Vec<f64>,
    values: Vec<f64>,
}

/// Build a self-contained gnuplot script for the given spectrum CSVs: data
/// inlined as heredocs, log-scale y, one curve per (method, gauge, state),
/// and a secondary axis with the energy in eV. When the inputs are exactly
/// the four-curve reference bundle {s, p} × {length, velocity}, the script
/// renders two stacked panels: length gauge on top, velocity gauge below.
pub fn emit_plot(csv_paths: &[PathBuf], png_name: &str) -> Result<String, CliError> {
    if csv_paths.is_empty() {
        return Err(CliError::Config("plot: no input CSVs given".to_string()));
    }
    let mut curves = Vec::new();
    for path in csv_paths {
        let (grid, _) = read_spectrum_csv(path)?;
        let title = format!(
            "{} {} {}",
            grid.method.label(),
            gauge_label(grid.gauge),
            grid.state_kind.label()
        );
        curves.push(Curve { title, gauge: grid.gauge, energies: grid.energies, values: grid.values });
    }
    // Disambiguate repeated (method, gauge, state) triples.
    for i in 0..curves.len() {
        let n = curves[..i].iter().filter(|c| c.title == curves[i].title).count();
        if n > 0 {
            let t = format!("{} ({})", curves[i].title, n + 1);
            curves[i].title = t;
        }
    }

    let e_lo = curves.iter().map(|c| c.energies[0]).fold(f64::INFINITY, f64::min);
    let e_hi = curves.iter().map(|c| *c.energies.last().unwrap()).fold(0.0f64, f64::max);

    let mut s = String::new();
    let _ = writeln!(s, "#!/usr/bin/env gnuplot");
    let _ = writeln!(s, "# spectrum plot — generated {}", iso_timestamp());
    let _ = writeln!(s, "set terminal pngcairo noenhanced size 900,700");
    let _ = writeln!(s, "set output '{png_name}'");
    for (i, c) in curves.iter().enumerate() {
        let _ = writeln!(s, "$curve{i} << EOD");
        for (&e, &v) in c.energies.iter().zip(&c.values) {
            let _ = writeln!(s, "{e:e} {v:e}");
        }
        let _ = writeln!(s, "EOD");
    }
    let _ = writeln!(s, "set logscale y");
    let _ = writeln!(s, "set xlabel 'photoelectron energy (a.u.)'");
    let _ = writeln!(s, "set ylabel 'spectral density (a.u.)'");
    let _ = writeln!(s, "set xrange [{e_lo:e}:{e_hi:e}]");
    // Same axis in eV (1 hartree = 27.2114 eV), labels only.
    let _ = writeln!(s, "set x2range [{:e}:{:e}]", e_lo * HARTREE_EV, e_hi * HARTREE_EV);
    let _ = writeln!(s, "set x2label 'photoelectron energy (eV)'");
    let _ = writeln!(s, "set x2tics nomirror");
    let _ = writeln!(s, "set xtics nomirror");
    let _ = writeln!(s, "set key top right");

    let plot_line = |indices: &[usize]| -> String {
        indices
            .iter()
            .map(|&i| format!("$curve{i} using 1:2 with lines title '{}'", curves[i].title))
            .collect::<Vec<_>>()
            .join(", ")
    };

    if let Some((length_idx, velocity_idx)) = reference_bundle(&curves) {
        let _ = writeln!(s, "set multiplot layout 2,1");
        let _ = writeln!(s, "# main panel: length gauge");
        let _ = writeln!(s, "plot {}", plot_line(&length_idx));
        let _ = writeln!(s, "unset x2label");
        let _ = writeln!(s, "unset x2tics");
        let _ = writeln!(s, "# second panel: velocity gauge");
        let _ = writeln!(s, "plot {}", plot_line(&velocity_idx));
        let _ = writeln!(s, "unset multiplot");
    } else {
        let all: Vec<usize> = (0..curves.len()).collect();
        let _ = writeln!(s, "plot {}", plot_line(&all));
    }
    Ok(s)
}

/// Detect the {s, p} × {length, velocity} four-CSV bundle. Returns the curve
/// indices of the (length, velocity) panels when it matches.
fn reference_bundle(curves: &[Curve]) -> Option<(Vec<usize>, Vec<usize>)> {
    if curves.len() != 4 {
        return None;
    }
    let mut length_idx = Vec::new();
    let mut velocity_idx = Vec::new();
    for (i, c) in curves.iter().enumerate() {
        match c.gauge {
            Some(Gauge::Length) => length_idx.push(i),
            Some(Gauge::Velocity) => velocity_idx.push(i),
            None => return None,
        }
    }
    if length_idx.len() == 2 && velocity_idx.len() == 2 {
        Some((length_idx, velocity_idx))
    } else {
        None
    }
}

/// `plot CSV... [--out script]`.
pub fn cmd_plot(csvs: &[PathBuf], out: Option<&Path>) -> Result<(), CliError> {
    let png_name = out
        .map(|p| p.with_extension("png"))
        .and_then(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()))
        .unwrap_or_else(|| "spectrum.png".to_string());
    let text = emit_plot(csvs, &png_name)?;
    write_output(out, None, &text)
}

/// Strip the volatile timestamp line, for byte-determinism checks.
#[must_use]
pub fn strip_timestamp(csv: &str) -> String {
    csv.lines()
        .filter(|l| !l.starts_with("# generated "))
        .collect::<Vec<_>>()
        .join("\n")
}

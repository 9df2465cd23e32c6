//! Plain-text wavefunction checkpoints.
//!
//! A checkpoint is a single header line followed by one `re im` pair per
//! grid point, ℓ-major. Floats are written with Rust's shortest-roundtrip
//! formatting, so save → load reproduces the wavefunction bit for bit.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use super::{PartialWaveFunction, TdseError};

const MAGIC: &str = "strongfield-wavefunction";
const VERSION: u32 = 1;

/// Write `psi` to `path`, replacing any existing file.
pub fn save_checkpoint(path: &Path, psi: &PartialWaveFunction) -> Result<(), TdseError> {
    let mut out = String::with_capacity(32 * (psi.l_max() + 1) * psi.n_r());
    let _ = writeln!(
        out,
        "{MAGIC} version={VERSION} l_max={} n_r={} dr={:e}",
        psi.l_max(),
        psi.n_r(),
        psi.dr
    );
    for channel in &psi.coefficients {
        for c in channel {
            let _ = writeln!(out, "{:e} {:e}", c.re, c.im);
        }
    }
    std::fs::write(path, out)
        .map_err(|e| TdseError::Checkpoint(format!("writing {}: {e}", path.display())))
}

fn header_field<'a>(tokens: &'a [&str], key: &str) -> Result<&'a str, TdseError> {
    tokens
        .iter()
        .find_map(|t| t.strip_prefix(key).and_then(|rest| rest.strip_prefix('=')))
        .ok_or_else(|| TdseError::Checkpoint(format!("header is missing `{key}=`")))
}

/// Read a wavefunction previously written by [`save_checkpoint`].
pub fn load_checkpoint(path: &Path) -> Result<PartialWaveFunction, TdseError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| TdseError::Checkpoint(format!("reading {}: {e}", path.display())))?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| TdseError::Checkpoint("empty file".into()))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.first() != Some(&MAGIC) {
        return Err(TdseError::Checkpoint(format!(
            "not a wavefunction checkpoint (header starts with {:?})",
            tokens.first().copied().unwrap_or("")
        )));
    }
    let version: u32 = header_field(&tokens, "version")?
        .parse()
        .map_err(|e| TdseError::Checkpoint(format!("bad version: {e}")))?;
    if version != VERSION {
        return Err(TdseError::Checkpoint(format!(
            "unsupported checkpoint version {version} (this build reads {VERSION})"
        )));
    }
    let l_max: usize = header_field(&tokens, "l_max")?
        .parse()
        .map_err(|e| TdseError::Checkpoint(format!("bad l_max: {e}")))?;
    let n_r: usize = header_field(&tokens, "n_r")?
        .parse()
        .map_err(|e| TdseError::Checkpoint(format!("bad n_r: {e}")))?;
    let dr: f64 = header_field(&tokens, "dr")?
        .parse()
        .map_err(|e| TdseError::Checkpoint(format!("bad dr: {e}")))?;
    if !(dr > 0.0) || n_r == 0 {
        return Err(TdseError::Checkpoint(format!("invalid grid: dr = {dr}, n_r = {n_r}")));
    }

    let mut psi = PartialWaveFunction::zero(l_max, n_r, dr);
    for ell in 0..=l_max {
        for j in 0..n_r {
            let line = lines.next().ok_or_else(|| {
                TdseError::Checkpoint(format!(
                    "truncated: expected {} data lines, file ends at ℓ = {ell}, point {j}",
                    (l_max + 1) * n_r
                ))
            })?;
            let mut parts = line.split_whitespace();
            let re: f64 = parts
                .next()
                .ok_or_else(|| TdseError::Checkpoint(format!("empty data line at ℓ = {ell}, point {j}")))?
                .parse()
                .map_err(|e| TdseError::Checkpoint(format!("bad value at ℓ = {ell}, point {j}: {e}")))?;
            let im: f64 = parts
                .next()
                .ok_or_else(|| TdseError::Checkpoint(format!("missing imaginary part at ℓ = {ell}, point {j}")))?
                .parse()
                .map_err(|e| TdseError::Checkpoint(format!("bad value at ℓ = {ell}, point {j}: {e}")))?;
            psi.coefficients[ell][j] = Complex64::new(re, im);
        }
    }
    if lines.any(|l| !l.trim().is_empty()) {
        return Err(TdseError::Checkpoint("trailing data after the expected block".into()));
    }
    Ok(psi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> PartialWaveFunction {
        let mut psi = PartialWaveFunction::zero(3, 40, 0.1);
        for (ell, channel) in psi.coefficients.iter_mut().enumerate() {
            for (j, c) in channel.iter_mut().enumerate() {
                let x = (j as f64 + 1.0) * 0.1;
                *c = Complex64::from_polar(
                    (-x).exp() * (1.0 + ell as f64),
                    3.0 * x + ell as f64,
                );
            }
        }
        // Exercise awkward values: zero, negative zero, subnormal, huge.
        psi.coefficients[0][0] = Complex64::new(0.0, -0.0);
        psi.coefficients[1][1] = Complex64::new(1.5e-310, -2.3e300);
        psi
    }

    #[test]
    fn roundtrip_is_bit_exact() {
        let dir = std::env::temp_dir();
        let path = dir.join("strongfield_ckpt_roundtrip.txt");
        let psi = sample();
        save_checkpoint(&path, &psi).unwrap();
        let back = load_checkpoint(&path).unwrap();
        assert_eq!(back.dr, psi.dr);
        assert_eq!(back.l_max(), psi.l_max());
        assert_eq!(back.n_r(), psi.n_r());
        for (a, b) in psi.coefficients.iter().flatten().zip(back.coefficients.iter().flatten()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn foreign_and_damaged_files_are_rejected() {
        let dir = std::env::temp_dir();

        let path = dir.join("strongfield_ckpt_foreign.txt");
        std::fs::write(&path, "energy_au,value\n0.1,2.0\n").unwrap();
        assert!(matches!(load_checkpoint(&path), Err(TdseError::Checkpoint(_))));

        let psi = sample();
        let good = dir.join("strongfield_ckpt_good.txt");
        save_checkpoint(&good, &psi).unwrap();
        let text = std::fs::read_to_string(&good).unwrap();

        // Truncation.
        let cut: String = text.lines().take(20).collect::<Vec<_>>().join("\n");
        let path = dir.join("strongfield_ckpt_truncated.txt");
        std::fs::write(&path, cut).unwrap();
        match load_checkpoint(&path) {
            Err(TdseError::Checkpoint(msg)) => assert!(msg.contains("truncated"), "{msg}"),
            other => panic!("expected Checkpoint error, got {other:?}"),
        }

        // Future version.
        let bumped = text.replacen("version=1", "version=99", 1);
        let path = dir.join("strongfield_ckpt_version.txt");
        std::fs::write(&path, bumped).unwrap();
        match load_checkpoint(&path) {
            Err(TdseError::Checkpoint(msg)) => assert!(msg.contains("version"), "{msg}"),
            other => panic!("expected Checkpoint error, got {other:?}"),
        }

        for name in [
            "strongfield_ckpt_foreign.txt",
            "strongfield_ckpt_good.txt",
            "strongfield_ckpt_truncated.txt",
            "strongfield_ckpt_version.txt",
        ] {
            std::fs::remove_file(dir.join(name)).ok();
        }
    }
}

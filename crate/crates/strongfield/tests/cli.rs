//! End-to-end tests of the `strongfield` binary: exit codes, artifact
//! formats, determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_strongfield"))
}

fn run_ok(args: &[&str]) -> Output {
    let out = bin().args(args).output().expect("spawn strongfield");
    assert!(
        out.status.success(),
        "expected success for {args:?}\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn run_err(args: &[&str], code: i32) -> String {
    let out = bin().args(args).output().expect("spawn strongfield");
    assert_eq!(
        out.status.code(),
        Some(code),
        "expected exit {code} for {args:?}\nstderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

/// Small, fast SPA setup producing a spectrum with at least 3 ATI peaks.
const SPA_CONFIG: &str = "method.name = sfa_spa\n\
                          grid.e_min = 0.1\n\
                          grid.e_max = 0.9\n\
                          grid.n_points = 200\n";

fn strip_timestamp(text: &str) -> String {
    text.lines().filter(|l| !l.starts_with("# generated ")).collect::<Vec<_>>().join("\n")
}

#[test]
fn spectrum_csv_is_deterministic_and_well_formed() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "run.conf", SPA_CONFIG);
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));

    run_ok(&["spectrum", "--config", config.to_str().unwrap(), "--out", a.to_str().unwrap()]);
    run_ok(&["spectrum", "--config", config.to_str().unwrap(), "--out", b.to_str().unwrap()]);

    let text_a = std::fs::read_to_string(&a).unwrap();
    let text_b = std::fs::read_to_string(&b).unwrap();
    assert_eq!(strip_timestamp(&text_a), strip_timestamp(&text_b), "byte determinism");

    // One header line with the exact column set, after the metadata block.
    let header: Vec<&str> =
        text_a.lines().filter(|l| l.starts_with("energy_au")).collect();
    assert_eq!(header, ["energy_au,momentum_au,theta_rad,value,method,gauge,state"]);
    let rows = text_a.lines().filter(|l| !l.starts_with('#') && !l.is_empty()).count();
    assert_eq!(rows, 201, "header + one row per grid point");
    assert!(text_a.contains("# field.omega = 5.6e-2"));
    assert!(text_a.contains(",sfa_spa,length,s"));
}

#[test]
fn spectrum_without_out_prints_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "run.conf", "grid.n_points = 2\ngrid.e_min = 0.3\ngrid.e_max = 0.31\nmethod.name = sfa_spa\n");
    let out = run_ok(&["spectrum", "--config", config.to_str().unwrap()]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("energy_au,momentum_au"), "{stdout}");
}

#[test]
fn invalid_gauge_exits_2_naming_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "bad.conf", "method.gauge = sideways\n");
    let stderr = run_err(&["spectrum", "--config", config.to_str().unwrap()], 2);
    assert!(stderr.contains("method.gauge"), "{stderr}");
}

#[test]
fn unknown_config_key_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "bad.conf", "fields.e0 = 0.1\n");
    let stderr = run_err(&["spectrum", "--config", config.to_str().unwrap()], 2);
    assert!(stderr.contains("unknown config key: fields.e0"), "{stderr}");
}

#[test]
fn missing_config_file_exits_2() {
    let stderr = run_err(&["spectrum", "--config", "/nonexistent/run.conf"], 2);
    assert!(stderr.contains("/nonexistent/run.conf"), "{stderr}");
}

#[test]
fn unbindable_tdse_target_exits_3() {
    // An ℓ=1 state bound at 0.5 hartree inside a potential cut off at
    // r_c = 0.1 would need an effective charge far beyond the tuning
    // bracket: the charge search fails, which is a solver error.
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "run.conf",
        "method.name = tdse\nstate.kind = p\ntdse.r_c = 0.1\ntdse.r_max = 40\n",
    );
    let stderr = run_err(&["spectrum", "--config", config.to_str().unwrap()], 3);
    assert!(stderr.contains("error"), "{stderr}");
}

#[test]
fn tiny_tdse_run_records_zeff_and_warns_about_gauge() {
    // Weak two-cycle high-frequency pulse on a small box: a complete TDSE
    // run in a few seconds.
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "run.conf",
        "method.name = tdse\n\
         method.gauge = velocity\n\
         field.e0 = 0.02\n\
         field.omega = 0.5\n\
         field.n_cycles = 2\n\
         tdse.r_max = 40\n\
         tdse.l_max = 20\n\
         tdse.dt = 0.05\n\
         grid.e_min = 0.05\n\
         grid.e_max = 0.3\n\
         grid.n_points = 5\n",
    );
    let csv = dir.path().join("tdse.csv");
    let out = run_ok(&["spectrum", "--config", config.to_str().unwrap(), "--out", csv.to_str().unwrap()]);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("method.gauge is ignored"), "{stderr}");

    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.contains("# tdse.z_eff.resolved = "), "{text}");
    assert!(text.contains(",tdse,na,s"), "gauge column is na for tdse:\n{text}");
}

#[test]
fn compare_self_reports_unit_scale_and_zero_offsets() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "run.conf", SPA_CONFIG);
    let csv = dir.path().join("a.csv");
    run_ok(&["spectrum", "--config", config.to_str().unwrap(), "--out", csv.to_str().unwrap()]);

    let out = run_ok(&["compare", csv.to_str().unwrap(), csv.to_str().unwrap()]);
    let report = String::from_utf8_lossy(&out.stdout);
    assert!(report.contains("scale_factor = 1e0"), "{report}");
    assert!(report.contains("max_offset = 0e0"), "{report}");
}

#[test]
fn compare_with_too_few_peaks_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "run.conf", SPA_CONFIG);
    let csv = dir.path().join("a.csv");
    run_ok(&["spectrum", "--config", config.to_str().unwrap(), "--out", csv.to_str().unwrap()]);

    let stderr = run_err(
        &["compare", csv.to_str().unwrap(), csv.to_str().unwrap(), "--window", "0.4:0.6"],
        3,
    );
    assert!(stderr.contains("NO_PEAKS"), "{stderr}");
}

#[test]
fn compare_rejects_malformed_window() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "run.conf", SPA_CONFIG);
    let csv = dir.path().join("a.csv");
    run_ok(&["spectrum", "--config", config.to_str().unwrap(), "--out", csv.to_str().unwrap()]);
    let stderr = run_err(
        &["compare", csv.to_str().unwrap(), csv.to_str().unwrap(), "--window", "0.6:0.4"],
        2,
    );
    assert!(stderr.contains("--window"), "{stderr}");
}

#[test]
fn plot_emits_a_self_contained_script() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "run.conf", SPA_CONFIG);
    let csv = dir.path().join("a.csv");
    run_ok(&["spectrum", "--config", config.to_str().unwrap(), "--out", csv.to_str().unwrap()]);

    let script_path = dir.path().join("fig.gp");
    run_ok(&["plot", csv.to_str().unwrap(), "--out", script_path.to_str().unwrap()]);
    let script = std::fs::read_to_string(&script_path).unwrap();
    assert!(script.contains("set logscale y"), "{script}");
    assert!(script.contains("<< EOD"), "data must be inlined:\n{script}");
    assert!(script.contains("title 'sfa_spa length s'"), "{script}");
}

#[test]
fn plot_with_missing_file_or_no_files_exits_2() {
    run_err(&["plot", "/nonexistent/a.csv"], 2);
    let stderr = run_err(&["plot"], 2);
    assert!(stderr.contains("no input CSVs"), "{stderr}");
}

#[test]
fn saddles_subcommand_writes_the_table() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "run.conf",
        "grid.e_min = 0.2\ngrid.e_max = 0.3\ngrid.n_points = 2\n",
    );
    let out = run_ok(&["saddles", "--config", config.to_str().unwrap()]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    let header = "energy_au,momentum_au,theta_rad,saddle_index,t_s_re,t_s_im,velocity_z_re,velocity_z_im,action_re,action_im,residual";
    assert!(stdout.contains(header), "{stdout}");
    let rows = stdout.lines().filter(|l| !l.starts_with('#') && !l.is_empty()).count();
    assert!(rows > 2, "expected saddle rows:\n{stdout}");
}

#[test]
fn eigen_subcommand_reports_both_states() {
    let dir = tempfile::tempdir().unwrap();
    let config =
        write_config(dir.path(), "run.conf", "tdse.r_max = 40\ntdse.dr = 0.05\n");
    let out = run_ok(&["eigen", "--config", config.to_str().unwrap()]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("state,ell,r_c,dr,r_max,z_eff,energy_au,n_bound"), "{stdout}");
    assert!(stdout.lines().any(|l| l.starts_with("s,0,")), "{stdout}");
    assert!(stdout.lines().any(|l| l.starts_with("p,1,")), "{stdout}");
}

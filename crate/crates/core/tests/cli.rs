//! End-to-end tests of the `stefan` binary: config validation with key-path
//! errors, normative CSV/JSON shapes, exit codes and determinism.

use std::path::Path;
use std::process::{Command, Output};

fn stefan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stefan"))
        .args(args)
        .output()
        .unwrap()
}

fn base_config(command: &str) -> String {
    format!(
        r#"
[problem]
d = 1.0
mu = 1.0
h0 = 2.0
T = 1.0
[problem.bc]
alpha = 0.0
beta = 1.0

[coefficients.a]
kind = "constant"
[coefficients.a.params]
value = 1.0

[coefficients.b]
kind = "constant"
[coefficients.b.params]
value = 1.0

{command}
"#
    )
}

fn write_cfg(dir: &Path, text: &str) -> String {
    let p = dir.join("run.toml");
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn summary(dir: &Path) -> serde_json::Value {
    let text = std::fs::read_to_string(dir.join("out").join("summary.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

#[test]
fn eigen_minimal_config_matches_the_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        dir.path(),
        &base_config("[numerics]\nnx = 256\n\n[command]\nname = \"eigen\"\nell = 1.0").replace(
            "alpha = 0.0\nbeta = 1.0",
            "alpha = 1.0\nbeta = 0.0",
        ),
    );
    let out_dir = dir.path().join("out");
    let o = stefan(&["eigen", "--config", &cfg, "--out", out_dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let s = summary(dir.path());
    let exact = std::f64::consts::PI.powi(2) - 1.0; // d pi^2 / ell^2 - a
    let lam = s["lambda1"].as_f64().unwrap();
    assert!((lam - exact).abs() / exact < 1e-4, "lambda1 = {lam}");
    // provenance: the resolved config is embedded
    assert_eq!(s["config"]["problem"]["d"].as_f64(), Some(1.0));
    assert_eq!(s["config"]["command"]["name"].as_str(), Some("eigen"));
}

#[test]
fn classify_spreads_above_hstar_with_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    // h0 = 2 > h* = pi/2 for a = b = d = 1, Neumann
    let cfg = write_cfg(dir.path(), &base_config("[command]\nname = \"classify\""));
    let out_dir = dir.path().join("out");
    let o = stefan(&["classify", "--config", &cfg, "--out", out_dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let s = summary(dir.path());
    assert_eq!(s["verdict"].as_str(), Some("Spreading"));
    assert_eq!(
        s["evidence"].as_str(),
        Some("eigen-negative-at-current-front")
    );
    assert!(s["lambda1_at_h0"].as_f64().unwrap() < 0.0);
    // the monitor CSV uses the normative header
    let csv = std::fs::read_to_string(out_dir.join("monitors.csv")).unwrap();
    assert!(csv.starts_with("t,h,hprime,umax,mass,residual\n"));
}

#[test]
fn malformed_bc_exits_one_and_names_the_key_path() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        dir.path(),
        &base_config("[command]\nname = \"classify\"").replace("beta = 1.0", "beta = 0.9"),
    );
    let o = stefan(&["classify", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("problem.bc"), "stderr: {err}");
}

#[test]
fn command_name_mismatch_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(dir.path(), &base_config("[command]\nname = \"classify\""));
    let o = stefan(&["simulate", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("command.name"), "stderr: {err}");
}

#[test]
fn simulate_writes_monitors_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        dir.path(),
        &base_config(
            "[numerics]\nny = 64\nt_end = 2.0\n\n[command]\nname = \"simulate\"",
        ),
    );
    let out_dir = dir.path().join("out");
    let o = stefan(&["simulate", "--config", &cfg, "--out", out_dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let s = summary(dir.path());
    assert!((s["t_final"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert!(s["h_final"].as_f64().unwrap() > 2.0);
    assert!(s["umax_final"].as_f64().unwrap() > 0.0);
    assert!(s["classification"].is_null());
    let csv = std::fs::read_to_string(out_dir.join("monitors.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,h,hprime,umax,mass,residual"));
    assert!(lines.count() > 10);
}

#[test]
fn sweep_d_reports_eigen_signs_with_empty_mu_samples() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        dir.path(),
        &base_config(
            "[command]\nname = \"sweep-d\"\nd_grid = [0.5, 1.0, 100.0]\nmu_samples = []",
        ),
    );
    let out_dir = dir.path().join("out");
    let o = stefan(&[
        "sweep-d",
        "--config",
        &cfg,
        "--out",
        out_dir.to_str().unwrap(),
        "--workers",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let s = summary(dir.path());
    let rows = s["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    // lambda1(2; d, 1) = d pi^2 / 16 - 1: negative for d <= 1, positive at 100
    assert_eq!(rows[0]["predicted"].as_str(), Some("sigma-minus"));
    assert_eq!(rows[1]["predicted"].as_str(), Some("sigma-minus"));
    assert_eq!(rows[2]["predicted"].as_str(), Some("sigma-plus"));
    assert!(rows[0]["observed"].as_array().unwrap().is_empty());
}

#[test]
fn speed_emits_k0_csv_and_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(dir.path(), &base_config("[command]\nname = \"speed\""));
    let out_dir = dir.path().join("out");
    let o = stefan(&["speed", "--config", &cfg, "--out", out_dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let s = summary(dir.path());
    let kbar = s["kbar_lower"].as_f64().unwrap();
    assert_eq!(s["kbar_upper"].as_f64(), Some(kbar));
    assert!(kbar > 0.0 && kbar < 2.0);
    assert!(s["empirical_slope"].is_null());
    let csv = std::fs::read_to_string(out_dir.join("k0.csv")).unwrap();
    assert!(csv.starts_with("t,k0\n"));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        dir.path(),
        &base_config("[numerics]\nny = 64\nt_end = 2.0\n\n[command]\nname = \"simulate\""),
    );
    let run = |name: &str| -> (Vec<u8>, Vec<u8>) {
        let out = dir.path().join(name);
        let o = stefan(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap()]);
        assert!(o.status.success());
        (
            std::fs::read(out.join("summary.json")).unwrap(),
            std::fs::read(out.join("monitors.csv")).unwrap(),
        )
    };
    let (j1, c1) = run("out1");
    let (j2, c2) = run("out2");
    assert_eq!(j1, j2, "JSON summaries differ");
    assert_eq!(c1, c2, "monitor CSVs differ");
}

#[test]
fn undecided_classify_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    // a < 0 everywhere: no probed length has lambda1 < 0 -> Undecided
    let cfg = write_cfg(
        dir.path(),
        &base_config("[command]\nname = \"classify\"").replace(
            "[coefficients.a.params]\nvalue = 1.0",
            "[coefficients.a.params]\nvalue = -1.0",
        ),
    );
    let out_dir = dir.path().join("out");
    let o = stefan(&["classify", "--config", &cfg, "--out", out_dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
    let s = summary(dir.path());
    assert_eq!(s["verdict"].as_str(), Some("Undecided"));
}

#[test]
fn hstar_subcommand_finds_the_neumann_root() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        dir.path(),
        &base_config("[command]\nname = \"hstar\"\nbracket = [0.5, 4.0]"),
    );
    let out_dir = dir.path().join("out");
    let o = stefan(&["hstar", "--config", &cfg, "--out", out_dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let s = summary(dir.path());
    let hstar = s["hstar"].as_f64().unwrap();
    assert!((hstar - std::f64::consts::FRAC_PI_2).abs() < 1e-3, "hstar = {hstar}");
}

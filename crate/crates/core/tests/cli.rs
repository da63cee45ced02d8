use std::path::{Path, PathBuf};
use std::process::Command;

use weyl_dyn::cli::{
    cmd_control, cmd_figures, cmd_simulate, cmd_verify, load_scenario, parse_scenario, Preset, CSV_HEADER,
};
use weyl_dyn::exprkit::AngleLaw;
use weyl_dyn::{Error, Vec3};

fn preset(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn shipped_scenarios_load() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios");
    let mut count = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        load_scenario(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        count += 1;
    }
    assert!(count >= 6);
    let fig3 = load_scenario(preset("fig3_k.scn")).unwrap();
    assert_eq!(fig3.preset, Preset::Fig3K);
    assert_eq!(
        fig3.law,
        AngleLaw::linear(std::f64::consts::FRAC_PI_2, 3f64.sqrt(), 0.0, 5f64.sqrt())
    );
}

#[test]
fn missing_file_is_an_io_error() {
    assert!(matches!(load_scenario("no/such/file.scn"), Err(Error::Io { .. })));
}

#[test]
fn verify_reports_are_seeded() {
    let s = load_scenario(preset("fig3_k.scn")).unwrap();
    let a = cmd_verify(&s, false).unwrap();
    let b = cmd_verify(&s, false).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.seed, 7);
    assert!(a.passed(), "{a}");
    assert!(a.find("mass shell E0^2 - |p|^2 + k^2").unwrap().measured < 1e-12);
}

#[test]
fn free_particle_verifies_tightly() {
    let r = cmd_verify(&load_scenario(preset("free_particle.scn")).unwrap(), true).unwrap();
    assert!(r.passed(), "{r}");
    assert!(r.find("weyl residual").unwrap().measured < 1e-8);
    assert!(r.notes.iter().any(|n| n.starts_with("si:")));
}

#[test]
fn corrupted_potential_fails_with_the_offset() {
    let r = cmd_verify(&load_scenario(preset("corrupted_potential.scn")).unwrap(), false).unwrap();
    assert!(!r.passed());
    assert_eq!(r.exit_code(), 1);
    let c = r.find("weyl residual").unwrap();
    assert!(!c.pass && (c.measured - 0.1).abs() < 1e-6, "{}", c.measured);
}

#[test]
fn simulate_fig45_follows_the_reconciled_profile() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig45.csv");
    let s = load_scenario(preset("fig45_control.scn")).unwrap();
    let o = cmd_simulate(&s, Some(&out), false).unwrap();
    assert!(o.report.passed());
    let (header, rows) = read_csv(&out);
    assert_eq!(header, CSV_HEADER);
    assert_eq!(rows.len(), 20001);
    for r in &rows {
        assert!((r[9] - (5.0 - r[0] / 2.0).abs()).abs() < 1e-6);
        assert!(((r[4] * r[4] + r[5] * r[5] + r[6] * r[6]).sqrt() - 1.0).abs() < 1e-12);
    }
    assert_eq!(o.summary.k_zero_time, Some(10.0));
    assert_eq!(o.summary.recovery_time, Some(20.0));
}

#[test]
fn straight_line_along_z() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("line.csv");
    let s = parse_scenario("helicity = positive\nq = 1\ntheta0 = 0\nfield = zero\nt_end = 3\ndt = 0.01\n", "line").unwrap();
    cmd_simulate(&s, Some(&out), false).unwrap();
    let (_, rows) = read_csv(&out);
    for r in rows {
        assert!((r[3] - r[0]).abs() < 1e-12 && r[1] == 0.0 && r[2] == 0.0);
    }
}

#[test]
fn csv_numbers_keep_full_precision() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.csv");
    let s = load_scenario(preset("fig3_k.scn")).unwrap();
    cmd_simulate(&s, Some(&out), false).unwrap();
    let text = std::fs::read_to_string(&out).unwrap();
    let second = text.lines().nth(2).unwrap();
    let theta: &str = second.split(',').nth(7).unwrap();
    assert_eq!(theta, format!("{:.16e}", std::f64::consts::FRAC_PI_2 + 3f64.sqrt() * 1e-3));
}

#[test]
fn constraint_violation_flushes_partial_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bad.csv");
    let s = parse_scenario(
        "helicity = positive\nq = 1\ntheta0 = pi/2\nomega2 = 1\nfield = components\nfield_x = 0.1*t\n",
        "bad",
    )
    .unwrap();
    let err = cmd_simulate(&s, Some(&out), false).err().unwrap();
    let Error::ConstraintViolation { t, partial, .. } = err else {
        panic!("unexpected error {err}");
    };
    let (_, rows) = read_csv(&out);
    assert_eq!(rows.len(), partial.len());
    assert!(t > 0.0 && (rows.last().unwrap()[0] - t).abs() < 1e-12);
}

#[test]
fn control_examples() {
    let dir = tempfile::tempdir().unwrap();
    let s = load_scenario(preset("fig45_control.scn")).unwrap();
    let o = cmd_control(&s, Some(&dir.path().join("k.csv"))).unwrap();
    assert!(o.report.passed(), "{}", o.report);
    assert_eq!(o.profile[0].1, Vec3::new(0.0, 0.0, 0.5));

    let s = load_scenario(preset("energy_control.scn")).unwrap();
    let o = cmd_control(&s, Some(&dir.path().join("e.csv"))).unwrap();
    assert!(o.report.passed(), "{}", o.report);
    assert_eq!(o.profile[0].1, Vec3::new(1.0, 0.0, 6.123233995736766e-17));
    assert!(o.profile[0].1.max_abs_diff(Vec3::new(1.0, 0.0, 0.0)) < 1e-15);

    let s = parse_scenario("helicity = negative\nq = 2\ntheta0 = 1\nomega2 = 3\ncontrol_rate = 0\n", "z").unwrap();
    let o = cmd_control(&s, Some(&dir.path().join("z.csv"))).unwrap();
    assert!(o.profile.iter().all(|(_, e)| e.norm() == 0.0));
    assert!(o.report.passed());

    let s = parse_scenario("helicity = positive\nq = 1\ntheta0 = 0\ncontrol_rate = -1\n", "axis").unwrap();
    assert!(matches!(cmd_control(&s, None), Err(Error::PolarAxis(_))));
}

#[test]
fn polar_control_validates() {
    let dir = tempfile::tempdir().unwrap();
    let s = parse_scenario(
        "helicity = negative\nq = -1.5\ntheta0 = 0.4\nomega1 = 2\nphi0 = 0.8\ncontrol_mode = polar\ncontrol_rate = 0.3\nt_end = 4\n",
        "polar",
    )
    .unwrap();
    let o = cmd_control(&s, Some(&dir.path().join("p.csv"))).unwrap();
    assert!(o.rate_error < 1e-6, "{}", o.report);
}

#[test]
fn figures_write_preset_datasets() {
    let dir = tempfile::tempdir().unwrap();
    let s = load_scenario(preset("fig3_k.scn")).unwrap();
    let o = cmd_figures(&s, Some(dir.path())).unwrap();
    assert!(o.report.passed(), "{}", o.report);
    assert_eq!(o.files.len(), 2);
    let (header, rows) = read_csv(&dir.path().join("fig3_k_k.csv"));
    assert_eq!(header, ["t", "k"]);
    assert_eq!(rows.len(), 10001);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_weyl-dyn");
    let dir = tempfile::tempdir().unwrap();
    let run = |args: &[&str]| {
        Command::new(bin)
            .args(args)
            .current_dir(dir.path())
            .output()
            .unwrap()
    };
    let fig45 = preset("fig45_control.scn");
    let fig45 = fig45.to_str().unwrap();
    let o = run(&["figures", fig45, "--paper-literal-field", "--t-end", "10", "--out", "lit"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    assert!(String::from_utf8_lossy(&o.stdout).contains("k reaches zero at t = 5.000000"));
    assert!(dir.path().join("lit/fig45_control_k.csv").exists());

    assert_eq!(run(&["simulate", fig45, "--dt", "0"]).status.code(), Some(2));
    assert_eq!(run(&["explode", fig45]).status.code(), Some(2));
    assert_eq!(run(&["verify"]).status.code(), Some(2));

    let o = run(&["simulate", fig45, "--si", "--out", "f.csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("eV/s"));
}

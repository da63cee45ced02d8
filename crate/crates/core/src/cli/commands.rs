use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ControlTarget, FieldSpec, Preset, RunReport, Scenario};
use crate::dynamics::{
    integrate_with, run_scenario, IntegrationOptions, ParticleState, ScenarioSummary, Trajectory,
};
use crate::error::{Error, Result};
use crate::exprkit::{AngleLaw, ScalarField, TimeLaw};
use crate::observables::{kinetic_momentum_of, localization_of, si_rates, velocity_of};
use crate::potentials::{
    degenerate_potential, drive_field_closed_form, energy_control_field, field_from_potential_numeric,
    gauge_family_field, k_control_field, kappa_vector, ControlMode, FourPotentialField, GaugeScalar,
};
use crate::spinor::weyl_residual;
use crate::vector::{Event, Vec3};

pub const CSV_HEADER: [&str; 18] = [
    "t", "x", "y", "z", "vx", "vy", "vz", "theta", "phi", "k", "E0", "px", "py", "pz", "Ex", "Ey", "Ez",
    "constraint_residual",
];

const IDENTITY_TOL: f64 = 1e-12;
const KAPPA_TOL: f64 = 1e-14;
const GAUGE_DRAWS: usize = 5;

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|source| Error::Io {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    File::create(path).map(BufWriter::new).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_rows<W: Write>(out: W, header: &[&str], rows: impl Iterator<Item = Vec<f64>>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.into_iter().map(num))?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Writes every sample with the fixed [`CSV_HEADER`] columns. Numbers use
/// 17 significant digits in exponent form.
pub fn write_trajectory_csv<W: Write>(out: W, traj: &Trajectory) -> Result<()> {
    write_rows(
        out,
        &CSV_HEADER,
        traj.samples.iter().map(|s| {
            vec![
                s.t,
                s.position.x,
                s.position.y,
                s.position.z,
                s.velocity.x,
                s.velocity.y,
                s.velocity.z,
                s.theta,
                s.phi,
                s.k,
                s.energy,
                s.momentum.x,
                s.momentum.y,
                s.momentum.z,
                s.field.x,
                s.field.y,
                s.field.z,
                s.constraint_residual,
            ]
        }),
    )
}

fn write_trajectory_file(path: &Path, traj: &Trajectory) -> Result<()> {
    write_trajectory_csv(create(path)?, traj)
}

fn gauge_draw(rng: &mut ChaCha8Rng) -> GaugeScalar {
    let a = rng.random_range(-3.0..3.0);
    let b = rng.random_range(-1.0..1.0);
    let c = rng.random_range(-1.0..1.0);
    let w = rng.random_range(0.5..2.0);
    let d = rng.random_range(-0.5..0.5);
    ScalarField::parse(&format!("{a} + {b}*t + {c}*sin({w}*t) + {d}*(x - y*z)"))
        .expect("generated gauge expression parses")
}

fn satisfies_free_condition(law: &AngleLaw) -> bool {
    matches!(
        (&law.theta, &law.phi),
        (TimeLaw::Linear { rate: w1, .. }, TimeLaw::Linear { rate: w2, .. }) if w1 * w2 == 0.0
    )
}

/// Runs the invariant suite at `sample_count` events drawn from a ChaCha8
/// generator seeded with the scenario seed.
///
/// Events have `t ∈ [0, t_end]` and `x, y, z ∈ [−1, 1]`.
pub fn cmd_verify(scenario: &Scenario, si: bool) -> Result<RunReport> {
    let v = scenario.verification;
    let mut report = RunReport::new(&scenario.name, v.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(v.seed);
    let (law, hel, q) = (&scenario.law, scenario.helicity, scenario.charge);
    let phase = scenario.phase_field();
    let base = FourPotentialField::base(law.clone(), phase.clone(), hel);
    let offset = [scenario.potential_offset, 0.0, 0.0, 0.0];
    let with_offset = |p: FourPotentialField| {
        if scenario.potential_offset == 0.0 {
            p
        } else {
            p.shifted(offset)
        }
    };
    let pot = with_offset(degenerate_potential(base.clone(), law.clone(), scenario.gauge.clone()));
    let draws: Vec<GaugeScalar> = (0..GAUGE_DRAWS).map(|_| gauge_draw(&mut rng)).collect();
    let gauge_pots: Vec<_> = draws
        .iter()
        .map(|s| with_offset(degenerate_potential(base.clone(), law.clone(), s.clone())))
        .collect();
    let plain = with_offset(base.clone());

    let mut residual: f64 = 0.0;
    let mut degeneracy: f64 = 0.0;
    let mut speed: f64 = 0.0;
    let mut shell: f64 = 0.0;
    let mut cross: f64 = 0.0;
    let mut along: f64 = 0.0;
    let mut kappa: f64 = 0.0;
    let mut drive: f64 = 0.0;
    let mut drive_b: f64 = 0.0;
    let mut gauge_field: f64 = 0.0;
    let mut free_drive: f64 = 0.0;
    let mut max_e: f64 = 0.0;

    for _ in 0..v.sample_count {
        let ev = Event::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(0.0..=scenario.t_end),
        );
        let r0 = weyl_residual(law, &phase, &plain, hel, &ev, v.fd_step)?;
        residual = residual.max(weyl_residual(law, &phase, &pot, hel, &ev, v.fd_step)?);
        for p in &gauge_pots {
            let r = weyl_residual(law, &phase, p, hel, &ev, v.fd_step)?;
            degeneracy = degeneracy.max((r - r0).abs());
        }

        let angles = law.state_at(ev.t)?;
        let vel = velocity_of(&angles);
        speed = speed.max((vel.norm() - 1.0).abs());
        let k = localization_of(&angles);
        for s in std::iter::once(&scenario.gauge).chain(&draws) {
            let pi = kinetic_momentum_of(&angles, s.value(&ev, &angles)?, hel);
            let (e0, p) = (pi.energy(), pi.momentum());
            let scale = p.norm_sqr().max(1.0);
            shell = shell.max((e0 * e0 - p.norm_sqr() + k * k).abs() / scale);
            cross = cross.max((p.cross(vel).norm() - k).abs() / p.norm().max(1.0));
            along = along.max((p.dot(vel) - e0).abs() / p.norm().max(1.0));
        }
        kappa = kappa.max((kappa_vector(law, ev.t)?.spatial() + vel).norm());

        let closed = drive_field_closed_form(law, hel, q, ev.t)?;
        let numeric = field_from_potential_numeric(&base, q, &ev, v.fd_step)?;
        drive = drive.max(closed.e.max_abs_diff(numeric.e));
        drive_b = drive_b.max(numeric.b.norm());
        max_e = max_e.max(closed.e.norm());
        if satisfies_free_condition(law) {
            free_drive = free_drive.max(closed.e.norm());
        }
        for s in std::iter::once(&scenario.gauge).chain(&draws) {
            let closed = gauge_family_field(law, s, q, &ev)?;
            let numeric = field_from_potential_numeric(
                &FourPotentialField::gauge_only(law.clone(), s.clone()),
                q,
                &ev,
                v.fd_step,
            )?;
            gauge_field = gauge_field.max(closed.max_abs_diff(&numeric));
        }
    }

    report.check("weyl residual", residual, v.tolerance);
    report.check("gauge degeneracy (random s)", degeneracy, v.tolerance);
    report.check("unit speed", speed, IDENTITY_TOL);
    report.check("mass shell E0^2 - |p|^2 + k^2", shell, IDENTITY_TOL);
    report.check("|p x v| - k", cross, IDENTITY_TOL);
    report.check("p.v - E0", along, IDENTITY_TOL);
    report.check("kappa spatial + v", kappa, KAPPA_TOL);
    report.check("drive field closed vs numeric", drive, v.tolerance);
    report.check("drive field B", drive_b, v.tolerance);
    report.check("gauge-family field closed vs numeric", gauge_field, v.tolerance);
    if satisfies_free_condition(law) {
        report.check("zero drive for free law", free_drive, IDENTITY_TOL);
    }
    report.note(format!("events: {}, gauge draws: {GAUGE_DRAWS}", v.sample_count));
    if si {
        si_note(&mut report, max_e, q.q);
    }
    Ok(report)
}

fn si_note(report: &mut RunReport, field: f64, q: f64) {
    let r = si_rates(field, q);
    report.note(format!(
        "si: |E| = {field:.6e} V/m with q = {q} e -> {:.6e} eV/m, {:.6e} eV/s",
        r.eV_per_meter, r.eV_per_second
    ));
}

pub struct SimulateOutput {
    pub report: RunReport,
    pub summary: ScenarioSummary,
    pub csv: PathBuf,
}

fn default_path(scenario: &Scenario, out: Option<&Path>, suffix: &str) -> PathBuf {
    out.map(Path::to_path_buf)
        .or_else(|| scenario.csv.clone())
        .unwrap_or_else(|| PathBuf::from(format!("{}{suffix}.csv", scenario.name)))
}

fn summary_notes(report: &mut RunReport, s: &ScenarioSummary) {
    report.note(format!("k min {:.12}  k max {:.12}", s.k_min, s.k_max));
    report.note(format!(
        "endpoint ({:.9}, {:.9}, {:.9})  max distance from start {:.9}",
        s.endpoint.x, s.endpoint.y, s.endpoint.z, s.max_distance_from_start
    ));
    if let Some(t) = s.k_zero_time {
        report.note(format!("k reaches zero at t = {t:.6}"));
    }
    if let Some(t) = s.recovery_time {
        report.note(format!("k recovers its initial value at t = {t:.6}"));
    }
}

/// Integrates the scenario and writes the trajectory CSV. When the field
/// leaves the solution family the samples so far are written before the
/// error is returned.
pub fn cmd_simulate(scenario: &Scenario, out: Option<&Path>, si: bool) -> Result<SimulateOutput> {
    let path = default_path(scenario, out, "");
    let run = match run_scenario(scenario) {
        Ok(run) => run,
        Err(Error::ConstraintViolation {
            t,
            residual,
            tolerance,
            partial,
        }) => {
            write_trajectory_file(&path, &partial)?;
            return Err(Error::ConstraintViolation {
                t,
                residual,
                tolerance,
                partial,
            });
        }
        Err(e) => return Err(e),
    };
    write_trajectory_file(&path, &run.trajectory)?;
    let s = run.summary;
    let mut report = RunReport::new(&scenario.name, scenario.verification.seed);
    report.check("speed drift", s.max_speed_drift, 1e-10);
    report.check("constraint residual", s.max_constraint_residual, scenario.constraint_tolerance);
    summary_notes(&mut report, &s);
    report.note(format!("samples: {}  csv: {}", run.trajectory.len(), path.display()));
    if si {
        let max_e = run.trajectory.samples.iter().map(|s| s.field.norm()).fold(0.0, f64::max);
        si_note(&mut report, max_e, scenario.charge.q);
    }
    Ok(SimulateOutput {
        report,
        summary: s,
        csv: path,
    })
}

pub struct ControlOutput {
    pub report: RunReport,
    /// `(t, E)` of the planned field.
    pub profile: Vec<(f64, Vec3)>,
    /// Largest `|achieved − target|` over the validated samples.
    pub rate_error: f64,
    pub csv: PathBuf,
}

/// Central differences, one-sided at the ends.
fn rates(t: &[f64], y: &[f64]) -> Vec<f64> {
    let n = y.len();
    (0..n)
        .map(|i| {
            let (a, b) = (i.saturating_sub(1), (i + 1).min(n - 1));
            (y[b] - y[a]) / (t[b] - t[a])
        })
        .collect()
}

/// Plans the field for the scenario's control schedule and validates it by
/// forward simulation.
///
/// Localization control applies the constant field of the chosen mode and
/// differentiates the simulated `k`; only samples before `k` first reaches
/// zero are compared, since `k` turns around there. Energy control realises
/// `dE₀/dt` through the gauge scalar `s = −rate·t` on top of the drive field
/// of the angle law.
pub fn cmd_control(scenario: &Scenario, out: Option<&Path>) -> Result<ControlOutput> {
    let c = scenario.control;
    let (law, hel, q) = (&scenario.law, scenario.helicity, scenario.charge);
    let path = out
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from(format!("{}_control.csv", scenario.name)));
    let initial = ParticleState::from_law(law, 0.0, scenario.start, hel, q)?;
    let mut opts = IntegrationOptions {
        constraint_tolerance: scenario.constraint_tolerance,
        ..Default::default()
    };
    let mut report = RunReport::new(&scenario.name, scenario.verification.seed);

    let (program, profile_at): (crate::dynamics::FieldProgram, Box<dyn Fn(f64) -> Result<Vec3>>) = match c.target {
        ControlTarget::Localization => {
            let mode = if c.azimuthal {
                let theta0 = law
                    .theta0()
                    .ok_or_else(|| Error::value("theta_law", "azimuthal control needs a linear θ law"))?;
                ControlMode::Azimuthal { theta0 }
            } else {
                let phi0 = law
                    .phi0()
                    .ok_or_else(|| Error::value("phi_law", "polar control needs a linear φ law"))?;
                ControlMode::Polar { phi0 }
            };
            let e = k_control_field(c.rate, mode, hel, q)?.e;
            (crate::dynamics::FieldProgram::constant(e), Box::new(move |_| Ok(e)))
        }
        ControlTarget::Energy => {
            opts.gauge = ScalarField::parse(&format!("-({})*t", c.rate))?;
            let law = law.clone();
            (
                crate::dynamics::FieldProgram::drive(law.clone(), hel, q),
                Box::new(move |t| Ok(energy_control_field(c.rate, &law, q, t)?.e)),
            )
        }
    };

    let traj = integrate_with(&initial, &program, scenario.t_end, scenario.dt, &opts)?;
    let t: Vec<f64> = traj.samples.iter().map(|s| s.t).collect();
    let observed: Vec<f64> = match c.target {
        ControlTarget::Localization => traj.samples.iter().map(|s| s.k).collect(),
        ControlTarget::Energy => traj.samples.iter().map(|s| s.energy).collect(),
    };
    let achieved = rates(&t, &observed);
    let valid = match c.target {
        ControlTarget::Localization => traj
            .samples
            .iter()
            .position(|s| s.k <= 1e-9)
            .map_or(traj.len(), |i| i.saturating_sub(1)),
        ControlTarget::Energy => traj.len(),
    };
    let rate_error = achieved[..valid]
        .iter()
        .map(|a| (a - c.rate).abs())
        .fold(0.0, f64::max);
    let profile = t
        .iter()
        .map(|&t| Ok((t, profile_at(t)?)))
        .collect::<Result<Vec<_>>>()?;

    write_rows(
        create(&path)?,
        &["t", "Ex", "Ey", "Ez", "target_rate", "achieved_rate"],
        profile
            .iter()
            .zip(&achieved)
            .map(|(&(t, e), &a)| vec![t, e.x, e.y, e.z, c.rate, a]),
    )?;

    report.check("achieved rate vs target", rate_error, 1e-6);
    if c.target == ControlTarget::Energy && law.omega1() == Some(0.0) && law.omega2() == Some(0.0) {
        let s = ScalarField::parse(&format!("-({})*t", c.rate))?;
        let mut diff: f64 = 0.0;
        for &(t, e) in &profile {
            let g = gauge_family_field(law, &s, q, &Event::at_time(t))?;
            diff = diff.max(g.e.max_abs_diff(e));
        }
        report.check("control field equals gauge-family field", diff, 1e-9);
    }
    let first = profile.first().map_or(Vec3::ZERO, |p| p.1);
    report.note(format!(
        "target {} rate {}: E(0) = ({:.9}, {:.9}, {:.9})",
        match c.target {
            ControlTarget::Energy => "dE0/dt",
            ControlTarget::Localization => "dk/dt",
        },
        c.rate,
        first.x,
        first.y,
        first.z
    ));
    report.note(format!("validated samples: {valid} of {}  csv: {}", traj.len(), path.display()));
    Ok(ControlOutput {
        report,
        profile,
        rate_error,
        csv: path,
    })
}

pub struct FigureOutput {
    pub report: RunReport,
    pub summary: ScenarioSummary,
    pub files: Vec<PathBuf>,
}

fn k_at(traj: &Trajectory, t: f64) -> Option<f64> {
    traj.sample_at(t).filter(|s| (s.t - t).abs() < 1e-9).map(|s| s.k)
}

/// Writes the datasets of the scenario's figure into `out` (default
/// `figures/`) and checks the published features of that figure.
pub fn cmd_figures(scenario: &Scenario, out: Option<&Path>) -> Result<FigureOutput> {
    let dir = out.map_or_else(|| PathBuf::from("figures"), Path::to_path_buf);
    let run = run_scenario(scenario)?;
    let traj = &run.trajectory;
    let name = &scenario.name;
    let mut files = vec![dir.join(format!("{name}_samples.csv"))];
    write_trajectory_file(&files[0], traj)?;

    let mut narrow = |suffix: &str, header: &[&str], pick: fn(&crate::dynamics::Sample) -> Vec<f64>| -> Result<()> {
        let path = dir.join(format!("{name}_{suffix}.csv"));
        write_rows(create(&path)?, header, traj.samples.iter().map(pick))?;
        files.push(path);
        Ok(())
    };
    let xyz: fn(&crate::dynamics::Sample) -> Vec<f64> = |s| vec![s.t, s.position.x, s.position.y, s.position.z];
    let tk: fn(&crate::dynamics::Sample) -> Vec<f64> = |s| vec![s.t, s.k];
    match scenario.preset {
        Preset::Fig1Velocity => narrow("velocity", &["t", "vx", "vy", "vz"], |s| {
            vec![s.t, s.velocity.x, s.velocity.y, s.velocity.z]
        })?,
        Preset::Fig2Trajectory => narrow("trajectory", &["t", "x", "y", "z"], xyz)?,
        Preset::Fig3K => narrow("k", &["t", "k"], tk)?,
        Preset::Fig45Control => {
            narrow("k", &["t", "k"], tk)?;
            narrow("trajectory", &["t", "x", "y", "z"], xyz)?;
        }
        Preset::Custom => {}
    }

    let s = run.summary;
    let mut report = RunReport::new(name, scenario.verification.seed);
    report.check("speed drift", s.max_speed_drift, 1e-10);
    match scenario.preset {
        Preset::Fig1Velocity | Preset::Fig2Trajectory => {
            report.check("max distance from start below 3", s.max_distance_from_start, 3.0);
        }
        Preset::Fig3K => {
            report.check("k min - sqrt(3)/2", (s.k_min - 3f64.sqrt() / 2.0).abs(), 1e-9);
            report.check("k max - sqrt(2)", (s.k_max - 2f64.sqrt()).abs(), 1e-9);
        }
        Preset::Fig45Control => {
            let nan = f64::NAN;
            let literal = scenario.field == FieldSpec::AxialControl { strength: 1.0 };
            report.check("k(0) - 5", (k_at(traj, 0.0).unwrap_or(nan) - 5.0).abs(), 1e-9);
            if literal {
                report.check("k(5)", k_at(traj, 5.0).unwrap_or(nan), 1e-9);
            } else {
                report.check("k(10)", k_at(traj, 10.0).unwrap_or(nan), 1e-9);
                report.check("k(20) - 5", (k_at(traj, 20.0).unwrap_or(nan) - 5.0).abs(), 1e-6);
            }
        }
        Preset::Custom => {}
    }
    summary_notes(&mut report, &s);
    for f in &files {
        report.note(format!("wrote {}", f.display()));
    }
    Ok(FigureOutput {
        report,
        summary: s,
        files,
    })
}

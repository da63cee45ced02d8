//! Scenario files, verification reports and CSV output.
//!
//! A scenario is a flat `key = value` text file:
//!
//! ```text
//! # Figure 3 parameters
//! preset = fig3_k
//! t_end = 10
//! seed = 7
//! ```
//!
//! | key | meaning | default |
//! |-----|---------|---------|
//! | `name` | report and output name | file stem |
//! | `preset` | `fig1_velocity`, `fig2_trajectory`, `fig3_k`, `fig45_control`, `custom` | `custom` |
//! | `helicity` | `positive` or `negative` | required unless preset |
//! | `q` | charge, non-zero | required unless preset |
//! | `theta0`, `omega1` | `θ = θ₀ + ω₁t` | `theta0` required unless preset or `theta_law` |
//! | `phi0`, `omega2` | `φ = φ₀ + ω₂t` | `0`, `0` |
//! | `theta_law`, `phi_law` | custom laws, expressions in `t` | |
//! | `phase` | `plane_wave` or an expression for `h` | `plane_wave` |
//! | `e0` | plane-wave energy | `1` |
//! | `gauge` | the scalar `s` | `0` |
//! | `field` | `zero`, `drive`, `axial_control`, `components` | `drive` |
//! | `field_strength` | axial field is `strength/q` | `0.5` |
//! | `field_x/y/z` | component expressions in `t` | `0` |
//! | `magnetic_x/y/z` | applied `B`; must vanish to integrate | `0` |
//! | `dt`, `t_end` | integration grid | `1e-3`, `10` |
//! | `x0`, `y0`, `z0` | start position | origin |
//! | `constraint_tolerance` | integration abort threshold | `1e-6` |
//! | `fd_step`, `tolerance`, `sample_count`, `seed` | verification | `1e-5`, `1e-6`, `50`, `0` |
//! | `potential_offset` | added to `b₀` before residual checks | `0` |
//! | `paper_literal_field` | axial field `1/q` instead of `1/(2q)` | `false` |
//! | `control_target`, `control_rate`, `control_mode` | `energy`/`localization`, rate, `azimuthal`/`polar` | `localization`, `0`, `azimuthal` |
//! | `csv` | output path for `simulate` | `<name>.csv` |
//!
//! Numbers may be constant expressions (`pi/2`, `sqrt(3)`).
//!
//! Exit codes: `0` success, `1` a check failed or the field left the
//! solution family, `2` usage or validation error.

mod commands;
mod scenario;

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::{
    cmd_control, cmd_figures, cmd_simulate, cmd_verify, write_trajectory_csv, ControlOutput, FigureOutput,
    SimulateOutput, CSV_HEADER,
};
pub use scenario::{
    load_scenario, parse_scenario, ControlSpec, ControlTarget, FieldSpec, Overrides, PhaseSpec, Preset, Scenario,
    Verification, KEYS,
};

use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// One line of a [`RunReport`].
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunReport {
    pub scenario: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    /// Free-form summary lines.
    pub notes: Vec<String>,
}

impl RunReport {
    pub fn new(scenario: &str, seed: u64) -> Self {
        Self {
            scenario: scenario.to_string(),
            seed,
            ..Default::default()
        }
    }

    /// Records `measured ≤ tolerance`. NaN fails.
    pub fn check(&mut self, name: impl Into<String>, measured: f64, tolerance: f64) -> bool {
        let pass = measured <= tolerance;
        self.checks.push(Check {
            name: name.into(),
            measured,
            tolerance,
            pass,
        });
        pass
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            EXIT_OK
        } else {
            EXIT_CHECK_FAILED
        }
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "scenario: {}", self.scenario)?;
        writeln!(f, "seed: {}", self.seed)?;
        for c in &self.checks {
            writeln!(
                f,
                "{} {:<44} measured {:.3e}  tolerance {:.1e}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.measured,
                c.tolerance
            )?;
        }
        for n in &self.notes {
            writeln!(f, "  {n}")?;
        }
        write!(f, "overall: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

#[derive(Debug, Parser)]
#[command(name = "weyl-dyn", version, about = "Weyl-particle spinor dynamics: verify, simulate, control")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the invariant suite at seeded random events.
    Verify(CommonArgs),
    /// Integrate the trajectory and write it as CSV.
    Simulate(CommonArgs),
    /// Compute the field realising a dE/dt or dk/dt schedule and check it.
    Control(CommonArgs),
    /// Write the figure datasets of a preset into a directory.
    Figures(CommonArgs),
}

#[derive(Debug, clap::Args)]
pub struct CommonArgs {
    pub scenario: PathBuf,
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long = "t-end")]
    pub t_end: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Use the axial field 1/q instead of 1/(2q).
    #[arg(long)]
    pub paper_literal_field: bool,
    /// Add SI rates to the report.
    #[arg(long)]
    pub si: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl CommonArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            dt: self.dt,
            t_end: self.t_end,
            seed: self.seed,
            paper_literal_field: self.paper_literal_field,
        }
    }
}

/// Parses arguments, runs the command, prints the report and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let (Command::Verify(a) | Command::Simulate(a) | Command::Control(a) | Command::Figures(a)) = &cli.command;
    let scenario = load_scenario(&a.scenario).and_then(|mut s| {
        s.apply(&a.overrides())?;
        Ok(s)
    });
    let scenario = match scenario {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let out = a.out.as_deref();
    let result = match &cli.command {
        Command::Verify(_) => cmd_verify(&scenario, a.si),
        Command::Simulate(_) => cmd_simulate(&scenario, out, a.si).map(|o| o.report),
        Command::Control(_) => cmd_control(&scenario, out).map(|o| o.report),
        Command::Figures(_) => cmd_figures(&scenario, out).map(|o| o.report),
    };
    match result {
        Ok(report) => {
            println!("{report}");
            report.exit_code()
        }
        Err(e @ Error::ConstraintViolation { .. }) => {
            eprintln!("error: {e}");
            EXIT_CHECK_FAILED
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

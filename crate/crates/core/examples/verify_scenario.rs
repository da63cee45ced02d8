//! Load a scenario from text and run the seeded invariant suite on it.
use weyl_dyn::cli::{cmd_verify, parse_scenario};

const SCENARIO: &str = "
# negative helicity, rotating in both angles, with a gauge term
helicity = negative
q = -1
theta0 = 1.1
omega1 = 0.7
phi0 = pi/6
omega2 = -1.3
phase = 0.5*x - 0.2*t
gauge = 2 - 0.4*t + 0.1*x*y
sample_count = 100
seed = 2024
";

fn main() -> weyl_dyn::Result<()> {
    let s = parse_scenario(SCENARIO, "example")?;
    let report = cmd_verify(&s, true)?;
    println!("{report}");
    std::process::exit(report.exit_code());
}

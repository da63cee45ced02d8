//! Steer the localization parameter with a constant axial field and the
//! energy with a field along the motion.
use weyl_dyn::cli::{cmd_control, parse_scenario};
use weyl_dyn::dynamics::run_scenario;
use weyl_dyn::potentials::{k_control_field, ChargeSpec, ControlMode};
use weyl_dyn::spinor::Helicity;

fn main() -> weyl_dyn::Result<()> {
    let e = k_control_field(-0.5, ControlMode::Azimuthal { theta0: std::f64::consts::FRAC_PI_2 }, Helicity::Positive, ChargeSpec::new(1.0))?;
    println!("dk/dt = -1/2 needs E = {:?}", e.e.to_array());

    for literal in [false, true] {
        let mut s = parse_scenario("preset = fig45_control\nt_end = 20", "fig45")?;
        if literal {
            s.use_paper_literal_field();
        }
        let run = run_scenario(&s)?;
        print!("{}: k(t) =", if literal { "E = 1/q  " } else { "E = 1/2q " });
        for t in [0.0, 5.0, 10.0, 15.0, 20.0] {
            print!(" {:.4}", run.trajectory.sample_at(t).expect("on grid").k);
        }
        println!("  zero at {:?}, recovered at {:?}", run.summary.k_zero_time, run.summary.recovery_time);
    }

    let dir = std::env::temp_dir();
    let s = parse_scenario(
        "helicity = positive\nq = 1\ntheta0 = pi/2\ncontrol_target = energy\ncontrol_rate = 1\nt_end = 2\n",
        "energy",
    )?;
    let out = cmd_control(&s, Some(&dir.join("weyl_energy_control.csv")))?;
    println!("\n{}", out.report);
    Ok(())
}

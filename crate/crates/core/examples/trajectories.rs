//! Classical paths with the spinor's velocity: line, circle, helix and the
//! bounded figure-2 motion.
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use weyl_dyn::dynamics::{integrate_trajectory, FieldProgram, ParticleState};
use weyl_dyn::exprkit::AngleLaw;
use weyl_dyn::potentials::ChargeSpec;
use weyl_dyn::spinor::Helicity;
use weyl_dyn::Vec3;

fn run(name: &str, law: AngleLaw, program: FieldProgram, t_end: f64) -> weyl_dyn::Result<()> {
    let q = ChargeSpec::new(1.0);
    let start = ParticleState::from_law(&law, 0.0, Vec3::ZERO, Helicity::Positive, q)?;
    let traj = integrate_trajectory(&start, &program, t_end, 1e-3)?;
    let end = traj.last().expect("non-empty").position;
    println!(
        "{name:<8} t_end {t_end:>8.4}  end ({:>9.6}, {:>9.6}, {:>9.6})  max distance {:.6}  speed drift {:.1e}",
        end.x,
        end.y,
        end.z,
        traj.max_distance_from_start(),
        traj.max_speed_drift()
    );
    Ok(())
}

fn main() -> weyl_dyn::Result<()> {
    run("line", AngleLaw::constant(0.0, 0.0), FieldProgram::zero(), 3.0)?;
    run("circle", AngleLaw::linear(FRAC_PI_2, 2.0, 0.0, 0.0), FieldProgram::zero(), PI)?;
    // z advances cos(theta0)*2pi/w2 per turn
    run("helix", AngleLaw::linear(FRAC_PI_4, 0.0, 0.0, 2.0), FieldProgram::zero(), PI)?;

    let law = AngleLaw::linear(FRAC_PI_2, 3f64.sqrt(), 0.0, 5f64.sqrt());
    let drive = FieldProgram::drive(law.clone(), Helicity::Positive, ChargeSpec::new(1.0));
    run("bounded", law, drive, 200.0)?;
    Ok(())
}

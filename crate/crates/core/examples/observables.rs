//! Velocity, kinetic momentum, localization and the uncertainty relation.
use weyl_dyn::exprkit::{AngleLaw, ScalarField};
use weyl_dyn::observables::{
    kinetic_momentum, localization_diameter, localization_k, mass_shell_defect, momentum_noncollinearity,
    si_rates, uncertainty_relation, velocity,
};
use weyl_dyn::spinor::Helicity;

fn main() -> weyl_dyn::Result<()> {
    let law = AngleLaw::linear(std::f64::consts::FRAC_PI_2, 3f64.sqrt(), 0.0, 5f64.sqrt());
    let s = ScalarField::parse("-2 + 0.3*t")?;
    println!("{:>5} {:>9} {:>9} {:>9} {:>11} {:>9}", "t", "k", "E0", "|v|", "E0^2-|p|^2", "|p x v|");
    for i in 0..=8 {
        let t = i as f64 * 0.5;
        let v = velocity(&law, Helicity::Positive, t)?;
        let pi = kinetic_momentum(&law, &s, Helicity::Positive, t)?;
        let k = localization_k(&law, t)?.k;
        println!(
            "{t:>5.1} {k:>9.6} {:>9.5} {:>9.6} {:>11.6} {:>9.6}",
            pi.energy(),
            v.norm(),
            mass_shell_defect(&law, &s, Helicity::Positive, t)?,
            momentum_noncollinearity(&law, &s, Helicity::Positive, t)?,
        );
    }

    let w1 = 0.8;
    let d = localization_diameter(w1);
    println!("\ncircle with w1 = {w1}: diameter {d}");
    for p0 in [0.0, 0.5, 2.0, 10.0] {
        let u = uncertainty_relation(p0 * d)?;
        println!("  p0 = {p0:>4}: d*dp = {:.6}  (residual {:.1e})", u.d_delta_p, u.residual());
    }

    let r = si_rates(1.0, 1.0);
    println!("\n1 V/m on charge e: {} eV/m, {:e} eV/s", r.eV_per_meter, r.eV_per_second);
    Ok(())
}

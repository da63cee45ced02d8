//! Check that the spinor solves the Weyl equation for its potential, for
//! both helicities, and watch the residual shrink like step².
use weyl_dyn::exprkit::{AngleLaw, ScalarField};
use weyl_dyn::potentials::{degenerate_potential, FourPotentialField};
use weyl_dyn::spinor::{build_spinor, convergence_order, weyl_residual, Helicity, PhaseField};
use weyl_dyn::Event;

fn main() -> weyl_dyn::Result<()> {
    let law = AngleLaw::linear(std::f64::consts::FRAC_PI_2, 3f64.sqrt(), 0.0, 5f64.sqrt());
    let phase = PhaseField::parse("0.4*x - 0.1*t")?;
    let gauge = ScalarField::parse("-3 + 0.5*sin(t) + 0.2*y")?;
    let ev = Event::new(0.3, -0.2, 0.7, 1.9);

    for hel in [Helicity::Positive, Helicity::Negative] {
        let psi = build_spinor(&law, &phase, hel, &ev)?;
        println!("{} helicity: psi = ({:.6}, {:.6}), |psi|^2 = {}", hel.name(), psi.c1, psi.c2, psi.norm_sqr());

        let pot = degenerate_potential(FourPotentialField::base(law.clone(), phase.clone(), hel), law.clone(), gauge.clone());
        println!("  b(ev) = {:?}", pot.at(&ev)?.0);
        let mut prev = None;
        for step in [1e-2, 5e-3, 2.5e-3, 1e-5] {
            let r = weyl_residual(&law, &phase, &pot, hel, &ev, step)?;
            match prev {
                Some(p) if step > 1e-4 => println!("  step {step:<8} residual {r:.3e}  order {:.3}", convergence_order(p, r)),
                _ => println!("  step {step:<8} residual {r:.3e}"),
            }
            prev = Some(r);
        }

        // a wrong potential shows up immediately
        let wrong = pot.shifted([0.1, 0.0, 0.0, 0.0]);
        println!("  b0 + 0.1: residual {:.6}", weyl_residual(&law, &phase, &wrong, hel, &ev, 1e-5)?);
    }
    Ok(())
}

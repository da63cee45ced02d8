//! The drive field of an angle law and the field of the gauge family, both
//! in closed form and by differentiating the potentials numerically.
use weyl_dyn::exprkit::{AngleLaw, ScalarField};
use weyl_dyn::potentials::{
    drive_field_closed_form, field_from_potential_numeric, gauge_family_field, kappa_vector, ChargeSpec,
    FourPotentialField,
};
use weyl_dyn::spinor::{Helicity, PhaseField};
use weyl_dyn::Event;

fn main() -> weyl_dyn::Result<()> {
    let q = ChargeSpec::new(1.0);
    let law = AngleLaw::linear(0.4, 3f64.sqrt(), 0.0, 5f64.sqrt());
    let ev = Event::new(0.1, 0.2, -0.3, 2.0);

    println!("kappa(t) = {:?}", kappa_vector(&law, ev.t)?.0);
    for hel in [Helicity::Positive, Helicity::Negative] {
        let closed = drive_field_closed_form(&law, hel, q, ev.t)?;
        let base = FourPotentialField::base(law.clone(), PhaseField::zero(), hel);
        let numeric = field_from_potential_numeric(&base, q, &ev, 1e-5)?;
        println!("{:>8}: E = {:?}", hel.name(), closed.e.to_array());
        println!("          numeric diff {:.2e}, |B| = {:.1e}", closed.max_abs_diff(&numeric), numeric.b.norm());
    }

    // free laws (one of the rates zero) need no field at all
    for (w1, w2) in [(0.0, 2.0), (1.5, 0.0), (1.5, 2.0)] {
        let e = drive_field_closed_form(&AngleLaw::linear(0.4, w1, 0.0, w2), Helicity::Positive, q, 1.0)?.e;
        println!("w1 = {w1}, w2 = {w2}: |E| = {:.6}", e.norm());
    }

    let s = ScalarField::parse("-3 + 0.5*sin(t) + 0.2*x*y")?;
    let closed = gauge_family_field(&law, &s, q, &ev)?;
    let numeric = field_from_potential_numeric(&FourPotentialField::gauge_only(law.clone(), s), q, &ev, 1e-5)?;
    println!("gauge family: E = {:?}, B = {:?}", closed.e.to_array(), closed.b.to_array());
    println!("              numeric diff {:.2e}", closed.max_abs_diff(&numeric));
    Ok(())
}

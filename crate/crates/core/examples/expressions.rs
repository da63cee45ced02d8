//! Parse a phase function, evaluate it, differentiate it and print it back.
use weyl_dyn::exprkit::{Bindings, Parser, Var};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let e0 = 2.0;
    let h = Parser::new()
        .with_param("E0", e0)
        .parse("E0*(x*sin(theta)*cos(phi) + z*cos(theta) - t) + 0.1*t^2")?;
    println!("h        = {h}");

    let at = Bindings::new()
        .with(Var::X, 0.5)
        .with(Var::Y, 0.0)
        .with(Var::Z, -1.0)
        .with(Var::T, 2.0)
        .with(Var::Theta, 0.3)
        .with(Var::Phi, 1.2);
    println!("h(at)    = {:.12}", h.eval(&at)?);

    for v in [Var::T, Var::X, Var::Theta] {
        let d = h.diff(v);
        println!("dh/d{:<5} = {d}\n          = {:.12}", v.name(), d.eval(&at)?);
    }

    // domain errors are values, not panics
    let bad = Parser::new().parse("sqrt(t - 3)")?;
    println!("sqrt(t - 3) at t = 2: {}", bad.eval(&Bindings::time(2.0)).unwrap_err());
    match Parser::new().parse("2 * (t + ") {
        Err(err) => println!("parse error: {err}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

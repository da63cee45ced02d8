use std::f64::consts::PI;

use proptest::prelude::*;
use weyl_dyn::dynamics::{integrate_trajectory, FieldProgram, ParticleState};
use weyl_dyn::exprkit::{parse_expr, AngleLaw, AngleState, BinaryOp, Bindings, Expr, UnaryOp, Var};
use weyl_dyn::observables::{kinetic_momentum_of, localization_of, uncertainty_relation, velocity_of};
use weyl_dyn::potentials::{k_control_field, kappa_vector, ChargeSpec, ControlMode};
use weyl_dyn::spinor::{Helicity, Spinor};
use weyl_dyn::Vec3;

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (-5.0..5.0f64).prop_map(Expr::Const),
        prop::sample::select(Var::ALL.to_vec()).prop_map(Expr::Var),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(5, 40, 2, |inner| {
        let unary = prop::sample::select(vec![
            UnaryOp::Neg,
            UnaryOp::Sin,
            UnaryOp::Cos,
            UnaryOp::Tan,
            UnaryOp::Exp,
            UnaryOp::Sqrt,
            UnaryOp::Abs,
            UnaryOp::Ln,
        ]);
        let binary = prop::sample::select(vec![
            BinaryOp::Add,
            BinaryOp::Sub,
            BinaryOp::Mul,
            BinaryOp::Div,
            BinaryOp::Pow,
        ]);
        prop_oneof![
            (unary, inner.clone()).prop_map(|(op, a)| Expr::Unary(op, Box::new(a))),
            (binary, inner.clone(), inner).prop_map(|(op, a, b)| Expr::Binary(op, Box::new(a), Box::new(b))),
        ]
    })
}

fn point() -> impl Strategy<Value = Bindings> {
    prop::array::uniform6(-3.0..3.0f64).prop_map(|v| {
        let mut b = Bindings::new();
        for (var, x) in Var::ALL.into_iter().zip(v) {
            b.set(var, x);
        }
        b
    })
}

fn angles() -> impl Strategy<Value = AngleState> {
    (0.0..PI, -PI..PI, -4.0..4.0f64, -4.0..4.0f64).prop_map(|(theta, phi, theta_rate, phi_rate)| AngleState {
        theta,
        phi,
        theta_rate,
        phi_rate,
        ..Default::default()
    })
}

fn helicity() -> impl Strategy<Value = Helicity> {
    prop_oneof![Just(Helicity::Positive), Just(Helicity::Negative)]
}

/// Expressions smooth on `x, t ∈ [0.5, 2]` used for the derivative check.
const SMOOTH: [&str; 24] = [
    "x^3 - 2*x",
    "sin(x)*cos(t)",
    "exp(-x*t)",
    "sqrt(x + t)",
    "ln(x) + t^2",
    "x/t",
    "x^t",
    "tan(x/3)",
    "abs(x - 3)",
    "-x^2",
    "(x + 1)/(t + 2)",
    "exp(sin(x))",
    "sqrt(x)*ln(t + 1)",
    "x*t*t - t/x",
    "cos(x*x + t)",
    "2^x",
    "x^(-1.5)",
    "ln(x*t + 1)^2",
    "sin(x)^2 + cos(x)^2",
    "1/(1 + x^2)",
    "exp(x)/(exp(x) + 1)",
    "x*sqrt(t)*sin(x*t)",
    "t^x * ln(x)",
    "-(x - t)^3 / 3",
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn display_round_trips_in_value(e in expr(), points in prop::collection::vec(point(), 100)) {
        let text = e.to_string();
        let back = parse_expr(&text).unwrap_or_else(|err| panic!("`{text}` does not parse: {err}"));
        for b in &points {
            match (e.eval(b), back.eval(b)) {
                (Ok(a), Ok(c)) => prop_assert_eq!(a, c, "{}", text),
                (Err(_), Err(_)) => {}
                (a, c) => prop_assert!(false, "`{}`: {:?} vs {:?}", text, a, c),
            }
        }
    }

    #[test]
    fn derivative_matches_central_difference(idx in 0..SMOOTH.len(), x in 0.5..2.0f64, t in 0.5..2.0f64) {
        let e = parse_expr(SMOOTH[idx]).unwrap();
        let at = |x: f64| e.eval(&Bindings::new().with(Var::X, x).with(Var::T, t)).unwrap();
        let h = 1e-5;
        let numeric = (at(x + h) - at(x - h)) / (2.0 * h);
        let exact = e.diff(Var::X).eval(&Bindings::new().with(Var::X, x).with(Var::T, t)).unwrap();
        prop_assert!((numeric - exact).abs() <= 1e-6 * exact.abs().max(1.0), "{}: {} vs {}", SMOOTH[idx], numeric, exact);
    }

    #[test]
    fn spinor_is_normalised(theta in -10.0..10.0f64, phi in -10.0..10.0f64, h in -50.0..50.0f64, hel in helicity()) {
        let psi = Spinor::from_angles(theta, phi, h, hel);
        prop_assert!((psi.norm_sqr() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn kinematic_identities(a in angles(), s in -5.0..5.0f64, hel in helicity()) {
        let v = velocity_of(&a);
        prop_assert!((v.norm() - 1.0).abs() <= 1e-12);
        let pi = kinetic_momentum_of(&a, s, hel);
        let (e0, p) = (pi.energy(), pi.momentum());
        let k = localization_of(&a);
        prop_assert!((e0 * e0 - p.norm_sqr() + k * k).abs() <= 1e-12 * p.norm_sqr().max(1.0));
        prop_assert!((p.cross(v).norm() - k).abs() <= 1e-12 * p.norm().max(1.0));
        prop_assert!((p.dot(v) - e0).abs() <= 1e-12 * p.norm().max(1.0));
    }

    #[test]
    fn kappa_is_minus_velocity(theta0 in 0.0..PI, w1 in -3.0..3.0f64, phi0 in -PI..PI, w2 in -3.0..3.0f64, t in 0.0..10.0f64) {
        let law = AngleLaw::linear(theta0, w1, phi0, w2);
        let kappa = kappa_vector(&law, t).unwrap();
        prop_assert_eq!(kappa.0[0], 1.0);
        prop_assert!(kappa.spatial().max_abs_diff(-velocity_of(&law.state_at(t).unwrap())) <= 1e-14);
    }

    #[test]
    fn uncertainty_root_is_decreasing(a in 0.0..1e4f64, b in 0.0..1e4f64) {
        let (ua, ub) = (uncertainty_relation(a).unwrap(), uncertainty_relation(b).unwrap());
        prop_assert!(ua.residual().abs() <= 1e-12);
        prop_assert!(ua.d_delta_p > 0.0 && ua.d_delta_p <= 1.0);
        if a < b {
            prop_assert!(ua.d_delta_p > ub.d_delta_p);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn free_motion_keeps_unit_speed(theta0 in 0.0..PI, w in -3.0..3.0f64, polar in any::<bool>(), hel in helicity()) {
        let law = if polar { AngleLaw::linear(theta0, w, 0.3, 0.0) } else { AngleLaw::linear(theta0, 0.0, 0.3, w) };
        let s = ParticleState::from_law(&law, 0.0, Vec3::ZERO, hel, ChargeSpec::new(1.0)).unwrap();
        let traj = integrate_trajectory(&s, &FieldProgram::zero(), 20.0, 1e-3).unwrap();
        prop_assert!(traj.max_speed_drift() <= 1e-10);
        let end = traj.last().unwrap();
        let expected = law.state_at(20.0).unwrap();
        prop_assert!((end.theta - expected.theta).abs() < 1e-9 && (end.phi - expected.phi).abs() < 1e-9);
    }

    #[test]
    fn perpendicular_field_changes_k_at_q_e(theta0 in 0.2..3.0f64, phi0 in -PI..PI, w1 in 1.0..3.0f64, rate in 0.05..1.0f64, q in 0.5..2.0f64, hel in helicity()) {
        let law = AngleLaw::linear(theta0, w1, phi0, 0.0);
        let q = ChargeSpec::new(q);
        let e = k_control_field(rate, ControlMode::Polar { phi0 }, hel, q).unwrap().e;
        prop_assert!(e.dot(velocity_of(&law.state_at(0.0).unwrap())).abs() < 1e-12);
        let s = ParticleState::from_law(&law, 0.0, Vec3::ZERO, hel, q).unwrap();
        let traj = integrate_trajectory(&s, &FieldProgram::constant(e), 2.0, 1e-3).unwrap();
        for w in traj.samples.windows(3) {
            let dk = (w[2].k - w[0].k) / (w[2].t - w[0].t);
            prop_assert!((dk.abs() - q.q * e.norm()).abs() < 1e-8);
        }
    }
}

use super::diff::{add, mul, sub};
use super::{AngleState, Bindings, EvalError, Expr, ParseError, Parser, UnaryOp, Var};
use crate::vector::Event;

/// A scalar function of `(x, y, z, t)` that may also read the instantaneous
/// spinor angles `θ(t)`, `φ(t)`. Used for the phase `h` and the gauge scalar
/// `s`.
///
/// Partial derivatives are analytic. The time derivative is total along the
/// angle law: `∂_t f = ∂f/∂t + ∂f/∂θ·θ̇ + ∂f/∂φ·φ̇`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarField {
    expr: Expr,
    partials: [Expr; 6],
}

impl ScalarField {
    pub fn new(expr: Expr) -> Self {
        let partials = Var::ALL.map(|v| expr.diff(v));
        Self { expr, partials }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Ok(Self::new(Parser::new().parse(text)?))
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    pub fn constant(value: f64) -> Self {
        Self::new(Expr::Const(value))
    }

    /// `E₀·(x sinθ cosφ + y sinθ sinφ + z cosθ − t)`, the phase of a free
    /// particle with energy `E₀` travelling along `(θ, φ)`.
    pub fn plane_wave(energy: f64) -> Self {
        let f = |op, v| Expr::Unary(op, Box::new(Expr::Var(v)));
        let sin_t = || f(UnaryOp::Sin, Var::Theta);
        let dir_x = mul(sin_t(), f(UnaryOp::Cos, Var::Phi));
        let dir_y = mul(sin_t(), f(UnaryOp::Sin, Var::Phi));
        let dir_z = f(UnaryOp::Cos, Var::Theta);
        let path = add(
            add(
                mul(Expr::Var(Var::X), dir_x),
                mul(Expr::Var(Var::Y), dir_y),
            ),
            mul(Expr::Var(Var::Z), dir_z),
        );
        Self::new(mul(Expr::Const(energy), sub(path, Expr::Var(Var::T))))
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    /// True when the field does not vary in space.
    pub fn is_time_only(&self) -> bool {
        ![Var::X, Var::Y, Var::Z]
            .into_iter()
            .any(|v| self.expr.depends_on(v))
    }

    pub fn is_zero(&self) -> bool {
        self.expr.as_const() == Some(0.0)
    }

    fn bindings(ev: &Event, angles: &AngleState) -> Bindings {
        Bindings::new()
            .with(Var::X, ev.x)
            .with(Var::Y, ev.y)
            .with(Var::Z, ev.z)
            .with(Var::T, ev.t)
            .with(Var::Theta, angles.theta)
            .with(Var::Phi, angles.phi)
    }

    pub fn value(&self, ev: &Event, angles: &AngleState) -> Result<f64, EvalError> {
        self.expr.eval(&Self::bindings(ev, angles))
    }

    /// `(∂_t, ∂_x, ∂_y, ∂_z)` with the total time derivative.
    pub fn gradient(&self, ev: &Event, angles: &AngleState) -> Result<[f64; 4], EvalError> {
        let b = Self::bindings(ev, angles);
        let d = |v: Var| self.partials[v as usize].eval(&b);
        let mut dt = d(Var::T)?;
        if angles.theta_rate != 0.0 && self.expr.depends_on(Var::Theta) {
            dt += d(Var::Theta)? * angles.theta_rate;
        }
        if angles.phi_rate != 0.0 && self.expr.depends_on(Var::Phi) {
            dt += d(Var::Phi)? * angles.phi_rate;
        }
        Ok([dt, d(Var::X)?, d(Var::Y)?, d(Var::Z)?])
    }
}

impl From<Expr> for ScalarField {
    fn from(expr: Expr) -> Self {
        Self::new(expr)
    }
}

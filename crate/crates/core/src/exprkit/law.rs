use super::{Bindings, EvalError, Expr, Var};

/// Time dependence of one spinor angle.
#[derive(Clone, Debug, PartialEq)]
pub enum TimeLaw {
    /// `offset + rate·t`.
    Linear { offset: f64, rate: f64 },
    /// Arbitrary expression in `t`, with its first two derivatives.
    Custom {
        expr: Expr,
        first: Expr,
        second: Expr,
    },
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
#[error("angle law may only depend on `t`, found `{0}`")]
pub struct NotTimeOnly(pub Var);

impl TimeLaw {
    pub fn linear(offset: f64, rate: f64) -> Self {
        TimeLaw::Linear { offset, rate }
    }

    pub fn constant(value: f64) -> Self {
        TimeLaw::Linear {
            offset: value,
            rate: 0.0,
        }
    }

    pub fn custom(expr: Expr) -> Result<Self, NotTimeOnly> {
        if let Some(v) = expr.variables().into_iter().find(|v| *v != Var::T) {
            return Err(NotTimeOnly(v));
        }
        let first = expr.diff(Var::T);
        let second = first.diff(Var::T);
        Ok(TimeLaw::Custom {
            expr,
            first,
            second,
        })
    }

    pub fn value(&self, t: f64) -> Result<f64, EvalError> {
        match self {
            TimeLaw::Linear { offset, rate } => Ok(offset + rate * t),
            TimeLaw::Custom { expr, .. } => expr.eval(&Bindings::time(t)),
        }
    }

    pub fn rate(&self, t: f64) -> Result<f64, EvalError> {
        match self {
            TimeLaw::Linear { rate, .. } => Ok(*rate),
            TimeLaw::Custom { first, .. } => first.eval(&Bindings::time(t)),
        }
    }

    pub fn accel(&self, t: f64) -> Result<f64, EvalError> {
        match self {
            TimeLaw::Linear { .. } => Ok(0.0),
            TimeLaw::Custom { second, .. } => second.eval(&Bindings::time(t)),
        }
    }

    /// Offset of a linear law.
    pub fn offset(&self) -> Option<f64> {
        match self {
            TimeLaw::Linear { offset, .. } => Some(*offset),
            TimeLaw::Custom { .. } => None,
        }
    }

    /// Rate of a linear law.
    pub fn linear_rate(&self) -> Option<f64> {
        match self {
            TimeLaw::Linear { rate, .. } => Some(*rate),
            TimeLaw::Custom { .. } => None,
        }
    }
}

/// The pair of angle laws `θ(t)`, `φ(t)` that fixes a member of the
/// solution family.
#[derive(Clone, Debug, PartialEq)]
pub struct AngleLaw {
    pub theta: TimeLaw,
    pub phi: TimeLaw,
}

/// Angles and their first two time derivatives at one instant.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct AngleState {
    pub theta: f64,
    pub phi: f64,
    pub theta_rate: f64,
    pub phi_rate: f64,
    pub theta_accel: f64,
    pub phi_accel: f64,
}

impl AngleLaw {
    pub fn new(theta: TimeLaw, phi: TimeLaw) -> Self {
        Self { theta, phi }
    }

    /// `θ = θ₀ + ω₁t`, `φ = φ₀ + ω₂t`.
    pub fn linear(theta0: f64, omega1: f64, phi0: f64, omega2: f64) -> Self {
        Self::new(TimeLaw::linear(theta0, omega1), TimeLaw::linear(phi0, omega2))
    }

    pub fn constant(theta0: f64, phi0: f64) -> Self {
        Self::linear(theta0, 0.0, phi0, 0.0)
    }

    pub fn theta0(&self) -> Option<f64> {
        self.theta.offset()
    }

    pub fn phi0(&self) -> Option<f64> {
        self.phi.offset()
    }

    pub fn omega1(&self) -> Option<f64> {
        self.theta.linear_rate()
    }

    pub fn omega2(&self) -> Option<f64> {
        self.phi.linear_rate()
    }

    pub fn state_at(&self, t: f64) -> Result<AngleState, EvalError> {
        Ok(AngleState {
            theta: self.theta.value(t)?,
            phi: self.phi.value(t)?,
            theta_rate: self.theta.rate(t)?,
            phi_rate: self.phi.rate(t)?,
            theta_accel: self.theta.accel(t)?,
            phi_accel: self.phi.accel(t)?,
        })
    }
}

//! Scalar expressions over space, time and the two spinor angles.
//!
//! The angle laws `θ(t)`, `φ(t)`, the phase `h(x, y, z, t)` and the gauge
//! scalar `s(x, y, z, t)` are free functions of the solution family. They are
//! written as small infix expressions, evaluated in `f64` and differentiated
//! analytically, so every 4-potential built from them is exact.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr   = term   { ("+" | "-") term } ;
//! term   = unary  { ("*" | "/") unary } ;
//! unary  = ("-" | "+") unary | power ;
//! power  = atom [ "^" unary ] ;
//! atom   = number | ident | func "(" expr ")" | "(" expr ")" ;
//! func   = "sin" | "cos" | "tan" | "exp" | "sqrt" | "abs" | "ln" ;
//! ident  = "x" | "y" | "z" | "t" | "theta" | "phi" | "pi" | <parameter> ;
//! number = digit { digit } [ "." { digit } ] [ ("e" | "E") [ "+" | "-" ] digit { digit } ] ;
//! ```
//!
//! `+ - * /` are left-associative; `^` is right-associative and binds
//! tighter than unary minus, so `-2^2` is `-4`.

mod diff;
mod field;
mod law;
mod parse;

use std::fmt;

pub use field::ScalarField;
pub use law::{AngleLaw, AngleState, NotTimeOnly, TimeLaw};
pub use parse::{parse_expr, ParseError, Parser};

/// Free variables an [`Expr`] may reference.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
    T,
    Theta,
    Phi,
}

impl Var {
    pub const ALL: [Var; 6] = [Var::X, Var::Y, Var::Z, Var::T, Var::Theta, Var::Phi];

    fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
            Var::T => "t",
            Var::Theta => "theta",
            Var::Phi => "phi",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Sin,
    Cos,
    Tan,
    Exp,
    Sqrt,
    Abs,
    Ln,
}

impl UnaryOp {
    fn func_name(self) -> Option<&'static str> {
        match self {
            UnaryOp::Neg => None,
            UnaryOp::Sin => Some("sin"),
            UnaryOp::Cos => Some("cos"),
            UnaryOp::Tan => Some("tan"),
            UnaryOp::Exp => Some("exp"),
            UnaryOp::Sqrt => Some("sqrt"),
            UnaryOp::Abs => Some("abs"),
            UnaryOp::Ln => Some("ln"),
        }
    }

    pub(crate) fn from_func_name(name: &str) -> Option<Self> {
        Some(match name {
            "sin" => UnaryOp::Sin,
            "cos" => UnaryOp::Cos,
            "tan" => UnaryOp::Tan,
            "exp" => UnaryOp::Exp,
            "sqrt" => UnaryOp::Sqrt,
            "abs" => UnaryOp::Abs,
            "ln" => UnaryOp::Ln,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    fn symbol(self) -> char {
        match self {
            BinaryOp::Add => '+',
            BinaryOp::Sub => '-',
            BinaryOp::Mul => '*',
            BinaryOp::Div => '/',
            BinaryOp::Pow => '^',
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinaryOp::Add | BinaryOp::Sub => 1,
            BinaryOp::Mul | BinaryOp::Div => 2,
            BinaryOp::Pow => 4,
        }
    }
}

/// Expression tree. Immutable once built; evaluation is pure.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(f64),
    Var(Var),
    Unary(UnaryOp, Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
}

/// Values for the free variables of an expression. Unset variables are
/// reported as [`EvalError::Unbound`].
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Bindings {
    values: [Option<f64>; 6],
}

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, var: Var, value: f64) -> Self {
        self.set(var, value);
        self
    }

    pub fn set(&mut self, var: Var, value: f64) {
        self.values[var.index()] = Some(value);
    }

    pub fn get(&self, var: Var) -> Option<f64> {
        self.values[var.index()]
    }

    /// Binds only `t`.
    pub fn time(t: f64) -> Self {
        Self::new().with(Var::T, t)
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("variable `{0}` is not bound")]
    Unbound(Var),
    #[error("{reason} in `{node}`")]
    Domain { node: String, reason: &'static str },
}

impl Expr {
    pub fn constant(value: f64) -> Self {
        Expr::Const(value)
    }

    pub fn var(var: Var) -> Self {
        Expr::Var(var)
    }

    pub fn as_const(&self) -> Option<f64> {
        match self {
            Expr::Const(c) => Some(*c),
            _ => None,
        }
    }

    /// True when `var` occurs anywhere in the tree.
    pub fn depends_on(&self, var: Var) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Var(v) => *v == var,
            Expr::Unary(_, a) => a.depends_on(var),
            Expr::Binary(_, a, b) => a.depends_on(var) || b.depends_on(var),
        }
    }

    /// Free variables, in [`Var::ALL`] order.
    pub fn variables(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|v| self.depends_on(*v))
            .collect()
    }

    pub fn eval(&self, bindings: &Bindings) -> Result<f64, EvalError> {
        let value = match self {
            Expr::Const(c) => *c,
            Expr::Var(v) => return bindings.get(*v).ok_or(EvalError::Unbound(*v)),
            Expr::Unary(op, a) => {
                let a = a.eval(bindings)?;
                match op {
                    UnaryOp::Neg => -a,
                    UnaryOp::Sin => a.sin(),
                    UnaryOp::Cos => a.cos(),
                    UnaryOp::Tan => a.tan(),
                    UnaryOp::Exp => a.exp(),
                    UnaryOp::Sqrt if a < 0.0 => return Err(self.domain("square root of a negative number")),
                    UnaryOp::Sqrt => a.sqrt(),
                    UnaryOp::Abs => a.abs(),
                    UnaryOp::Ln if a <= 0.0 => return Err(self.domain("logarithm of a non-positive number")),
                    UnaryOp::Ln => a.ln(),
                }
            }
            Expr::Binary(op, a, b) => {
                let a = a.eval(bindings)?;
                let b = b.eval(bindings)?;
                match op {
                    BinaryOp::Add => a + b,
                    BinaryOp::Sub => a - b,
                    BinaryOp::Mul => a * b,
                    BinaryOp::Div if b == 0.0 => return Err(self.domain("division by zero")),
                    BinaryOp::Div => a / b,
                    BinaryOp::Pow => a.powf(b),
                }
            }
        };
        if value.is_finite() {
            Ok(value)
        } else {
            Err(self.domain("non-finite result"))
        }
    }

    /// Evaluates an expression that must not reference any variable.
    pub fn eval_const(&self) -> Result<f64, EvalError> {
        self.eval(&Bindings::new())
    }

    fn domain(&self, reason: &'static str) -> EvalError {
        EvalError::Domain {
            node: self.to_string(),
            reason,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Const(c) if *c < 0.0 || (*c == 0.0 && c.is_sign_negative()) => 3,
            Expr::Const(_) | Expr::Var(_) => 5,
            Expr::Unary(UnaryOp::Neg, _) => 3,
            Expr::Unary(_, _) => 5,
            Expr::Binary(op, _, _) => op.precedence(),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool) -> fmt::Result {
            if parens {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            Expr::Const(c) => write!(f, "{c:?}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Unary(UnaryOp::Neg, a) => {
                f.write_str("-")?;
                child(f, a, a.precedence() < 3)
            }
            Expr::Unary(op, a) => write!(f, "{}({a})", op.func_name().unwrap_or_default()),
            Expr::Binary(op, a, b) => {
                let p = op.precedence();
                let (left_parens, right_parens) = if *op == BinaryOp::Pow {
                    (a.precedence() <= p, b.precedence() < p)
                } else {
                    (a.precedence() < p, b.precedence() <= p)
                };
                child(f, a, left_parens)?;
                write!(f, " {} ", op.symbol())?;
                child(f, b, right_parens)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn eval_at(text: &str, b: Bindings) -> f64 {
        parse_expr(text).unwrap().eval(&b).unwrap()
    }

    #[test]
    fn constant_ignores_bindings() {
        let e = Expr::constant(5.0);
        assert_eq!(e.eval(&Bindings::new()).unwrap(), 5.0);
        assert_eq!(e.eval(&Bindings::new().with(Var::X, 3.0)).unwrap(), 5.0);
    }

    #[test]
    fn simple_evaluations() {
        let b = Bindings::new().with(Var::Z, 1.0).with(Var::T, 1.0);
        assert_eq!(eval_at("2*(z - t)", b), 0.0);
        let v = eval_at("sin(3*t)^2", Bindings::time(PI / 6.0));
        assert!((v - 1.0).abs() < 1e-15);
        for (x, y) in [(1.5, -2.25), (1e3, 7.0)] {
            let b = Bindings::new().with(Var::X, x).with(Var::Y, y);
            assert_eq!(eval_at("x*y - y*x", b), 0.0);
        }
    }

    #[test]
    fn plane_wave_phase_value() {
        let h = ScalarField::plane_wave(2.0);
        let b = Bindings::new()
            .with(Var::X, 0.0)
            .with(Var::Y, 0.0)
            .with(Var::Z, 0.0)
            .with(Var::T, 1.0)
            .with(Var::Theta, 0.0)
            .with(Var::Phi, 0.0);
        assert_eq!(h.expr().eval(&b).unwrap(), -2.0);
    }

    #[test]
    fn unbound_variable_is_reported() {
        let e = parse_expr("x + t").unwrap();
        assert_eq!(e.eval(&Bindings::time(0.0)), Err(EvalError::Unbound(Var::X)));
    }

    #[test]
    fn domain_errors_name_the_node() {
        let e = parse_expr("1 + sqrt(t - 2)").unwrap();
        match e.eval(&Bindings::time(0.0)) {
            Err(EvalError::Domain { node, .. }) => assert_eq!(node, "sqrt(t - 2.0)"),
            other => panic!("unexpected {other:?}"),
        }
        let e = parse_expr("1/(t-1)").unwrap();
        assert!(matches!(e.eval(&Bindings::time(1.0)), Err(EvalError::Domain { .. })));
        let e = parse_expr("ln(t)").unwrap();
        assert!(matches!(e.eval(&Bindings::time(0.0)), Err(EvalError::Domain { .. })));
        let e = parse_expr("exp(t)").unwrap();
        assert!(matches!(e.eval(&Bindings::time(1e4)), Err(EvalError::Domain { .. })));
    }

    #[test]
    fn display_keeps_structure() {
        for text in ["-2^2", "(-2)^2", "2^3^2", "(2^3)^2", "a - (b - c)", "a/(b*c)", "-(-t)"] {
            let e = Parser::new()
                .with_param("a", 1.5)
                .with_param("b", 2.5)
                .with_param("c", 0.75)
                .parse(text)
                .unwrap();
            let back = parse_expr(&e.to_string()).unwrap();
            assert_eq!(back, e, "{text} printed as {e}");
        }
    }

    #[test]
    fn variables_are_listed_in_order() {
        let e = parse_expr("t*phi + x").unwrap();
        assert_eq!(e.variables(), vec![Var::X, Var::T, Var::Phi]);
    }
}

use super::{BinaryOp, Expr, UnaryOp, Var};

// Constructors that fold constants and the 0/1 identities. Without this the
// derivative trees of the angle laws grow with every application of the
// product rule.

fn boxed(op: BinaryOp, a: Expr, b: Expr) -> Expr {
    Expr::Binary(op, Box::new(a), Box::new(b))
}

fn fold(op: BinaryOp, a: &Expr, b: &Expr) -> Option<Expr> {
    let (x, y) = (a.as_const()?, b.as_const()?);
    let v = match op {
        BinaryOp::Add => x + y,
        BinaryOp::Sub => x - y,
        BinaryOp::Mul => x * y,
        BinaryOp::Div if y == 0.0 => return None,
        BinaryOp::Div => x / y,
        BinaryOp::Pow => x.powf(y),
    };
    v.is_finite().then_some(Expr::Const(v))
}

pub(crate) fn add(a: Expr, b: Expr) -> Expr {
    if let Some(e) = fold(BinaryOp::Add, &a, &b) {
        return e;
    }
    match (a.as_const(), b.as_const()) {
        (Some(0.0), _) => b,
        (_, Some(0.0)) => a,
        _ => boxed(BinaryOp::Add, a, b),
    }
}

pub(crate) fn sub(a: Expr, b: Expr) -> Expr {
    if let Some(e) = fold(BinaryOp::Sub, &a, &b) {
        return e;
    }
    match (a.as_const(), b.as_const()) {
        (_, Some(0.0)) => a,
        (Some(0.0), _) => neg(b),
        _ => boxed(BinaryOp::Sub, a, b),
    }
}

pub(crate) fn mul(a: Expr, b: Expr) -> Expr {
    if let Some(e) = fold(BinaryOp::Mul, &a, &b) {
        return e;
    }
    match (a.as_const(), b.as_const()) {
        (Some(0.0), _) | (_, Some(0.0)) => Expr::Const(0.0),
        (Some(1.0), _) => b,
        (_, Some(1.0)) => a,
        (Some(-1.0), _) => neg(b),
        (_, Some(-1.0)) => neg(a),
        _ => boxed(BinaryOp::Mul, a, b),
    }
}

pub(crate) fn div(a: Expr, b: Expr) -> Expr {
    if let Some(e) = fold(BinaryOp::Div, &a, &b) {
        return e;
    }
    match (a.as_const(), b.as_const()) {
        (_, Some(1.0)) => a,
        (Some(0.0), None) => Expr::Const(0.0),
        _ => boxed(BinaryOp::Div, a, b),
    }
}

pub(crate) fn pow(a: Expr, b: Expr) -> Expr {
    if let Some(e) = fold(BinaryOp::Pow, &a, &b) {
        return e;
    }
    match b.as_const() {
        Some(1.0) => a,
        Some(0.0) => Expr::Const(1.0),
        _ => boxed(BinaryOp::Pow, a, b),
    }
}

pub(crate) fn neg(a: Expr) -> Expr {
    match a {
        Expr::Const(c) => Expr::Const(-c),
        Expr::Unary(UnaryOp::Neg, inner) => *inner,
        other => Expr::Unary(UnaryOp::Neg, Box::new(other)),
    }
}

fn unary(op: UnaryOp, a: Expr) -> Expr {
    Expr::Unary(op, Box::new(a))
}

impl Expr {
    /// Analytic partial derivative with respect to `var`.
    ///
    /// Points where the derivative does not exist (`abs` at zero, `sqrt` at
    /// zero) surface as [`super::EvalError::Domain`] when the result is
    /// evaluated there.
    pub fn diff(&self, var: Var) -> Expr {
        match self {
            Expr::Const(_) => Expr::Const(0.0),
            Expr::Var(v) => Expr::Const(if *v == var { 1.0 } else { 0.0 }),
            Expr::Unary(op, a) => {
                let da = a.diff(var);
                if da.as_const() == Some(0.0) {
                    return Expr::Const(0.0);
                }
                let a = (**a).clone();
                match op {
                    UnaryOp::Neg => neg(da),
                    UnaryOp::Sin => mul(unary(UnaryOp::Cos, a), da),
                    UnaryOp::Cos => neg(mul(unary(UnaryOp::Sin, a), da)),
                    UnaryOp::Tan => div(da, pow(unary(UnaryOp::Cos, a), Expr::Const(2.0))),
                    UnaryOp::Exp => mul(unary(UnaryOp::Exp, a), da),
                    UnaryOp::Sqrt => div(da, mul(Expr::Const(2.0), unary(UnaryOp::Sqrt, a))),
                    // d|u| = u'·u/|u|; undefined (division by zero) at u = 0.
                    UnaryOp::Abs => mul(da, div(a.clone(), unary(UnaryOp::Abs, a))),
                    UnaryOp::Ln => div(da, a),
                }
            }
            Expr::Binary(op, a, b) => {
                let (a, b) = (&**a, &**b);
                match op {
                    BinaryOp::Add => add(a.diff(var), b.diff(var)),
                    BinaryOp::Sub => sub(a.diff(var), b.diff(var)),
                    BinaryOp::Mul => add(mul(a.diff(var), b.clone()), mul(a.clone(), b.diff(var))),
                    BinaryOp::Div => div(
                        sub(mul(a.diff(var), b.clone()), mul(a.clone(), b.diff(var))),
                        pow(b.clone(), Expr::Const(2.0)),
                    ),
                    BinaryOp::Pow => {
                        let base_varies = a.depends_on(var);
                        let exp_varies = b.depends_on(var);
                        match (base_varies, exp_varies) {
                            (false, false) => Expr::Const(0.0),
                            (true, false) => mul(
                                mul(b.clone(), pow(a.clone(), sub(b.clone(), Expr::Const(1.0)))),
                                a.diff(var),
                            ),
                            (false, true) => mul(
                                mul(self.clone(), unary(UnaryOp::Ln, a.clone())),
                                b.diff(var),
                            ),
                            (true, true) => mul(
                                self.clone(),
                                add(
                                    mul(b.diff(var), unary(UnaryOp::Ln, a.clone())),
                                    div(mul(b.clone(), a.diff(var)), a.clone()),
                                ),
                            ),
                        }
                    }
                }
            }
        }
    }
}

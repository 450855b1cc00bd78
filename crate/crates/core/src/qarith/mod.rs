//! Exact arithmetic in the coefficient ring of the Möbius skein, and jet
//! evaluation at the roots of unity `ζ_N = e^{iπ/2N}`.

mod jet;
mod laurent;
mod ratfun;

pub use jet::{jet_eval, jet_of_poly, zeta, RootJet, ZERO_REL_TO_MAX, ZERO_REL_TO_TERMS};
pub use laurent::TwistLaurent;
pub use ratfun::RatFun;

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point; use jet evaluation")]
    PoleAtPoint,
    #[error("all computed jet coefficients vanish; precision exhausted")]
    PrecisionExhausted,
}

/// Arithmetic operations dispatched by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// `a op b` on polynomials; division is not a polynomial operation.
pub fn poly_arith(a: &TwistLaurent, b: &TwistLaurent, op: ArithOp) -> Option<TwistLaurent> {
    match op {
        ArithOp::Add => Some(a + b),
        ArithOp::Sub => Some(a - b),
        ArithOp::Mul => Some(a * b),
        ArithOp::Div => None,
    }
}

pub fn ratfun_arith(a: &RatFun, b: &RatFun, op: ArithOp) -> Result<RatFun, QArithError> {
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Sub => Ok(a - b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => a.checked_div(b),
    }
}

/// Numeric value of `f` at `A = a`.
pub fn eval_exact(f: &RatFun, a: Complex64) -> Result<Complex64, QArithError> {
    f.eval(a)
}

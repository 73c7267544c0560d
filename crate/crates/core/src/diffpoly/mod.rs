//! Exact differential-polynomial ring, λ-polynomials over it, and linear differential operators.

mod coeff;
mod display;
mod integrate;
mod json;
mod lambda;
mod monomial;
mod op;
mod poly;

pub use coeff::{rat, rational_to_f64, Coeff, GaussianRational, Rational};
pub use display::{CoeffFormat, Style};
pub use json::JsonCoeff;
pub use lambda::{KdvLambdaPoly, LambdaPoly};
pub use monomial::{monomials_of_weight, Alphabet, KdvField, Monomial, Var};
pub use op::LinDiffOp;
pub use poly::{DiffPoly, Poly};

/// Operators with KdV-ring coefficients, e.g. `L = D^2 + q`.
pub type KdvOp = LinDiffOp<Rational, KdvField>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiffPolyError {
    #[error("expression is not a total x-derivative")]
    NotExact,
    #[error("jet too short: {field}^({order}) required")]
    JetTooShort { field: &'static str, order: u32 },
    #[error("malformed polynomial JSON: {0}")]
    Json(String),
}

/// Total x-derivative.
pub fn total_derivative(p: &DiffPoly) -> DiffPoly {
    p.derivative()
}

/// `p''' + 4q p' + 2q' p`.
pub fn apply_b(p: &DiffPoly) -> DiffPoly {
    p.apply_b()
}

/// Variational derivative with respect to `q`.
pub fn euler_operator(p: &DiffPoly) -> DiffPoly {
    p.euler_operator(0)
}

pub fn formal_integral(p: &DiffPoly) -> Result<DiffPoly, DiffPolyError> {
    p.formal_integral()
}

pub fn op_commutator(a: &KdvOp, b: &KdvOp) -> KdvOp {
    a.commutator(b)
}

/// `L = D^2 + q`.
pub fn lax_l() -> KdvOp {
    KdvOp::new([(DiffPoly::one(), 2), (DiffPoly::q(0), 0)])
}

/// `P = -4D^3 - 6qD - 3q'`.
pub fn lax_p() -> KdvOp {
    KdvOp::new([(DiffPoly::from_int(-4), 3), (DiffPoly::q(0).scale_int(-6), 1), (DiffPoly::q(1).scale_int(-3), 0)])
}

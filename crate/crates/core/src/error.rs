use thiserror::Error;

/// Errors raised by bound evaluation, the oracle and certified quadrature.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("interval requires a < b (got a = {a}, b = {b})")]
    InvalidInterval { a: f64, b: f64 },

    #[error("s-convex domain requires a >= 0 (got a = {a})")]
    NegativeDomain { a: f64 },

    #[error("point {x} lies outside [{a}, {b}]")]
    OutOfInterval { x: f64, a: f64, b: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("missing parameter: {0}")]
    MissingParameter(&'static str),

    #[error("function `{0}` has no derivative evaluator")]
    MissingDerivative(String),

    #[error("non-finite value {value} from `{label}` at t = {at}")]
    NonFinite { label: String, at: f64, value: f64 },

    #[error("length mismatch: {nodes} nodes but {values} derivative values")]
    LengthMismatch { nodes: usize, values: usize },

    #[error("reference integrator did not converge on [{a}, {b}]: estimated error {error:e} > tol {tol:e} after {panels} panels")]
    NonConvergence {
        a: f64,
        b: f64,
        error: f64,
        tol: f64,
        panels: usize,
    },

    #[error("panel budget of {budget} exhausted: bound {bound:e} still above target {target:e}")]
    BudgetExhausted {
        budget: usize,
        bound: f64,
        target: f64,
    },

    #[error("cannot parse function spec `{spec}`: {reason}")]
    FunctionSpec { spec: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

//! Scalar functions of the radius: representation, evaluation, differentiation and quadrature.

mod expr;
mod interp;
mod poly;
mod quad;

pub use expr::{Domain, HyperFn, RadialExpr, SampledFn, TrigFn};
pub use interp::CubicTable;
pub use poly::Poly;
pub use quad::{cumulative, integrate, integrate_fn, integrate_with, QuadOptions};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RadialError {
    #[error("radius {r} outside the domain ({lo}, {hi}]")]
    OutOfDomain { r: f64, lo: f64, hi: f64 },
    #[error("non-finite value at r = {r}")]
    NonFinite { r: f64 },
    #[error("invalid grid: {0}")]
    BadGrid(String),
    #[error("invalid interval [{a}, {b}]")]
    BadInterval { a: f64, b: f64 },
    #[error("endpoint exponent {exponent} is not integrable")]
    NonIntegrable { exponent: f64 },
    #[error("quadrature did not converge: estimate {estimate}, error {error}")]
    NoConvergence { estimate: f64, error: f64 },
}

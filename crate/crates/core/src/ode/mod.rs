//! Singular initial-value problems `f'' + G f = 0, f(0)=0, f'(0)=κ` and
//! `g' + g²/κ + κG = 0, g ~ κ/t`, solved through the bounded variable `w = g − κs/t`.

pub mod dopri;
mod jacobi;
mod riccati;

pub use jacobi::JacobiSolution;
pub use riccati::{Phase, Piece, RiccatiSolution};
pub(crate) use riccati::piece_from_values as riccati_piece;

use thiserror::Error;

use crate::radial::{RadialError, RadialExpr};
use dopri::StepControl;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OdeError {
    #[error(transparent)]
    Radial(#[from] RadialError),
    #[error("kappa must be positive, got {0}")]
    BadKappa(f64),
    #[error("invalid horizon T = {0}")]
    BadHorizon(f64),
    #[error("cannot seed the solution: {0}")]
    Seed(String),
    #[error("inverse-square coefficient {0} exceeds 1/4: solutions oscillate at the origin")]
    Oscillatory(f64),
    #[error("step size underflow at t = {t} after {partial} accepted nodes")]
    StepUnderflow { t: f64, partial: usize },
    #[error("step budget exhausted at t = {t} after {partial} accepted nodes")]
    TooManySteps { t: f64, partial: usize },
    #[error("solution is not positive at t = {0}")]
    NotPositive(f64),
    #[error("asymptotic condition fails: {0}")]
    Asymptotic(String),
}

/// `G(t) = g0/t² + regular(t)`; the inverse-square part is the explicit singularity hint.
#[derive(Clone, Debug)]
pub struct Coefficient {
    inverse_square: f64,
    regular: RadialExpr,
}

impl Coefficient {
    pub fn new(regular: RadialExpr) -> Self {
        Coefficient { inverse_square: 0.0, regular }
    }

    pub fn with_inverse_square(g0: f64, regular: RadialExpr) -> Self {
        Coefficient { inverse_square: g0, regular }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(RadialExpr::constant(c))
    }

    /// `−a(a−1)/t²`
    pub fn power_model(a: f64) -> Self {
        Self::with_inverse_square(-a * (a - 1.0), RadialExpr::zero())
    }

    pub fn inverse_square(&self) -> f64 {
        self.inverse_square
    }

    pub fn regular(&self) -> &RadialExpr {
        &self.regular
    }

    pub fn eval(&self, t: f64) -> Result<f64, RadialError> {
        let reg = self.regular.eval(t)?;
        Ok(if self.inverse_square == 0.0 { reg } else { self.inverse_square / (t * t) + reg })
    }

    pub fn to_expr(&self) -> RadialExpr {
        if self.inverse_square == 0.0 {
            self.regular.clone()
        } else {
            RadialExpr::power(self.inverse_square, -2.0) + self.regular.clone()
        }
    }

    pub fn breakpoints(&self) -> Vec<f64> {
        self.regular.breakpoints()
    }

    /// Leading exponent `s` of the solution `t^s` selected by the inverse-square part.
    pub fn exponent(&self) -> Result<f64, OdeError> {
        let g0 = self.inverse_square;
        if g0 > 0.25 {
            return Err(OdeError::Oscillatory(g0));
        }
        Ok(0.5 * (1.0 + (1.0 - 4.0 * g0).sqrt()))
    }
}

impl From<RadialExpr> for Coefficient {
    fn from(e: RadialExpr) -> Self {
        Coefficient::new(e)
    }
}

/// Integration settings shared by both solvers.
#[derive(Clone, Debug)]
pub struct SolverOptions {
    /// Start radius; defaults to `1e−6·min(1, T)`.
    pub epsilon: Option<f64>,
    pub rtol: f64,
    pub atol: f64,
    /// Bound on the collocation residual at interval midpoints.
    pub res_tol: f64,
    pub root_tol: f64,
    /// Largest step; defaults to `T/256`.
    pub max_step: Option<f64>,
    pub max_refinements: usize,
    pub max_steps: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            epsilon: None,
            rtol: 1e-12,
            atol: 1e-14,
            res_tol: 1e-8,
            root_tol: 1e-12,
            max_step: None,
            max_refinements: 8,
            max_steps: 2_000_000,
        }
    }
}

impl SolverOptions {
    pub fn epsilon_for(&self, t_end: f64) -> f64 {
        self.epsilon.unwrap_or(1e-6 * t_end.min(1.0))
    }

    pub(crate) fn max_step_for(&self, t_end: f64) -> f64 {
        self.max_step.unwrap_or(t_end / 256.0)
    }

    pub(crate) fn control(&self, max_step: f64) -> StepControl {
        StepControl { rtol: self.rtol, atol: self.atol, max_step, max_steps: self.max_steps }
    }
}

/// Signed collocation residual statistics.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Residual {
    pub min: f64,
    pub max: f64,
}

impl Residual {
    pub fn max_abs(&self) -> f64 {
        self.min.abs().max(self.max.abs())
    }

    pub(crate) fn push(&mut self, v: f64) {
        self.min = self.min.min(v);
        self.max = self.max.max(v);
    }
}

/// Sign-preserving residual `a + b + c` scaled by `1 + |a| + |b| + |c|`.
pub(crate) fn relative(a: f64, b: f64, c: f64) -> f64 {
    (a + b + c) / (1.0 + a.abs() + b.abs() + c.abs())
}

/// Initial data in the bounded variables: `w(t₀)` and `ℓ(t₀) = ln(f(t₀)/(κ t₀^s))`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Seed {
    pub s: f64,
    pub w0: f64,
    pub ell0: f64,
}

pub(crate) fn seed(coef: &Coefficient, kappa: f64, t0: f64) -> Result<Seed, OdeError> {
    let s = coef.exponent()?;
    let lead = coef.regular().leading_order();
    if lead <= -1.0 {
        return Err(OdeError::Seed(format!(
            "coefficient behaves like r^{lead} at the origin; pass the inverse-square part as a hint"
        )));
    }
    if coef.inverse_square() == 0.0 && lead >= 0.0 {
        let g = coef.regular().eval(t0)?;
        let q = 1.0 - g * t0 * t0 / 6.0;
        return Ok(Seed { s, w0: -kappa * g * t0 / (3.0 * q), ell0: q.ln() });
    }
    if lead >= 0.0 {
        let g = coef.regular().eval(t0)?;
        let m = 2.0 * s + 1.0;
        return Ok(Seed { s, w0: -kappa * g * t0 / m, ell0: -g * t0 * t0 / (2.0 * m) });
    }
    Ok(Seed { s, w0: 0.0, ell0: 0.0 })
}

pub(crate) fn check_inputs(kappa: f64, t_end: f64) -> Result<(), OdeError> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(OdeError::BadKappa(kappa));
    }
    if !(t_end > 0.0) || !t_end.is_finite() {
        return Err(OdeError::BadHorizon(t_end));
    }
    Ok(())
}

/// `g` below this value hands the integration over to the pole-friendly variable.
pub(crate) fn switch_level(kappa: f64, t: f64) -> f64 {
    -10.0 * kappa * (1.0f64).max(1.0 / t)
}

/// Segment ends for restarting at coefficient breakpoints.
pub(crate) fn segments(coef: &Coefficient, t0: f64, t_end: f64) -> Vec<f64> {
    let mut v: Vec<f64> = coef.breakpoints().into_iter().filter(|&b| b > t0 && b < t_end).collect();
    v.push(t_end);
    v
}

pub use jacobi::solve_jacobi;
pub use riccati::solve_riccati;

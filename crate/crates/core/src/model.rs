//! Rotationally symmetric model manifolds and the curvature → Hessian/Laplacian bound catalog.

use std::fmt;
use std::io::{self, Write};

use thiserror::Error;

use crate::comparison::{ComparisonCertificate, ComparisonError, MarginSeries, Theorem, Tolerances};
use crate::ode::{solve_jacobi, Coefficient, OdeError, SolverOptions};
use crate::radial::{HyperFn, RadialError, RadialExpr};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error(transparent)]
    Ode(#[from] OdeError),
    #[error(transparent)]
    Radial(#[from] RadialError),
    #[error(transparent)]
    Comparison(#[from] ComparisonError),
    #[error("dimension must be at least 2, got {0}")]
    Dimension(usize),
    #[error("invalid warp: {0}")]
    Warp(String),
    #[error("parameter out of range for {name}: {detail}")]
    Range { name: &'static str, detail: String },
}

/// `dr² + f(r)² dθ²` on `(0, T)` in dimension `n`.
#[derive(Clone, Debug)]
pub struct ModelManifold {
    n: usize,
    warp: RadialExpr,
    horizon: f64,
    generalized: bool,
}

impl ModelManifold {
    /// Invert `K = −f''/f` by solving the Jacobi equation with `G = K`, `κ = 1`; `T` is cut at the first zero.
    pub fn from_curvature(n: usize, k: impl Into<Coefficient>, t_end: f64, opts: &SolverOptions) -> Result<Self, ModelError> {
        check_dim(n)?;
        let sol = solve_jacobi(k.into(), 1.0, t_end, opts)?;
        Ok(ModelManifold { n, warp: sol.warp(), horizon: sol.t_sup(), generalized: sol.is_generalized() })
    }

    /// Use a closed-form warp. Warps with `f'(0) ≠ 1` are admitted and flagged as generalized.
    pub fn from_warp(n: usize, warp: RadialExpr, t_end: f64) -> Result<Self, ModelError> {
        check_dim(n)?;
        if !(t_end > 0.0 && t_end.is_finite()) {
            return Err(ModelError::Warp(format!("horizon {t_end}")));
        }
        for r in geometric_grid(1e-6 * t_end.min(1.0), t_end, 256) {
            let v = warp.eval(r)?;
            if !(v > 0.0) {
                return Err(ModelError::Warp(format!("f({r}) = {v} is not positive")));
            }
        }
        let r0 = 1e-9 * t_end.min(1.0);
        if warp.eval(r0)?.abs() > 1e-6 {
            return Err(ModelError::Warp("f does not vanish at the origin".into()));
        }
        let slope = warp.derivative().eval(r0)?;
        Ok(ModelManifold { n, warp, horizon: t_end, generalized: (slope - 1.0).abs() > 1e-6 })
    }

    pub fn euclidean(n: usize, t_end: f64) -> Result<Self, ModelError> {
        Self::from_warp(n, RadialExpr::power(1.0, 1.0), t_end)
    }

    pub fn hyperbolic(n: usize, t_end: f64) -> Result<Self, ModelError> {
        Self::from_warp(n, RadialExpr::sinh(1.0), t_end)
    }

    /// Warp `r^A`: curvature `−A(A−1)/r²`, generalized when `A > 1`.
    pub fn power(n: usize, a: f64, t_end: f64) -> Result<Self, ModelError> {
        Self::from_warp(n, RadialExpr::power(1.0, a), t_end)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn warp(&self) -> &RadialExpr {
        &self.warp
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    /// `f'(0) ≠ 1`: only positivity and the curvature relation are guaranteed.
    pub fn is_generalized(&self) -> bool {
        self.generalized
    }

    /// Radial curvature `K = −f''/f`.
    pub fn curvature(&self) -> RadialExpr {
        -(self.warp.derivative().derivative() / self.warp.clone())
    }

    /// `Ric(∂r, ∂r) = (n−1) K`.
    pub fn radial_ricci(&self) -> RadialExpr {
        self.curvature().scale((self.n - 1) as f64)
    }

    /// Eigenvalue `f'/f` of `Hess r` orthogonal to `∂r`.
    pub fn hess_eigenvalue(&self) -> RadialExpr {
        self.warp.derivative() / self.warp.clone()
    }

    /// `Δr = (n−1) f'/f`.
    pub fn laplacian_r(&self) -> RadialExpr {
        self.hess_eigenvalue().scale((self.n - 1) as f64)
    }

    /// Mean curvature of the geodesic sphere, `Δr/(n−1)`.
    pub fn mean_curvature(&self) -> RadialExpr {
        self.hess_eigenvalue()
    }

    /// `g' + g²/(n−1) + (n−1)K` for `g = Δr`, on the given radii.
    pub fn laplacian_riccati_residual(&self, radii: &[f64]) -> Result<Vec<f64>, ModelError> {
        let m = (self.n - 1) as f64;
        let g = self.laplacian_r();
        let dg = g.derivative();
        let k = self.curvature();
        radii
            .iter()
            .map(|&r| {
                let v = g.eval(r)?;
                Ok(dg.eval(r)? + v * v / m + m * k.eval(r)?)
            })
            .collect()
    }

    /// Geometric sampling grid on `[2ε, 0.95T]` with `ε = 1e−6·min(1, T)`.
    pub fn sample_radii(&self, nodes: usize) -> Vec<f64> {
        geometric_grid(2e-6 * self.horizon.min(1.0), 0.95 * self.horizon, nodes)
    }
}

fn check_dim(n: usize) -> Result<(), ModelError> {
    if n < 2 {
        return Err(ModelError::Dimension(n));
    }
    Ok(())
}

pub fn geometric_grid(lo: f64, hi: f64, nodes: usize) -> Vec<f64> {
    let nodes = nodes.max(2);
    let q = (hi / lo).ln() / (nodes - 1) as f64;
    let mut g: Vec<f64> = (0..nodes).map(|i| lo * (q * i as f64).exp()).collect();
    g[nodes - 1] = hi;
    g
}

/// `A(A−1) = a²` solved for `A ≥ 1`.
pub fn power_from_square(a_sq: f64) -> f64 {
    0.5 * (1.0 + (1.0 + 4.0 * a_sq).sqrt())
}

pub fn square_from_power(a: f64) -> f64 {
    a * (a - 1.0)
}

/// Curvature hypotheses on the radial (or sectional, or radial Ricci) curvature. Shift `c ≥ 0`
/// replaces `r` by `c + r` in the curvature bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CurvatureHypothesis {
    /// `−(n−1)A(A−1)/(c+r)² ≤ Ric_rad`
    RicLowerPower { a: f64, c: f64 },
    /// `(n−1)B₁(1−B₁)/(c+r)² ≤ Ric_rad`
    RicLowerPositive { b1: f64, c: f64 },
    /// `−A(A−1)/(c+r)² ≤ K`
    SecLowerPower { a: f64, c: f64 },
    /// `K ≤ −A₁(A₁−1)/(c+r)²`
    SecUpperPower { a1: f64, c: f64 },
    /// `−A(A−1)/(c+r)² ≤ K ≤ −A₁(A₁−1)/(c+r)²`, `A ≥ A₁ ≥ 1`
    TwoSidedPower { a: f64, a1: f64, c: f64 },
    /// `−A/(c+r)² ≤ K ≤ −A₁/(c+r)²`, `0 ≤ A₁ ≤ A`
    TwoSidedRatio { a: f64, a1: f64, c: f64 },
    /// `B₁(1−B₁)/(c+r)² ≤ K`
    SecLowerPositive { b1: f64, c: f64 },
    /// `B₁/(c+r)² ≤ K`, `B₁ ≤ ¼`
    SecLowerQuarter { b1: f64, c: f64 },
    /// `K ≤ B(1−B)/(c+r)²`
    SecUpperPositive { b: f64, c: f64 },
    /// `K ≤ B/(c+r)²`, `B ≤ ¼`
    SecUpperQuarter { b: f64, c: f64 },
    /// `B₁/(c+r)² ≤ K ≤ B/(c+r)²`, `0 ≤ B₁ ≤ B ≤ ¼`
    PinchQuarter { b1: f64, b: f64, c: f64 },
    /// `B₁(1−B₁)/(c+r)² ≤ K ≤ B(1−B)/(c+r)²`
    PinchPositive { b1: f64, b: f64, c: f64 },
    /// `K = −A(A−1)/(c+r)²`
    EqualityPower { a: f64, c: f64 },
    /// `K = −A/(c+r)²`
    EqualityRatio { a: f64, c: f64 },
    /// `K = 0`
    Flat,
    /// `K ≤ 0`
    NonPositive,
    /// `K ≥ 0`
    NonNegative,
    /// `−A/(c+r)² ≤ K ≤ B/(c+r)²`, `B ≤ ¼`
    MixedSign { a: f64, b: f64, c: f64 },
    /// `−α² ≤ K ≤ −β²`
    ConstPinch { alpha: f64, beta: f64 },
    /// `−A/(1+r²)^{1+ε} ≤ K ≤ B/(1+r²)^{1+ε}`, `0 < B < 2ε`
    DecayPinch { a: f64, b: f64, eps: f64 },
}

/// Which operator a bound constrains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundTarget {
    HessianEigenvalue,
    Laplacian,
    MeanCurvature,
}

impl fmt::Display for BoundTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            BoundTarget::HessianEigenvalue => "hessian",
            BoundTarget::Laplacian => "laplacian",
            BoundTarget::MeanCurvature => "mean-curvature",
        })
    }
}

#[derive(Clone, Debug)]
pub struct BoundPair {
    pub lower: Option<RadialExpr>,
    pub upper: Option<RadialExpr>,
    pub applies_to: BoundTarget,
}

impl BoundPair {
    /// `(lower, upper)` at `r`, `None` where absent.
    pub fn eval(&self, r: f64) -> Result<(Option<f64>, Option<f64>), RadialError> {
        let lo = self.lower.as_ref().map(|e| e.eval(r)).transpose()?;
        let hi = self.upper.as_ref().map(|e| e.eval(r)).transpose()?;
        Ok((lo, hi))
    }

    /// CSV rows `r, lower, value, upper`; absent bounds are left empty.
    pub fn write_table<W: Write>(&self, value: &RadialExpr, radii: &[f64], out: W) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["r", "lower", "value", "upper"])?;
        let fmt = |v: Option<f64>| v.map_or(String::new(), |x| format!("{x:.16e}"));
        for &r in radii {
            let (lo, hi) = self.eval(r).map_err(io::Error::other)?;
            let v = value.eval(r).map_err(io::Error::other)?;
            w.write_record([format!("{r:.16e}"), fmt(lo), format!("{v:.16e}"), fmt(hi)])?;
        }
        w.flush()
    }
}

fn inv_shift_sq(coef: f64, c: f64) -> RadialExpr {
    if c == 0.0 {
        RadialExpr::power(coef, -2.0)
    } else {
        RadialExpr::shifted(RadialExpr::power(coef, -2.0), c)
    }
}

fn over_r(coef: f64) -> RadialExpr {
    RadialExpr::power(coef, -1.0)
}

fn over_shift(coef: f64, c: f64) -> RadialExpr {
    if c == 0.0 {
        over_r(coef)
    } else {
        RadialExpr::shifted(over_r(coef), c)
    }
}

fn range(ok: bool, name: &'static str, detail: impl FnOnce() -> String) -> Result<(), ModelError> {
    if ok {
        Ok(())
    } else {
        Err(ModelError::Range { name, detail: detail() })
    }
}

fn unit(x: f64) -> bool {
    (0.0..=1.0).contains(&x)
}

fn quarter(x: f64) -> bool {
    (0.0..=0.25).contains(&x)
}

/// `(1 + √(1 + 4B₁(1−B₁)))/2`
pub fn positive_lower_exponent(b1: f64) -> f64 {
    power_from_square(b1 * (1.0 - b1))
}

/// `|B − ½| + ½`
pub fn positive_upper_exponent(b: f64) -> f64 {
    (b - 0.5).abs() + 0.5
}

/// `(1 + √(1 − 4B))/2`
pub fn quarter_upper_exponent(b: f64) -> f64 {
    0.5 * (1.0 + (1.0 - 4.0 * b).sqrt())
}

impl CurvatureHypothesis {
    pub fn name(&self) -> &'static str {
        use CurvatureHypothesis::*;
        match self {
            RicLowerPower { .. } => "ric-lower-power",
            RicLowerPositive { .. } => "ric-lower-positive",
            SecLowerPower { .. } => "sec-lower-power",
            SecUpperPower { .. } => "sec-upper-power",
            TwoSidedPower { .. } => "two-sided-power",
            TwoSidedRatio { .. } => "two-sided-ratio",
            SecLowerPositive { .. } => "sec-lower-positive",
            SecLowerQuarter { .. } => "sec-lower-quarter",
            SecUpperPositive { .. } => "sec-upper-positive",
            SecUpperQuarter { .. } => "sec-upper-quarter",
            PinchQuarter { .. } => "pinch-quarter",
            PinchPositive { .. } => "pinch-positive",
            EqualityPower { .. } => "equality-power",
            EqualityRatio { .. } => "equality-ratio",
            Flat => "flat",
            NonPositive => "non-positive",
            NonNegative => "non-negative",
            MixedSign { .. } => "mixed-sign",
            ConstPinch { .. } => "const-pinch",
            DecayPinch { .. } => "decay-pinch",
        }
    }

    /// Ricci hypotheses only control the trace, so they carry no Hessian bound.
    pub fn is_ricci(&self) -> bool {
        matches!(self, CurvatureHypothesis::RicLowerPower { .. } | CurvatureHypothesis::RicLowerPositive { .. })
    }

    pub fn shift(&self) -> f64 {
        use CurvatureHypothesis::*;
        match *self {
            RicLowerPower { c, .. }
            | RicLowerPositive { c, .. }
            | SecLowerPower { c, .. }
            | SecUpperPower { c, .. }
            | TwoSidedPower { c, .. }
            | TwoSidedRatio { c, .. }
            | SecLowerPositive { c, .. }
            | SecLowerQuarter { c, .. }
            | SecUpperPositive { c, .. }
            | SecUpperQuarter { c, .. }
            | PinchQuarter { c, .. }
            | PinchPositive { c, .. }
            | EqualityPower { c, .. }
            | EqualityRatio { c, .. }
            | MixedSign { c, .. } => c,
            Flat | NonPositive | NonNegative | ConstPinch { .. } | DecayPinch { .. } => 0.0,
        }
    }

    /// Same hypothesis with shift `c`; variants without a shifted form are returned unchanged.
    pub fn with_shift(mut self, c_new: f64) -> Self {
        use CurvatureHypothesis::*;
        match &mut self {
            RicLowerPower { c, .. }
            | RicLowerPositive { c, .. }
            | SecLowerPower { c, .. }
            | SecUpperPower { c, .. }
            | TwoSidedPower { c, .. }
            | TwoSidedRatio { c, .. }
            | SecLowerPositive { c, .. }
            | SecLowerQuarter { c, .. }
            | SecUpperPositive { c, .. }
            | SecUpperQuarter { c, .. }
            | PinchQuarter { c, .. }
            | PinchPositive { c, .. }
            | EqualityPower { c, .. }
            | EqualityRatio { c, .. }
            | MixedSign { c, .. } => *c = c_new,
            Flat | NonPositive | NonNegative | ConstPinch { .. } | DecayPinch { .. } => {}
        }
        self
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        use CurvatureHypothesis::*;
        let name = self.name();
        range(self.shift() >= 0.0 && self.shift().is_finite(), name, || format!("shift c = {} < 0", self.shift()))?;
        match *self {
            RicLowerPower { a, .. } | SecLowerPower { a, .. } | EqualityPower { a, .. } => {
                range(a >= 1.0, name, || format!("A = {a} < 1"))
            }
            SecUpperPower { a1, .. } => range(a1 >= 1.0, name, || format!("A₁ = {a1} < 1")),
            TwoSidedPower { a, a1, .. } => range(a >= a1 && a1 >= 1.0, name, || format!("need A ≥ A₁ ≥ 1, got A = {a}, A₁ = {a1}")),
            TwoSidedRatio { a, a1, .. } => range(a >= a1 && a1 >= 0.0, name, || format!("need 0 ≤ A₁ ≤ A, got A = {a}, A₁ = {a1}")),
            EqualityRatio { a, .. } => range(a >= 0.0, name, || format!("A = {a} < 0")),
            RicLowerPositive { b1, .. } | SecLowerPositive { b1, .. } => range(unit(b1), name, || format!("B₁ = {b1} outside [0, 1]")),
            SecUpperPositive { b, .. } => range(unit(b), name, || format!("B = {b} outside [0, 1]")),
            SecLowerQuarter { b1, .. } => range(quarter(b1), name, || format!("B₁ = {b1} outside [0, ¼]")),
            SecUpperQuarter { b, .. } => range(quarter(b), name, || format!("B = {b} outside [0, ¼]")),
            PinchQuarter { b1, b, .. } => {
                range(quarter(b1) && quarter(b) && b1 <= b, name, || format!("need 0 ≤ B₁ ≤ B ≤ ¼, got B₁ = {b1}, B = {b}"))
            }
            PinchPositive { b1, b, .. } => range(unit(b1) && unit(b), name, || format!("need B, B₁ in [0, 1], got B₁ = {b1}, B = {b}")),
            MixedSign { a, b, .. } => range(a >= 0.0 && quarter(b), name, || format!("need A ≥ 0, 0 ≤ B ≤ ¼, got A = {a}, B = {b}")),
            ConstPinch { alpha, beta } => range(alpha >= beta && beta > 0.0, name, || format!("need α ≥ β > 0, got α = {alpha}, β = {beta}")),
            DecayPinch { a, b, eps } => range(
                eps > 0.0 && a >= 0.0 && b > 0.0 && b < 2.0 * eps,
                name,
                || format!("need ε > 0, A ≥ 0, 0 < B < 2ε, got A = {a}, B = {b}, ε = {eps}"),
            ),
            Flat | NonPositive | NonNegative => Ok(()),
        }
    }

    /// Curvature window `(lower, upper)` for `K`.
    pub fn curvature_window(&self) -> (Option<RadialExpr>, Option<RadialExpr>) {
        use CurvatureHypothesis::*;
        let decay = |coef: f64, eps: f64| {
            let base = RadialExpr::polynomial(vec![1.0, 0.0, 1.0]);
            RadialExpr::constant(coef) / pow_expr(base, 1.0 + eps)
        };
        match *self {
            RicLowerPower { a, c } | SecLowerPower { a, c } => (Some(inv_shift_sq(-square_from_power(a), c)), None),
            RicLowerPositive { b1, c } | SecLowerPositive { b1, c } => (Some(inv_shift_sq(b1 * (1.0 - b1), c)), None),
            SecUpperPower { a1, c } => (None, Some(inv_shift_sq(-square_from_power(a1), c))),
            TwoSidedPower { a, a1, c } => {
                (Some(inv_shift_sq(-square_from_power(a), c)), Some(inv_shift_sq(-square_from_power(a1), c)))
            }
            TwoSidedRatio { a, a1, c } => (Some(inv_shift_sq(-a, c)), Some(inv_shift_sq(-a1, c))),
            SecLowerQuarter { b1, c } => (Some(inv_shift_sq(b1, c)), None),
            SecUpperPositive { b, c } => (None, Some(inv_shift_sq(b * (1.0 - b), c))),
            SecUpperQuarter { b, c } => (None, Some(inv_shift_sq(b, c))),
            PinchQuarter { b1, b, c } => (Some(inv_shift_sq(b1, c)), Some(inv_shift_sq(b, c))),
            PinchPositive { b1, b, c } => (Some(inv_shift_sq(b1 * (1.0 - b1), c)), Some(inv_shift_sq(b * (1.0 - b), c))),
            EqualityPower { a, c } => {
                let k = inv_shift_sq(-square_from_power(a), c);
                (Some(k.clone()), Some(k))
            }
            EqualityRatio { a, c } => {
                let k = inv_shift_sq(-a, c);
                (Some(k.clone()), Some(k))
            }
            Flat => (Some(RadialExpr::zero()), Some(RadialExpr::zero())),
            NonPositive => (None, Some(RadialExpr::zero())),
            NonNegative => (Some(RadialExpr::zero()), None),
            MixedSign { a, b, c } => (Some(inv_shift_sq(-a, c)), Some(inv_shift_sq(b, c))),
            ConstPinch { alpha, beta } => (Some(RadialExpr::constant(-alpha * alpha)), Some(RadialExpr::constant(-beta * beta))),
            DecayPinch { a, b, eps } => (Some(decay(-a, eps)), Some(decay(b, eps))),
        }
    }

    /// Bounds on the Hessian eigenvalue `f'/f` implied by the hypothesis.
    fn eigenvalue_bounds(&self) -> (Option<RadialExpr>, Option<RadialExpr>) {
        use CurvatureHypothesis::*;
        let coth = |a: f64| RadialExpr::hyper(HyperFn::Cosh, a, a) / RadialExpr::sinh(a);
        match *self {
            RicLowerPower { a, .. } | SecLowerPower { a, .. } => (None, Some(over_r(a))),
            RicLowerPositive { b1, .. } | SecLowerPositive { b1, .. } => (None, Some(over_r(positive_lower_exponent(b1)))),
            SecUpperPower { a1, c } => (Some(over_shift(a1, c)), None),
            TwoSidedPower { a, a1, c } => (Some(over_shift(a1, c)), Some(over_r(a))),
            TwoSidedRatio { a, a1, c } => (Some(over_shift(power_from_square(a1), c)), Some(over_r(power_from_square(a)))),
            SecLowerQuarter { b1, .. } => (None, Some(over_r(power_from_square(b1)))),
            SecUpperPositive { b, .. } => (Some(over_r(positive_upper_exponent(b))), None),
            SecUpperQuarter { b, .. } => (Some(over_r(quarter_upper_exponent(b))), None),
            PinchQuarter { b1, b, .. } => (Some(over_r(quarter_upper_exponent(b))), Some(over_r(power_from_square(b1)))),
            PinchPositive { b1, b, .. } => (Some(over_r(positive_upper_exponent(b))), Some(over_r(positive_lower_exponent(b1)))),
            EqualityPower { a, c } => (Some(over_shift(a, c)), Some(over_r(a))),
            EqualityRatio { a, c } => {
                let e = power_from_square(a);
                (Some(over_shift(e, c)), Some(over_r(e)))
            }
            Flat => (Some(over_r(1.0)), Some(over_r(1.0))),
            NonPositive => (Some(over_r(1.0)), None),
            NonNegative => (None, Some(over_r(1.0))),
            MixedSign { a, b, .. } => (Some(over_r(quarter_upper_exponent(b))), Some(over_r(power_from_square(a)))),
            ConstPinch { alpha, beta } => (Some(coth(beta)), Some(coth(alpha))),
            DecayPinch { a, b, eps } => (Some(over_r(1.0 - b / (2.0 * eps))), Some(over_r((a / (2.0 * eps)).exp()))),
        }
    }
}

fn pow_expr(base: RadialExpr, p: f64) -> RadialExpr {
    RadialExpr::sampled(std::sync::Arc::new(PowOf { base, p }))
}

/// `base(r)^p` for a positive base.
#[derive(Debug)]
struct PowOf {
    base: RadialExpr,
    p: f64,
}

impl crate::radial::SampledFn for PowOf {
    fn eval(&self, r: f64) -> Result<f64, RadialError> {
        Ok(self.base.eval(r)?.powf(self.p))
    }
    fn derivative(&self) -> RadialExpr {
        RadialExpr::constant(self.p) * self.base.derivative() * pow_expr(self.base.clone(), self.p - 1.0)
    }
    fn domain(&self) -> crate::radial::Domain {
        self.base.domain()
    }
    fn leading_order(&self) -> f64 {
        self.p * self.base.leading_order()
    }
}

impl fmt::Display for CurvatureHypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Closed-form bounds for the Hessian eigenvalue, `Δr` and the mean curvature.
pub fn bound_catalog(h: &CurvatureHypothesis, n: usize) -> Result<Vec<BoundPair>, ModelError> {
    check_dim(n)?;
    h.validate()?;
    let (lo, hi) = h.eigenvalue_bounds();
    let m = (n - 1) as f64;
    let mut out = Vec::with_capacity(3);
    if !h.is_ricci() {
        out.push(BoundPair { lower: lo.clone(), upper: hi.clone(), applies_to: BoundTarget::HessianEigenvalue });
    }
    out.push(BoundPair {
        lower: lo.clone().map(|e| e.scale(m)),
        upper: hi.clone().map(|e| e.scale(m)),
        applies_to: BoundTarget::Laplacian,
    });
    out.push(BoundPair { lower: lo, upper: hi, applies_to: BoundTarget::MeanCurvature });
    Ok(out)
}

/// Check the hypothesis on `M` (margins weighted by `r²`) and certify `lower ≤ f'/f ≤ upper`
/// (margins weighted by `r`) on `nodes` geometric radii in `[2ε, 0.95T]`.
pub fn verify_bounds(
    m: &ModelManifold,
    h: &CurvatureHypothesis,
    tol: &Tolerances,
    nodes: usize,
) -> Result<ComparisonCertificate, ModelError> {
    let pairs = bound_catalog(h, m.dim())?;
    let pair = pairs.iter().find(|p| p.applies_to == BoundTarget::MeanCurvature).expect("catalog always has a mean-curvature entry");
    let radii = m.sample_radii(nodes);
    let k = m.curvature();
    let (k_lo, k_hi) = h.curvature_window();
    let mut hyp = Vec::with_capacity(radii.len());
    for &r in &radii {
        let kv = k.eval(r)?;
        let below = k_lo.as_ref().map(|e| e.eval(r).map(|v| kv - v)).transpose()?.unwrap_or(f64::INFINITY);
        let above = k_hi.as_ref().map(|e| e.eval(r).map(|v| v - kv)).transpose()?.unwrap_or(f64::INFINITY);
        let margin = r * r * below.min(above);
        if margin < -tol.hypothesis {
            return Err(ComparisonError::HypothesisViolated { radius: r, margin }.into());
        }
        hyp.push(if margin.is_finite() { margin } else { 0.0 });
    }
    let value = m.hess_eigenvalue();
    let mut conclusions = Vec::new();
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for &r in &radii {
        let v = value.eval(r)?;
        let (lo, hi) = pair.eval(r)?;
        if let Some(l) = lo {
            lower.push(r * (v - l));
        }
        if let Some(u) = hi {
            upper.push(r * (u - v));
        }
    }
    if pair.lower.is_some() {
        conclusions.push(MarginSeries::new("lower", lower));
    }
    if pair.upper.is_some() {
        conclusions.push(MarginSeries::new("upper", upper));
    }
    Ok(ComparisonCertificate::assemble(Theorem::ModelBound, (1.0, 1.0), radii, hyp, conclusions, Vec::new(), *tol))
}

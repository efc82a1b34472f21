//! Energy growth for `F`-conservation laws: the `F`-degree and lower degree, the monotonicity
//! exponent `λ` for seven curvature conditions, ball-energy monotonicity, the surface-to-ball
//! density ratio, the little-o vanishing rule and the Dirichlet applicability predicate.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::model::{CurvatureHypothesis, ModelError, ModelManifold};
use crate::radial::{integrate_fn, QuadOptions, RadialError, RadialExpr};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EnergyError {
    #[error("row {row} does not apply: {detail}")]
    NotApplicable { row: &'static str, detail: String },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("t = {0} outside the domain of F")]
    Domain(f64),
    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),
    #[error("r·h₂ = {value} < 1 at r = {r}")]
    HessianTooSmall { r: f64, value: f64 },
    #[error(transparent)]
    Radial(#[from] RadialError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Integrand `F` of the energy `∫ F(|ω|²/2)`.
#[derive(Clone, Debug, PartialEq)]
pub enum FKind {
    /// `F(t) = t`
    Identity,
    /// `F(t) = (2t)^{p/2}/p`
    PPower { p: f64 },
    /// `F(t) = √(1+2t) − 1`
    BornInfeldPlus,
    /// `F(t) = 1 − √(1−2t)`, `t < ½`
    BornInfeldMinus,
    /// Tabulated `F` with `F(0) = 0`, interpolated by cubic splines.
    Grid { t: Vec<f64>, f: Vec<f64> },
}

impl FKind {
    pub fn validate(&self) -> Result<(), EnergyError> {
        match self {
            FKind::PPower { p } if !(*p > 1.0) => Err(EnergyError::Parameter(format!("p = {p} must exceed 1"))),
            FKind::Grid { t, f } => {
                if t.len() != f.len() || t.len() < 4 {
                    return Err(EnergyError::Parameter("grid F needs at least four (t, F) samples".into()));
                }
                if t[0] != 0.0 || f[0] != 0.0 {
                    return Err(EnergyError::Parameter("grid F must start at F(0) = 0".into()));
                }
                let e = self.grid_expr()?;
                let d = e.derivative();
                for &s in t {
                    if !(d.eval(s)? > 0.0) {
                        return Err(EnergyError::Parameter(format!("F' ≤ 0 at t = {s}")));
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    fn grid_expr(&self) -> Result<RadialExpr, EnergyError> {
        match self {
            FKind::Grid { t, f } => Ok(RadialExpr::grid(t.clone(), f.clone())?),
            _ => Err(EnergyError::Parameter("not a grid F".into())),
        }
    }

    fn check_domain(&self, t: f64) -> Result<(), EnergyError> {
        let ok = match self {
            FKind::BornInfeldMinus => (0.0..0.5).contains(&t),
            FKind::Grid { t: ts, .. } => t >= 0.0 && t <= *ts.last().expect("validated grid"),
            _ => t >= 0.0 && t.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(EnergyError::Domain(t))
        }
    }

    pub fn eval(&self, t: f64) -> Result<f64, EnergyError> {
        self.check_domain(t)?;
        Ok(match self {
            FKind::Identity => t,
            FKind::PPower { p } => (2.0 * t).powf(p / 2.0) / p,
            FKind::BornInfeldPlus => 2.0 * t / ((1.0 + 2.0 * t).sqrt() + 1.0),
            FKind::BornInfeldMinus => 2.0 * t / (1.0 + (1.0 - 2.0 * t).sqrt()),
            FKind::Grid { .. } => self.grid_expr()?.eval(t)?,
        })
    }

    pub fn derivative(&self, t: f64) -> Result<f64, EnergyError> {
        self.check_domain(t)?;
        Ok(match self {
            FKind::Identity => 1.0,
            FKind::PPower { p } => (2.0 * t).powf(p / 2.0 - 1.0),
            FKind::BornInfeldPlus => 1.0 / (1.0 + 2.0 * t).sqrt(),
            FKind::BornInfeldMinus => 1.0 / (1.0 - 2.0 * t).sqrt(),
            FKind::Grid { .. } => self.grid_expr()?.derivative().eval(t)?,
        })
    }

    /// `tF'(t)/F(t)` for `t > 0`, in cancellation-free form for the catalog kinds.
    pub fn degree_ratio(&self, t: f64) -> Result<f64, EnergyError> {
        if !(t > 0.0) {
            return Err(EnergyError::Domain(t));
        }
        self.check_domain(t)?;
        Ok(match self {
            FKind::Identity => 1.0,
            FKind::PPower { p } => p / 2.0,
            FKind::BornInfeldPlus => 0.5 + 0.5 / (1.0 + 2.0 * t).sqrt(),
            FKind::BornInfeldMinus => {
                let s = (1.0 - 2.0 * t).sqrt();
                (1.0 + s) / (2.0 * s)
            }
            FKind::Grid { .. } => t * self.derivative(t)? / self.eval(t)?,
        })
    }

    /// `d_F = sup tF'/F`
    pub fn f_degree(&self) -> Result<f64, EnergyError> {
        self.validate()?;
        Ok(match self {
            FKind::Identity => 1.0,
            FKind::PPower { p } => p / 2.0,
            FKind::BornInfeldPlus => 1.0,
            FKind::BornInfeldMinus => f64::INFINITY,
            FKind::Grid { t, .. } => self.grid_extreme(t, f64::max, f64::NEG_INFINITY)?,
        })
    }

    /// `l_F = inf tF'/F`
    pub fn f_lower_degree(&self) -> Result<f64, EnergyError> {
        self.validate()?;
        Ok(match self {
            FKind::Identity => 1.0,
            FKind::PPower { p } => p / 2.0,
            FKind::BornInfeldPlus => 0.5,
            FKind::BornInfeldMinus => 1.0,
            FKind::Grid { t, .. } => self.grid_extreme(t, f64::min, f64::INFINITY)?,
        })
    }

    fn grid_extreme(&self, t: &[f64], pick: fn(f64, f64) -> f64, init: f64) -> Result<f64, EnergyError> {
        t.iter().skip(1).try_fold(init, |acc, &s| Ok(pick(acc, self.degree_ratio(s)?)))
    }

    /// `(inf, sup)` of `tF'/F` over `nodes` log-spaced points of `[lo, hi]`.
    pub fn degree_range_numeric(&self, lo: f64, hi: f64, nodes: usize) -> Result<(f64, f64), EnergyError> {
        let step = (hi / lo).ln() / (nodes.max(2) - 1) as f64;
        (0..nodes.max(2)).try_fold((f64::INFINITY, f64::NEG_INFINITY), |(mn, mx), i| {
            let v = self.degree_ratio(lo * (step * i as f64).exp())?;
            Ok((mn.min(v), mx.max(v)))
        })
    }
}

impl fmt::Display for FKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            FKind::Identity => "identity".to_string(),
            FKind::PPower { p } => format!("ppower:{p}"),
            FKind::BornInfeldPlus => "bi-plus".to_string(),
            FKind::BornInfeldMinus => "bi-minus".to_string(),
            FKind::Grid { t, .. } => format!("grid:{}", t.len()),
        };
        f.pad(&text)
    }
}

impl std::str::FromStr for FKind {
    type Err = EnergyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let k = match s {
            "identity" => FKind::Identity,
            "bi-plus" => FKind::BornInfeldPlus,
            "bi-minus" => FKind::BornInfeldMinus,
            _ => match s.strip_prefix("ppower:").map(str::parse::<f64>) {
                Some(Ok(p)) => FKind::PPower { p },
                _ => return Err(EnergyError::Parameter(format!("unknown F `{s}`; expected identity, ppower:<p>, bi-plus, bi-minus"))),
            },
        };
        k.validate()?;
        Ok(k)
    }
}

/// The seven curvature conditions with their parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LambdaRow {
    /// `−A(A−1)/r² ≤ K ≤ −A₁(A₁−1)/r²`, `A ≥ A₁ ≥ 1`
    TwoSidedPower { a: f64, a1: f64 },
    /// `−A/r² ≤ K ≤ −A₁/r²`, `0 ≤ A₁ ≤ A`
    TwoSidedRatio { a: f64, a1: f64 },
    /// `B₁(1−B₁)/r² ≤ K ≤ B(1−B)/r²`
    PinchPositive { b: f64, b1: f64 },
    /// `B₁/r² ≤ K ≤ B/r²`, `0 ≤ B₁ ≤ B ≤ ¼`
    PinchQuarter { b: f64, b1: f64 },
    /// `−α² ≤ K ≤ −β²`
    ConstPinch { alpha: f64, beta: f64 },
    /// `K = 0`
    Flat,
    /// `−A/(1+r²)^{1+ε} ≤ K ≤ B/(1+r²)^{1+ε}`
    DecayPinch { a: f64, b: f64, eps: f64 },
}

impl LambdaRow {
    pub fn label(&self) -> &'static str {
        match self {
            LambdaRow::TwoSidedPower { .. } => "i",
            LambdaRow::TwoSidedRatio { .. } => "ii",
            LambdaRow::PinchPositive { .. } => "iii",
            LambdaRow::PinchQuarter { .. } => "iv",
            LambdaRow::ConstPinch { .. } => "v",
            LambdaRow::Flat => "vi",
            LambdaRow::DecayPinch { .. } => "vii",
        }
    }

    pub fn hypothesis(&self) -> CurvatureHypothesis {
        use CurvatureHypothesis as H;
        match *self {
            LambdaRow::TwoSidedPower { a, a1 } => H::TwoSidedPower { a, a1, c: 0.0 },
            LambdaRow::TwoSidedRatio { a, a1 } => H::TwoSidedRatio { a, a1, c: 0.0 },
            LambdaRow::PinchPositive { b, b1 } => H::PinchPositive { b1, b, c: 0.0 },
            LambdaRow::PinchQuarter { b, b1 } => H::PinchQuarter { b1, b, c: 0.0 },
            LambdaRow::ConstPinch { alpha, beta } => H::ConstPinch { alpha, beta },
            LambdaRow::Flat => H::Flat,
            LambdaRow::DecayPinch { a, b, eps } => H::DecayPinch { a, b, eps },
        }
    }

    pub fn params(&self) -> String {
        match *self {
            LambdaRow::TwoSidedPower { a, a1 } | LambdaRow::TwoSidedRatio { a, a1 } => format!("A={a};A1={a1}"),
            LambdaRow::PinchPositive { b, b1 } | LambdaRow::PinchQuarter { b, b1 } => format!("B={b};B1={b1}"),
            LambdaRow::ConstPinch { alpha, beta } => format!("alpha={alpha};beta={beta}"),
            LambdaRow::Flat => String::new(),
            LambdaRow::DecayPinch { a, b, eps } => format!("A={a};B={b};eps={eps}"),
        }
    }

    /// `(r·h₁, r·h₂)` with `h₁ ≤ Hess r ≤ h₂` off the radial direction, in the form entering `λ`.
    fn exponent_parts(&self) -> (f64, f64) {
        let half = |x: f64| (1.0 + x.sqrt()) / 2.0;
        match *self {
            LambdaRow::TwoSidedPower { a, a1 } => (a1, a),
            LambdaRow::TwoSidedRatio { a, a1 } => (half(1.0 + 4.0 * a1), half(1.0 + 4.0 * a)),
            LambdaRow::PinchPositive { b, b1 } => ((b - 0.5).abs() + 0.5, half(1.0 + 4.0 * b1 * (1.0 - b1))),
            LambdaRow::PinchQuarter { b, b1 } => (half(1.0 - 4.0 * b), half(1.0 + 4.0 * b1)),
            LambdaRow::ConstPinch { alpha, beta } => (1.0, alpha / beta),
            LambdaRow::Flat => (1.0, 1.0),
            LambdaRow::DecayPinch { a, b, eps } => (1.0 - b / (2.0 * eps), (a / (2.0 * eps)).exp()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LambdaQuery {
    pub row: LambdaRow,
    pub k: usize,
    pub d_f: f64,
    pub n: usize,
}

impl LambdaQuery {
    pub fn new(row: LambdaRow, k: usize, d_f: f64, n: usize) -> Self {
        LambdaQuery { row, k, d_f, n }
    }

    /// `1 + (n−1)rh₁ − 2k·d_F·rh₂`, without any applicability check.
    pub fn master(&self) -> f64 {
        let (h1, h2) = self.row.exponent_parts();
        1.0 + (self.n as f64 - 1.0) * h1 - 2.0 * self.k as f64 * self.d_f * h2
    }

    /// Quantity the row requires to be positive (nonnegative for the constant pinch).
    pub fn side_value(&self) -> f64 {
        match self.row {
            LambdaRow::ConstPinch { alpha, beta } => (self.n as f64 - 1.0) * beta - 2.0 * self.k as f64 * alpha * self.d_f,
            _ => self.master(),
        }
    }

    pub fn applicable(&self) -> Result<(), EnergyError> {
        let row = self.row.label();
        if self.k == 0 || self.k > self.n {
            return Err(EnergyError::Parameter(format!("form degree k = {} outside 1..={}", self.k, self.n)));
        }
        if !(self.d_f > 0.0) {
            return Err(EnergyError::Parameter(format!("d_F = {} must be positive and finite", self.d_f)));
        }
        self.row.hypothesis().validate().map_err(|e| EnergyError::NotApplicable { row, detail: e.to_string() })?;
        let v = self.side_value();
        let ok = if matches!(self.row, LambdaRow::ConstPinch { .. }) { v >= 0.0 } else { v > 0.0 };
        if ok {
            Ok(())
        } else {
            Err(EnergyError::NotApplicable { row, detail: format!("side quantity {v} is not positive") })
        }
    }
}

/// Monotonicity exponent `λ` for an applicable row.
pub fn lambda_exponent(q: &LambdaQuery) -> Result<f64, EnergyError> {
    q.applicable()?;
    Ok(q.master())
}

/// Side quantity of a row in the `p`-harmonic parameterization (`k = 1`, `d_F = p/2`),
/// where the constant-pinch row reads `(n−1)β − pα`.
pub fn p_harmonic_side_value(row: LambdaRow, p: f64, n: usize) -> f64 {
    let half = |x: f64| (1.0 + x.sqrt()) / 2.0;
    let nm1 = n as f64 - 1.0;
    match row {
        LambdaRow::TwoSidedPower { a, a1 } => 1.0 + nm1 * a1 - p * a,
        LambdaRow::TwoSidedRatio { a, a1 } => 1.0 + nm1 * half(1.0 + 4.0 * a1) - p * half(1.0 + 4.0 * a),
        LambdaRow::PinchPositive { b, b1 } => 1.0 + nm1 * ((b - 0.5).abs() + 0.5) - p * half(1.0 + 4.0 * b1 * (1.0 - b1)),
        LambdaRow::PinchQuarter { b, b1 } => 1.0 + nm1 * half(1.0 - 4.0 * b) - p * half(1.0 + 4.0 * b1),
        LambdaRow::ConstPinch { alpha, beta } => nm1 * beta - p * alpha,
        LambdaRow::Flat => n as f64 - p,
        LambdaRow::DecayPinch { a, b, eps } => n as f64 - nm1 * b / (2.0 * eps) - p * (a / (2.0 * eps)).exp(),
    }
}

/// Rows whose `p`-harmonic side quantity differs from the general one at `k = 1`, `d_F = p/2`.
pub fn parameterization_disagreements(rows: &[LambdaRow], p: f64, n: usize, tol: f64) -> Vec<(LambdaRow, f64, f64)> {
    rows.iter()
        .filter_map(|&row| {
            let general = LambdaQuery::new(row, 1, p / 2.0, n).side_value();
            let special = p_harmonic_side_value(row, p, n);
            ((general - special).abs() > tol * (1.0 + general.abs())).then_some((row, general, special))
        })
        .collect()
}

/// Worst violation of `ρ ↦ E(ρ)/ρ^λ` nondecreasing.
#[derive(Clone, Debug, PartialEq)]
pub struct MonotonicityReport {
    pub lambda: f64,
    pub ratios: Vec<f64>,
    /// `(ρ₁, ρ₂, relative drop)` maximizing `(ratio(ρ₁) − ratio(ρ₂))/ratio(ρ₁)` over `ρ₁ < ρ₂`
    pub worst: Option<(f64, f64, f64)>,
    pub passed: bool,
}

/// Relative slack for monotonicity checks.
pub const MONOTONE_SLACK: f64 = 1e-8;

/// Ball energy `ρ ↦ ∫_{B_ρ} F(|ω|²/2) dv`.
#[derive(Clone, Debug)]
pub struct BallEnergy(pub RadialExpr);

impl BallEnergy {
    pub fn values(&self, radii: &[f64]) -> Result<Vec<f64>, EnergyError> {
        radii.iter().map(|&r| self.0.eval(r).map_err(EnergyError::from)).collect()
    }

    /// `E(ρ) = ∫₀^ρ e f^{n−1}` on `radii`; the sphere area is omitted.
    pub fn from_density(m: &ModelManifold, density: &RadialExpr, radii: &[f64], tol: f64) -> Result<Vec<f64>, EnergyError> {
        let f = m.warp();
        let n = m.dim() as i32;
        let opts = QuadOptions::tol(tol);
        let mut acc = 0.0;
        let mut prev = 0.0;
        radii
            .iter()
            .map(|&r| {
                acc += integrate_fn(|s| Ok(density.eval(s)? * f.eval(s)?.powi(n - 1)), prev, r, &opts)?;
                prev = r;
                Ok(acc)
            })
            .collect()
    }
}

/// Check `E(ρ)/ρ^λ` nondecreasing on increasing `radii`.
pub fn check_monotone_values(radii: &[f64], values: &[f64], lambda: f64) -> Result<MonotonicityReport, EnergyError> {
    if radii.len() != values.len() || radii.windows(2).any(|w| w[1] <= w[0]) || radii.first().is_some_and(|&r| r <= 0.0) {
        return Err(EnergyError::Parameter("radii must be positive and strictly increasing, one value each".into()));
    }
    let ratios: Vec<f64> = radii.iter().zip(values).map(|(r, e)| e / r.powf(lambda)).collect();
    let mut best: Option<(f64, f64, f64)> = None;
    let mut peak = 0;
    for j in 1..ratios.len() {
        if ratios[j - 1] > ratios[peak] {
            peak = j - 1;
        }
        let drop = (ratios[peak] - ratios[j]) / ratios[peak].abs().max(f64::MIN_POSITIVE);
        if drop > best.map_or(0.0, |b| b.2) {
            best = Some((radii[peak], radii[j], drop));
        }
    }
    let passed = best.is_none_or(|b| b.2 <= MONOTONE_SLACK);
    Ok(MonotonicityReport { lambda, ratios, worst: best, passed })
}

pub fn check_monotonicity(e: &BallEnergy, lambda: f64, radii: &[f64]) -> Result<MonotonicityReport, EnergyError> {
    check_monotone_values(radii, &e.values(radii)?, lambda)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityReport {
    /// `ρ e(ρ) f(ρ)^{n−1} / ∫₀^ρ e f^{n−1}` on the grid.
    pub ratios: Vec<f64>,
    pub min_ratio: f64,
    pub ratio_holds: bool,
    /// Monotonicity of the ball energy built from the same density.
    pub monotonicity: MonotonicityReport,
}

/// Surface-to-ball ratio `≥ λ` and, from it, monotonicity of `E/ρ^λ`.
pub fn check_density_ratio(m: &ModelManifold, density: &RadialExpr, lambda: f64, radii: &[f64], tol: f64) -> Result<DensityReport, EnergyError> {
    let ball = BallEnergy::from_density(m, density, radii, 1e-12)?;
    let f = m.warp();
    let n = m.dim() as i32;
    let ratios = radii
        .iter()
        .zip(&ball)
        .map(|(&r, &b)| Ok(r * density.eval(r)? * f.eval(r)?.powi(n - 1) / b))
        .collect::<Result<Vec<f64>, EnergyError>>()?;
    let min_ratio = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let monotonicity = check_monotone_values(radii, &ball, lambda)?;
    Ok(DensityReport { ratios, min_ratio, ratio_holds: min_ratio >= lambda - tol, monotonicity })
}

/// Little-o test of `E = c ρ^α ln(e+ρ)^β` against `ρ^λ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VanishingReport {
    pub little_o: bool,
    pub coefficient: f64,
    /// For `little_o` with `c ≠ 0`: radii `ρ₁ < ρ₂` with `E(ρ₁)/ρ₁^λ > E(ρ₂)/ρ₂^λ`, so `E` cannot be
    /// monotone unless it vanishes.
    pub contradiction: Option<(f64, f64)>,
}

const TIE: f64 = 1e-12;

pub fn vanishing_test(c: f64, alpha: f64, beta: f64, lambda: f64) -> VanishingReport {
    let little_o = if (alpha - lambda).abs() <= TIE * (1.0 + lambda.abs()) { beta < 0.0 } else { alpha < lambda };
    let log_ratio = |r: f64| (alpha - lambda) * r.ln() + beta * (std::f64::consts::E + r).ln().ln();
    let contradiction = (little_o && c != 0.0)
        .then(|| {
            let base = log_ratio(1.0);
            (1..=2000).map(|i| 1.5f64.powi(i)).find(|&r| log_ratio(r) < base - 1e-9).map(|r| (1.0, r))
        })
        .flatten();
    VanishingReport { little_o, coefficient: c, contradiction }
}

/// Dirichlet vanishing applies: `k = 1` row applicable, `l_F ≥ ½`, starlike domain.
pub fn dirichlet_applicable(q: &LambdaQuery, l_f: f64, starlike: bool) -> bool {
    q.k == 1 && q.applicable().is_ok() && l_f >= 0.5 && starlike
}

/// Boundary radius `ρ(θ)` as a function of the unit direction `θ`.
pub type BoundaryRadius = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Bounded domain around the origin of `ℝⁿ`.
#[derive(Clone)]
pub enum StarDomain {
    Ball { n: usize, radius: f64 },
    Ellipsoid { semi_axes: Vec<f64> },
    /// Boundary `{ρ(θ)θ}` for unit `θ`.
    RadialGraph { n: usize, rho: BoundaryRadius },
    Annulus { n: usize, inner: f64, outer: f64 },
}

impl fmt::Debug for StarDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StarDomain::Ball { n, radius } => write!(f, "Ball(n={n}, R={radius})"),
            StarDomain::Ellipsoid { semi_axes } => write!(f, "Ellipsoid({semi_axes:?})"),
            StarDomain::RadialGraph { n, .. } => write!(f, "RadialGraph(n={n})"),
            StarDomain::Annulus { n, inner, outer } => write!(f, "Annulus(n={n}, {inner}..{outer})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StarlikeReport {
    /// Smallest sampled `⟨∂r, ν⟩`.
    pub min_normal_component: f64,
    pub starlike: bool,
}

/// `⟨∂r, ν⟩ = ρ/√(ρ² + |∇_θ ρ|²)` at each unit direction in `samples`.
pub fn starlike_check(domain: &StarDomain, samples: &[Vec<f64>]) -> Result<StarlikeReport, EnergyError> {
    type Radius<'a> = Box<dyn Fn(&[f64]) -> f64 + 'a>;
    let (n, rho): (usize, Radius<'_>) = match domain {
        StarDomain::Ball { n, radius } => (*n, Box::new(move |_: &[f64]| *radius)),
        StarDomain::Ellipsoid { semi_axes } => (
            semi_axes.len(),
            Box::new(move |th: &[f64]| 1.0 / th.iter().zip(semi_axes).map(|(t, a)| (t / a).powi(2)).sum::<f64>().sqrt()),
        ),
        StarDomain::RadialGraph { n, rho } => (*n, Box::new(move |th: &[f64]| rho(th))),
        StarDomain::Annulus { inner, outer, .. } => {
            return Err(EnergyError::UnsupportedDomain(format!(
                "annulus {inner} < r < {outer} is not a radial graph; its inner boundary has ⟨∂r, ν⟩ = −1"
            )))
        }
    };
    let mut min = f64::INFINITY;
    for th in samples {
        let norm = th.iter().map(|x| x * x).sum::<f64>().sqrt();
        if th.len() != n || !(norm > 0.0) {
            return Err(EnergyError::Parameter(format!("sample direction {th:?} is not a nonzero vector in R^{n}")));
        }
        let u: Vec<f64> = th.iter().map(|x| x / norm).collect();
        let r0 = rho(&u);
        if !(r0 > 0.0) || !r0.is_finite() {
            return Err(EnergyError::UnsupportedDomain(format!("boundary radius {r0} in direction {u:?}")));
        }
        let g = |x: &[f64]| {
            let m = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            rho(&x.iter().map(|v| v / m).collect::<Vec<_>>())
        };
        let h = 1e-6 * r0;
        let grad_sq: f64 = (0..n)
            .map(|i| {
                let mut xp: Vec<f64> = u.iter().map(|v| v * r0).collect();
                let mut xm = xp.clone();
                xp[i] += h;
                xm[i] -= h;
                ((g(&xp) - g(&xm)) / (2.0 * h)).powi(2)
            })
            .sum();
        min = min.min(1.0 / (1.0 + grad_sq * r0 * r0).sqrt());
    }
    Ok(StarlikeReport { min_normal_component: min, starlike: min >= 0.0 })
}

/// `(⟨S, ∇X♭⟩, (1+(n−1)rh₁−2d_F rh₂)F)` for `ω = e(r)dr` at `r`, with `h₁ = h₂ = f'/f`, `X = r∇r`.
pub fn stress_energy_pairing(m: &ModelManifold, fk: &FKind, e: &RadialExpr, r: f64) -> Result<(f64, f64), EnergyError> {
    let rh = r * m.mean_curvature().eval(r)?;
    if rh < 1.0 - 1e-12 {
        return Err(EnergyError::HessianTooSmall { r, value: rh });
    }
    let n = m.dim() as f64;
    let ev = e.eval(r)?;
    let t = 0.5 * ev * ev;
    let (f, fp) = (fk.eval(t)?, fk.derivative(t)?);
    let pairing = (f - fp * ev * ev) + (n - 1.0) * rh * f;
    let bound = (1.0 + (n - 1.0) * rh - 2.0 * fk.f_degree()? * rh) * f;
    Ok((pairing, bound))
}

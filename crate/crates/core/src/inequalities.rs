//! Sharp constants for weighted Hardy-Sobolev inequalities on model manifolds, and
//! quadrature verifiers using radial test functions.
//!
//! With `u` radial and `dv = f^{n−1} dr dθ`, the sphere area cancels from both sides, so every
//! integral is one-dimensional:
//! `I_a = ∫ u²/r^{2a}`, `I_b = ∫ u'²/r^{2b}`, `I_mid = ∫ u²/r^{a+b+1}`.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::comparison::Tolerances;
use crate::model::{positive_upper_exponent, verify_bounds, CurvatureHypothesis, ModelError, ModelManifold};
use crate::radial::{integrate_fn, QuadOptions, RadialError, RadialExpr};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InequalityError {
    #[error("{row}: side condition {detail} fails")]
    SideCondition { row: String, detail: String },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("model does not satisfy {hypothesis}: {detail}")]
    HypothesisMismatch { hypothesis: String, detail: String },
    #[error("no constant for {case} under {row}")]
    UnmatchedRow { case: String, row: String },
    #[error("Hardy exponent p = {p} must exceed (n−1)A + 1 = {bound}")]
    HardyExponent { p: f64, bound: f64 },
    #[error("support [{0}, {1}] must satisfy 0 < r₁ < r₂ < T = {2}")]
    Support(f64, f64, f64),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Radial(#[from] RadialError),
}

/// One row of the three CKN condition tables. `c > 0` selects the shifted row where one exists.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CknCondition {
    /// `K ≥ 0`, `n ≤ a+b+1`
    NonNegative,
    /// `K ≤ 0`, `a+b+1 ≤ n`
    NonPositive,
    /// `K = 0`
    Flat,
    /// `Ric ≥ −(n−1)A(A−1)/(c+r)²`, `n ≤ (a+b+A)/A`
    RicLowerPower { a: f64, c: f64 },
    /// `Ric ≥ (n−1)B₁(1−B₁)/(c+r)²`, `n ≤ (2a+2b+1+s)/(1+s)`, `s = √(1+4B₁(1−B₁))`
    RicLowerPositive { b1: f64, c: f64 },
    /// `Ric ≥ 0`, `n ≤ a+b+1`
    RicNonNegative,
    /// `K ≥ −A(A−1)/(c+r)²`, `n ≤ (a+b+A)/A`
    SecLowerPower { a: f64, c: f64 },
    /// `K ≤ −A₁(A₁−1)/(c+r)²`, `n ≥ (a+b+A₁)/A₁`
    SecUpperPower { a1: f64, c: f64 },
    /// `K = −A(A−1)/(c+r)²`
    EqualityPower { a: f64, c: f64 },
    /// `K = −A/(c+r)²`
    EqualityRatio { a: f64, c: f64 },
    /// `K ≥ B₁(1−B₁)/(c+r)²`, same side condition as the Ricci analogue
    SecLowerPositive { b1: f64, c: f64 },
    /// `K ≤ B(1−B)/(c+r)²`, `n ≥ (a+b+m)/m`, `m = |B−½|+½`
    SecUpperPositive { b: f64, c: f64 },
}

fn roman(i: usize) -> &'static str {
    ["i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x", "xi", "xii"][i - 1]
}

/// `√(1+4B₁(1−B₁))`
fn root_b1(b1: f64) -> f64 {
    (1.0 + 4.0 * b1 * (1.0 - b1)).sqrt()
}

impl CknCondition {
    /// All twenty rows for one parameter set, unshifted and shifted by `c`.
    pub fn all_rows(a: f64, a1: f64, b: f64, b1: f64, c: f64) -> Vec<CknCondition> {
        use CknCondition::*;
        let mut v = vec![NonNegative, NonPositive, Flat];
        for s in [0.0, c] {
            v.push(RicLowerPower { a, c: s });
        }
        for s in [0.0, c] {
            v.push(RicLowerPositive { b1, c: s });
        }
        v.push(RicNonNegative);
        for (lo, hi) in [
            (SecLowerPower { a, c: 0.0 }, SecLowerPower { a, c }),
            (SecUpperPower { a1, c: 0.0 }, SecUpperPower { a1, c }),
            (EqualityPower { a, c: 0.0 }, EqualityPower { a, c }),
            (EqualityRatio { a, c: 0.0 }, EqualityRatio { a, c }),
            (SecLowerPositive { b1, c: 0.0 }, SecLowerPositive { b1, c }),
            (SecUpperPositive { b, c: 0.0 }, SecUpperPositive { b, c }),
        ] {
            v.push(lo);
            v.push(hi);
        }
        v
    }

    fn shift(&self) -> f64 {
        use CknCondition::*;
        match *self {
            RicLowerPower { c, .. }
            | RicLowerPositive { c, .. }
            | SecLowerPower { c, .. }
            | SecUpperPower { c, .. }
            | EqualityPower { c, .. }
            | EqualityRatio { c, .. }
            | SecLowerPositive { c, .. }
            | SecUpperPositive { c, .. } => c,
            NonNegative | NonPositive | Flat | RicNonNegative => 0.0,
        }
    }

    /// Table name (`sign`, `ricci`, `radial`) and row numeral.
    pub fn row(&self) -> (&'static str, &'static str) {
        use CknCondition::*;
        let s = usize::from(self.shift() > 0.0);
        match self {
            NonNegative => ("sign", "i"),
            NonPositive => ("sign", "ii"),
            Flat => ("sign", "iii"),
            RicLowerPower { .. } => ("ricci", roman(1 + s)),
            RicLowerPositive { .. } => ("ricci", roman(3 + s)),
            RicNonNegative => ("ricci", "v"),
            SecLowerPower { .. } => ("radial", roman(1 + s)),
            SecUpperPower { .. } => ("radial", roman(3 + s)),
            EqualityPower { .. } => ("radial", roman(5 + s)),
            EqualityRatio { .. } => ("radial", roman(7 + s)),
            SecLowerPositive { .. } => ("radial", roman(9 + s)),
            SecUpperPositive { .. } => ("radial", roman(11 + s)),
        }
    }

    /// The curvature hypothesis a model must satisfy for this row.
    pub fn hypothesis(&self) -> CurvatureHypothesis {
        use CknCondition as C;
        use CurvatureHypothesis as H;
        match *self {
            C::NonNegative => H::NonNegative,
            C::NonPositive => H::NonPositive,
            C::Flat => H::Flat,
            C::RicLowerPower { a, c } => H::RicLowerPower { a, c },
            C::RicLowerPositive { b1, c } => H::RicLowerPositive { b1, c },
            C::RicNonNegative => H::RicLowerPositive { b1: 0.0, c: 0.0 },
            C::SecLowerPower { a, c } => H::SecLowerPower { a, c },
            C::SecUpperPower { a1, c } => H::SecUpperPower { a1, c },
            C::EqualityPower { a, c } => H::EqualityPower { a, c },
            C::EqualityRatio { a, c } => H::EqualityRatio { a, c },
            C::SecLowerPositive { b1, c } => H::SecLowerPositive { b1, c },
            C::SecUpperPositive { b, c } => H::SecUpperPositive { b, c },
        }
    }

    pub fn validate(&self) -> Result<(), InequalityError> {
        self.hypothesis().validate().map_err(|e| InequalityError::Parameter(e.to_string()))
    }

    /// `Some((lhs, rhs))` for the side condition `lhs ≤ rhs`, `None` when any `a, b` is allowed.
    fn side_condition(&self, a: f64, b: f64, n: f64) -> Option<(f64, f64, String)> {
        use CknCondition::*;
        let ab = a + b;
        match *self {
            NonNegative | RicNonNegative => Some((n, ab + 1.0, "n ≤ a+b+1".into())),
            NonPositive => Some((ab + 1.0, n, "a+b+1 ≤ n".into())),
            RicLowerPower { a: cap, .. } | SecLowerPower { a: cap, .. } => Some((n, (ab + cap) / cap, "n ≤ (a+b+A)/A".into())),
            RicLowerPositive { b1, .. } | SecLowerPositive { b1, .. } => {
                let s = root_b1(b1);
                Some((n, (2.0 * ab + 1.0 + s) / (1.0 + s), "n ≤ (2a+2b+1+s)/(1+s)".into()))
            }
            SecUpperPower { a1, .. } => Some(((ab + a1) / a1, n, "n ≥ (a+b+A₁)/A₁".into())),
            SecUpperPositive { b: bb, .. } => {
                let m = positive_upper_exponent(bb);
                Some(((ab + m) / m, n, "n ≥ (a+b+m)/m".into()))
            }
            Flat | EqualityPower { .. } | EqualityRatio { .. } => None,
        }
    }

    /// Closed-form constant of the row, without checking the side condition.
    pub fn formula(&self, a: f64, b: f64, n: usize) -> f64 {
        use CknCondition::*;
        let (ab, nm1) = (a + b, n as f64 - 1.0);
        match *self {
            NonNegative => -(n as f64 - (ab + 1.0)) / 2.0,
            NonPositive => (n as f64 - (ab + 1.0)) / 2.0,
            Flat => ((n as f64 - (ab + 1.0)) / 2.0).abs(),
            RicLowerPower { a: cap, .. } | SecLowerPower { a: cap, .. } => (ab - nm1 * cap) / 2.0,
            RicLowerPositive { b1, .. } | SecLowerPositive { b1, .. } => (2.0 * ab - nm1 * (1.0 + root_b1(b1))) / 4.0,
            RicNonNegative => (ab + 1.0 - n as f64) / 2.0,
            SecUpperPower { a1, .. } => -(ab - nm1 * a1) / 2.0,
            EqualityPower { a: cap, .. } => ((ab - nm1 * cap) / 2.0).abs(),
            EqualityRatio { a: cap, .. } => ((2.0 * ab - nm1 * (1.0 + (1.0 + 4.0 * cap).sqrt())) / 4.0).abs(),
            SecUpperPositive { b: bb, .. } => (nm1 * positive_upper_exponent(bb) - ab) / 2.0,
        }
    }
}

impl fmt::Display for CknCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (t, r) = self.row();
        f.pad(&format!("{t}-{r}"))
    }
}

/// Relative slack allowed when comparing side-condition endpoints.
const SIDE_TOL: f64 = 1e-12;

/// The sharp constant `C(a, b)` of the CKN-type inequality under `cond`.
pub fn ckn_constant(cond: &CknCondition, a: f64, b: f64, n: usize) -> Result<f64, InequalityError> {
    cond.validate()?;
    if n < 2 {
        return Err(InequalityError::Parameter(format!("dimension n = {n} < 2")));
    }
    if let Some((lhs, rhs, detail)) = cond.side_condition(a, b, n as f64) {
        if lhs > rhs + SIDE_TOL * (1.0 + rhs.abs()) {
            return Err(InequalityError::SideCondition { row: cond.to_string(), detail: format!("{detail} ({lhs} > {rhs})") });
        }
    }
    Ok(cond.formula(a, b, n))
}

/// The seven specializations `(a, b)` of the CKN inequality.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CostaCase {
    /// `a = b+1`, free parameter `b`
    I,
    /// `b = a+1`, free parameter `a`
    II,
    /// `a = −b−1`, free parameter `b`
    III,
    /// `(0, 1)`
    IV,
    /// `(−1, 1)`
    V,
    /// `(0, 0)`
    VI,
    /// `(1, 0)`
    VII,
}

impl CostaCase {
    pub const ALL: [CostaCase; 7] =
        [CostaCase::I, CostaCase::II, CostaCase::III, CostaCase::IV, CostaCase::V, CostaCase::VI, CostaCase::VII];

    pub fn weights(&self, free: f64) -> (f64, f64) {
        match self {
            CostaCase::I => (free + 1.0, free),
            CostaCase::II => (free, free + 1.0),
            CostaCase::III => (-free - 1.0, free),
            CostaCase::IV => (0.0, 1.0),
            CostaCase::V => (-1.0, 1.0),
            CostaCase::VI => (0.0, 0.0),
            CostaCase::VII => (1.0, 0.0),
        }
    }

    pub fn label(&self) -> &'static str {
        roman(*self as usize + 1)
    }
}

impl std::str::FromStr for CostaCase {
    type Err = InequalityError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CostaCase::ALL
            .into_iter()
            .find(|c| c.label() == s)
            .ok_or_else(|| InequalityError::Parameter(format!("unknown case `{s}`, expected i..vii")))
    }
}

/// `C_k` of the `k`-th specialization: the square of the CKN constant at its `(a, b)`.
/// Only the Ricci and radial tables carry these constants.
pub fn costa_constant(case: CostaCase, free: f64, cond: &CknCondition, n: usize) -> Result<f64, InequalityError> {
    cond.validate()?;
    if cond.row().0 == "sign" {
        return Err(InequalityError::UnmatchedRow { case: case.label().into(), row: cond.to_string() });
    }
    let (a, b) = case.weights(free);
    Ok(cond.formula(a, b, n).powi(2))
}

/// `((p−1−(n−1)A)/p)^p`
pub fn hardy_constant(p: f64, n: usize, a: f64) -> Result<f64, InequalityError> {
    if a < 1.0 {
        return Err(InequalityError::Parameter(format!("A = {a} < 1")));
    }
    let bound = (n as f64 - 1.0) * a + 1.0;
    if !(p > bound) {
        return Err(InequalityError::HardyExponent { p, bound });
    }
    Ok(((p - bound) / p).powf(p))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MarginReport {
    pub constant: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs`
    pub slack: f64,
    pub passed: bool,
}

impl MarginReport {
    /// Pass when `slack ≥ −tol·max(1, |rhs|)`.
    pub fn new(constant: f64, lhs: f64, rhs: f64, tol: f64) -> Self {
        let slack = rhs - lhs;
        MarginReport { constant, lhs, rhs, slack, passed: slack >= -tol * rhs.abs().max(1.0) }
    }
}

/// Default slack tolerance for verified inequalities.
pub const SLACK_TOL: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct CknScenario {
    pub model: ModelManifold,
    pub a: f64,
    pub b: f64,
    pub u: RadialExpr,
    pub support: (f64, f64),
    pub quad_tol: f64,
}

impl CknScenario {
    pub fn new(model: ModelManifold, a: f64, b: f64, u: RadialExpr, support: (f64, f64)) -> Result<Self, InequalityError> {
        let (r1, r2) = support;
        if !(0.0 < r1 && r1 < r2 && r2 < model.horizon()) {
            return Err(InequalityError::Support(r1, r2, model.horizon()));
        }
        Ok(CknScenario { model, a, b, u, support, quad_tol: 1e-9 })
    }

    /// Test function `((r−r₁)/L)^p ((r₂−r)/L)^q`, `p, q ≥ 3`, scaled to peak value 1.
    pub fn with_bump(model: ModelManifold, a: f64, b: f64, r1: f64, r2: f64, p: f64, q: f64) -> Result<Self, InequalityError> {
        if p < 3.0 || q < 3.0 {
            return Err(InequalityError::Parameter(format!("bump exponents ({p}, {q}) must be ≥ 3")));
        }
        let x = p / (p + q);
        let peak = x.powf(p) * (1.0 - x).powf(q);
        Self::new(model, a, b, RadialExpr::bump(r1, r2, p, q).scale(1.0 / peak), (r1, r2))
    }

    pub fn with_quad_tol(mut self, tol: f64) -> Self {
        self.quad_tol = tol;
        self
    }

    pub fn integrals(&self) -> Result<CknIntegrals, InequalityError> {
        let (r1, r2) = self.support;
        let n = self.model.dim() as i32;
        let f = self.model.warp();
        let lap = self.model.laplacian_r();
        let du = self.u.derivative();
        let opts = QuadOptions::tol(self.quad_tol);
        let (a, b) = (self.a, self.b);
        let q = |g: &dyn Fn(f64, f64, f64) -> Result<f64, RadialError>| -> Result<f64, RadialError> {
            integrate_fn(|r| Ok(g(r, self.u.eval(r)?, du.eval(r)?)? * f.eval(r)?.powi(n - 1)), r1, r2, &opts)
        };
        Ok(CknIntegrals {
            weighted_l2: q(&|r, u, _| Ok(u * u * r.powf(-2.0 * a)))?,
            weighted_gradient: q(&|r, _, du| Ok(du * du * r.powf(-2.0 * b)))?,
            middle: q(&|r, u, _| Ok(u * u * r.powf(-(a + b + 1.0))))?,
            identity: q(&|r, u, _| Ok(u * u * r.powf(-(a + b + 1.0)) * (r * lap.eval(r)? - a - b)))?,
            identity_by_parts: -2.0 * q(&|r, u, du| Ok(u * du * r.powf(-(a + b))))?,
        })
    }
}

/// The radial integrals of a CKN scenario.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CknIntegrals {
    /// `∫ u²/r^{2a} dv`
    pub weighted_l2: f64,
    /// `∫ |∇u|²/r^{2b} dv`
    pub weighted_gradient: f64,
    /// `∫ u²/r^{a+b+1} dv`
    pub middle: f64,
    /// `∫ u²(rΔr − a − b)/r^{a+b+1} dv`
    pub identity: f64,
    /// `−2∫ u u'/r^{a+b} dv`, equal to `identity` after integrating the divergence by parts
    pub identity_by_parts: f64,
}

impl CknIntegrals {
    pub fn geometric_mean(&self) -> f64 {
        (self.weighted_l2 * self.weighted_gradient).sqrt()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdentityReport {
    pub margin: MarginReport,
    pub integrals: CknIntegrals,
    /// `|identity − identity_by_parts| ≤ 10·quad_tol·max(1, |identity|)`
    pub consistent: bool,
}

/// `½|∫ u²(rΔr−a−b)/r^{a+b+1}| ≤ √(I_a I_b)`, valid on any model.
pub fn verify_identity(s: &CknScenario) -> Result<IdentityReport, InequalityError> {
    let it = s.integrals()?;
    let margin = MarginReport::new(0.5, 0.5 * it.identity.abs(), it.geometric_mean(), SLACK_TOL);
    let consistent = (it.identity - it.identity_by_parts).abs() <= 10.0 * s.quad_tol * it.identity.abs().max(1.0);
    Ok(IdentityReport { margin, integrals: it, consistent })
}

/// `C·I_mid ≤ √(I_a I_b)` with an externally supplied constant.
pub fn verify_ckn_with_constant(s: &CknScenario, c: f64) -> Result<MarginReport, InequalityError> {
    let it = s.integrals()?;
    Ok(MarginReport::new(c, c * it.middle, it.geometric_mean(), SLACK_TOL))
}

/// Nodes used when checking a model against a row's curvature hypothesis.
const HYPOTHESIS_NODES: usize = 64;

fn require_hypothesis(m: &ModelManifold, h: &CurvatureHypothesis) -> Result<(), InequalityError> {
    match verify_bounds(m, h, &Tolerances::default(), HYPOTHESIS_NODES) {
        Ok(_) => Ok(()),
        Err(ModelError::Comparison(e)) => Err(InequalityError::HypothesisMismatch { hypothesis: h.name().into(), detail: e.to_string() }),
        Err(e) => Err(e.into()),
    }
}

/// Constant from `cond`, after confirming the model satisfies its curvature hypothesis.
pub fn verify_ckn(s: &CknScenario, cond: &CknCondition) -> Result<MarginReport, InequalityError> {
    let c = ckn_constant(cond, s.a, s.b, s.model.dim())?;
    require_hypothesis(&s.model, &cond.hypothesis())?;
    verify_ckn_with_constant(s, c)
}

/// Weighted norms of `u`: `H_{a,b}`, `L²_{(a+b+1)/2}`, `D_b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmbeddingNorms {
    pub h_ab: f64,
    pub l_mid: f64,
    pub d_gamma: f64,
    /// `L_mid ≤ H_ab/√(2C)`
    pub embedding_holds: bool,
}

pub fn embedding_norms(s: &CknScenario, c: f64) -> Result<EmbeddingNorms, InequalityError> {
    if !(c > 0.0) {
        return Err(InequalityError::Parameter(format!("embedding needs C > 0, got {c}")));
    }
    let it = s.integrals()?;
    let h_ab = (it.weighted_l2 + it.weighted_gradient).sqrt();
    let l_mid = it.middle.sqrt();
    let bound = h_ab / (2.0 * c).sqrt();
    Ok(EmbeddingNorms { h_ab, l_mid, d_gamma: it.weighted_gradient.sqrt(), embedding_holds: l_mid <= bound * (1.0 + SLACK_TOL) + SLACK_TOL })
}

/// Ratio `√(I_a I_b)/I_mid` for a bump with inner radius `ratio·r₂` and outer exponent `q`.
pub fn bump_ratio(model: &ModelManifold, a: f64, b: f64, r2: f64, inner_ratio: f64, q: f64) -> Result<f64, InequalityError> {
    let s = CknScenario::with_bump(model.clone(), a, b, inner_ratio * r2, r2, 3.0, q)?;
    let it = s.integrals()?;
    Ok(it.geometric_mean() / it.middle)
}

/// Smallest [`bump_ratio`] over a coarse grid in `(inner_ratio, q)` followed by coordinate refinement.
pub fn near_sharpness_search(model: &ModelManifold, a: f64, b: f64, r2: f64) -> Result<(f64, f64, f64), InequalityError> {
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for &ratio in &[1e-4, 1e-3, 1e-2, 0.05, 0.1, 0.2, 0.4] {
        for &q in &[3.0, 6.0, 12.0, 24.0, 48.0, 96.0] {
            let v = bump_ratio(model, a, b, r2, ratio, q)?;
            if v < best.0 {
                best = (v, ratio, q);
            }
        }
    }
    let (mut step_r, mut step_q) = (2.0f64, 2.0f64);
    for _ in 0..24 {
        let (_, ratio, q) = best;
        for (cr, cq) in [(ratio * step_r, q), (ratio / step_r, q), (ratio, q * step_q), (ratio, (q / step_q).max(3.0))] {
            if cr >= 0.9 {
                continue;
            }
            let v = bump_ratio(model, a, b, r2, cr, cq)?;
            if v < best.0 {
                best = (v, cr, cq);
            }
        }
        step_r = step_r.sqrt();
        step_q = step_q.sqrt();
    }
    Ok(best)
}

/// Random bump scenario on one of three model families, paired with the row it must satisfy:
/// flat space with [`CknCondition::Flat`], hyperbolic space with [`CknCondition::NonPositive`]
/// (weights drawn with `a+b+1 ≤ n`), and the warp `r^A` with [`CknCondition::EqualityPower`].
pub fn random_ckn_scenario<R: Rng + ?Sized>(rng: &mut R) -> Result<(CknScenario, CknCondition), InequalityError> {
    let n = rng.random_range(2..=5usize);
    let a = rng.random_range(-1.0..1.0);
    let r1 = rng.random_range(0.1..1.0);
    let r2 = r1 + rng.random_range(0.5..3.0);
    let (p, q) = (rng.random_range(3.0..8.0), rng.random_range(3.0..8.0));
    let (model, b, cond) = match rng.random_range(0..3) {
        0 => (ModelManifold::euclidean(n, 12.0)?, rng.random_range(-1.0..2.0), CknCondition::Flat),
        1 => {
            let b = rng.random_range(-1.0..=(n as f64 - 1.0 - a - 0.1).min(2.0));
            (ModelManifold::hyperbolic(n, 12.0)?, b, CknCondition::NonPositive)
        }
        _ => {
            let cap = rng.random_range(1.0..2.5);
            (ModelManifold::power(n, cap, 12.0)?, rng.random_range(-1.0..2.0), CknCondition::EqualityPower { a: cap, c: 0.0 })
        }
    };
    Ok((CknScenario::with_bump(model, a, b, r1, r2, p, q)?, cond))
}

#[derive(Clone, Debug)]
pub struct HardyScenario {
    pub model: ModelManifold,
    pub p: f64,
    /// Test function `u = r^s (1 − (r/R)²)³` on `[0, R]`.
    pub s: f64,
    pub a: f64,
    pub cutoff: f64,
    pub quad_tol: f64,
}

impl HardyScenario {
    pub fn new(model: ModelManifold, p: f64, s: f64, a: f64, cutoff: f64) -> Result<Self, InequalityError> {
        hardy_constant(p, model.dim(), a)?;
        if s < 1.0 {
            return Err(InequalityError::Parameter(format!("s = {s} < 1 leaves u/r outside L^p")));
        }
        if !(cutoff > 0.0 && cutoff < model.horizon()) {
            return Err(InequalityError::Support(0.0, cutoff, model.horizon()));
        }
        Ok(HardyScenario { model, p, s, a, cutoff, quad_tol: 1e-9 })
    }

    /// Euclidean or `r^A` model with `p` above the exponent threshold.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Result<Self, InequalityError> {
        let n = rng.random_range(2..=4usize);
        let (model, cap) = if rng.random_bool(0.5) {
            (ModelManifold::euclidean(n, 10.0)?, 1.0)
        } else {
            let cap = rng.random_range(1.0..1.5);
            (ModelManifold::power(n, cap, 10.0)?, cap)
        };
        let p = (n as f64 - 1.0) * cap + 1.0 + rng.random_range(0.5..3.0);
        HardyScenario::new(model, p, rng.random_range(1.0..3.0), cap, rng.random_range(1.0..4.0))
    }

    pub fn test_function(&self) -> RadialExpr {
        let r2 = self.cutoff * self.cutoff;
        let chi = RadialExpr::polynomial(vec![1.0, 0.0, -3.0 / r2, 0.0, 3.0 / (r2 * r2), 0.0, -1.0 / (r2 * r2 * r2)]);
        RadialExpr::power(1.0, self.s) * chi
    }
}

/// `C_H ∫|u|^p/r^p dv ≤ ∫|∇u|^p dv`, after confirming `Ric ≥ −(n−1)A(A−1)/r²` on the model.
pub fn verify_hardy(s: &HardyScenario) -> Result<MarginReport, InequalityError> {
    let n = s.model.dim() as i32;
    let c = hardy_constant(s.p, s.model.dim(), s.a)?;
    require_hypothesis(&s.model, &CurvatureHypothesis::RicLowerPower { a: s.a, c: 0.0 })?;
    let u = s.test_function();
    let du = u.derivative();
    let f = s.model.warp();
    let opts = QuadOptions::tol(s.quad_tol);
    let vol = |r: f64| f.eval(r).map(|w| w.powi(n - 1));
    let lhs = integrate_fn(|r| Ok((u.eval(r)? / r).abs().powf(s.p) * vol(r)?), 0.0, s.cutoff, &opts)?;
    let rhs = integrate_fn(|r| Ok(du.eval(r)?.abs().powf(s.p) * vol(r)?), 0.0, s.cutoff, &opts)?;
    Ok(MarginReport::new(c, c * lhs, rhs, SLACK_TOL))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listed_constants() {
        assert_eq!(ckn_constant(&CknCondition::Flat, 0.0, 0.0, 3).unwrap(), 1.0);
        assert_eq!(ckn_constant(&CknCondition::RicLowerPower { a: 1.0, c: 0.0 }, 2.0, 2.0, 3).unwrap(), 1.0);
        assert_eq!(ckn_constant(&CknCondition::SecUpperPositive { b: 1.0, c: 0.0 }, 0.0, 0.0, 3).unwrap(), 1.0);
        assert_eq!(hardy_constant(4.0, 3, 1.0).unwrap(), 1.0 / 256.0);
        assert!(matches!(hardy_constant(3.0, 3, 1.0), Err(InequalityError::HardyExponent { .. })));
    }

    #[test]
    fn side_conditions_are_enforced() {
        let e = ckn_constant(&CknCondition::NonNegative, 0.0, 0.0, 3).unwrap_err();
        assert!(matches!(e, InequalityError::SideCondition { .. }));
        assert!(e.to_string().contains("n ≤ a+b+1"));
        assert!(ckn_constant(&CknCondition::NonNegative, 1.0, 1.0, 3).is_ok());
    }

    #[test]
    fn twenty_rows_with_distinct_labels() {
        let rows = CknCondition::all_rows(2.0, 1.5, 0.3, 0.6, 1.0);
        assert_eq!(rows.len(), 20);
        let mut labels: Vec<String> = rows.iter().map(|r| r.to_string()).collect();
        labels.sort();
        labels.dedup();
        assert_eq!(labels.len(), 20);
    }

    #[test]
    fn costa_rows() {
        let flat = CknCondition::RicNonNegative;
        assert_eq!(costa_constant(CostaCase::VII, 0.0, &flat, 5).unwrap(), 2.25);
        assert_eq!(costa_constant(CostaCase::V, 0.0, &flat, 5).unwrap(), 4.0);
        let row = CknCondition::RicLowerPower { a: 2.0, c: 0.0 };
        assert_eq!(costa_constant(CostaCase::III, 0.7, &row, 4).unwrap(), 12.25);
        assert!(costa_constant(CostaCase::I, 0.0, &CknCondition::Flat, 3).is_err());
    }

    #[test]
    fn euclidean_identity_and_ckn() {
        let m = ModelManifold::euclidean(3, 10.0).unwrap();
        let s = CknScenario::with_bump(m, 0.0, 0.0, 1.0, 2.0, 3.0, 3.0).unwrap();
        let id = verify_identity(&s).unwrap();
        assert!(id.margin.passed && id.consistent);
        let r = verify_ckn(&s, &CknCondition::Flat).unwrap();
        assert!(r.passed && r.constant == 1.0);
    }

    #[test]
    fn hypothesis_mismatch_is_refused() {
        let m = ModelManifold::hyperbolic(3, 6.0).unwrap();
        let s = CknScenario::with_bump(m, 1.0, 1.0, 1.0, 2.0, 3.0, 3.0).unwrap();
        let e = verify_ckn(&s, &CknCondition::NonNegative).unwrap_err();
        assert!(matches!(e, InequalityError::HypothesisMismatch { .. }));
    }

    #[test]
    fn hardy_on_euclidean() {
        let m = ModelManifold::euclidean(3, 10.0).unwrap();
        let s = HardyScenario::new(m, 4.0, 1.0, 1.0, 2.0).unwrap();
        assert!(verify_hardy(&s).unwrap().passed);
    }
}

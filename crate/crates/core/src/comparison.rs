//! Sampled checkers for Jacobi/Riccati comparison statements, producing margin certificates.
//!
//! Margins of log-derivative type inequalities are reported multiplied by `t`, so that values near
//! the origin stay bounded while the sign is unchanged.

use std::fmt;
use std::io::{self, Write};

use thiserror::Error;

use rand::Rng;

use crate::ode::{solve_jacobi, solve_riccati, Coefficient, JacobiSolution, OdeError, RiccatiSolution, SolverOptions};
use crate::radial::{RadialError, RadialExpr};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ComparisonError {
    #[error(transparent)]
    Radial(#[from] RadialError),
    #[error(transparent)]
    Ode(#[from] OdeError),
    #[error("hypothesis violated at r = {radius}: margin {margin}")]
    HypothesisViolated { radius: f64, margin: f64 },
    #[error("system {system} has residual {value} of the wrong sign for a {role}")]
    ResidualSign { system: u8, role: &'static str, value: f64 },
    #[error("initial slopes must satisfy 0 < κ₁ ≤ κ₂, got ({0}, {1})")]
    Precondition(f64, f64),
    #[error("`{0}` is not a two-system comparison")]
    Unsupported(Theorem),
    #[error("comparison window is empty: [{0}, {1}]")]
    EmptyWindow(f64, f64),
}

/// Which comparison statement a certificate witnesses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// Jacobi against Jacobi.
    Sturm,
    /// Riccati against Riccati.
    Riccati,
    /// Riccati (system 1) against Jacobi (system 2).
    MixedI,
    /// Jacobi (system 1) against Riccati (system 2).
    MixedII,
    /// Model-manifold bounds on the log-derivative of the warp.
    ModelBound,
}

impl Theorem {
    pub const ALL: [Theorem; 5] = [Theorem::Sturm, Theorem::Riccati, Theorem::MixedI, Theorem::MixedII, Theorem::ModelBound];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Sturm => "sturm",
            Theorem::Riccati => "riccati",
            Theorem::MixedI => "mixed-i",
            Theorem::MixedII => "mixed-ii",
            Theorem::ModelBound => "model-bound",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl std::str::FromStr for Theorem {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown comparison `{s}` (expected sturm, riccati, mixed-i, mixed-ii, model-bound)"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub hypothesis: f64,
    pub conclusion: f64,
    pub residual: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { hypothesis: 1e-6, conclusion: 1e-6, residual: 1e-6 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

/// One sampled inequality; `binding` series decide the verdict, the others are reported only.
#[derive(Clone, Debug, PartialEq)]
pub struct MarginSeries {
    pub name: String,
    pub values: Vec<f64>,
    pub binding: bool,
}

impl MarginSeries {
    pub fn new(name: impl Into<String>, values: Vec<f64>) -> Self {
        MarginSeries { name: name.into(), values, binding: true }
    }

    pub fn informational(name: impl Into<String>, values: Vec<f64>) -> Self {
        MarginSeries { name: name.into(), values, binding: false }
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// A scalar slack such as `t₂ − t₁`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarMargin {
    pub name: String,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WorstNode {
    pub series: String,
    pub radius: f64,
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonCertificate {
    pub theorem: Theorem,
    pub kappa: (f64, f64),
    pub radii: Vec<f64>,
    /// `G₁ − G₂` (or the model's hypothesis slack) at each radius.
    pub hypothesis_margins: Vec<f64>,
    pub conclusions: Vec<MarginSeries>,
    pub scalars: Vec<ScalarMargin>,
    pub tolerances: Tolerances,
    pub verdict: Verdict,
    pub worst: Option<WorstNode>,
}

impl ComparisonCertificate {
    /// Assemble a certificate and decide its verdict from the binding margins.
    pub fn assemble(
        theorem: Theorem,
        kappa: (f64, f64),
        radii: Vec<f64>,
        hypothesis_margins: Vec<f64>,
        conclusions: Vec<MarginSeries>,
        scalars: Vec<ScalarMargin>,
        tolerances: Tolerances,
    ) -> Self {
        let mut worst: Option<WorstNode> = None;
        for s in conclusions.iter().filter(|s| s.binding) {
            for (&r, &m) in radii.iter().zip(&s.values) {
                if worst.as_ref().is_none_or(|w| m < w.margin) {
                    worst = Some(WorstNode { series: s.name.clone(), radius: r, margin: m });
                }
            }
        }
        let min_con = worst.as_ref().map_or(f64::INFINITY, |w| w.margin);
        let min_scalar = scalars.iter().map(|s| s.value).fold(f64::INFINITY, f64::min);
        let min_hyp = hypothesis_margins.iter().copied().fold(f64::INFINITY, f64::min);
        let pass = min_con >= -tolerances.conclusion
            && min_scalar >= -tolerances.conclusion
            && min_hyp >= -tolerances.hypothesis
            && kappa.0 <= kappa.1;
        ComparisonCertificate {
            theorem,
            kappa,
            radii,
            hypothesis_margins,
            conclusions,
            scalars,
            tolerances,
            verdict: if pass { Verdict::Pass } else { Verdict::Fail },
            worst,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Smallest binding margin, scalars included.
    pub fn min_margin(&self) -> f64 {
        let series = self.conclusions.iter().filter(|s| s.binding).map(MarginSeries::min);
        series.chain(self.scalars.iter().map(|s| s.value)).fold(f64::INFINITY, f64::min)
    }

    pub fn min_hypothesis_margin(&self) -> f64 {
        self.hypothesis_margins.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn series(&self, name: &str) -> Option<&MarginSeries> {
        self.conclusions.iter().find(|s| s.name == name)
    }

    /// Plain `key = value` summary.
    pub fn write_record<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "theorem = {}", self.theorem)?;
        writeln!(out, "verdict = {}", self.verdict)?;
        writeln!(out, "kappa = {:.16e} {:.16e}", self.kappa.0, self.kappa.1)?;
        writeln!(out, "nodes = {}", self.radii.len())?;
        writeln!(out, "min_hypothesis_margin = {:.16e}", self.min_hypothesis_margin())?;
        for s in &self.conclusions {
            let tag = if s.binding { "" } else { " (informational)" };
            writeln!(out, "min_{} = {:.16e}{tag}", s.name, s.min())?;
        }
        for s in &self.scalars {
            writeln!(out, "{} = {:.16e}", s.name, s.value)?;
        }
        if let Some(w) = &self.worst {
            writeln!(out, "worst = {} at r = {:.16e}: {:.16e}", w.series, w.radius, w.margin)?;
        }
        Ok(())
    }

    /// Per-node CSV: radius, hypothesis margin, then one column per conclusion series.
    pub fn write_csv<W: Write>(&self, out: W) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["radius".to_string(), "hypothesis".to_string()];
        header.extend(self.conclusions.iter().map(|s| s.name.clone()));
        w.write_record(&header)?;
        for (i, r) in self.radii.iter().enumerate() {
            let mut row = vec![format!("{r:.16e}"), format!("{:.16e}", self.hypothesis_margins[i])];
            row.extend(self.conclusions.iter().map(|s| format!("{:.16e}", s.values[i])));
            w.write_record(&row)?;
        }
        w.flush()
    }
}

/// Sampling radii: both grids merged, restricted to `[2ε, 0.95·end]`, window ends included.
pub fn comparison_radii(grids: &[&[f64]], epsilon: f64, end: f64) -> Result<Vec<f64>, ComparisonError> {
    let (lo, hi) = (2.0 * epsilon, 0.95 * end);
    if !(hi > lo) {
        return Err(ComparisonError::EmptyWindow(lo, hi));
    }
    let mut r: Vec<f64> = grids.iter().flat_map(|g| g.iter().copied()).filter(|&t| t > lo && t < hi).collect();
    r.push(lo);
    r.push(hi);
    r.sort_by(f64::total_cmp);
    r.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * b.abs());
    Ok(r)
}

fn check_kappa(k1: f64, k2: f64) -> Result<(), ComparisonError> {
    if !(k1 > 0.0 && k1 <= k2) {
        return Err(ComparisonError::Precondition(k1, k2));
    }
    Ok(())
}

fn hypothesis(
    g1: &crate::ode::Coefficient,
    g2: &crate::ode::Coefficient,
    radii: &[f64],
    tol: f64,
) -> Result<Vec<f64>, ComparisonError> {
    let margins = radii.iter().map(|&r| Ok(g1.eval(r)? - g2.eval(r)?)).collect::<Result<Vec<f64>, RadialError>>()?;
    if let Some((i, &m)) = margins.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)) {
        if m < -tol {
            return Err(ComparisonError::HypothesisViolated { radius: radii[i], margin: m });
        }
    }
    Ok(margins)
}

fn supersolution(system: u8, residual_max: f64, tol: f64) -> Result<(), ComparisonError> {
    if residual_max > tol {
        return Err(ComparisonError::ResidualSign { system, role: "supersolution", value: residual_max });
    }
    Ok(())
}

fn subsolution(system: u8, residual_min: f64, tol: f64) -> Result<(), ComparisonError> {
    if residual_min < -tol {
        return Err(ComparisonError::ResidualSign { system, role: "subsolution", value: residual_min });
    }
    Ok(())
}

/// `lim f₁/f₂` at the origin when the leading exponents agree, else the ratio at the first radius.
fn value_ratio(f1: &JacobiSolution, f2: &JacobiSolution, r0: f64) -> Result<f64, RadialError> {
    if (f1.exponent() - f2.exponent()).abs() <= 1e-12 {
        Ok(f1.kappa() / f2.kappa())
    } else {
        Ok(f1.f_at(r0)? / f2.f_at(r0)?)
    }
}

/// `f₁′/f₁ ≤ f₂′/f₂`, `f₁ ≤ f₂` (as `f₁/f₂ ≤ lim f₁/f₂`), nondecreasing Wronskian, and `t₁ ≤ t₂`.
pub fn check_sturm(f1: &JacobiSolution, f2: &JacobiSolution, tol: &Tolerances) -> Result<ComparisonCertificate, ComparisonError> {
    check_kappa(f1.kappa(), f2.kappa())?;
    supersolution(1, f1.residual().max, tol.residual)?;
    subsolution(2, f2.residual().min, tol.residual)?;
    let eps = f1.epsilon().max(f2.epsilon());
    let radii = comparison_radii(&[f1.grid(), f2.grid()], eps, f1.t_sup().min(f2.t_sup()))?;
    let hyp = hypothesis(f1.coefficient(), f2.coefficient(), &radii, tol.hypothesis)?;
    let ratio = value_ratio(f1, f2, radii[0])?;
    let n = radii.len();
    let (mut logd, mut value, mut wr) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
    for &r in &radii {
        let (a, da, b, db) = (f1.f_at(r)?, f1.fprime_at(r)?, f2.f_at(r)?, f2.fprime_at(r)?);
        logd.push(r * (db / b - da / a));
        value.push(ratio * b - a);
        wr.push(db * a - da * b);
    }
    let steps = std::iter::once(0.0).chain(wr.windows(2).map(|w| w[1] - w[0])).collect();
    let scalars = vec![ScalarMargin { name: "t_sup".into(), value: f2.t_sup() - f1.t_sup() }];
    Ok(ComparisonCertificate::assemble(
        Theorem::Sturm,
        (f1.kappa(), f2.kappa()),
        radii,
        hyp,
        vec![MarginSeries::new("log_derivative", logd), MarginSeries::new("value", value), MarginSeries::new("wronskian_step", steps)],
        scalars,
        *tol,
    ))
}

/// `g₁/κ₁ ≤ g₂/κ₂` binding; the literal `g₁ ≤ g₂` is reported alongside.
pub fn check_riccati_pair(
    g1: &RiccatiSolution,
    g2: &RiccatiSolution,
    tol: &Tolerances,
) -> Result<ComparisonCertificate, ComparisonError> {
    let (k1, k2) = (g1.kappa(), g2.kappa());
    check_kappa(k1, k2)?;
    supersolution(1, g1.residual().max, tol.residual)?;
    subsolution(2, g2.residual().min, tol.residual)?;
    let eps = g1.epsilon().max(g2.epsilon());
    let radii = comparison_radii(&[g1.grid(), g2.grid()], eps, g1.t_sup().min(g2.t_sup()))?;
    let hyp = hypothesis(g1.coefficient(), g2.coefficient(), &radii, tol.hypothesis)?;
    let (mut norm, mut lit) = (Vec::with_capacity(radii.len()), Vec::with_capacity(radii.len()));
    for &r in &radii {
        let (a, b) = (g1.g_at(r)?, g2.g_at(r)?);
        norm.push(r * (b / k2 - a / k1));
        lit.push(r * (b - a));
    }
    let scalars = vec![ScalarMargin { name: "t_sup".into(), value: g2.t_sup() - g1.t_sup() }];
    Ok(ComparisonCertificate::assemble(
        Theorem::Riccati,
        (k1, k2),
        radii,
        hyp,
        vec![MarginSeries::new("normalized", norm), MarginSeries::informational("literal", lit)],
        scalars,
        *tol,
    ))
}

/// `g₁/κ₁ ≤ f₂′/f₂` binding, literal `g₁ ≤ κ₂f₂′/f₂` reported, and `t₁ ≤ t₂`.
pub fn check_mixed_i(g1: &RiccatiSolution, f2: &JacobiSolution, tol: &Tolerances) -> Result<ComparisonCertificate, ComparisonError> {
    let (k1, k2) = (g1.kappa(), f2.kappa());
    check_kappa(k1, k2)?;
    supersolution(1, g1.residual().max, tol.residual)?;
    subsolution(2, f2.residual().min, tol.residual)?;
    let eps = g1.epsilon().max(f2.epsilon());
    let radii = comparison_radii(&[g1.grid(), f2.grid()], eps, g1.t_sup().min(f2.t_sup()))?;
    let hyp = hypothesis(g1.coefficient(), f2.coefficient(), &radii, tol.hypothesis)?;
    let (mut norm, mut lit) = (Vec::with_capacity(radii.len()), Vec::with_capacity(radii.len()));
    for &r in &radii {
        let a = g1.g_at(r)?;
        let l2 = f2.log_derivative_at(r)?;
        norm.push(r * (l2 - a / k1));
        lit.push(r * (k2 * l2 - a));
    }
    let scalars = vec![ScalarMargin { name: "t_sup".into(), value: f2.t_sup() - g1.t_sup() }];
    Ok(ComparisonCertificate::assemble(
        Theorem::MixedI,
        (k1, k2),
        radii,
        hyp,
        vec![MarginSeries::new("normalized", norm), MarginSeries::informational("literal", lit)],
        scalars,
        *tol,
    ))
}

/// `f₁′/f₁ ≤ g₂/κ₂` binding, literal `κ₁f₁′/f₁ ≤ g₂` reported, and `t₁ ≤ t₂`.
pub fn check_mixed_ii(f1: &JacobiSolution, g2: &RiccatiSolution, tol: &Tolerances) -> Result<ComparisonCertificate, ComparisonError> {
    let (k1, k2) = (f1.kappa(), g2.kappa());
    check_kappa(k1, k2)?;
    supersolution(1, f1.residual().max, tol.residual)?;
    subsolution(2, g2.residual().min, tol.residual)?;
    let eps = f1.epsilon().max(g2.epsilon());
    let radii = comparison_radii(&[f1.grid(), g2.grid()], eps, f1.t_sup().min(g2.t_sup()))?;
    let hyp = hypothesis(f1.coefficient(), g2.coefficient(), &radii, tol.hypothesis)?;
    let (mut norm, mut lit) = (Vec::with_capacity(radii.len()), Vec::with_capacity(radii.len()));
    for &r in &radii {
        let l1 = f1.log_derivative_at(r)?;
        let b = g2.g_at(r)?;
        norm.push(r * (b / k2 - l1));
        lit.push(r * (b - k1 * l1));
    }
    let scalars = vec![ScalarMargin { name: "t_sup".into(), value: g2.t_sup() - f1.t_sup() }];
    Ok(ComparisonCertificate::assemble(
        Theorem::MixedII,
        (k1, k2),
        radii,
        hyp,
        vec![MarginSeries::new("normalized", norm), MarginSeries::informational("literal", lit)],
        scalars,
        *tol,
    ))
}

/// Two systems `G₁ ≥ G₂` (or a deliberately violated pair) with slopes and a horizon.
#[derive(Clone, Debug)]
pub struct ComparisonCase {
    pub theorem: Theorem,
    pub coef1: Coefficient,
    pub coef2: Coefficient,
    pub kappa: (f64, f64),
    pub t_end: f64,
}

impl ComparisonCase {
    /// Solve both systems in the roles the theorem needs and run its checker.
    pub fn run(&self, tol: &Tolerances, opts: &SolverOptions) -> Result<ComparisonCertificate, ComparisonError> {
        let (k1, k2) = self.kappa;
        let (c1, c2, t) = (self.coef1.clone(), self.coef2.clone(), self.t_end);
        match self.theorem {
            Theorem::Sturm => check_sturm(&solve_jacobi(c1, k1, t, opts)?, &solve_jacobi(c2, k2, t, opts)?, tol),
            Theorem::Riccati => check_riccati_pair(&solve_riccati(c1, k1, t, opts)?, &solve_riccati(c2, k2, t, opts)?, tol),
            Theorem::MixedI => check_mixed_i(&solve_riccati(c1, k1, t, opts)?, &solve_jacobi(c2, k2, t, opts)?, tol),
            Theorem::MixedII => check_mixed_ii(&solve_jacobi(c1, k1, t, opts)?, &solve_riccati(c2, k2, t, opts)?, tol),
            Theorem::ModelBound => Err(ComparisonError::Unsupported(Theorem::ModelBound)),
        }
    }

    /// Random pair from three families: constants, inverse squares, and a constant against an
    /// inverse square plus constant. With `violate`, system 1 lies strictly below system 2
    /// on the whole window instead.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, theorem: Theorem, violate: bool) -> Self {
        let gap = rng.random_range(0.05..1.0);
        let (hi, lo) = match rng.random_range(0..3) {
            0 => {
                let c2 = rng.random_range(-1.5..0.8);
                (Coefficient::constant(c2 + gap), Coefficient::constant(c2))
            }
            1 => {
                let g2 = rng.random_range(-2.0..0.0);
                let g1 = (g2 + gap).min(0.25);
                (Coefficient::with_inverse_square(g1, RadialExpr::zero()), Coefficient::with_inverse_square(g2, RadialExpr::zero()))
            }
            _ => {
                let c1 = rng.random_range(-1.0..0.8);
                let g0 = -rng.random_range(0.0..2.0) * gap;
                let c2 = c1 - gap;
                (Coefficient::constant(c1), Coefficient::with_inverse_square(g0, RadialExpr::constant(c2)))
            }
        };
        let k1 = [0.5, 1.0, 2.0][rng.random_range(0..3)];
        let k2 = k1 * rng.random_range(1.0..2.0);
        let t_end = rng.random_range(1.0..3.0);
        let (coef1, coef2) = if violate { (lo, hi) } else { (hi, lo) };
        ComparisonCase { theorem, coef1, coef2, kappa: (k1, k2), t_end }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::transform;
    use crate::ode::{solve_jacobi, solve_riccati, Coefficient, SolverOptions};
    use crate::radial::RadialExpr;

    fn opts() -> SolverOptions {
        SolverOptions::default()
    }

    fn coth() -> RadialExpr {
        RadialExpr::cosh(1.0) / RadialExpr::sinh(1.0)
    }

    fn flat(k: f64) -> JacobiSolution {
        JacobiSolution::from_candidate(Coefficient::constant(0.0), k, &RadialExpr::power(k, 1.0), 4.0, &opts()).unwrap()
    }

    #[test]
    fn sturm_line_against_sinh() {
        let f2 = JacobiSolution::from_candidate(Coefficient::constant(-1.0), 1.0, &RadialExpr::sinh(1.0), 4.0, &opts()).unwrap();
        let c = check_sturm(&flat(1.0), &f2, &Tolerances::default()).unwrap();
        assert!(c.passed(), "{:?}", c.worst);
        assert!(c.min_margin() >= -1e-12);
        assert!(c.series("value").unwrap().values.last().unwrap() > &0.0);
    }

    #[test]
    fn sturm_equal_solutions_have_zero_margins() {
        let f = solve_jacobi(Coefficient::constant(1.0), 1.0, 3.0, &opts()).unwrap();
        let c = check_sturm(&f, &f, &Tolerances::default()).unwrap();
        assert!(c.passed());
        for s in &c.conclusions {
            assert!(s.values.iter().all(|v| v.abs() < 1e-12), "{}", s.name);
        }
        assert!(c.hypothesis_margins.iter().all(|&m| m == 0.0));
    }

    #[test]
    fn sturm_rejects_swapped_hypothesis() {
        let f1 = solve_jacobi(Coefficient::constant(-1.0), 1.0, 3.0, &opts()).unwrap();
        let f2 = flat(1.0);
        assert!(matches!(check_sturm(&f1, &f2, &Tolerances::default()), Err(ComparisonError::HypothesisViolated { .. })));
    }

    #[test]
    fn riccati_pair_line_against_coth() {
        let g1 = RiccatiSolution::from_candidate(Coefficient::constant(0.0), 1.0, &RadialExpr::power(1.0, -1.0), 4.0, &opts()).unwrap();
        let g2 = RiccatiSolution::from_candidate(
            Coefficient::constant(-1.0),
            1.0,
            &coth(),
            4.0,
            &SolverOptions { epsilon: Some(1e-3), ..opts() },
        )
        .unwrap();
        let c = check_riccati_pair(&g1, &g2, &Tolerances::default()).unwrap();
        assert!(c.passed());
        assert!(c.series("literal").unwrap().min() >= -1e-12);
    }

    #[test]
    fn riccati_pair_rejects_decreasing_kappa() {
        let g1 = solve_riccati(Coefficient::constant(0.0), 2.0, 2.0, &opts()).unwrap();
        let g2 = solve_riccati(Coefficient::constant(0.0), 1.0, 2.0, &opts()).unwrap();
        assert_eq!(check_riccati_pair(&g1, &g2, &Tolerances::default()).unwrap_err(), ComparisonError::Precondition(2.0, 1.0));
    }

    #[test]
    fn literal_riccati_conclusion_can_fail_past_the_equator() {
        let g1 = solve_riccati(Coefficient::constant(1.0), 1.0, 3.0, &opts()).unwrap();
        let g2 = solve_riccati(Coefficient::constant(1.0), 2.0, 3.0, &opts()).unwrap();
        let c = check_riccati_pair(&g1, &g2, &Tolerances::default()).unwrap();
        assert!(c.passed());
        assert!(c.series("literal").unwrap().min() < -0.1);
    }

    #[test]
    fn mixed_i_degenerate_case() {
        let f2 = solve_jacobi(Coefficient::constant(0.5), 1.0, 3.0, &opts()).unwrap();
        let g1 = transform(&f2).unwrap();
        let c = check_mixed_i(&g1, &f2, &Tolerances::default()).unwrap();
        assert!(c.passed());
        assert!(c.series("normalized").unwrap().values.iter().all(|v| v.abs() < 1e-9));
    }

    #[test]
    fn mixed_ii_line_against_coth() {
        let g2 = RiccatiSolution::from_candidate(
            Coefficient::constant(-1.0),
            1.0,
            &coth(),
            4.0,
            &SolverOptions { epsilon: Some(1e-3), ..opts() },
        )
        .unwrap();
        let c = check_mixed_ii(&flat(1.0), &g2, &Tolerances::default()).unwrap();
        assert!(c.passed());
        let f1 = solve_jacobi(Coefficient::constant(-2.0), 1.0, 3.0, &opts()).unwrap();
        assert!(matches!(check_mixed_ii(&f1, &g2, &Tolerances::default()), Err(ComparisonError::HypothesisViolated { .. })));
    }

    #[test]
    fn generalized_power_pairs_pass() {
        let f1 = solve_jacobi(Coefficient::power_model(1.0), 0.7, 2.0, &opts()).unwrap();
        let f2 = solve_jacobi(Coefficient::power_model(2.5), 1.3, 2.0, &opts()).unwrap();
        let c = check_sturm(&f1, &f2, &Tolerances::default()).unwrap();
        assert!(c.passed(), "{:?}", c.worst);
    }

    #[test]
    fn record_and_csv_render() {
        let c = check_sturm(&flat(1.0), &flat(2.0), &Tolerances::default()).unwrap();
        let mut rec = Vec::new();
        c.write_record(&mut rec).unwrap();
        let rec = String::from_utf8(rec).unwrap();
        assert!(rec.contains("theorem = sturm") && rec.contains("verdict = pass"));
        let mut csv_out = Vec::new();
        c.write_csv(&mut csv_out).unwrap();
        let text = String::from_utf8(csv_out).unwrap();
        assert_eq!(text.lines().count(), c.radii.len() + 1);
        assert!(text.starts_with("radius,hypothesis,log_derivative,value,wronskian_step"));
    }
}

//! String forms for coefficients, models, hypotheses and table rows.

use clap::Args;

use super::CliError;
use crate::energy::LambdaRow;
use crate::inequalities::CknCondition;
use crate::model::{CurvatureHypothesis, ModelManifold};
use crate::ode::{Coefficient, SolverOptions};
use crate::radial::RadialExpr;

/// Shape parameters shared by curvature hypotheses, CKN rows and λ rows.
#[derive(Args, Debug, Clone, Default)]
pub struct Shape {
    #[arg(long = "A", allow_negative_numbers = true)]
    pub big_a: Option<f64>,
    #[arg(long = "A1", allow_negative_numbers = true)]
    pub big_a1: Option<f64>,
    #[arg(long = "B", allow_negative_numbers = true)]
    pub big_b: Option<f64>,
    #[arg(long = "B1", allow_negative_numbers = true)]
    pub big_b1: Option<f64>,
    /// Shift `c` in `(c + r)`.
    #[arg(long = "c", allow_negative_numbers = true)]
    pub shift: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
}

impl Shape {
    fn need(v: Option<f64>, flag: &str, what: &str) -> Result<f64, CliError> {
        v.ok_or_else(|| CliError::Usage(format!("{what} needs --{flag}")))
    }

    fn c(&self) -> f64 {
        self.shift.unwrap_or(0.0)
    }
}

/// Sum of `+`-separated terms: `const:c`, `power:A` (`−A(A−1)/r²`), `ratio:A` (`−A/r²`),
/// `positive:B` (`B(1−B)/r²`), `invsq:g` (`g/r²`).
pub fn coefficient(spec: &str) -> Result<Coefficient, CliError> {
    let mut inv = 0.0;
    let mut regular = 0.0;
    for term in split_terms(spec) {
        let (kind, value) = term
            .split_once(':')
            .ok_or_else(|| CliError::Usage(format!("coefficient term `{term}` is not <kind>:<value>")))?;
        let x = number(value)?;
        match kind.trim() {
            "const" => regular += x,
            "power" => inv -= x * (x - 1.0),
            "ratio" => inv -= x,
            "positive" => inv += x * (1.0 - x),
            "invsq" => inv += x,
            other => return Err(CliError::Usage(format!("unknown coefficient kind `{other}` (const, power, ratio, positive, invsq)"))),
        }
    }
    Ok(Coefficient::with_inverse_square(inv, RadialExpr::constant(regular)))
}

/// Split on `+` that is not part of an exponent.
fn split_terms(spec: &str) -> Vec<&str> {
    let bytes = spec.as_bytes();
    let mut out = Vec::new();
    let mut start = 0;
    for (i, &ch) in bytes.iter().enumerate() {
        if ch == b'+' && i > start && !matches!(bytes[i - 1], b'e' | b'E' | b':') {
            out.push(&spec[start..i]);
            start = i + 1;
        }
    }
    out.push(&spec[start..]);
    out
}

pub fn number(s: &str) -> Result<f64, CliError> {
    s.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("`{s}` is not a number")))
}

/// Comma-separated list of numbers.
pub fn numbers(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',').map(number).collect()
}

/// `euclidean`, `hyperbolic`, `sphere`, `power:A` or `curvature:<coefficient>`.
pub fn model(spec: &str, n: usize, t_end: f64) -> Result<ModelManifold, CliError> {
    let m = match spec.split_once(':') {
        None => match spec {
            "euclidean" => ModelManifold::euclidean(n, t_end),
            "hyperbolic" => ModelManifold::hyperbolic(n, t_end),
            "sphere" => ModelManifold::from_warp(n, RadialExpr::sin(1.0), t_end),
            _ => return Err(CliError::Usage(format!("unknown model `{spec}`"))),
        },
        Some(("power", a)) => ModelManifold::power(n, number(a)?, t_end),
        Some(("curvature", k)) => ModelManifold::from_curvature(n, coefficient(k)?, t_end, &SolverOptions::default()),
        Some(_) => return Err(CliError::Usage(format!("unknown model `{spec}`"))),
    };
    m.map_err(CliError::domain)
}

pub fn hypothesis(name: &str, s: &Shape) -> Result<CurvatureHypothesis, CliError> {
    use CurvatureHypothesis as H;
    let need = |v, flag| Shape::need(v, flag, name);
    let c = s.c();
    let h = match name {
        "ric-lower-power" => H::RicLowerPower { a: need(s.big_a, "A")?, c },
        "ric-lower-positive" => H::RicLowerPositive { b1: need(s.big_b1, "B1")?, c },
        "sec-lower-power" => H::SecLowerPower { a: need(s.big_a, "A")?, c },
        "sec-upper-power" => H::SecUpperPower { a1: need(s.big_a1, "A1")?, c },
        "two-sided-power" => H::TwoSidedPower { a: need(s.big_a, "A")?, a1: need(s.big_a1, "A1")?, c },
        "two-sided-ratio" => H::TwoSidedRatio { a: need(s.big_a, "A")?, a1: need(s.big_a1, "A1")?, c },
        "sec-lower-positive" => H::SecLowerPositive { b1: need(s.big_b1, "B1")?, c },
        "sec-lower-quarter" => H::SecLowerQuarter { b1: need(s.big_b1, "B1")?, c },
        "sec-upper-positive" => H::SecUpperPositive { b: need(s.big_b, "B")?, c },
        "sec-upper-quarter" => H::SecUpperQuarter { b: need(s.big_b, "B")?, c },
        "pinch-quarter" => H::PinchQuarter { b1: need(s.big_b1, "B1")?, b: need(s.big_b, "B")?, c },
        "pinch-positive" => H::PinchPositive { b1: need(s.big_b1, "B1")?, b: need(s.big_b, "B")?, c },
        "equality-power" => H::EqualityPower { a: need(s.big_a, "A")?, c },
        "equality-ratio" => H::EqualityRatio { a: need(s.big_a, "A")?, c },
        "flat" => H::Flat,
        "non-positive" => H::NonPositive,
        "non-negative" => H::NonNegative,
        "mixed-sign" => H::MixedSign { a: need(s.big_a, "A")?, b: need(s.big_b, "B")?, c },
        "const-pinch" => H::ConstPinch { alpha: need(s.alpha, "alpha")?, beta: need(s.beta, "beta")? },
        "decay-pinch" => H::DecayPinch { a: need(s.big_a, "A")?, b: need(s.big_b, "B")?, eps: need(s.eps, "eps")? },
        _ => return Err(CliError::Usage(format!("unknown hypothesis `{name}`"))),
    };
    h.validate().map_err(CliError::domain)?;
    Ok(h)
}

pub const CKN_NAMES: [&str; 12] = [
    "non-negative",
    "non-positive",
    "flat",
    "ric-lower-power",
    "ric-lower-positive",
    "ric-non-negative",
    "sec-lower-power",
    "sec-upper-power",
    "equality-power",
    "equality-ratio",
    "sec-lower-positive",
    "sec-upper-positive",
];

pub fn ckn_condition(name: &str, s: &Shape) -> Result<CknCondition, CliError> {
    use CknCondition as C;
    let need = |v, flag| Shape::need(v, flag, name);
    let c = s.c();
    let cond = match name {
        "non-negative" => C::NonNegative,
        "non-positive" => C::NonPositive,
        "flat" => C::Flat,
        "ric-lower-power" => C::RicLowerPower { a: need(s.big_a, "A")?, c },
        "ric-lower-positive" => C::RicLowerPositive { b1: need(s.big_b1, "B1")?, c },
        "ric-non-negative" => C::RicNonNegative,
        "sec-lower-power" => C::SecLowerPower { a: need(s.big_a, "A")?, c },
        "sec-upper-power" => C::SecUpperPower { a1: need(s.big_a1, "A1")?, c },
        "equality-power" => C::EqualityPower { a: need(s.big_a, "A")?, c },
        "equality-ratio" => C::EqualityRatio { a: need(s.big_a, "A")?, c },
        "sec-lower-positive" => C::SecLowerPositive { b1: need(s.big_b1, "B1")?, c },
        "sec-upper-positive" => C::SecUpperPositive { b: need(s.big_b, "B")?, c },
        _ => return Err(CliError::Usage(format!("unknown CKN condition `{name}` (one of {})", CKN_NAMES.join(", ")))),
    };
    cond.validate().map_err(CliError::domain)?;
    Ok(cond)
}

/// Row `i`..`vii` of the λ table.
pub fn lambda_row(label: &str, s: &Shape) -> Result<LambdaRow, CliError> {
    use LambdaRow as R;
    let need = |v, flag| Shape::need(v, flag, label);
    Ok(match label {
        "i" => R::TwoSidedPower { a: need(s.big_a, "A")?, a1: need(s.big_a1, "A1")? },
        "ii" => R::TwoSidedRatio { a: need(s.big_a, "A")?, a1: need(s.big_a1, "A1")? },
        "iii" => R::PinchPositive { b: need(s.big_b, "B")?, b1: need(s.big_b1, "B1")? },
        "iv" => R::PinchQuarter { b: need(s.big_b, "B")?, b1: need(s.big_b1, "B1")? },
        "v" => R::ConstPinch { alpha: need(s.alpha, "alpha")?, beta: need(s.beta, "beta")? },
        "vi" => R::Flat,
        "vii" => R::DecayPinch { a: need(s.big_a, "A")?, b: need(s.big_b, "B")?, eps: need(s.eps, "eps")? },
        _ => return Err(CliError::Usage(format!("unknown λ row `{label}` (i..vii)"))),
    })
}

/// Largest variable index `k` appearing as `xk` or `dxk`.
pub fn max_index(text: &str) -> usize {
    let b = text.as_bytes();
    let mut best = 0;
    let mut i = 0;
    while i < b.len() {
        if b[i] == b'x' {
            let digits: String = text[i + 1..].chars().take_while(char::is_ascii_digit).collect();
            if let Ok(k) = digits.parse::<usize>() {
                best = best.max(k);
            }
            i += 1 + digits.len();
        } else {
            i += 1;
        }
    }
    best
}

/// Fixed 17-significant-digit rendering used in every table.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

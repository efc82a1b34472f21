//! Growth types of ball-mass functions `B(r) = c·r^α·ln(e+r)^β` relative to an exponent `p > 1`.
//!
//! Every test reduces to the divergence of `∫^∞ r^a (ln r)^b dr`, which happens exactly when
//! `a > −1`, or `a = −1` and `b ≥ −1`; the dyadic series `Σ 2^{js} j^b` diverges exactly when
//! `s > 0`, or `s = 0` and `b ≥ −1`.
//!
//! * finite: `B/r^p` has finite lower limit.
//! * small: `∫ (r/B)^{1/(p−1)} = ∞`.
//! * obtuse: `∫ (1/B')^{1/(p−1)} = ∞`, with the sphere mass identified with `B'`.
//! * mild: the dyadic radii `r_j = 2^j` witness divergence of the annulus series whenever the
//!   profile is obtuse; conversely a mild profile is obtuse, so on this family mild ⇔ obtuse and
//!   the sequence test alone decides it.
//! * moderate: `ψ = (B/r^p)^{1/(p−1)}` makes the limsup equal to 1, and any admissible `ψ` must
//!   dominate it up to a constant, so moderate ⇔ `∫ dr/(rψ) = ∞` for this `ψ`.

use thiserror::Error;

use crate::radial::{integrate_fn, QuadOptions, RadialError, RadialExpr};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GrowthError {
    #[error("exponent p must exceed 1, got {0}")]
    Exponent(f64),
    #[error("ball mass must be positive and eventually nondecreasing: {0}")]
    Profile(String),
    #[error(transparent)]
    Radial(#[from] RadialError),
}

/// Exact-match tolerance for the boundary cases `α = p`, `β = p − 1`.
const TIE: f64 = 1e-12;

fn tie(a: f64, b: f64) -> bool {
    (a - b).abs() <= TIE * (1.0 + a.abs().max(b.abs()))
}

/// `∫^∞ r^a (ln r)^b dr = ∞`
pub fn integral_diverges(a: f64, b: f64) -> bool {
    if tie(a, -1.0) {
        b >= -1.0 - TIE
    } else {
        a > -1.0
    }
}

/// `Σ_j 2^{js} j^b = ∞`
pub fn dyadic_series_diverges(s: f64, b: f64) -> bool {
    if tie(s, 0.0) {
        b >= -1.0 - TIE
    } else {
        s > 0.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrowthProfile {
    pub p: f64,
    pub c: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl GrowthProfile {
    pub fn new(p: f64, c: f64, alpha: f64, beta: f64) -> Result<Self, GrowthError> {
        if !(p > 1.0) || !p.is_finite() {
            return Err(GrowthError::Exponent(p));
        }
        if !(c > 0.0) || !c.is_finite() {
            return Err(GrowthError::Profile(format!("coefficient c = {c}")));
        }
        if !alpha.is_finite() || !beta.is_finite() || alpha < 0.0 || (alpha == 0.0 && beta < 0.0) {
            return Err(GrowthError::Profile(format!("r^{alpha} ln(e+r)^{beta} is eventually decreasing")));
        }
        Ok(GrowthProfile { p, c, alpha, beta })
    }

    pub fn mass(&self) -> RadialExpr {
        RadialExpr::power_log(self.c, self.alpha, self.beta)
    }

    fn bounded(&self) -> bool {
        self.alpha == 0.0 && self.beta == 0.0
    }

    /// `lim inf B/r^p < ∞`
    pub fn is_finite(&self) -> bool {
        if tie(self.alpha, self.p) {
            self.beta <= TIE
        } else {
            self.alpha < self.p
        }
    }

    /// `(r/B)^{1/(p−1)} ~ r^{(1−α)/(p−1)} (ln r)^{−β/(p−1)}`
    pub fn is_small(&self) -> bool {
        let q = self.p - 1.0;
        integral_diverges((1.0 - self.alpha) / q, -self.beta / q)
    }

    /// `B' ~ cα r^{α−1} (ln r)^β` for `α > 0`, `cβ (ln r)^{β−1}/r` for `α = 0`.
    pub fn is_obtuse(&self) -> bool {
        if self.bounded() {
            return true;
        }
        let q = self.p - 1.0;
        if self.alpha == 0.0 {
            integral_diverges(1.0 / q, (1.0 - self.beta) / q)
        } else {
            integral_diverges((1.0 - self.alpha) / q, -self.beta / q)
        }
    }

    /// Dyadic annuli: `((2^j)^p / mass(2^j, 2^{j+1}))^{1/(p−1)} ~ 2^{j(p−α)/(p−1)} j^{−β/(p−1)}`.
    pub fn is_mild(&self) -> bool {
        if self.bounded() {
            return true;
        }
        let q = self.p - 1.0;
        if self.alpha == 0.0 {
            dyadic_series_diverges(self.p / q, (1.0 - self.beta) / q)
        } else {
            dyadic_series_diverges((self.p - self.alpha) / q, -self.beta / q)
        }
    }

    /// `ψ = (B/r^p)^{1/(p−1)}`; `1/(rψ) ~ r^{−1 + (p−α)/(p−1)} (ln r)^{−β/(p−1)}`.
    pub fn is_moderate(&self) -> bool {
        let q = self.p - 1.0;
        integral_diverges(-1.0 + (self.p - self.alpha) / q, -self.beta / q)
    }

    pub fn classify(&self) -> GrowthVerdict {
        GrowthVerdict::from_flags(self.is_finite(), self.is_mild(), self.is_obtuse(), self.is_moderate(), self.is_small())
    }

    /// `∫_a^R (r/B(r))^{1/(p−1)} dr` by quadrature in `ln r`.
    pub fn truncated_small_integral(&self, a: f64, upper: f64) -> Result<f64, GrowthError> {
        let b = self.mass();
        let q = self.p - 1.0;
        let opts = QuadOptions::tol(1e-10).relative(1e-12);
        Ok(integrate_fn(
            |u| {
                let r = u.exp();
                Ok((r / b.eval(r)?).powf(1.0 / q) * r)
            },
            a.ln(),
            upper.ln(),
            &opts,
        )?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrowthVerdict {
    pub finite: bool,
    pub mild: bool,
    pub obtuse: bool,
    pub moderate: bool,
    pub small: bool,
    pub balanced: bool,
}

impl GrowthVerdict {
    pub fn from_flags(finite: bool, mild: bool, obtuse: bool, moderate: bool, small: bool) -> Self {
        GrowthVerdict { finite, mild, obtuse, moderate, small, balanced: finite || mild || obtuse || moderate || small }
    }

    /// moderate ⇔ small ⇒ mild ⇒ obtuse
    pub fn chain_holds(&self) -> bool {
        self.moderate == self.small && (!self.small || self.mild) && (!self.mild || self.obtuse)
    }

    pub const HEADER: [&'static str; 10] =
        ["finite", "infinite", "mild", "severe", "obtuse", "acute", "moderate", "immoderate", "small", "large"];

    /// Ten flags in [`Self::HEADER`] order.
    pub fn flags(&self) -> [bool; 10] {
        [
            self.finite,
            !self.finite,
            self.mild,
            !self.mild,
            self.obtuse,
            !self.obtuse,
            self.moderate,
            !self.moderate,
            self.small,
            !self.small,
        ]
    }
}

/// Mass bounded by a finite total (`L^q` data): every type holds for every `p`.
pub fn classify_lq_bounded(total_mass: f64) -> Result<GrowthVerdict, GrowthError> {
    if !(total_mass >= 0.0) || !total_mass.is_finite() {
        return Err(GrowthError::Profile(format!("total mass {total_mass} is not finite")));
    }
    Ok(GrowthVerdict::from_flags(true, true, true, true, true))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn critical_power_is_balanced_everywhere() {
        let v = GrowthProfile::new(2.5, 1.0, 2.5, 0.0).unwrap().classify();
        assert_eq!(v, GrowthVerdict::from_flags(true, true, true, true, true));
    }

    #[test]
    fn supercritical_power_is_imbalanced() {
        let v = GrowthProfile::new(2.0, 1.0, 3.0, 0.0).unwrap().classify();
        assert_eq!(v, GrowthVerdict::from_flags(false, false, false, false, false));
        assert!(!v.balanced);
    }

    #[test]
    fn log_refinement_separates_finite_from_small() {
        let p = 3.0;
        let v = GrowthProfile::new(p, 1.0, p, (p - 1.0) / 2.0).unwrap().classify();
        assert!(!v.finite && v.small && v.mild && v.obtuse && v.moderate);
        let edge = GrowthProfile::new(p, 1.0, p, p - 1.0).unwrap().classify();
        assert!(edge.small);
        let past = GrowthProfile::new(p, 1.0, p, p - 1.0 + 1e-3).unwrap().classify();
        assert!(!past.small && !past.obtuse);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(GrowthProfile::new(1.0, 1.0, 1.0, 0.0).unwrap_err(), GrowthError::Exponent(1.0));
        assert!(GrowthProfile::new(2.0, 1.0, 0.0, -1.0).is_err());
        assert!(classify_lq_bounded(3.0).unwrap().balanced);
    }

    #[test]
    fn truncated_integral_grows_when_small() {
        let g = GrowthProfile::new(2.0, 1.0, 2.0, 0.0).unwrap();
        let a = g.truncated_small_integral(1.0, 1e2).unwrap();
        let b = g.truncated_small_integral(1.0, 1e4).unwrap();
        assert!(b > 1.9 * a);
    }
}

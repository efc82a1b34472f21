//! Transformer `g = κf'/f`, reverser `f = κt^s exp ∫ w/κ`, and κ-rescaling.

use thiserror::Error;

use crate::ode::dopri::hermite;
use crate::ode::{JacobiSolution, OdeError, Phase, Piece, Residual, RiccatiSolution};
use crate::radial::{integrate_fn, QuadOptions, RadialError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DualityError {
    #[error(transparent)]
    Ode(#[from] OdeError),
    #[error(transparent)]
    Radial(#[from] RadialError),
    #[error("f is not positive at t = {0}")]
    NotPositive(f64),
    #[error("g − κs/t is not bounded at the origin: t·|w| = {0}")]
    Asymptotic(f64),
    #[error("kappa must be positive, got {0}")]
    BadKappa(f64),
}

fn w_rhs(sol_coef: &crate::ode::Coefficient, kappa: f64, s: f64, t: f64, w: f64, right: bool) -> Result<f64, RadialError> {
    let tt = if right { t.next_up() } else { t };
    let reg = sol_coef.regular().eval(tt)?;
    Ok(-kappa * reg - 2.0 * s * w / t - w * w / kappa)
}

fn y_rhs(sol_coef: &crate::ode::Coefficient, t: f64, y: f64, right: bool) -> Result<f64, RadialError> {
    let tt = if right { t.next_up() } else { t };
    Ok(1.0 + sol_coef.eval(tt)? * y * y)
}

/// `g = κ f'/f` on every node where `f > 0`. Slopes come from the Riccati equation itself.
pub fn transform(f: &JacobiSolution) -> Result<RiccatiSolution, DualityError> {
    let kappa = f.kappa();
    let s = f.exponent();
    let coef = f.coefficient();
    let n_pos = f.f.iter().take_while(|&&v| v > 0.0).count();
    if n_pos < 2 {
        return Err(DualityError::NotPositive(f.t[n_pos.min(f.t.len() - 1)]));
    }
    let t: Vec<f64> = f.t[..n_pos].to_vec();
    let g: Vec<f64> = (0..n_pos).map(|i| kappa * f.fp[i] / f.f[i]).collect();
    let w_at = |i: usize| f.w[i].unwrap_or(g[i] - kappa * s / t[i]);
    let mut pieces = Vec::with_capacity(n_pos - 1);
    let mut residual = Residual::default();
    for k in 0..n_pos - 1 {
        let (ta, tb) = (t[k], t[k + 1]);
        let probe = crate::ode::riccati_piece(kappa, s, [ta, tb], [g[k], g[k + 1]], [0.0, 0.0]);
        let piece = match probe.phase {
            Phase::Bounded => {
                let (wa, wb) = (w_at(k), w_at(k + 1));
                Piece {
                    phase: Phase::Bounded,
                    v: [wa, wb],
                    d: [w_rhs(coef, kappa, s, ta, wa, true)?, w_rhs(coef, kappa, s, tb, wb, false)?],
                }
            }
            Phase::Reciprocal => {
                let (ya, yb) = (f.f[k] / f.fp[k], f.f[k + 1] / f.fp[k + 1]);
                Piece { phase: Phase::Reciprocal, v: [ya, yb], d: [y_rhs(coef, ta, ya, true)?, y_rhs(coef, tb, yb, false)?] }
            }
        };
        let tm = 0.5 * (ta + tb);
        let (vm, dvm) = hermite(ta, tb, piece.v[0], piece.v[1], piece.d[0], piece.d[1], tm);
        residual.push(match piece.phase {
            Phase::Bounded => dvm - w_rhs(coef, kappa, s, tm, vm, false)?,
            Phase::Reciprocal => y_rhs(coef, tm, vm, false)? - dvm,
        });
        pieces.push(piece);
    }
    let (pole, tail) = if f.reached_zero() && n_pos == f.t.len() - 1 {
        let k = n_pos - 1;
        let ya = f.f[k] / f.fp[k];
        let tail = Piece { phase: Phase::Reciprocal, v: [ya, 0.0], d: [y_rhs(coef, f.t[k], ya, true)?, 1.0] };
        (Some(f.t_sup()), Some(tail))
    } else {
        (None, None)
    };
    Ok(RiccatiSolution {
        coefficient: coef.clone(),
        kappa,
        exponent: s,
        t,
        g,
        pieces,
        tail,
        pole,
        horizon: f.horizon(),
        residual,
    })
}

/// Rebuild `f` from `g`: `f = κ t^s exp(∫_ε^t w/κ)` with zero tail on `[0, ε]`, `f' = f g/κ`.
pub fn reverse(g: &RiccatiSolution) -> Result<JacobiSolution, DualityError> {
    let kappa = g.kappa();
    let s = g.exponent();
    let coef = g.coefficient();
    let t = g.grid();
    let first_w = g.g[0] - kappa * s / t[0];
    if t[0] * first_w.abs() > 1e-2 * kappa {
        return Err(DualityError::Asymptotic(t[0] * first_w.abs()));
    }
    let n = t.len();
    let mut log_f = Vec::with_capacity(n + 1);
    log_f.push(kappa.ln() + s * t[0].ln());
    let quad = QuadOptions::tol(1e-14);
    for (k, p) in g.pieces.iter().enumerate() {
        let (ta, tb) = (t[k], t[k + 1]);
        let h = tb - ta;
        let inc = match p.phase {
            Phase::Bounded => {
                let int_w = h * (p.v[0] + p.v[1]) / 2.0 + h * h * (p.d[0] - p.d[1]) / 12.0;
                s * (tb / ta).ln() + int_w / kappa
            }
            Phase::Reciprocal => integrate_fn(
                |r| Ok(1.0 / hermite(ta, tb, p.v[0], p.v[1], p.d[0], p.d[1], r).0),
                ta,
                tb,
                &quad,
            )?,
        };
        log_f.push(log_f[k] + inc);
    }
    let mut tt = t.to_vec();
    let mut f: Vec<f64> = log_f.iter().map(|l| l.exp()).collect();
    let mut fp: Vec<f64> = (0..n).map(|i| f[i] * g.g[i] / kappa).collect();
    let mut w: Vec<Option<f64>> = (0..n)
        .map(|i| {
            let from_piece = if i < n - 1 { g.pieces[i] } else { g.pieces[n - 2] };
            let idx = if i < n - 1 { 0 } else { 1 };
            (from_piece.phase == Phase::Bounded).then(|| from_piece.v[idx])
        })
        .collect();
    let mut fpp: Vec<[f64; 2]> = (0..n - 1)
        .map(|k| -> Result<[f64; 2], RadialError> {
            Ok([-coef.eval(t[k].next_up())? * f[k], -coef.eval(t[k + 1])? * f[k + 1]])
        })
        .collect::<Result<_, _>>()?;
    let mut hit_zero = false;
    let mut t_sup = g.horizon();
    if let (Some(pole), Some(tail)) = (g.pole, g.tail) {
        let ta = t[n - 1];
        let int_gy = integrate_fn(
            |r| Ok(coef.eval(r)? * hermite(ta, pole, tail.v[0], tail.v[1], tail.d[0], tail.d[1], r).0),
            ta,
            pole,
            &quad,
        )?;
        let fp_sup = fp[n - 1] * (-int_gy).exp();
        tt.push(pole);
        f.push(0.0);
        fp.push(fp_sup);
        w.push(None);
        fpp.push([-coef.eval(ta.next_up())? * f[n - 1], 0.0]);
        hit_zero = true;
        t_sup = pole;
    }
    let mut residual = Residual::default();
    for k in 0..tt.len() - 1 {
        let (ta, tb) = (tt[k], tt[k + 1]);
        let tm = 0.5 * (ta + tb);
        let (fm, _) = hermite(ta, tb, f[k], f[k + 1], fp[k], fp[k + 1], tm);
        let r = match g.pieces.get(k) {
            Some(p) if p.phase == Phase::Bounded => {
                let (wm, dwm) = hermite(ta, tb, p.v[0], p.v[1], p.d[0], p.d[1], tm);
                fm / kappa * (dwm - w_rhs(coef, kappa, s, tm, wm, false)?)
            }
            _ => {
                let (_, fppm) = hermite(ta, tb, fp[k], fp[k + 1], fpp[k][0], fpp[k][1], tm);
                fppm + coef.eval(tm)? * fm
            }
        };
        residual.push(r);
    }
    Ok(JacobiSolution {
        coefficient: coef.clone(),
        kappa,
        exponent: s,
        t: tt,
        f,
        fp,
        w,
        fpp,
        horizon: g.horizon(),
        t_sup,
        hit_zero,
        residual,
    })
}

/// Change of initial slope: Jacobi solutions scale by `κ_new/κ`, Riccati solutions likewise.
pub trait RescaleKappa: Sized {
    fn rescale_kappa(&self, kappa_new: f64) -> Result<Self, DualityError>;
}

impl RescaleKappa for JacobiSolution {
    fn rescale_kappa(&self, kappa_new: f64) -> Result<Self, DualityError> {
        if !(kappa_new > 0.0) {
            return Err(DualityError::BadKappa(kappa_new));
        }
        Ok(self.with_kappa(kappa_new))
    }
}

impl RescaleKappa for RiccatiSolution {
    fn rescale_kappa(&self, kappa_new: f64) -> Result<Self, DualityError> {
        if !(kappa_new > 0.0) {
            return Err(DualityError::BadKappa(kappa_new));
        }
        Ok(self.with_kappa(kappa_new))
    }
}

/// Largest `|a − b|` of two Jacobi solutions over the nodes of `a` inside `[lo, hi]`.
pub fn sup_distance(a: &JacobiSolution, b: &JacobiSolution, lo: f64, hi: f64) -> Result<f64, RadialError> {
    let mut worst: f64 = 0.0;
    for (&t, &fa) in a.grid().iter().zip(a.f_values()) {
        if t >= lo && t <= hi {
            worst = worst.max((fa - b.f_at(t)?).abs());
        }
    }
    Ok(worst)
}

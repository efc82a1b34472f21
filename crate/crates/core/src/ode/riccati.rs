use super::dopri::{self, hermite};
use super::jacobi::candidate_grid;
use super::{check_inputs, relative, seed, segments, switch_level, Coefficient, OdeError, Residual, SolverOptions};
use crate::radial::{RadialError, RadialExpr};

/// Variable used on an interval: `w = g − κs/t` away from poles, `y = κ/g` when `g` is large and negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    Bounded,
    Reciprocal,
}

/// Cubic Hermite data for one interval in its phase variable.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Piece {
    pub phase: Phase,
    pub v: [f64; 2],
    pub d: [f64; 2],
}

/// Solution of `g' + g²/κ + κG = 0` with `g − κs/t` bounded at the origin.
#[derive(Clone, Debug)]
pub struct RiccatiSolution {
    pub(crate) coefficient: Coefficient,
    pub(crate) kappa: f64,
    pub(crate) exponent: f64,
    pub(crate) t: Vec<f64>,
    pub(crate) g: Vec<f64>,
    pub(crate) pieces: Vec<Piece>,
    /// Interval from the last node to the pole, in the reciprocal variable.
    pub(crate) tail: Option<Piece>,
    pub(crate) pole: Option<f64>,
    pub(crate) horizon: f64,
    pub(crate) residual: Residual,
}

/// Solve the Riccati problem on `(0, T]`; a finite-time blow-up is reported as [`RiccatiSolution::pole`].
pub fn solve_riccati(
    g: impl Into<Coefficient>,
    kappa: f64,
    t_end: f64,
    opts: &SolverOptions,
) -> Result<RiccatiSolution, OdeError> {
    let coef = g.into();
    check_inputs(kappa, t_end)?;
    let mut max_step = opts.max_step_for(t_end);
    let mut attempt = 0;
    loop {
        let (sol, bad_len) = attempt_riccati(&coef, kappa, t_end, opts, max_step)?;
        if sol.residual.max_abs() <= opts.res_tol || attempt >= opts.max_refinements || bad_len == 0.0 {
            return Ok(sol);
        }
        max_step = max_step.min(0.5 * bad_len);
        attempt += 1;
    }
}

fn attempt_riccati(
    coef: &Coefficient,
    kappa: f64,
    t_end: f64,
    opts: &SolverOptions,
    max_step: f64,
) -> Result<(RiccatiSolution, f64), OdeError> {
    let t0 = opts.epsilon_for(t_end);
    let sd = seed(coef, kappa, t0)?;
    let s = sd.s;
    let ctl = opts.control(max_step);
    let mut t = vec![t0];
    let mut g = vec![kappa * s / t0 + sd.w0];
    let mut pieces = Vec::new();
    let mut residual = Residual::default();
    let mut bad_len: f64 = 0.0;
    let mut record = |r: f64, h: f64, residual: &mut Residual| {
        residual.push(r);
        if r.abs() > opts.res_tol {
            bad_len = bad_len.max(h);
        }
    };
    let mut phase = Phase::Bounded;
    let mut v = sd.w0;
    let mut cur = t0;
    let mut tail = None;
    let mut pole = None;

    'segments: for &end in &segments(coef, t0, t_end) {
        let start = cur;
        let clamp = move |t: f64| if t <= start { start.next_up() } else { t.min(end) };
        while cur < end {
            match phase {
                Phase::Bounded => {
                    let rhs = |t: f64, y: &[f64; 1]| -> Result<[f64; 1], RadialError> {
                        let reg = coef.regular().eval(clamp(t))?;
                        Ok([-kappa * reg - 2.0 * s * y[0] / t - y[0] * y[0] / kappa])
                    };
                    let tr = dopri::integrate(rhs, cur, [v], end, &ctl, |t, y| {
                        kappa * s / t + y[0] < switch_level(kappa, t)
                    })?;
                    for k in 0..tr.t.len() - 1 {
                        let (ta, tb) = (tr.t[k], tr.t[k + 1]);
                        t.push(tb);
                        g.push(kappa * s / tb + tr.y[k + 1][0]);
                        pieces.push(Piece {
                            phase: Phase::Bounded,
                            v: [tr.y[k][0], tr.y[k + 1][0]],
                            d: [tr.dy[k][0], tr.dy[k + 1][0]],
                        });
                        let tm = 0.5 * (ta + tb);
                        let (wm, dwm) = tr.hermite(k, 0, tm);
                        record(dwm - rhs(tm, &[wm])?[0], tb - ta, &mut residual);
                    }
                    let (tl, yl, _) = tr.last();
                    cur = tl;
                    if cur < end {
                        phase = Phase::Reciprocal;
                        v = kappa / (kappa * s / tl + yl[0]);
                    }
                }
                Phase::Reciprocal => {
                    let rhs = |t: f64, y: &[f64; 1]| -> Result<[f64; 1], RadialError> {
                        Ok([1.0 + coef.eval(clamp(t))? * y[0] * y[0]])
                    };
                    let back = |t: f64| -0.5 / (1.0f64).max(1.0 / t);
                    let tr = dopri::integrate(rhs, cur, [v], end, &ctl, |t, y| y[0] >= 0.0 || y[0] < back(t))?;
                    let (tl, yl, _) = tr.last();
                    let crossed = yl[0] >= 0.0;
                    let n_int = tr.t.len() - 1 - usize::from(crossed);
                    for k in 0..n_int {
                        let (ta, tb) = (tr.t[k], tr.t[k + 1]);
                        t.push(tb);
                        g.push(kappa / tr.y[k + 1][0]);
                        pieces.push(Piece {
                            phase: Phase::Reciprocal,
                            v: [tr.y[k][0], tr.y[k + 1][0]],
                            d: [tr.dy[k][0], tr.dy[k + 1][0]],
                        });
                        let tm = 0.5 * (ta + tb);
                        let (ym, dym) = tr.hermite(k, 0, tm);
                        record(rhs(tm, &[ym])?[0] - dym, tb - ta, &mut residual);
                    }
                    if crossed {
                        let k = tr.t.len() - 2;
                        let (tp, dyp) = locate_pole(&tr, k, rhs, &ctl, opts.root_tol)?;
                        tail = Some(Piece { phase: Phase::Reciprocal, v: [tr.y[k][0], 0.0], d: [tr.dy[k][0], dyp] });
                        pole = Some(tp);
                        break 'segments;
                    }
                    cur = tl;
                    if cur < end {
                        phase = Phase::Bounded;
                        v = kappa / yl[0] - kappa * s / tl;
                    }
                }
            }
        }
    }
    let sol = RiccatiSolution {
        coefficient: coef.clone(),
        kappa,
        exponent: s,
        t,
        g,
        pieces,
        tail,
        pole,
        horizon: t_end,
        residual,
    };
    Ok((sol, bad_len))
}

fn locate_pole<F>(
    tr: &dopri::Trajectory<1>,
    k: usize,
    rhs: F,
    ctl: &dopri::StepControl,
    tol: f64,
) -> Result<(f64, f64), OdeError>
where
    F: Fn(f64, &[f64; 1]) -> Result<[f64; 1], RadialError> + Copy,
{
    let (mut lo, mut hi) = (tr.t[k], tr.t[k + 1]);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if tr.hermite(k, 0, mid).0 < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut t = 0.5 * (lo + hi);
    let mut dy = 1.0;
    for _ in 0..6 {
        let sub = dopri::integrate(rhs, tr.t[k], tr.y[k], t, ctl, |_, _| false)?;
        let (_, y, d) = sub.last();
        dy = d[0];
        let step = y[0] / d[0];
        t = (t - step).clamp(tr.t[k], tr.t[k + 1]);
        if step.abs() <= tol * t.max(1.0) {
            break;
        }
    }
    Ok((t, dy))
}

impl RiccatiSolution {
    /// Tabulate a closed-form candidate `g`. Residuals are `g' + g²/κ + κG` relative to `1 + Σ|terms|`.
    pub fn from_candidate(
        coef: impl Into<Coefficient>,
        kappa: f64,
        g: &RadialExpr,
        t_end: f64,
        opts: &SolverOptions,
    ) -> Result<RiccatiSolution, OdeError> {
        let coef = coef.into();
        check_inputs(kappa, t_end)?;
        let s = coef.exponent()?;
        let t0 = opts.epsilon_for(t_end);
        let dg = g.derivative();
        let mut grid = candidate_grid(t0, t_end);
        if let Some(i) = grid.iter().position(|&t| g.eval(t).map_or(true, |v| !v.is_finite())) {
            if i < 2 {
                return Err(OdeError::NotPositive(grid[i]));
            }
            grid.truncate(i);
        }
        let mut residual = Residual::default();
        let mut vals = Vec::with_capacity(grid.len());
        let mut slopes = Vec::with_capacity(grid.len());
        for &t in &grid {
            let (v, d) = (g.eval(t)?, dg.eval(t)?);
            residual.push(relative(d, v * v / kappa, kappa * coef.eval(t)?));
            vals.push(v);
            slopes.push(d);
        }
        for w in grid.windows(2) {
            let tm = 0.5 * (w[0] + w[1]);
            let v = g.eval(tm)?;
            residual.push(relative(dg.eval(tm)?, v * v / kappa, kappa * coef.eval(tm)?));
        }
        let pieces = (0..grid.len() - 1)
            .map(|k| piece_from_values(kappa, s, [grid[k], grid[k + 1]], [vals[k], vals[k + 1]], [slopes[k], slopes[k + 1]]))
            .collect();
        Ok(RiccatiSolution {
            coefficient: coef,
            kappa,
            exponent: s,
            t: grid,
            g: vals,
            pieces,
            tail: None,
            pole: None,
            horizon: t_end,
            residual,
        })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn coefficient(&self) -> &Coefficient {
        &self.coefficient
    }

    pub fn grid(&self) -> &[f64] {
        &self.t
    }

    pub fn g_values(&self) -> &[f64] {
        &self.g
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn epsilon(&self) -> f64 {
        self.t[0]
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    /// Location of the blow-up `g → −∞`, if one was found before the horizon.
    pub fn pole(&self) -> Option<f64> {
        self.pole
    }

    /// The pole, or the horizon.
    pub fn t_sup(&self) -> f64 {
        self.pole.unwrap_or(self.horizon)
    }

    /// Residual measured in the phase variable of each interval.
    pub fn residual(&self) -> Residual {
        self.residual
    }

    pub fn is_generalized(&self) -> bool {
        (self.exponent - 1.0).abs() > 1e-12
    }

    /// Largest `|g − κ/t|` over the three smallest nodes.
    pub fn asymptotic_offset(&self) -> f64 {
        self.t.iter().zip(&self.g).take(3).map(|(t, g)| (g - self.kappa / t).abs()).fold(0.0, f64::max)
    }

    /// Dense `g` on `(0, last node]`.
    pub fn g_at(&self, t: f64) -> Result<f64, RadialError> {
        let last = *self.t.last().unwrap();
        if !(t > 0.0 && t <= last) {
            return Err(RadialError::OutOfDomain { r: t, lo: 0.0, hi: last });
        }
        if t < self.t[0] || self.t.len() == 1 {
            return Ok(self.kappa * self.exponent / t + (self.g[0] - self.kappa * self.exponent / self.t[0]));
        }
        let k = self.t.partition_point(|&v| v <= t).saturating_sub(1).min(self.t.len() - 2);
        let p = &self.pieces[k];
        let (v, _) = hermite(self.t[k], self.t[k + 1], p.v[0], p.v[1], p.d[0], p.d[1], t);
        Ok(match p.phase {
            Phase::Bounded => self.kappa * self.exponent / t + v,
            Phase::Reciprocal => self.kappa / v,
        })
    }

    pub(crate) fn with_kappa(&self, kappa_new: f64) -> RiccatiSolution {
        let c = kappa_new / self.kappa;
        let scale = |p: &Piece| match p.phase {
            Phase::Bounded => Piece { v: [p.v[0] * c, p.v[1] * c], d: [p.d[0] * c, p.d[1] * c], ..*p },
            Phase::Reciprocal => *p,
        };
        RiccatiSolution {
            kappa: kappa_new,
            g: self.g.iter().map(|v| v * c).collect(),
            pieces: self.pieces.iter().map(scale).collect(),
            tail: self.tail,
            residual: Residual { min: self.residual.min * c, max: self.residual.max * c },
            ..self.clone()
        }
    }
}

/// Phase choice and phase-variable data for an interval from values and slopes of `g`.
pub(crate) fn piece_from_values(kappa: f64, s: f64, t: [f64; 2], g: [f64; 2], gp: [f64; 2]) -> Piece {
    let reciprocal = (0..2).all(|i| g[i] < 0.5 * switch_level(kappa, t[i]));
    if reciprocal {
        Piece {
            phase: Phase::Reciprocal,
            v: [kappa / g[0], kappa / g[1]],
            d: [-kappa * gp[0] / (g[0] * g[0]), -kappa * gp[1] / (g[1] * g[1])],
        }
    } else {
        Piece {
            phase: Phase::Bounded,
            v: [g[0] - kappa * s / t[0], g[1] - kappa * s / t[1]],
            d: [gp[0] + kappa * s / (t[0] * t[0]), gp[1] + kappa * s / (t[1] * t[1])],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> SolverOptions {
        SolverOptions::default()
    }

    #[test]
    fn flat_is_reciprocal() {
        let sol = solve_riccati(RadialExpr::zero(), 1.0, 5.0, &opts()).unwrap();
        for &t in &[0.1, 1.0, 5.0] {
            assert!((sol.g_at(t).unwrap() - 1.0 / t).abs() < 1e-8);
        }
        assert!(sol.pole().is_none());
    }

    #[test]
    fn hyperbolic_cotangent() {
        let sol = solve_riccati(RadialExpr::constant(-1.0), 1.0, 5.0, &opts()).unwrap();
        assert!((sol.g_at(1.0).unwrap() - 1.0 / 1.0f64.tanh()).abs() < 1e-8);
        assert!(sol.asymptotic_offset() < 1.0);
        assert!(sol.residual().max_abs() <= 1e-8, "{:?}", sol.residual());
    }

    #[test]
    fn cotangent_pole() {
        let sol = solve_riccati(RadialExpr::constant(1.0), 1.0, 4.0, &opts()).unwrap();
        let p = sol.pole().expect("pole");
        assert!((p - std::f64::consts::PI).abs() < 1e-9, "{p}");
        assert!((sol.g_at(3.0).unwrap() - 1.0 / 3.0f64.tan()).abs() < 1e-7);
    }

    #[test]
    fn candidate_residuals() {
        let g = RadialExpr::cosh(1.0) / RadialExpr::sinh(1.0);
        let o = SolverOptions { epsilon: Some(1e-3), ..opts() };
        let sol = RiccatiSolution::from_candidate(RadialExpr::constant(-1.0), 1.0, &g, 3.0, &o).unwrap();
        assert!(sol.residual().max_abs() < 1e-6, "{:?}", sol.residual());
    }
}

use std::sync::Arc;

use super::dopri::{self, hermite};
use super::{check_inputs, relative, seed, segments, switch_level, Coefficient, OdeError, Residual, SolverOptions};
use crate::radial::{Domain, RadialError, RadialExpr, SampledFn};

/// Solution of `f'' + G f = 0` with `f ~ κ t^s` at the origin, on `[t₀, t_sup]`.
#[derive(Clone, Debug)]
pub struct JacobiSolution {
    pub(crate) coefficient: Coefficient,
    pub(crate) kappa: f64,
    pub(crate) exponent: f64,
    pub(crate) t: Vec<f64>,
    pub(crate) f: Vec<f64>,
    pub(crate) fp: Vec<f64>,
    /// `w = κf'/f − κs/t` where the bounded variable was integrated directly.
    pub(crate) w: Vec<Option<f64>>,
    /// `f''` at the two ends of each interval.
    pub(crate) fpp: Vec<[f64; 2]>,
    pub(crate) horizon: f64,
    pub(crate) t_sup: f64,
    pub(crate) hit_zero: bool,
    pub(crate) residual: Residual,
}

/// Solve `f'' + G f = 0`, `f(0) = 0`, `f'(0) = κ` on `(0, T]`, stopping at the first zero of `f`.
pub fn solve_jacobi(
    g: impl Into<Coefficient>,
    kappa: f64,
    t_end: f64,
    opts: &SolverOptions,
) -> Result<JacobiSolution, OdeError> {
    let coef = g.into();
    check_inputs(kappa, t_end)?;
    let mut max_step = opts.max_step_for(t_end);
    let mut attempt = 0;
    loop {
        let (sol, bad_len) = attempt_jacobi(&coef, kappa, t_end, opts, max_step)?;
        if sol.residual.max_abs() <= opts.res_tol || attempt >= opts.max_refinements || bad_len == 0.0 {
            return Ok(sol);
        }
        max_step = max_step.min(0.5 * bad_len);
        attempt += 1;
    }
}

struct Builder {
    t: Vec<f64>,
    f: Vec<f64>,
    fp: Vec<f64>,
    w: Vec<Option<f64>>,
    fpp: Vec<[f64; 2]>,
    residual: Residual,
    bad_len: f64,
    res_tol: f64,
}

impl Builder {
    fn node(&mut self, t: f64, f: f64, fp: f64, w: Option<f64>) {
        self.w.push(w);
        self.t.push(t);
        self.f.push(f);
        self.fp.push(fp);
    }

    fn record(&mut self, r: f64, h: f64) {
        self.residual.push(r);
        if r.abs() > self.res_tol {
            self.bad_len = self.bad_len.max(h);
        }
    }
}

fn attempt_jacobi(
    coef: &Coefficient,
    kappa: f64,
    t_end: f64,
    opts: &SolverOptions,
    max_step: f64,
) -> Result<(JacobiSolution, f64), OdeError> {
    let t0 = opts.epsilon_for(t_end);
    let sd = seed(coef, kappa, t0)?;
    let s = sd.s;
    let ctl = opts.control(max_step);
    let mut b = Builder {
        t: Vec::new(),
        f: Vec::new(),
        fp: Vec::new(),
        w: Vec::new(),
        fpp: Vec::new(),
        residual: Residual::default(),
        bad_len: 0.0,
        res_tol: opts.res_tol,
    };
    let f_of = |t: f64, w: f64, ell: f64| {
        let f = kappa * t.powf(s) * ell.exp();
        (f, f * (kappa * s / t + w) / kappa)
    };
    let (f0, fp0) = f_of(t0, sd.w0, sd.ell0);
    b.node(t0, f0, fp0, Some(sd.w0));

    let mut in_w = true;
    let mut w_state = [sd.w0, sd.ell0];
    let mut cur = t0;
    let mut hit_zero = false;

    'segments: for &end in &segments(coef, t0, t_end) {
        let start = cur;
        let clamp = move |t: f64| if t <= start { start.next_up() } else { t.min(end) };
        while cur < end {
            if in_w {
                let rhs = |t: f64, y: &[f64; 2]| -> Result<[f64; 2], RadialError> {
                    let reg = coef.regular().eval(clamp(t))?;
                    Ok([-kappa * reg - 2.0 * s * y[0] / t - y[0] * y[0] / kappa, y[0] / kappa])
                };
                let tr = dopri::integrate(rhs, cur, w_state, end, &ctl, |t, y| {
                    kappa * s / t + y[0] < switch_level(kappa, t)
                })?;
                for k in 0..tr.t.len() - 1 {
                    let (ta, tb) = (tr.t[k], tr.t[k + 1]);
                    let (fa, _) = f_of(ta, tr.y[k][0], tr.y[k][1]);
                    let (fb, fpb) = f_of(tb, tr.y[k + 1][0], tr.y[k + 1][1]);
                    b.node(tb, fb, fpb, Some(tr.y[k + 1][0]));
                    b.fpp.push([-coef.eval(clamp(ta))? * fa, -coef.eval(clamp(tb))? * fb]);
                    let tm = 0.5 * (ta + tb);
                    let (wm, dwm) = tr.hermite(k, 0, tm);
                    let (ellm, _) = tr.hermite(k, 1, tm);
                    let rw = dwm - rhs(tm, &[wm, ellm])?[0];
                    let (fm, _) = f_of(tm, wm, ellm);
                    b.record(fm / kappa * rw, tb - ta);
                }
                let (tl, yl, _) = tr.last();
                cur = tl;
                w_state = yl;
                if cur < end {
                    in_w = false;
                }
            } else {
                let rhs = |t: f64, y: &[f64; 2]| -> Result<[f64; 2], RadialError> {
                    Ok([y[1], -coef.eval(clamp(t))? * y[0]])
                };
                let n = b.t.len() - 1;
                let y0 = [b.f[n], b.fp[n]];
                let tr = dopri::integrate(rhs, cur, y0, end, &ctl, |_, y| y[0] <= 0.0)?;
                let mut tt = tr.t.clone();
                let mut yy = tr.y.clone();
                let mut dd = tr.dy.clone();
                if tr.last().1[0] <= 0.0 {
                    let k = tt.len() - 2;
                    let root = locate_zero(&tr, k, rhs, &ctl, opts.root_tol)?;
                    tt[k + 1] = root.0;
                    yy[k + 1] = [0.0, root.1];
                    dd[k + 1] = [root.1, 0.0];
                    hit_zero = true;
                }
                for k in 0..tt.len() - 1 {
                    let (ta, tb) = (tt[k], tt[k + 1]);
                    b.node(tb, yy[k + 1][0], yy[k + 1][1], None);
                    b.fpp.push([dd[k][1], dd[k + 1][1]]);
                    let tm = 0.5 * (ta + tb);
                    let (fm, _) = hermite(ta, tb, yy[k][0], yy[k + 1][0], yy[k][1], yy[k + 1][1], tm);
                    let (_, fppm) = hermite(ta, tb, yy[k][1], yy[k + 1][1], dd[k][1], dd[k + 1][1], tm);
                    b.record(fppm + coef.eval(clamp(tm))? * fm, tb - ta);
                }
                cur = *tt.last().unwrap();
                if hit_zero {
                    break 'segments;
                }
            }
        }
    }
    let t_sup = if hit_zero { cur } else { t_end };
    let sol = JacobiSolution {
        coefficient: coef.clone(),
        kappa,
        exponent: s,
        t: b.t,
        f: b.f,
        fp: b.fp,
        w: b.w,
        fpp: b.fpp,
        horizon: t_end,
        t_sup,
        hit_zero,
        residual: b.residual,
    };
    Ok((sol, b.bad_len))
}

/// First zero of `f` inside interval `k` of a direct trajectory: bisection on the interpolant, then
/// Newton corrections with exact re-integration. Returns `(t*, f'(t*))`.
fn locate_zero<F>(
    tr: &dopri::Trajectory<2>,
    k: usize,
    rhs: F,
    ctl: &dopri::StepControl,
    tol: f64,
) -> Result<(f64, f64), OdeError>
where
    F: Fn(f64, &[f64; 2]) -> Result<[f64; 2], RadialError> + Copy,
{
    let (mut lo, mut hi) = (tr.t[k], tr.t[k + 1]);
    if tr.y[k + 1][0] == 0.0 {
        return Ok((hi, tr.y[k + 1][1]));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if tr.hermite(k, 0, mid).0 > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut t = 0.5 * (lo + hi);
    let (ta, ya) = (tr.t[k], tr.y[k]);
    let mut fp = tr.hermite(k, 1, t).0;
    for _ in 0..6 {
        let sub = dopri::integrate(rhs, ta, ya, t, ctl, |_, _| false)?;
        let (_, y, _) = sub.last();
        fp = y[1];
        let dt = y[0] / y[1];
        t = (t - dt).clamp(tr.t[k], tr.t[k + 1]);
        if dt.abs() <= tol * t.max(1.0) {
            break;
        }
    }
    Ok((t, fp))
}

impl JacobiSolution {
    /// Tabulate a closed-form candidate on a fixed grid. Residuals are `f'' + G f` relative to `1 + |f''| + |Gf|`.
    pub fn from_candidate(
        g: impl Into<Coefficient>,
        kappa: f64,
        f: &RadialExpr,
        t_end: f64,
        opts: &SolverOptions,
    ) -> Result<JacobiSolution, OdeError> {
        let coef = g.into();
        check_inputs(kappa, t_end)?;
        let s = coef.exponent()?;
        let t0 = opts.epsilon_for(t_end);
        let df = f.derivative();
        let d2f = df.derivative();
        let mut grid = candidate_grid(t0, t_end);
        let mut t_sup = t_end;
        let mut hit_zero = false;
        if let Some(i) = grid.iter().position(|&t| f.eval(t).map_or(true, |v| v <= 0.0)) {
            if i == 0 {
                return Err(OdeError::NotPositive(grid[0]));
            }
            let (mut lo, mut hi) = (grid[i - 1], grid[i]);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if f.eval(mid).is_ok_and(|v| v > 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            grid.truncate(i);
            t_sup = hi;
            hit_zero = true;
            grid.push(t_sup);
        }
        let mut residual = Residual::default();
        let mut vals = Vec::with_capacity(grid.len());
        let mut slopes = Vec::with_capacity(grid.len());
        let mut second = Vec::with_capacity(grid.len());
        for (i, &t) in grid.iter().enumerate() {
            let v = if hit_zero && i == grid.len() - 1 { 0.0 } else { f.eval(t)? };
            let (d1, d2) = (df.eval(t)?, d2f.eval(t)?);
            residual.push(relative(d2, coef.eval(t)? * v, 0.0));
            vals.push(v);
            slopes.push(d1);
            second.push(d2);
        }
        for w in grid.windows(2) {
            let tm = 0.5 * (w[0] + w[1]);
            residual.push(relative(d2f.eval(tm)?, coef.eval(tm)? * f.eval(tm)?, 0.0));
        }
        let fpp = second.windows(2).map(|w| [w[0], w[1]]).collect();
        let w = vec![None; grid.len()];
        Ok(JacobiSolution {
            coefficient: coef,
            kappa,
            exponent: s,
            t: grid,
            f: vals,
            fp: slopes,
            w,
            fpp,
            horizon: t_end,
            t_sup,
            hit_zero,
            residual,
        })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Leading exponent `s` of `f ~ κ t^s`; `s = 1` for ordinary seeds.
    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn coefficient(&self) -> &Coefficient {
        &self.coefficient
    }

    pub fn grid(&self) -> &[f64] {
        &self.t
    }

    pub fn f_values(&self) -> &[f64] {
        &self.f
    }

    pub fn fprime_values(&self) -> &[f64] {
        &self.fp
    }

    pub fn epsilon(&self) -> f64 {
        self.t[0]
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    /// First zero of `f`, or the horizon when none was found.
    pub fn t_sup(&self) -> f64 {
        self.t_sup
    }

    pub fn reached_zero(&self) -> bool {
        self.hit_zero
    }

    pub fn residual(&self) -> Residual {
        self.residual
    }

    /// `f'(0) ≠ κ`: the seed is `κ t^s` with `s ≠ 1`.
    pub fn is_generalized(&self) -> bool {
        (self.exponent - 1.0).abs() > 1e-12
    }

    fn locate(&self, t: f64) -> usize {
        let k = self.t.partition_point(|&v| v <= t);
        k.saturating_sub(1).min(self.t.len() - 2)
    }

    fn check(&self, t: f64) -> Result<(), RadialError> {
        if t > 0.0 && t <= self.t_sup && t.is_finite() {
            Ok(())
        } else {
            Err(RadialError::OutOfDomain { r: t, lo: 0.0, hi: self.t_sup })
        }
    }

    /// Bounded-variable data on interval `k`: `(w, w')` at both ends, when available.
    fn w_piece(&self, k: usize) -> Option<([f64; 2], [f64; 2])> {
        let (wa, wb) = (self.w[k]?, self.w[k + 1]?);
        let rhs = |t: f64, w: f64| -> Option<f64> {
            let reg = self.coefficient.regular().eval(t).ok()?;
            Some(-self.kappa * reg - 2.0 * self.exponent * w / t - w * w / self.kappa)
        };
        let (ta, tb) = (self.t[k], self.t[k + 1]);
        Some(([wa, wb], [rhs(ta.next_up(), wa)?, rhs(tb, wb)?]))
    }

    /// `(f, f')` at `t` inside interval `k` through `f = κ t^s exp(ℓ)`, `ℓ' = w/κ`.
    fn eval_bounded(&self, k: usize, t: f64, v: [f64; 2], d: [f64; 2]) -> (f64, f64) {
        let (ta, tb) = (self.t[k], self.t[k + 1]);
        let h = tb - ta;
        let x = (t - ta) / h;
        let (x2, x3, x4) = (x * x, x * x * x, x * x * x * x);
        let int_w = h
            * (v[0] * (x4 / 2.0 - x3 + x)
                + h * d[0] * (x4 / 4.0 - 2.0 * x3 / 3.0 + x2 / 2.0)
                + v[1] * (-x4 / 2.0 + x3)
                + h * d[1] * (x4 / 4.0 - x3 / 3.0));
        let f = self.f[k] * (t / ta).powf(self.exponent) * (int_w / self.kappa).exp();
        let (w, _) = hermite(ta, tb, v[0], v[1], d[0], d[1], t);
        (f, f * (self.exponent / t + w / self.kappa))
    }

    /// Dense value of `f` on `(0, t_sup]`; below `t₀` the seed power law is used.
    pub fn f_at(&self, t: f64) -> Result<f64, RadialError> {
        self.check(t)?;
        if t < self.t[0] {
            return Ok(self.f[0] * (t / self.t[0]).powf(self.exponent));
        }
        if self.t.len() == 1 {
            return Ok(self.f[0]);
        }
        let k = self.locate(t);
        if let Some((v, d)) = self.w_piece(k) {
            return Ok(self.eval_bounded(k, t, v, d).0);
        }
        Ok(hermite(self.t[k], self.t[k + 1], self.f[k], self.f[k + 1], self.fp[k], self.fp[k + 1], t).0)
    }

    /// Dense value of `f'`.
    pub fn fprime_at(&self, t: f64) -> Result<f64, RadialError> {
        self.check(t)?;
        if t < self.t[0] {
            return Ok(self.fp[0] * (t / self.t[0]).powf(self.exponent - 1.0));
        }
        if self.t.len() == 1 {
            return Ok(self.fp[0]);
        }
        let k = self.locate(t);
        if let Some((v, d)) = self.w_piece(k) {
            return Ok(self.eval_bounded(k, t, v, d).1);
        }
        let [a, b] = self.fpp[k];
        Ok(hermite(self.t[k], self.t[k + 1], self.fp[k], self.fp[k + 1], a, b, t).0)
    }

    /// `f'/f`
    pub fn log_derivative_at(&self, t: f64) -> Result<f64, RadialError> {
        Ok(self.fprime_at(t)? / self.f_at(t)?)
    }

    /// Extrapolate `f'` to the origin from the three smallest nodes (quadratic fit).
    pub fn initial_slope_estimate(&self) -> f64 {
        let (t, y) = (&self.t[..3], &self.fp[..3]);
        let l0 = (0.0 - t[1]) * (0.0 - t[2]) / ((t[0] - t[1]) * (t[0] - t[2]));
        let l1 = (0.0 - t[0]) * (0.0 - t[2]) / ((t[1] - t[0]) * (t[1] - t[2]));
        let l2 = (0.0 - t[0]) * (0.0 - t[1]) / ((t[2] - t[0]) * (t[2] - t[1]));
        l0 * y[0] + l1 * y[1] + l2 * y[2]
    }

    /// The solution as a radial function on `(0, t_sup]`, with `f'` and `f'' = −G f` as derivatives.
    pub fn warp(&self) -> RadialExpr {
        RadialExpr::sampled(Arc::new(Warp(Arc::new(self.clone()))))
    }

    pub(crate) fn with_kappa(&self, kappa_new: f64) -> JacobiSolution {
        let c = kappa_new / self.kappa;
        JacobiSolution {
            kappa: kappa_new,
            f: self.f.iter().map(|v| v * c).collect(),
            fp: self.fp.iter().map(|v| v * c).collect(),
            w: self.w.iter().map(|v| v.map(|x| x * c)).collect(),
            fpp: self.fpp.iter().map(|[a, b]| [a * c, b * c]).collect(),
            residual: Residual { min: self.residual.min * c, max: self.residual.max * c },
            ..self.clone()
        }
    }
}

/// Geometric nodes near the origin followed by a uniform tail.
pub(crate) fn candidate_grid(t0: f64, t_end: f64) -> Vec<f64> {
    let knee = t_end.min(0.5);
    let n_geo = 240;
    let ratio = (knee / t0).ln() / n_geo as f64;
    let mut g: Vec<f64> = (0..=n_geo).map(|i| t0 * (ratio * i as f64).exp()).collect();
    *g.last_mut().unwrap() = knee;
    if t_end > knee {
        let n_uni = ((t_end - knee) / 0.005).ceil() as usize;
        let h = (t_end - knee) / n_uni as f64;
        g.extend((1..=n_uni).map(|i| knee + h * i as f64));
        *g.last_mut().unwrap() = t_end;
    }
    g
}

#[derive(Debug)]
struct Warp(Arc<JacobiSolution>);

#[derive(Debug)]
struct WarpSlope(Arc<JacobiSolution>);

impl SampledFn for Warp {
    fn eval(&self, r: f64) -> Result<f64, RadialError> {
        self.0.f_at(r)
    }
    fn derivative(&self) -> RadialExpr {
        RadialExpr::sampled(Arc::new(WarpSlope(self.0.clone())))
    }
    fn domain(&self) -> Domain {
        Domain::upto(self.0.t_sup)
    }
    fn leading_order(&self) -> f64 {
        self.0.exponent
    }
}

impl SampledFn for WarpSlope {
    fn eval(&self, r: f64) -> Result<f64, RadialError> {
        self.0.fprime_at(r)
    }
    fn derivative(&self) -> RadialExpr {
        -(self.0.coefficient.to_expr() * RadialExpr::sampled(Arc::new(Warp(self.0.clone()))))
    }
    fn domain(&self) -> Domain {
        Domain::upto(self.0.t_sup)
    }
    fn leading_order(&self) -> f64 {
        self.0.exponent - 1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> SolverOptions {
        SolverOptions::default()
    }

    #[test]
    fn flat_is_linear() {
        let sol = solve_jacobi(RadialExpr::zero(), 1.0, 5.0, &opts()).unwrap();
        assert_eq!(sol.t_sup(), 5.0);
        for &t in &[0.1, 1.0, 4.9] {
            assert!((sol.f_at(t).unwrap() - t).abs() < 1e-12);
        }
    }

    #[test]
    fn sine_and_first_zero() {
        let sol = solve_jacobi(RadialExpr::constant(1.0), 1.0, 4.0, &opts()).unwrap();
        assert!(sol.reached_zero());
        assert!((sol.t_sup() - std::f64::consts::PI).abs() < 1e-9, "{}", sol.t_sup());
        for &t in &[0.3, 1.5, 3.0] {
            assert!((sol.f_at(t).unwrap() - t.sin()).abs() < 1e-9);
        }
        assert!(sol.residual().max_abs() <= 1e-8, "{:?}", sol.residual());
    }

    #[test]
    fn hyperbolic_sine() {
        let sol = solve_jacobi(RadialExpr::constant(-1.0), 1.0, 5.0, &opts()).unwrap();
        assert!((sol.f_at(1.0).unwrap() - 1.0f64.sinh()).abs() < 1e-8);
        assert!((sol.initial_slope_estimate() - 1.0).abs() < 1e-6);
        assert!(sol.residual().max_abs() <= 1e-8, "{:?}", sol.residual());
    }

    #[test]
    fn power_warp_with_hint() {
        let sol = solve_jacobi(Coefficient::power_model(2.0), 1.0, 3.0, &opts()).unwrap();
        assert!(sol.is_generalized());
        for &t in &[0.01, 1.0, 2.5] {
            assert!((sol.f_at(t).unwrap() - t * t).abs() < 1e-9 * t * t.max(1.0));
        }
    }

    #[test]
    fn unbounded_coefficient_without_hint_is_rejected() {
        let r = solve_jacobi(RadialExpr::power(-2.0, -2.0), 1.0, 1.0, &opts());
        assert!(matches!(r, Err(OdeError::Seed(_))));
    }

    #[test]
    fn piecewise_coefficient_restarts() {
        let g = RadialExpr::piecewise(vec![1.0], vec![RadialExpr::constant(0.0), RadialExpr::constant(-1.0)]).unwrap();
        let sol = solve_jacobi(g, 1.0, 2.0, &opts()).unwrap();
        let exact = 1.0 * 1.0f64.cosh() + 1.0 * 1.0f64.sinh();
        assert!((sol.f_at(2.0).unwrap() - exact).abs() < 1e-9);
    }

    #[test]
    fn warp_derivatives() {
        let sol = solve_jacobi(RadialExpr::constant(-1.0), 1.0, 3.0, &opts()).unwrap();
        let w = sol.warp();
        let d2 = w.derivative().derivative();
        assert!((d2.eval(2.0).unwrap() - 2.0f64.sinh()).abs() < 1e-8);
    }
}

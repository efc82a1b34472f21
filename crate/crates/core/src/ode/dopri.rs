//! Dormand–Prince 5(4) with per-step error control over fixed-size states.

use super::OdeError;
use crate::radial::RadialError;

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

#[derive(Clone, Copy, Debug)]
pub struct StepControl {
    pub rtol: f64,
    pub atol: f64,
    pub max_step: f64,
    pub max_steps: usize,
}

/// Accepted nodes with states and right-hand sides, suitable for cubic Hermite dense output.
#[derive(Clone, Debug, Default)]
pub struct Trajectory<const N: usize> {
    pub t: Vec<f64>,
    pub y: Vec<[f64; N]>,
    pub dy: Vec<[f64; N]>,
}

impl<const N: usize> Trajectory<N> {
    pub fn last(&self) -> (f64, [f64; N], [f64; N]) {
        let i = self.t.len() - 1;
        (self.t[i], self.y[i], self.dy[i])
    }

    /// Cubic Hermite value and derivative of component `c` on interval `k` at `t`.
    pub fn hermite(&self, k: usize, c: usize, t: f64) -> (f64, f64) {
        hermite(self.t[k], self.t[k + 1], self.y[k][c], self.y[k + 1][c], self.dy[k][c], self.dy[k + 1][c], t)
    }
}

/// Cubic Hermite value and derivative on `[t0, t1]`.
pub fn hermite(t0: f64, t1: f64, y0: f64, y1: f64, d0: f64, d1: f64, t: f64) -> (f64, f64) {
    let h = t1 - t0;
    let s = (t - t0) / h;
    let (s2, s3) = (s * s, s * s * s);
    let v = (2.0 * s3 - 3.0 * s2 + 1.0) * y0
        + (s3 - 2.0 * s2 + s) * h * d0
        + (-2.0 * s3 + 3.0 * s2) * y1
        + (s3 - s2) * h * d1;
    let dv = ((6.0 * s2 - 6.0 * s) * y0 + (-6.0 * s2 + 6.0 * s) * y1) / h
        + (3.0 * s2 - 4.0 * s + 1.0) * d0
        + (3.0 * s2 - 2.0 * s) * d1;
    (v, dv)
}

fn axpy<const N: usize>(y: &[f64; N], h: f64, ks: &[[f64; N]], coeffs: &[f64]) -> [f64; N] {
    let mut out = *y;
    for (k, &a) in ks.iter().zip(coeffs) {
        if a != 0.0 {
            for i in 0..N {
                out[i] += h * a * k[i];
            }
        }
    }
    out
}

fn norm<const N: usize>(v: &[f64; N], y: &[f64; N], ctl: &StepControl) -> f64 {
    let s: f64 = (0..N)
        .map(|i| {
            let sc = ctl.atol + ctl.rtol * y[i].abs();
            (v[i] / sc).powi(2)
        })
        .sum();
    (s / N as f64).sqrt()
}

/// Integrate `y' = rhs(t, y)` from `t0` to `t_end`. After each accepted step `stop(t, y)` may end
/// the run early. Steps never cross `t_end`.
pub fn integrate<const N: usize, F, S>(
    mut rhs: F,
    t0: f64,
    y0: [f64; N],
    t_end: f64,
    ctl: &StepControl,
    mut stop: S,
) -> Result<Trajectory<N>, OdeError>
where
    F: FnMut(f64, &[f64; N]) -> Result<[f64; N], RadialError>,
    S: FnMut(f64, &[f64; N]) -> bool,
{
    let mut traj = Trajectory { t: vec![t0], y: vec![y0], dy: Vec::new() };
    let mut k0 = rhs(t0, &y0)?;
    traj.dy.push(k0);
    if t_end <= t0 {
        return Ok(traj);
    }
    let (mut t, mut y) = (t0, y0);

    let d0 = norm(&y, &y, ctl);
    let d1 = norm(&k0, &y, ctl);
    let mut h = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    let scale = if t0 > 0.0 { t0 } else { t_end - t0 };
    h = h.min(ctl.max_step).min(t_end - t0).min(1e-2 * scale);

    let mut steps = 0usize;
    let mut last_rejected = false;
    while t < t_end {
        steps += 1;
        if steps > ctl.max_steps {
            return Err(OdeError::TooManySteps { t, partial: traj.t.len() });
        }
        let mut last = false;
        if t + h >= t_end || t_end - (t + h) < 1e-12 * t_end.abs() {
            h = t_end - t;
            last = true;
        }
        if h <= 1e-15 * t.abs().max(1e-300) {
            return Err(OdeError::StepUnderflow { t, partial: traj.t.len() });
        }
        let mut ks = [[0.0; N]; 7];
        ks[0] = k0;
        let mut ok = true;
        for s in 1..7 {
            let ys = axpy(&y, h, &ks[..s], &A[s][..s]);
            match rhs(t + C[s] * h, &ys) {
                Ok(k) if k.iter().all(|v| v.is_finite()) => ks[s] = k,
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            h *= 0.25;
            last_rejected = true;
            continue;
        }
        let y_new = axpy(&y, h, &ks[..6], &A[6][..6]);
        let mut err = [0.0; N];
        for i in 0..N {
            err[i] = h * (0..7).map(|s| E[s] * ks[s][i]).sum::<f64>();
        }
        let mut scale = y;
        for i in 0..N {
            scale[i] = y[i].abs().max(y_new[i].abs());
        }
        let en = norm(&err, &scale, ctl);
        if en <= 1.0 {
            t = if last { t_end } else { t + h };
            y = y_new;
            k0 = ks[6];
            traj.t.push(t);
            traj.y.push(y);
            traj.dy.push(k0);
            if stop(t, &y) {
                break;
            }
            let mut fac = 0.9 * en.max(1e-10).powf(-0.2);
            fac = fac.clamp(0.2, 5.0);
            if last_rejected {
                fac = fac.min(1.0);
            }
            h = (h * fac).min(ctl.max_step);
            last_rejected = false;
        } else {
            h *= (0.9 * en.powf(-0.2)).max(0.1);
            last_rejected = true;
        }
    }
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctl() -> StepControl {
        StepControl { rtol: 1e-12, atol: 1e-14, max_step: 0.1, max_steps: 100_000 }
    }

    #[test]
    fn harmonic_oscillator() {
        let tr = integrate(|_, y: &[f64; 2]| Ok([y[1], -y[0]]), 0.0, [0.0, 1.0], 3.0, &ctl(), |_, _| false).unwrap();
        let (t, y, _) = tr.last();
        assert_eq!(t, 3.0);
        assert!((y[0] - 3.0f64.sin()).abs() < 1e-10);
        let k = tr.t.len() / 2;
        let tm = 0.5 * (tr.t[k] + tr.t[k + 1]);
        assert!((tr.hermite(k, 0, tm).0 - tm.sin()).abs() < 1e-8);
    }

    #[test]
    fn stop_callback_ends_early() {
        let tr = integrate(|_, _y: &[f64; 1]| Ok([1.0]), 0.0, [0.0], 10.0, &ctl(), |_, y| y[0] > 1.0).unwrap();
        assert!(tr.last().0 < 10.0);
    }
}

//! Globally adaptive Gauss–Kronrod (7/15) quadrature with an optional endpoint-singularity substitution.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{RadialError, RadialExpr};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Options for [`integrate_with`].
#[derive(Clone, Debug)]
pub struct QuadOptions {
    /// Absolute error target.
    pub tol: f64,
    /// Error target relative to the magnitude of the estimate; the looser of the two applies.
    pub rel_tol: f64,
    /// Exponent `γ > −1` such that the integrand behaves like `(r − a)^γ` at the lower limit.
    pub singular_exponent: Option<f64>,
    /// Extra interior split points.
    pub breakpoints: Vec<f64>,
    pub max_subdivisions: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { tol: 1e-10, rel_tol: 0.0, singular_exponent: None, breakpoints: Vec::new(), max_subdivisions: 4000 }
    }
}

impl QuadOptions {
    pub fn tol(tol: f64) -> Self {
        QuadOptions { tol, ..Default::default() }
    }

    pub fn relative(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn singular(mut self, exponent: f64) -> Self {
        self.singular_exponent = Some(exponent);
        self
    }
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F>(f: &mut F, a: f64, b: f64) -> Result<Segment, RadialError>
where
    F: FnMut(f64) -> Result<f64, RadialError>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs = kron.abs();
    for j in 0..7 {
        let dx = h * XGK[j];
        let (f1, f2) = (f(c - dx)?, f(c + dx)?);
        kron += WGK[j] * (f1 + f2);
        abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let value = kron * h;
    let mut error = ((kron - gauss) * h).abs();
    let mean = 0.5 * kron;
    let mut asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        let dx = h * XGK[j];
        asc += WGK[j] * ((f(c - dx)? - mean).abs() + (f(c + dx)? - mean).abs());
    }
    let asc = asc * h.abs();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    let roundoff = 50.0 * f64::EPSILON * abs * h.abs();
    if roundoff > error {
        error = roundoff;
    }
    if !value.is_finite() {
        return Err(RadialError::NonFinite { r: c });
    }
    Ok(Segment { a, b, value, error })
}

/// Adaptive integral of a closure over `[a, b]`, splitting first at `opts.breakpoints`.
pub fn integrate_fn<F>(f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<f64, RadialError>
where
    F: FnMut(f64) -> Result<f64, RadialError>,
{
    if !(a <= b) {
        return Err(RadialError::BadInterval { a, b });
    }
    if a == b {
        return Ok(0.0);
    }
    let mut f = f;
    let m = match opts.singular_exponent {
        Some(g) if g <= -1.0 => return Err(RadialError::NonIntegrable { exponent: g }),
        // r = a + u^m  ⇒  integrand ~ u^{mγ + m − 1} = u^0 for m = 1/(1+γ).
        Some(g) => 1.0 / (1.0 + g),
        None => 1.0,
    };
    if (m - 1.0).abs() > 1e-14 {
        let len = (b - a).powf(1.0 / m);
        let inner = QuadOptions {
            singular_exponent: None,
            breakpoints: opts
                .breakpoints
                .iter()
                .filter(|&&p| p > a && p < b)
                .map(|&p| (p - a).powf(1.0 / m))
                .collect(),
            ..opts.clone()
        };
        return adaptive(
            |u: f64| {
                if u == 0.0 {
                    return Ok(0.0);
                }
                let r = (a + u.powf(m)).min(b);
                Ok(f(r)? * m * u.powf(m - 1.0))
            },
            0.0,
            len,
            &inner,
        );
    }
    adaptive(f, a, b, opts)
}

fn adaptive<F>(mut f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<f64, RadialError>
where
    F: FnMut(f64) -> Result<f64, RadialError>,
{
    let mut cuts: Vec<f64> = std::iter::once(a)
        .chain(opts.breakpoints.iter().copied().filter(|&p| p > a && p < b))
        .chain(std::iter::once(b))
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut heap = BinaryHeap::new();
    let (mut total, mut err) = (0.0, 0.0);
    for w in cuts.windows(2) {
        let s = gk15(&mut f, w[0], w[1])?;
        total += s.value;
        err += s.error;
        heap.push(s);
    }
    let floor = |total: f64| 50.0 * f64::EPSILON * total.abs();
    let mut iterations = 0;
    while err > opts.tol.max(opts.rel_tol * total.abs()).max(floor(total)) {
        if iterations >= opts.max_subdivisions {
            return Err(RadialError::NoConvergence { estimate: total, error: err });
        }
        iterations += 1;
        let worst = heap.pop().expect("nonempty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            return Err(RadialError::NoConvergence { estimate: total, error: err });
        }
        let left = gk15(&mut f, worst.a, mid)?;
        let right = gk15(&mut f, mid, worst.b)?;
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        if heap.len() % 64 == 0 {
            total = heap.iter().map(|s| s.value).sum();
            err = heap.iter().map(|s| s.error).sum();
        }
    }
    Ok(heap.iter().map(|s| s.value).sum())
}

/// `∫_a^b e(r) dr` to absolute tolerance `tol`.
pub fn integrate(e: &RadialExpr, a: f64, b: f64, tol: f64) -> Result<f64, RadialError> {
    integrate_with(e, a, b, &QuadOptions::tol(tol))
}

/// `∫_a^b e(r) dr`; breakpoints of `e` are added to the split set.
pub fn integrate_with(e: &RadialExpr, a: f64, b: f64, opts: &QuadOptions) -> Result<f64, RadialError> {
    let mut o = opts.clone();
    o.breakpoints.extend(e.breakpoints());
    integrate_fn(|r| e.eval(r), a, b, &o)
}

/// Running integrals `∫_{nodes[0]}^{nodes[i]} e` for each node.
pub fn cumulative(e: &RadialExpr, nodes: &[f64], opts: &QuadOptions) -> Result<Vec<f64>, RadialError> {
    let mut out = Vec::with_capacity(nodes.len());
    let mut acc = 0.0;
    let mut seg_opts = opts.clone();
    seg_opts.tol = opts.tol / nodes.len().max(1) as f64;
    for (i, &t) in nodes.iter().enumerate() {
        if i > 0 {
            let mut o = seg_opts.clone();
            if i > 1 {
                o.singular_exponent = None;
            }
            acc += integrate_with(e, nodes[i - 1], t, &o)?;
        }
        out.push(acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_integral() {
        let v = integrate(&RadialExpr::power(1.0, 1.0), 1.0, 2.0, 1e-12).unwrap();
        assert!((v - 1.5).abs() < 1e-14);
    }

    #[test]
    fn improper_integral_with_hint() {
        let e = RadialExpr::power(1.0, -0.5);
        let v = integrate_with(&e, 0.0, 1.0, &QuadOptions::tol(1e-12).singular(-0.5));
        assert!((v.unwrap() - 2.0).abs() < 1e-11);
    }

    #[test]
    fn non_integrable_hint_rejected() {
        let e = RadialExpr::power(1.0, -1.0);
        let r = integrate_with(&e, 0.0, 1.0, &QuadOptions::tol(1e-8).singular(-1.0));
        assert!(matches!(r, Err(RadialError::NonIntegrable { .. })));
    }

    #[test]
    fn oscillatory_and_kinked() {
        let v = integrate(&RadialExpr::sin(20.0), 0.5, 3.0, 1e-12).unwrap();
        let exact = ((20.0f64 * 0.5).cos() - (60.0f64).cos()) / 20.0;
        assert!((v - exact).abs() < 1e-11);
        let pw = RadialExpr::piecewise(vec![1.0], vec![RadialExpr::constant(1.0), RadialExpr::constant(3.0)]).unwrap();
        assert!((integrate(&pw, 0.5, 2.0, 1e-12).unwrap() - 3.5).abs() < 1e-13);
    }

    #[test]
    fn cumulative_matches_closed_form() {
        let nodes: Vec<f64> = (0..=10).map(|i| 1.0 + i as f64 * 0.1).collect();
        let c = cumulative(&RadialExpr::power(2.0, 1.0), &nodes, &QuadOptions::tol(1e-12)).unwrap();
        for (t, v) in nodes.iter().zip(&c) {
            assert!((v - (t * t - 1.0)).abs() < 1e-12);
        }
    }
}

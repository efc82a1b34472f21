//! Piecewise cubic Hermite tables: monotone (Fritsch–Carlson/Butland slopes) or with supplied slopes.

/// Nodes, values and slopes of a C¹ piecewise cubic.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicTable {
    x: Vec<f64>,
    y: Vec<f64>,
    d: Vec<f64>,
}

impl CubicTable {
    /// Hermite table with explicit slopes. Caller guarantees strictly increasing nodes and equal lengths.
    pub(crate) fn hermite(x: Vec<f64>, y: Vec<f64>, d: Vec<f64>) -> Self {
        CubicTable { x, y, d }
    }

    /// Shape-preserving slopes: no new extrema between nodes.
    pub(crate) fn monotone(x: Vec<f64>, y: Vec<f64>) -> Self {
        let n = x.len();
        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let delta: Vec<f64> = (0..n - 1).map(|k| (y[k + 1] - y[k]) / h[k]).collect();
        let mut d = vec![0.0; n];
        if n == 2 {
            d[0] = delta[0];
            d[1] = delta[0];
            return CubicTable { x, y, d };
        }
        for k in 1..n - 1 {
            let (a, b) = (delta[k - 1], delta[k]);
            if a * b > 0.0 {
                let w1 = 2.0 * h[k] + h[k - 1];
                let w2 = h[k] + 2.0 * h[k - 1];
                d[k] = (w1 + w2) / (w1 / a + w2 / b);
            }
        }
        d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
        d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
        CubicTable { x, y, d }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.x
    }

    pub fn values(&self) -> &[f64] {
        &self.y
    }

    pub fn slopes(&self) -> &[f64] {
        &self.d
    }

    pub fn first(&self) -> f64 {
        self.x[0]
    }

    pub fn last(&self) -> f64 {
        self.x[self.x.len() - 1]
    }

    fn locate(&self, t: f64) -> usize {
        let k = self.x.partition_point(|&v| v <= t);
        k.saturating_sub(1).min(self.x.len() - 2)
    }

    /// Value (`order = 0`) or derivative of the interpolant at `t`.
    pub fn eval(&self, t: f64, order: u8) -> f64 {
        let k = self.locate(t);
        let h = self.x[k + 1] - self.x[k];
        let s = (t - self.x[k]) / h;
        let (y0, y1) = (self.y[k], self.y[k + 1]);
        let (m0, m1) = (self.d[k] * h, self.d[k + 1] * h);
        let (a, b, c, e) = match order {
            0 => (
                2.0 * s * s * s - 3.0 * s * s + 1.0,
                s * s * s - 2.0 * s * s + s,
                -2.0 * s * s * s + 3.0 * s * s,
                s * s * s - s * s,
            ),
            1 => (
                6.0 * s * s - 6.0 * s,
                3.0 * s * s - 4.0 * s + 1.0,
                -6.0 * s * s + 6.0 * s,
                3.0 * s * s - 2.0 * s,
            ),
            2 => (12.0 * s - 6.0, 6.0 * s - 4.0, -12.0 * s + 6.0, 6.0 * s - 2.0),
            3 => (12.0, 6.0, -12.0, 6.0),
            _ => return 0.0,
        };
        (a * y0 + b * m0 + c * y1 + e * m1) / h.powi(order as i32)
    }

    /// Exact integral of the interpolant over each interval.
    pub fn segment_integrals(&self) -> Vec<f64> {
        (0..self.x.len() - 1)
            .map(|k| {
                let h = self.x[k + 1] - self.x[k];
                h * (self.y[k] + self.y[k + 1]) / 2.0 + h * h * (self.d[k] - self.d[k + 1]) / 12.0
            })
            .collect()
    }
}

fn end_slope(h0: f64, h1: f64, m0: f64, m1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
    if d.signum() != m0.signum() || m0 == 0.0 {
        0.0
    } else if m0.signum() != m1.signum() && d.abs() > 3.0 * m0.abs() {
        3.0 * m0
    } else {
        d
    }
}

use std::f64::consts::E;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use super::interp::CubicTable;
use super::poly::Poly;
use super::RadialError;

/// Interval of admissible radii: `(lo, hi]`, or `[lo, hi]` when `lo_closed`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Domain {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
}

impl Domain {
    pub const POSITIVE: Domain = Domain { lo: 0.0, hi: f64::INFINITY, lo_closed: false };

    pub fn upto(hi: f64) -> Self {
        Domain { hi, ..Domain::POSITIVE }
    }

    pub fn contains(&self, r: f64) -> bool {
        let above = if self.lo_closed { r >= self.lo } else { r > self.lo };
        above && r <= self.hi && r.is_finite()
    }

    pub fn intersect(&self, other: &Domain) -> Domain {
        let (lo, lo_closed) = if self.lo > other.lo {
            (self.lo, self.lo_closed)
        } else if other.lo > self.lo {
            (other.lo, other.lo_closed)
        } else {
            (self.lo, self.lo_closed && other.lo_closed)
        };
        Domain { lo, hi: self.hi.min(other.hi), lo_closed }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrigFn {
    Sin,
    Cos,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HyperFn {
    Sinh,
    Cosh,
}

/// A radial function backed by external data, e.g. a numerical ODE solution.
pub trait SampledFn: Send + Sync + fmt::Debug {
    fn eval(&self, r: f64) -> Result<f64, RadialError>;
    fn derivative(&self) -> RadialExpr;
    fn domain(&self) -> Domain;
    /// Leading exponent of the behaviour at `r → 0⁺`.
    fn leading_order(&self) -> f64 {
        0.0
    }
}

#[derive(Clone, Debug)]
enum Node {
    Power { coef: f64, exponent: f64 },
    /// `coef · r^alpha · ln(e+r)^beta · (e+r)^gamma`
    PowerLog { coef: f64, alpha: f64, beta: f64, gamma: f64 },
    Trig { func: TrigFn, amp: f64, freq: f64 },
    Hyper { func: HyperFn, amp: f64, freq: f64 },
    Rational { num: Poly, den: Poly },
    Shifted { inner: RadialExpr, shift: f64 },
    Sum(RadialExpr, RadialExpr),
    Product(RadialExpr, RadialExpr),
    Quotient(RadialExpr, RadialExpr),
    Negate(RadialExpr),
    Grid { table: Arc<CubicTable>, order: u8 },
    /// `coef · (r−r1)^p · (r2−r)^q` on `(r1, r2)`, zero elsewhere.
    BumpTerm { coef: f64, r1: f64, r2: f64, p: f64, q: f64 },
    Piecewise { breaks: Vec<f64>, pieces: Vec<RadialExpr> },
    Sampled(Arc<dyn SampledFn>),
}

/// Scalar function of the radius built from closed-form kinds, combinators or sampled data.
#[derive(Clone, Debug)]
pub struct RadialExpr {
    node: Arc<Node>,
    domain: Domain,
}

impl RadialExpr {
    fn from_node(node: Node, domain: Domain) -> Self {
        RadialExpr { node: Arc::new(node), domain }
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    pub fn constant(c: f64) -> Self {
        Self::power(c, 0.0)
    }

    /// `coef · r^exponent`
    pub fn power(coef: f64, exponent: f64) -> Self {
        Self::from_node(Node::Power { coef, exponent }, Domain::POSITIVE)
    }

    /// `coef · r^alpha · ln(e+r)^beta`
    pub fn power_log(coef: f64, alpha: f64, beta: f64) -> Self {
        Self::from_node(Node::PowerLog { coef, alpha, beta, gamma: 0.0 }, Domain::POSITIVE)
    }

    pub fn trig(func: TrigFn, amp: f64, freq: f64) -> Self {
        Self::from_node(Node::Trig { func, amp, freq }, Domain::POSITIVE)
    }

    pub fn hyper(func: HyperFn, amp: f64, freq: f64) -> Self {
        Self::from_node(Node::Hyper { func, amp, freq }, Domain::POSITIVE)
    }

    pub fn sin(freq: f64) -> Self {
        Self::trig(TrigFn::Sin, 1.0, freq)
    }

    pub fn cos(freq: f64) -> Self {
        Self::trig(TrigFn::Cos, 1.0, freq)
    }

    pub fn sinh(freq: f64) -> Self {
        Self::hyper(HyperFn::Sinh, 1.0, freq)
    }

    pub fn cosh(freq: f64) -> Self {
        Self::hyper(HyperFn::Cosh, 1.0, freq)
    }

    pub fn polynomial(coeffs: Vec<f64>) -> Self {
        Self::rational(Poly::new(coeffs), Poly::constant(1.0))
    }

    pub fn rational(num: Poly, den: Poly) -> Self {
        Self::from_node(Node::Rational { num, den }, Domain::POSITIVE)
    }

    /// `r ↦ inner(c + r)`, `c ≥ 0`.
    pub fn shifted(inner: RadialExpr, shift: f64) -> Self {
        let d = inner.domain;
        let domain = Domain {
            lo: (d.lo - shift).max(0.0),
            hi: d.hi - shift,
            lo_closed: d.lo_closed && d.lo - shift > 0.0,
        };
        Self::from_node(Node::Shifted { inner, shift }, domain)
    }

    /// Monotone cubic interpolation through `(nodes, values)`.
    pub fn grid(nodes: Vec<f64>, values: Vec<f64>) -> Result<Self, RadialError> {
        check_grid(&nodes, values.len())?;
        let domain = Domain { lo: nodes[0], hi: *nodes.last().unwrap(), lo_closed: true };
        let table = CubicTable::monotone(nodes, values);
        Ok(Self::from_node(Node::Grid { table: Arc::new(table), order: 0 }, domain))
    }

    /// Cubic Hermite interpolation with known slopes.
    pub fn grid_hermite(nodes: Vec<f64>, values: Vec<f64>, slopes: Vec<f64>) -> Result<Self, RadialError> {
        check_grid(&nodes, values.len())?;
        if slopes.len() != nodes.len() {
            return Err(RadialError::BadGrid("slope count differs from node count".into()));
        }
        let domain = Domain { lo: nodes[0], hi: *nodes.last().unwrap(), lo_closed: true };
        let table = CubicTable::hermite(nodes, values, slopes);
        Ok(Self::from_node(Node::Grid { table: Arc::new(table), order: 0 }, domain))
    }

    /// Normalized bump `((r−r1)/L)^p ((r2−r)/L)^q` on `(r1, r2)`, `L = r2 − r1`; C² when `p, q ≥ 3`.
    pub fn bump(r1: f64, r2: f64, p: f64, q: f64) -> Self {
        let coef = (r2 - r1).powf(-(p + q));
        Self::bump_term(coef, r1, r2, p, q)
    }

    fn bump_term(coef: f64, r1: f64, r2: f64, p: f64, q: f64) -> Self {
        Self::from_node(Node::BumpTerm { coef, r1, r2, p, q }, Domain::POSITIVE)
    }

    /// `pieces[i]` applies on `(breaks[i−1], breaks[i]]`.
    pub fn piecewise(breaks: Vec<f64>, pieces: Vec<RadialExpr>) -> Result<Self, RadialError> {
        if pieces.len() != breaks.len() + 1 {
            return Err(RadialError::BadGrid("piecewise needs one more piece than breakpoints".into()));
        }
        if breaks.windows(2).any(|w| w[1] <= w[0]) {
            return Err(RadialError::BadGrid("breakpoints must increase strictly".into()));
        }
        let domain = pieces.iter().fold(Domain::POSITIVE, |d, p| Domain { hi: d.hi.min(p.domain.hi), ..d });
        Ok(Self::from_node(Node::Piecewise { breaks, pieces }, domain))
    }

    pub fn sampled(f: Arc<dyn SampledFn>) -> Self {
        let domain = f.domain();
        Self::from_node(Node::Sampled(f), domain)
    }

    /// Restrict the upper end of the domain to `t`.
    pub fn with_upper(mut self, t: f64) -> Self {
        self.domain.hi = self.domain.hi.min(t);
        self
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn scale(self, c: f64) -> Self {
        if c == 1.0 {
            self
        } else {
            Self::constant(c) * self
        }
    }

    pub fn is_zero(&self) -> bool {
        match &*self.node {
            Node::Power { coef, .. } | Node::PowerLog { coef, .. } | Node::BumpTerm { coef, .. } => *coef == 0.0,
            Node::Trig { amp, .. } | Node::Hyper { amp, .. } => *amp == 0.0,
            Node::Rational { num, .. } => num.is_zero(),
            _ => false,
        }
    }

    fn constant_value(&self) -> Option<f64> {
        match &*self.node {
            Node::Power { coef, exponent } if *exponent == 0.0 || *coef == 0.0 => Some(*coef),
            _ => None,
        }
    }

    pub fn eval(&self, r: f64) -> Result<f64, RadialError> {
        if !self.domain.contains(r) {
            return Err(RadialError::OutOfDomain { r, lo: self.domain.lo, hi: self.domain.hi });
        }
        let v = self.eval_unchecked(r)?;
        if v.is_nan() {
            return Err(RadialError::NonFinite { r });
        }
        Ok(v)
    }

    fn eval_unchecked(&self, r: f64) -> Result<f64, RadialError> {
        Ok(match &*self.node {
            Node::Power { coef, exponent } => {
                if *coef == 0.0 {
                    0.0
                } else if *exponent == 0.0 {
                    *coef
                } else {
                    coef * r.powf(*exponent)
                }
            }
            Node::PowerLog { coef, alpha, beta, gamma } => {
                let s = E + r;
                let mut v = coef * r.powf(*alpha) * s.ln().powf(*beta);
                if *gamma != 0.0 {
                    v *= s.powf(*gamma);
                }
                v
            }
            Node::Trig { func, amp, freq } => match func {
                TrigFn::Sin => amp * (freq * r).sin(),
                TrigFn::Cos => amp * (freq * r).cos(),
            },
            Node::Hyper { func, amp, freq } => match func {
                HyperFn::Sinh => amp * (freq * r).sinh(),
                HyperFn::Cosh => amp * (freq * r).cosh(),
            },
            Node::Rational { num, den } => {
                let d = den.eval(r);
                if d == 0.0 {
                    return Err(RadialError::NonFinite { r });
                }
                num.eval(r) / d
            }
            Node::Shifted { inner, shift } => inner.eval(r + shift)?,
            Node::Sum(a, b) => a.eval(r)? + b.eval(r)?,
            Node::Product(a, b) => {
                let x = a.eval(r)?;
                if x == 0.0 {
                    0.0
                } else {
                    x * b.eval(r)?
                }
            }
            Node::Quotient(a, b) => {
                let d = b.eval(r)?;
                if d == 0.0 {
                    return Err(RadialError::NonFinite { r });
                }
                a.eval(r)? / d
            }
            Node::Negate(a) => -a.eval(r)?,
            Node::Grid { table, order } => table.eval(r, *order),
            Node::BumpTerm { coef, r1, r2, p, q } => {
                if r <= *r1 || r >= *r2 || *coef == 0.0 {
                    0.0
                } else {
                    coef * (r - r1).powf(*p) * (r2 - r).powf(*q)
                }
            }
            Node::Piecewise { breaks, pieces } => {
                let i = breaks.partition_point(|&b| b < r);
                pieces[i].eval(r)?
            }
            Node::Sampled(f) => f.eval(r)?,
        })
    }

    /// Exact symbolic derivative; the interpolant's derivative for grid data.
    pub fn derivative(&self) -> RadialExpr {
        let d = match &*self.node {
            Node::Power { coef, exponent } => {
                if *coef == 0.0 || *exponent == 0.0 {
                    RadialExpr::zero()
                } else {
                    RadialExpr::power(coef * exponent, exponent - 1.0)
                }
            }
            Node::PowerLog { coef, alpha, beta, gamma } => {
                let term = |c: f64, a: f64, b: f64, g: f64| {
                    RadialExpr::from_node(Node::PowerLog { coef: c, alpha: a, beta: b, gamma: g }, Domain::POSITIVE)
                };
                let mut out = RadialExpr::zero();
                if *alpha != 0.0 {
                    out = out + term(coef * alpha, alpha - 1.0, *beta, *gamma);
                }
                if *beta != 0.0 {
                    out = out + term(coef * beta, *alpha, beta - 1.0, gamma - 1.0);
                }
                if *gamma != 0.0 {
                    out = out + term(coef * gamma, *alpha, *beta, gamma - 1.0);
                }
                out
            }
            Node::Trig { func, amp, freq } => match func {
                TrigFn::Sin => RadialExpr::trig(TrigFn::Cos, amp * freq, *freq),
                TrigFn::Cos => RadialExpr::trig(TrigFn::Sin, -amp * freq, *freq),
            },
            Node::Hyper { func, amp, freq } => match func {
                HyperFn::Sinh => RadialExpr::hyper(HyperFn::Cosh, amp * freq, *freq),
                HyperFn::Cosh => RadialExpr::hyper(HyperFn::Sinh, amp * freq, *freq),
            },
            Node::Rational { num, den } => {
                let n = &(&num.derivative() * den) - &(num * &den.derivative());
                RadialExpr::rational(n, den * den)
            }
            Node::Shifted { inner, shift } => RadialExpr::shifted(inner.derivative(), *shift),
            Node::Sum(a, b) => a.derivative() + b.derivative(),
            Node::Product(a, b) => a.derivative() * b.clone() + a.clone() * b.derivative(),
            Node::Quotient(a, b) => {
                (a.derivative() * b.clone() - a.clone() * b.derivative()) / (b.clone() * b.clone())
            }
            Node::Negate(a) => -a.derivative(),
            Node::Grid { table, order } => {
                RadialExpr::from_node(Node::Grid { table: table.clone(), order: order + 1 }, self.domain)
            }
            Node::BumpTerm { coef, r1, r2, p, q } => {
                let mut out = RadialExpr::zero();
                if *p != 0.0 {
                    out = out + RadialExpr::bump_term(coef * p, *r1, *r2, p - 1.0, *q);
                }
                if *q != 0.0 {
                    out = out + RadialExpr::bump_term(-coef * q, *r1, *r2, *p, q - 1.0);
                }
                out
            }
            Node::Piecewise { breaks, pieces } => RadialExpr::from_node(
                Node::Piecewise { breaks: breaks.clone(), pieces: pieces.iter().map(|p| p.derivative()).collect() },
                self.domain,
            ),
            Node::Sampled(f) => f.derivative(),
        };
        RadialExpr { domain: d.domain.intersect(&self.domain), ..d }
    }

    /// Leading exponent of the function as `r → 0⁺` (`+∞` for functions vanishing identically near 0).
    pub fn leading_order(&self) -> f64 {
        match &*self.node {
            _ if self.is_zero() => f64::INFINITY,
            Node::Power { exponent, .. } => *exponent,
            Node::PowerLog { alpha, .. } => *alpha,
            Node::Trig { func, freq, .. } => match func {
                TrigFn::Sin if *freq != 0.0 => 1.0,
                TrigFn::Sin => f64::INFINITY,
                TrigFn::Cos => 0.0,
            },
            Node::Hyper { func, freq, .. } => match func {
                HyperFn::Sinh if *freq != 0.0 => 1.0,
                HyperFn::Sinh => f64::INFINITY,
                HyperFn::Cosh => 0.0,
            },
            Node::Rational { num, den } => {
                let on = num.order().map_or(f64::INFINITY, |o| o as f64);
                let od = den.order().unwrap_or(0) as f64;
                on - od
            }
            Node::Shifted { inner, shift } => {
                if *shift > 0.0 {
                    0.0
                } else {
                    inner.leading_order()
                }
            }
            Node::Sum(a, b) => a.leading_order().min(b.leading_order()),
            Node::Product(a, b) => a.leading_order() + b.leading_order(),
            Node::Quotient(a, b) => a.leading_order() - b.leading_order(),
            Node::Negate(a) => a.leading_order(),
            Node::Grid { .. } => 0.0,
            Node::BumpTerm { r1, p, .. } => {
                if *r1 > 0.0 {
                    f64::INFINITY
                } else {
                    *p
                }
            }
            Node::Piecewise { pieces, .. } => pieces[0].leading_order(),
            Node::Sampled(f) => f.leading_order(),
        }
    }

    /// Points where the function or its derivatives may jump.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut out = match &*self.node {
            Node::Shifted { inner, shift } => inner.breakpoints().into_iter().map(|b| b - shift).collect(),
            Node::Sum(a, b) | Node::Product(a, b) | Node::Quotient(a, b) => {
                let mut v = a.breakpoints();
                v.extend(b.breakpoints());
                v
            }
            Node::Negate(a) => a.breakpoints(),
            Node::BumpTerm { r1, r2, .. } => vec![*r1, *r2],
            Node::Piecewise { breaks, pieces } => {
                let mut v = breaks.clone();
                v.extend(pieces.iter().flat_map(|p| p.breakpoints()));
                v
            }
            _ => Vec::new(),
        };
        out.retain(|b| *b > 0.0);
        out.sort_by(f64::total_cmp);
        out.dedup();
        out
    }
}

fn check_grid(nodes: &[f64], nvalues: usize) -> Result<(), RadialError> {
    if nodes.len() < 2 {
        return Err(RadialError::BadGrid("need at least two nodes".into()));
    }
    if nodes.len() != nvalues {
        return Err(RadialError::BadGrid("value count differs from node count".into()));
    }
    if nodes.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(RadialError::BadGrid("nodes must increase strictly".into()));
    }
    Ok(())
}

impl Add for RadialExpr {
    type Output = RadialExpr;
    fn add(self, rhs: RadialExpr) -> RadialExpr {
        let domain = self.domain.intersect(&rhs.domain);
        if rhs.is_zero() {
            return RadialExpr { domain, ..self };
        }
        if self.is_zero() {
            return RadialExpr { domain, ..rhs };
        }
        RadialExpr::from_node(Node::Sum(self, rhs), domain)
    }
}

impl Sub for RadialExpr {
    type Output = RadialExpr;
    fn sub(self, rhs: RadialExpr) -> RadialExpr {
        self + (-rhs)
    }
}

impl Neg for RadialExpr {
    type Output = RadialExpr;
    fn neg(self) -> RadialExpr {
        if self.is_zero() {
            return self;
        }
        if let Node::Negate(inner) = &*self.node {
            return inner.clone();
        }
        let domain = self.domain;
        RadialExpr::from_node(Node::Negate(self), domain)
    }
}

impl Mul for RadialExpr {
    type Output = RadialExpr;
    fn mul(self, rhs: RadialExpr) -> RadialExpr {
        let domain = self.domain.intersect(&rhs.domain);
        if self.is_zero() || rhs.is_zero() {
            return RadialExpr { domain, ..RadialExpr::zero() };
        }
        if self.constant_value() == Some(1.0) {
            return RadialExpr { domain, ..rhs };
        }
        if rhs.constant_value() == Some(1.0) {
            return RadialExpr { domain, ..self };
        }
        RadialExpr::from_node(Node::Product(self, rhs), domain)
    }
}

impl Div for RadialExpr {
    type Output = RadialExpr;
    fn div(self, rhs: RadialExpr) -> RadialExpr {
        let domain = self.domain.intersect(&rhs.domain);
        if self.is_zero() {
            return RadialExpr { domain, ..RadialExpr::zero() };
        }
        RadialExpr::from_node(Node::Quotient(self, rhs), domain)
    }
}

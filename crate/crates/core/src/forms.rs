//! Exact exterior calculus on ℝⁿ for forms with polynomial coefficients over ℚ.
//!
//! Text syntax: terms joined by `+`/`-`, each term a product (`*` or space) of rational
//! constants, powers `x3^2`, and at most one wedge `dx1^dx3`. Example: `x1*x3 dx1^dx3 + 2 dx2`.
//! Indices are 1-based; `1` alone is the constant 0-form.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Q = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("{op} is undefined for degree {k} forms on R^{n}")]
    Degree { op: &'static str, k: usize, n: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("size limit exceeded: {0}")]
    Limits(String),
}

/// Caps on ambient dimension and polynomial degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_dim: usize,
    pub max_degree: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_dim: 8, max_degree: 6 }
    }
}

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Polynomial in `x₁…xₙ`, keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Vec<u32>, Q>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Q) -> Self {
        let mut p = Poly::zero(n);
        p.add_term(vec![0; n], c);
        p
    }

    /// The coordinate `x_i` (0-based).
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        let mut p = Poly::zero(n);
        p.add_term(e, Q::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Q)> {
        self.terms.iter()
    }

    fn add_term(&mut self, e: Vec<u32>, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        let mut p = Poly::zero(self.n);
        for (e, v) in &self.terms {
            p.add_term(e.clone(), v * c);
        }
        p
    }

    /// `∂/∂x_i`
    pub fn partial(&self, i: usize) -> Poly {
        let mut p = Poly::zero(self.n);
        for (e, v) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                p.add_term(f, v * q(e[i] as i64));
            }
        }
        p
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        self.terms
            .iter()
            .map(|(e, c)| e.iter().zip(x).fold(c.clone(), |acc, (&k, xi)| acc * num_traits::pow(xi.clone(), k as usize)))
            .fold(Q::zero(), |a, b| a + b)
    }

    /// Exact integral over the box `[−1, 1]ⁿ`.
    pub fn integrate_box(&self) -> Q {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().fold(c.clone(), |acc, &k| if k % 2 == 1 { Q::zero() } else { acc * Q::new(BigInt::from(2), BigInt::from(k + 1)) })
            })
            .fold(Q::zero(), |a, b| a + b)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut p = self.clone();
        for (e, v) in &o.terms {
            p.add_term(e.clone(), v.clone());
        }
        p
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Q::one())
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut p = Poly::zero(self.n);
        for (ea, va) in &self.terms {
            for (eb, vb) in &o.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                p.add_term(e, va * vb);
            }
        }
        p
    }
}

fn fmt_q(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// `|c|·x^e` without sign, `None` for the bare unit monomial.
fn term_text(e: &[u32], c: &Q) -> Option<String> {
    let mono: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(j, &k)| if k == 1 { format!("x{}", j + 1) } else { format!("x{}^{k}", j + 1) })
        .collect();
    let a = c.abs();
    match (a.is_one(), mono.is_empty()) {
        (true, true) => None,
        (false, true) => Some(fmt_q(&a)),
        (true, false) => Some(mono.join("*")),
        (false, false) => Some(format!("{}*{}", fmt_q(&a), mono.join("*"))),
    }
}

fn write_signed(f: &mut fmt::Formatter<'_>, first: bool, c: &Q, body: &str) -> fmt::Result {
    match (first, c.is_negative()) {
        (true, true) => write!(f, "-{body}"),
        (true, false) => f.write_str(body),
        (false, true) => write!(f, " - {body}"),
        (false, false) => write!(f, " + {body}"),
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            write_signed(f, i == 0, c, &term_text(e, c).unwrap_or_else(|| "1".into()))?;
        }
        Ok(())
    }
}

/// Sort `idx` in place, returning the permutation sign, or `None` on a repeated index.
fn normalize(idx: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

/// `Σ_I ω_I dx_I` over strictly increasing 0-based index tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyForm {
    n: usize,
    k: usize,
    coeffs: BTreeMap<Vec<usize>, Poly>,
}

impl PolyForm {
    pub fn zero(n: usize, k: usize) -> Self {
        PolyForm { n, k, coeffs: BTreeMap::new() }
    }

    /// `p dx_{i₁}∧…` for arbitrary (0-based) indices, normalized with sign.
    pub fn monomial(p: Poly, idx: &[usize]) -> Self {
        let n = p.dim();
        let mut f = PolyForm::zero(n, idx.len());
        let mut s = idx.to_vec();
        if let Some(sign) = normalize(&mut s) {
            f.add_term(s, p.scale(&q(sign)));
        }
        f
    }

    pub fn scalar(p: Poly) -> Self {
        Self::monomial(p, &[])
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, idx: &[usize]) -> Poly {
        self.coeffs.get(idx).cloned().unwrap_or_else(|| Poly::zero(self.n))
    }

    pub fn poly_degree(&self) -> u32 {
        self.coeffs.values().map(Poly::degree).max().unwrap_or(0)
    }

    pub fn check_limits(&self, lim: &Limits) -> Result<(), FormError> {
        if self.n > lim.max_dim {
            return Err(FormError::Limits(format!("dimension {} > {}", self.n, lim.max_dim)));
        }
        if self.poly_degree() > lim.max_degree {
            return Err(FormError::Limits(format!("polynomial degree {} > {}", self.poly_degree(), lim.max_degree)));
        }
        Ok(())
    }

    fn add_term(&mut self, idx: Vec<usize>, p: Poly) {
        if p.is_zero() {
            return;
        }
        let merged = match self.coeffs.remove(&idx) {
            Some(old) => &old + &p,
            None => p,
        };
        if !merged.is_zero() {
            self.coeffs.insert(idx, merged);
        }
    }

    fn same_shape(&self, o: &PolyForm) -> Result<(), FormError> {
        if self.n != o.n {
            return Err(FormError::Dimension(self.n, o.n));
        }
        if self.k != o.k && !self.is_zero() && !o.is_zero() {
            return Err(FormError::Degree { op: "sum", k: o.k, n: self.n });
        }
        Ok(())
    }

    pub fn try_add(&self, o: &PolyForm) -> Result<PolyForm, FormError> {
        self.same_shape(o)?;
        let mut f = if self.is_zero() { PolyForm::zero(self.n, o.k) } else { self.clone() };
        for (i, p) in &o.coeffs {
            f.add_term(i.clone(), p.clone());
        }
        Ok(f)
    }

    pub fn scale(&self, c: &Q) -> PolyForm {
        self.map(|p| p.scale(c))
    }

    pub fn mul_poly(&self, m: &Poly) -> PolyForm {
        self.map(|p| p * m)
    }

    fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyForm {
        let mut out = PolyForm::zero(self.n, self.k);
        for (i, p) in &self.coeffs {
            out.add_term(i.clone(), f(p));
        }
        out
    }

    pub fn wedge(&self, o: &PolyForm) -> Result<PolyForm, FormError> {
        if self.n != o.n {
            return Err(FormError::Dimension(self.n, o.n));
        }
        let mut out = PolyForm::zero(self.n, self.k + o.k);
        if self.k + o.k > self.n {
            return Ok(out);
        }
        for (ia, pa) in &self.coeffs {
            for (ib, pb) in &o.coeffs {
                let mut idx: Vec<usize> = ia.iter().chain(ib).copied().collect();
                if let Some(sign) = normalize(&mut idx) {
                    out.add_term(idx, (pa * pb).scale(&q(sign)));
                }
            }
        }
        Ok(out)
    }

    /// Exterior derivative.
    pub fn d(&self) -> Result<PolyForm, FormError> {
        if self.k >= self.n {
            return Err(FormError::Degree { op: "d", k: self.k, n: self.n });
        }
        let mut out = PolyForm::zero(self.n, self.k + 1);
        for (idx, p) in &self.coeffs {
            for i in 0..self.n {
                let dp = p.partial(i);
                if dp.is_zero() {
                    continue;
                }
                let mut j = vec![i];
                j.extend(idx);
                if let Some(sign) = normalize(&mut j) {
                    out.add_term(j, dp.scale(&q(sign)));
                }
            }
        }
        Ok(out)
    }

    /// `d` with the top degree mapped to zero.
    fn d_or_zero(&self) -> PolyForm {
        self.d().unwrap_or_else(|_| PolyForm::zero(self.n, self.k + 1))
    }

    /// Contraction with `e_i`.
    pub fn interior(&self, i: usize) -> PolyForm {
        let mut out = PolyForm::zero(self.n, self.k.saturating_sub(1));
        for (idx, p) in &self.coeffs {
            if let Some(pos) = idx.iter().position(|&j| j == i) {
                let mut rest = idx.clone();
                rest.remove(pos);
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                out.add_term(rest, p.scale(&q(sign)));
            }
        }
        out
    }

    /// Codifferential `δ = −Σᵢ ι_{eᵢ} ∂ᵢ`.
    pub fn codiff(&self) -> Result<PolyForm, FormError> {
        if self.k == 0 {
            return Err(FormError::Degree { op: "codifferential", k: 0, n: self.n });
        }
        let mut out = PolyForm::zero(self.n, self.k - 1);
        for i in 0..self.n {
            let c = self.map(|p| p.partial(i)).interior(i);
            for (idx, p) in c.coeffs {
                out.add_term(idx, -&p);
            }
        }
        Ok(out)
    }

    fn codiff_or_zero(&self) -> PolyForm {
        self.codiff().unwrap_or_else(|_| PolyForm::zero(self.n, 0))
    }

    /// `Δ = −(dδ + δd)`; on functions `Σ ∂ᵢ²`.
    pub fn laplacian(&self) -> PolyForm {
        let a = if self.k > 0 { self.codiff_or_zero().d_or_zero() } else { PolyForm::zero(self.n, self.k) };
        let b = if self.k < self.n { self.d_or_zero().codiff_or_zero() } else { PolyForm::zero(self.n, self.k) };
        let mut out = PolyForm::zero(self.n, self.k);
        for (idx, p) in a.coeffs.into_iter().chain(b.coeffs) {
            out.add_term(idx, -&p);
        }
        out
    }

    /// Euclidean Hodge star with `⋆⋆ = (−1)^{k(n−k)}`.
    pub fn hodge_star(&self) -> PolyForm {
        let mut out = PolyForm::zero(self.n, self.n - self.k);
        for (idx, p) in &self.coeffs {
            let comp: Vec<usize> = (0..self.n).filter(|i| !idx.contains(i)).collect();
            let mut full: Vec<usize> = idx.iter().chain(&comp).copied().collect();
            let sign = normalize(&mut full).expect("index tuple and complement are disjoint");
            out.add_term(comp, p.scale(&q(sign)));
        }
        out
    }

    /// Pointwise inner product `Σ_I ω_I η_I`.
    pub fn inner(&self, o: &PolyForm) -> Poly {
        let mut s = Poly::zero(self.n);
        for (idx, p) in &self.coeffs {
            if let Some(r) = o.coeffs.get(idx) {
                s = &s + &(p * r);
            }
        }
        s
    }

    pub fn norm_sq(&self) -> Poly {
        self.inner(self)
    }

    pub fn classify(&self) -> Classification {
        let closed = self.d_or_zero().is_zero();
        let coclosed = self.k == 0 || self.codiff_or_zero().is_zero();
        Classification { closed, coclosed, harmonic: self.laplacian().is_zero() }
    }

    pub fn parse(n: usize, text: &str) -> Result<PolyForm, FormError> {
        Self::parse_with_limits(n, text, &Limits::default())
    }

    pub fn parse_with_limits(n: usize, text: &str, lim: &Limits) -> Result<PolyForm, FormError> {
        if n == 0 || n > lim.max_dim {
            return Err(FormError::Limits(format!("dimension {n} outside 1..={}", lim.max_dim)));
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for ch in text.chars() {
            if (ch == '+' || ch == '-') && !cur.trim().is_empty() {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if ch == '-' {
                neg = !neg;
            } else if ch != '+' {
                cur.push(ch);
            }
        }
        if cur.trim().is_empty() {
            return Err(FormError::Parse(format!("empty term in `{text}`")));
        }
        terms.push((neg, cur));
        let mut form: Option<PolyForm> = None;
        for (neg, t) in terms {
            let term = parse_term(n, &t)?;
            let term = if neg { term.scale(&-Q::one()) } else { term };
            form = Some(match form {
                None => term,
                Some(f) => f.try_add(&term).map_err(|_| FormError::Parse(format!("mixed degrees in `{text}`")))?,
            });
        }
        let f = form.expect("at least one term");
        f.check_limits(lim)?;
        Ok(f)
    }
}

fn parse_index(s: &str, n: usize, what: &str) -> Result<usize, FormError> {
    let i: usize = s.parse().map_err(|_| FormError::Parse(format!("bad {what} index `{s}`")))?;
    if i == 0 || i > n {
        return Err(FormError::Parse(format!("{what} index {i} outside 1..={n}")));
    }
    Ok(i - 1)
}

fn parse_term(n: usize, t: &str) -> Result<PolyForm, FormError> {
    let mut coef = Poly::constant(n, Q::one());
    let mut wedge: Option<Vec<usize>> = None;
    for tok in t.split(|c: char| c == '*' || c.is_whitespace()).filter(|s| !s.is_empty()) {
        if tok.starts_with("dx") {
            if wedge.is_some() {
                return Err(FormError::Parse(format!("two wedge factors in `{t}`")));
            }
            let idx = tok
                .split('^')
                .map(|s| match s.strip_prefix("dx") {
                    Some(i) => parse_index(i, n, "dx"),
                    None => Err(FormError::Parse(format!("bad wedge factor `{s}` in `{tok}`"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            wedge = Some(idx);
        } else if let Some(rest) = tok.strip_prefix('x') {
            let (i, e) = match rest.split_once('^') {
                Some((i, e)) => (i, e.parse::<u32>().map_err(|_| FormError::Parse(format!("bad exponent in `{tok}`")))?),
                None => (rest, 1),
            };
            let v = Poly::var(n, parse_index(i, n, "x")?);
            for _ in 0..e {
                coef = &coef * &v;
            }
        } else {
            let c: Q = tok.parse().map_err(|_| FormError::Parse(format!("unrecognized token `{tok}`")))?;
            coef = coef.scale(&c);
        }
    }
    Ok(PolyForm::monomial(coef, &wedge.unwrap_or_default()))
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (idx, p) in &self.coeffs {
            let wedge = idx.iter().map(|j| format!("dx{}", j + 1)).collect::<Vec<_>>().join("^");
            for (e, c) in p.terms.iter().rev() {
                let body = match (term_text(e, c), wedge.is_empty()) {
                    (Some(t), true) => t,
                    (None, true) => "1".into(),
                    (Some(t), false) => format!("{t} {wedge}"),
                    (None, false) => wedge.clone(),
                };
                write_signed(f, first, c, &body)?;
                first = false;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub closed: bool,
    pub coclosed: bool,
    pub harmonic: bool,
}

/// Exact pointwise evaluation of one of the two weighted inequalities, compared squared.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionWPoint {
    pub point: Vec<Q>,
    /// `⟨d|Ω|² ∧ Ω, dΩ⟩`
    pub lhs: Q,
    /// `2|Ω|²|dΩ|²`
    pub rhs: Q,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionWReport {
    pub holds_at_all_samples: bool,
    /// Point with the smallest `rhs² − lhs²`, for the form and for its Hodge dual.
    pub worst: ConditionWPoint,
    pub worst_dual: ConditionWPoint,
}

fn condition_w_side(form: &PolyForm, points: &[Vec<Q>]) -> Vec<ConditionWPoint> {
    let ns = form.norm_sq();
    let dn = PolyForm::scalar(ns.clone()).d_or_zero();
    let domega = form.d_or_zero();
    let lhs_form = dn.wedge(form).expect("same dimension");
    let lhs_poly = lhs_form.inner(&domega);
    let rhs_poly = (&ns * &domega.norm_sq()).scale(&q(2));
    points
        .iter()
        .map(|x| {
            let (lhs, rhs) = (lhs_poly.eval(x), rhs_poly.eval(x));
            let holds = &lhs * &lhs <= &rhs * &rhs;
            ConditionWPoint { point: x.clone(), lhs, rhs, holds }
        })
        .collect()
}

fn slack(p: &ConditionWPoint) -> Q {
    &p.rhs * &p.rhs - &p.lhs * &p.lhs
}

/// Sampled check of both weighted inequalities at the given rational points.
pub fn condition_w_report(form: &PolyForm, points: &[Vec<Q>]) -> Result<ConditionWReport, FormError> {
    if points.is_empty() {
        return Err(FormError::Parse("no sample points".into()));
    }
    if let Some(p) = points.iter().find(|p| p.len() != form.dim()) {
        return Err(FormError::Dimension(p.len(), form.dim()));
    }
    let a = condition_w_side(form, points);
    let b = condition_w_side(&form.hodge_star(), points);
    let holds = a.iter().chain(&b).all(|p| p.holds);
    let pick = |v: Vec<ConditionWPoint>| v.into_iter().min_by(|x, y| slack(x).cmp(&slack(y))).expect("nonempty");
    Ok(ConditionWReport { holds_at_all_samples: holds, worst: pick(a), worst_dual: pick(b) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: usize, s: &str) -> PolyForm {
        PolyForm::parse(n, s).unwrap()
    }

    #[test]
    fn derivatives_of_listed_forms() {
        assert!(f(3, "x1 dx1").d().unwrap().is_zero());
        assert_eq!(f(3, "x3 dx1").d().unwrap(), f(3, "dx3^dx1"));
        assert_eq!(f(3, "x3 dx1").d().unwrap(), f(3, "-1 dx1^dx3"));
        assert!(f(3, "5").d().unwrap().is_zero());
        assert_eq!(f(2, "dx1^dx2").d(), Err(FormError::Degree { op: "d", k: 2, n: 2 }));
    }

    #[test]
    fn codifferentials() {
        assert_eq!(f(3, "x1 dx1").codiff().unwrap(), f(3, "-1"));
        assert!(f(3, "x3 dx1").codiff().unwrap().is_zero());
        assert!(f(3, "dx1").codiff().unwrap().is_zero());
        assert!(f(3, "x1").codiff().is_err());
    }

    #[test]
    fn laplacians() {
        assert!(f(3, "x1 dx1").laplacian().is_zero());
        assert!(f(3, "x1 dx1 + x3 dx1").laplacian().is_zero());
        assert_eq!(f(3, "x1^2 dx1").laplacian(), f(3, "2 dx1"));
        assert_eq!(f(2, "x1^2*x2").laplacian(), f(2, "2 x2"));
    }

    #[test]
    fn hodge_star_signs() {
        assert_eq!(f(2, "dx1").hodge_star(), f(2, "dx2"));
        assert_eq!(f(2, "dx2").hodge_star(), f(2, "-1 dx1"));
        assert_eq!(f(3, "1").hodge_star(), f(3, "dx1^dx2^dx3"));
        for n in 1..=4 {
            for k in 0..=n {
                let idx: Vec<usize> = (0..k).collect();
                let w = PolyForm::monomial(Poly::var(n, 0), &idx);
                let sign = if (k * (n - k)) % 2 == 0 { 1 } else { -1 };
                assert_eq!(w.hodge_star().hodge_star(), w.scale(&q(sign)));
            }
        }
    }

    #[test]
    fn listed_classifications() {
        let c = |s: &str| f(3, s).classify();
        assert_eq!(c("x1 dx1"), Classification { closed: true, coclosed: false, harmonic: true });
        assert_eq!(c("x3 dx1"), Classification { closed: false, coclosed: true, harmonic: true });
        assert_eq!(c("x1 dx1 + x3 dx1"), Classification { closed: false, coclosed: false, harmonic: true });
        assert_eq!(c("x1*x3 dx1 + x3 dx3"), Classification { closed: false, coclosed: false, harmonic: true });
        assert_eq!(c("dx1"), Classification { closed: true, coclosed: true, harmonic: true });
    }

    #[test]
    fn parse_and_print_round_trip() {
        let w = f(3, "x1*x3 dx1^dx3 + 2 dx2^dx3 - 1/2 x2^2 dx3^dx1");
        assert_eq!(PolyForm::parse(3, &w.to_string()).unwrap(), w);
        assert!(PolyForm::parse(3, "x4 dx1").is_err());
        assert!(PolyForm::parse(3, "x1 + dx1").is_err());
        assert!(matches!(PolyForm::parse(2, "x1^7 dx1"), Err(FormError::Limits(_))));
    }

    #[test]
    fn condition_w_samples() {
        let pts = vec![vec![q(0), q(0), q(1)], vec![Q::new(1.into(), 3.into()), q(-2), q(5)]];
        let r = condition_w_report(&f(3, "dx1 + 3 dx2"), &pts).unwrap();
        assert!(r.holds_at_all_samples);
        assert!(r.worst.lhs.is_zero() && r.worst.rhs.is_zero());
        let r = condition_w_report(&f(3, "x3 dx1"), &pts[..1]).unwrap();
        assert_eq!(r.worst.rhs, q(2));
        assert_eq!(r.worst.lhs, q(2));
        assert!(r.holds_at_all_samples);
    }

    #[test]
    fn box_integration_is_exact() {
        assert_eq!(f(2, "x1^2*x2^2").coefficient(&[]).integrate_box(), Q::new(4.into(), 9.into()));
    }
}

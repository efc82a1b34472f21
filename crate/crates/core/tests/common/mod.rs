//! Independent oracles shared by the integration suites: hand-transcribed constant tables and
//! λ tables, written from the closed forms rather than from the library's row formulas.
#![allow(dead_code)]

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use radcomp::energy::LambdaRow;
use radcomp::forms::{Poly, PolyForm, Q};
use radcomp::model::ModelManifold;
use radcomp::ode::{Coefficient, SolverOptions};
use radcomp::radial::RadialExpr;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape parameters of one table row.
#[derive(Clone, Copy, Debug)]
pub struct Params {
    pub big_a: f64,
    pub big_a1: f64,
    pub big_b: f64,
    pub big_b1: f64,
    pub c: f64,
}

fn s_b1(b1: f64) -> f64 {
    (1.0 + 4.0 * b1 * (1.0 - b1)).sqrt()
}

fn m_b(b: f64) -> f64 {
    (b - 0.5).abs() + 0.5
}

/// Sign table: `(row, C(a, b))`.
pub fn sign_table(a: f64, b: f64, n: f64) -> Vec<(&'static str, f64)> {
    vec![
        ("i", -(n - (a + b + 1.0)) / 2.0),
        ("ii", (n - (a + b + 1.0)) / 2.0),
        ("iii", ((n - (a + b + 1.0)) / 2.0).abs()),
    ]
}

/// Radial Ricci table, rows i..v.
pub fn ricci_table(a: f64, b: f64, n: f64, p: &Params) -> Vec<(&'static str, f64)> {
    let power = (a + b - (n - 1.0) * p.big_a) / 2.0;
    let positive = (2.0 * a + 2.0 * b - (n - 1.0) * (1.0 + s_b1(p.big_b1))) / 4.0;
    vec![("i", power), ("ii", power), ("iii", positive), ("iv", positive), ("v", (a + b + 1.0 - n) / 2.0)]
}

/// Radial curvature table, rows i..xii.
pub fn radial_table(a: f64, b: f64, n: f64, p: &Params) -> Vec<(&'static str, f64)> {
    let lower = (a + b - (n - 1.0) * p.big_a) / 2.0;
    let upper = -(a + b - (n - 1.0) * p.big_a1) / 2.0;
    let equal = lower.abs();
    let ratio = ((2.0 * a + 2.0 * b - (n - 1.0) * (1.0 + (1.0 + 4.0 * p.big_a).sqrt())) / 4.0).abs();
    let positive = (2.0 * a + 2.0 * b - (n - 1.0) * (1.0 + s_b1(p.big_b1))) / 4.0;
    let quarter = ((n - 1.0) * m_b(p.big_b) - a - b) / 2.0;
    vec![
        ("i", lower),
        ("ii", lower),
        ("iii", upper),
        ("iv", upper),
        ("v", equal),
        ("vi", equal),
        ("vii", ratio),
        ("viii", ratio),
        ("ix", positive),
        ("x", positive),
        ("xi", quarter),
        ("xii", quarter),
    ]
}

/// Row families of the seven specialized inequalities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `A(A−1)` rows; `A` stands for `A₁` in the upper-bound rows.
    Power,
    /// `A/r²` rows
    Ratio,
    /// `B₁(1−B₁)` rows
    Positive,
    /// `Ric ≥ 0`
    RicZero,
    /// `B(1−B)` upper rows
    Upper,
}

/// `C₁..C₇` as listed, with `free` the free weight of the first three cases.
pub fn costa_table(family: Family, n: f64, free: f64, x: f64) -> [f64; 7] {
    let sq = |v: f64| v * v;
    let (b, a) = (free, free);
    match family {
        Family::Power => [
            sq(((n - 1.0) * x - 1.0) / 2.0 - b),
            sq(((n - 1.0) * x - 1.0) / 2.0 - a),
            sq(((n - 1.0) * x + 1.0) / 2.0),
            sq(((n - 1.0) * x - 1.0) / 2.0),
            sq((n - 1.0) * x / 2.0),
            sq((n - 1.0) * x / 2.0),
            sq(((n - 1.0) * x - 1.0) / 2.0),
        ],
        Family::Ratio => {
            let s = 1.0 + (1.0 + 4.0 * x).sqrt();
            [
                sq((4.0 * b + 2.0 - (n - 1.0) * s) / 4.0),
                sq((4.0 * a + 2.0 - (n - 1.0) * s) / 4.0),
                sq((2.0 + (n - 1.0) * s) / 4.0),
                sq((2.0 - (n - 1.0) * s) / 4.0),
                sq((n - 1.0) * s / 4.0),
                sq((n - 1.0) * s / 4.0),
                sq((2.0 - (n - 1.0) * s) / 4.0),
            ]
        }
        Family::Positive => {
            let s = 1.0 + s_b1(x);
            [
                sq((4.0 * b + 2.0 - (n - 1.0) * s) / 4.0),
                sq((4.0 * a + 2.0 - (n - 1.0) * s) / 4.0),
                sq((2.0 + (n - 1.0) * s) / 4.0),
                sq(((n - 1.0) * s - 2.0) / 4.0),
                sq((n - 1.0) * s / 4.0),
                sq((n - 1.0) * s / 4.0),
                sq(((n - 1.0) * s - 2.0) / 4.0),
            ]
        }
        Family::RicZero => [
            sq((2.0 * b + 2.0 - n) / 2.0),
            sq((2.0 * a + 2.0 - n) / 2.0),
            n * n / 4.0,
            sq((n - 2.0) / 2.0),
            sq((n - 1.0) / 2.0),
            sq((n - 1.0) / 2.0),
            sq((n - 2.0) / 2.0),
        ],
        Family::Upper => {
            let d = (x - 0.5).abs();
            [
                sq(((n - 1.0) * d + (n - 3.0) / 2.0 - 2.0 * b) / 2.0),
                sq(((n - 1.0) * d + (n - 3.0) / 2.0 - 2.0 * a) / 2.0),
                sq(((n - 1.0) * d + (n + 1.0) / 2.0) / 2.0),
                sq(((n - 1.0) * d + (n - 3.0) / 2.0) / 2.0),
                sq((n - 1.0) * (d + 0.5) / 2.0),
                sq((n - 1.0) * (d + 0.5) / 2.0),
                sq(((n - 1.0) * d + (n - 3.0) / 2.0) / 2.0),
            ]
        }
    }
}

/// Parameters of one λ row.
#[derive(Clone, Copy, Debug)]
pub enum Row {
    I { a: f64, a1: f64 },
    Ii { a: f64, a1: f64 },
    Iii { b: f64, b1: f64 },
    Iv { b: f64, b1: f64 },
    V { alpha: f64, beta: f64 },
    Vi,
    Vii { a: f64, b: f64, eps: f64 },
}

/// General table in `k` and `d_F`.
pub fn lambda_general(row: Row, n: f64, k: f64, d: f64) -> f64 {
    match row {
        Row::I { a, a1 } => 1.0 + (n - 1.0) * a1 - 2.0 * k * d * a,
        Row::Ii { a, a1 } => 1.0 + (n - 1.0) * (1.0 + (1.0 + 4.0 * a1).sqrt()) / 2.0 - k * d * (1.0 + (1.0 + 4.0 * a).sqrt()),
        Row::Iii { b, b1 } => 1.0 + (n - 1.0) * ((b - 0.5).abs() + 0.5) - k * d * (1.0 + s_b1(b1)),
        Row::Iv { b, b1 } => 1.0 + (n - 1.0) * (1.0 + (1.0 - 4.0 * b).sqrt()) / 2.0 - k * d * (1.0 + (1.0 + 4.0 * b1).sqrt()),
        Row::V { alpha, beta } => n - 2.0 * k * alpha / beta * d,
        Row::Vi => n - 2.0 * k * d,
        Row::Vii { a, b, eps } => n - (n - 1.0) * b / (2.0 * eps) - 2.0 * k * (a / (2.0 * eps)).exp() * d,
    }
}

/// Curvature-form table in `p` (`k = 2`, `d_F = p/2`); row iv uses `√(1−4B)`.
pub fn lambda_p_forms(row: Row, n: f64, p: f64) -> f64 {
    match row {
        Row::I { a, a1 } => 1.0 + (n - 1.0) * a1 - 2.0 * p * a,
        Row::Ii { a, a1 } => 1.0 + (n - 1.0) * (1.0 + (1.0 + 4.0 * a1).sqrt()) / 2.0 - p * (1.0 + (1.0 + 4.0 * a).sqrt()),
        Row::Iii { b, b1 } => 1.0 + (n - 1.0) * ((b - 0.5).abs() + 0.5) - p * (1.0 + s_b1(b1)),
        Row::Iv { b, b1 } => 1.0 + (n - 1.0) * (1.0 + (1.0 - 4.0 * b).sqrt()) / 2.0 - p - p * (1.0 + 4.0 * b1).sqrt(),
        Row::V { alpha, beta } => n - 2.0 * p * alpha / beta,
        Row::Vi => n - 2.0 * p,
        Row::Vii { a, b, eps } => n - (n - 1.0) * b / (2.0 * eps) - 2.0 * p * (a / (2.0 * eps)).exp(),
    }
}

/// Map table in `p` (`k = 1`, `d_F = p/2`).
pub fn lambda_p_maps(row: Row, n: f64, p: f64) -> f64 {
    match row {
        Row::I { a, a1 } => 1.0 + (n - 1.0) * a1 - p * a,
        Row::Ii { a, a1 } => 1.0 + (n - 1.0) * (1.0 + (1.0 + 4.0 * a1).sqrt()) / 2.0 - p * (1.0 + (1.0 + 4.0 * a).sqrt()) / 2.0,
        Row::Iii { b, b1 } => 1.0 + (n - 1.0) * ((b - 0.5).abs() + 0.5) - p * (1.0 + s_b1(b1)) / 2.0,
        Row::Iv { b, b1 } => 1.0 + (n - 1.0) * (1.0 + (1.0 - 4.0 * b).sqrt()) / 2.0 - p * (1.0 + (1.0 + 4.0 * b1).sqrt()) / 2.0,
        Row::V { alpha, beta } => n - p * alpha / beta,
        Row::Vi => n - p,
        Row::Vii { a, b, eps } => n - (n - 1.0) * b / (2.0 * eps) - p * (a / (2.0 * eps)).exp(),
    }
}

/// Born–Infeld table (`k = 2`, `d_F = 1`); row ii keeps the `1 +` of the general table.
pub fn lambda_born_infeld(row: Row, n: f64) -> f64 {
    match row {
        Row::I { a, a1 } => 1.0 + (n - 1.0) * a1 - 4.0 * a,
        Row::Ii { a, a1 } => 1.0 + (n - 1.0) * (1.0 + (1.0 + 4.0 * a1).sqrt()) / 2.0 - 2.0 * (1.0 + (1.0 + 4.0 * a).sqrt()),
        Row::Iii { b, b1 } => 1.0 + (n - 1.0) * ((b - 0.5).abs() + 0.5) - 2.0 * (1.0 + s_b1(b1)),
        Row::Iv { b, b1 } => 1.0 + (n - 1.0) * (1.0 + (1.0 - 4.0 * b).sqrt()) / 2.0 - 2.0 * (1.0 + (1.0 + 4.0 * b1).sqrt()),
        Row::V { alpha, beta } => n - 4.0 * alpha / beta,
        Row::Vi => n - 4.0,
        Row::Vii { a, b, eps } => n - (n - 1.0) * b / (2.0 * eps) - 4.0 * (a / (2.0 * eps)).exp(),
    }
}

/// Dirichlet table (`k = 1`, general `d_F`).
pub fn lambda_dirichlet(row: Row, n: f64, d: f64) -> f64 {
    match row {
        Row::I { a, a1 } => 1.0 + (n - 1.0) * a1 - 2.0 * d * a,
        Row::Ii { a, a1 } => 1.0 + (n - 1.0) * (1.0 + (1.0 + 4.0 * a1).sqrt()) / 2.0 - d * (1.0 + (1.0 + 4.0 * a).sqrt()),
        Row::Iii { b, b1 } => 1.0 + (n - 1.0) * ((b - 0.5).abs() + 0.5) - d * (1.0 + s_b1(b1)),
        Row::Iv { b, b1 } => 1.0 + (n - 1.0) * (1.0 + (1.0 - 4.0 * b).sqrt()) / 2.0 - d * (1.0 + (1.0 + 4.0 * b1).sqrt()),
        Row::V { alpha, beta } => n - 2.0 * alpha / beta * d,
        Row::Vi => n - 2.0 * d,
        Row::Vii { a, b, eps } => n - (n - 1.0) * b / (2.0 * eps) - 2.0 * (a / (2.0 * eps)).exp() * d,
    }
}

/// Every row over a small symbolic-parameter grid.
pub fn lambda_rows() -> Vec<Row> {
    let mut v = Vec::new();
    for a in [1.0, 1.25, 1.5, 2.0, 3.0] {
        for a1 in [1.0, 1.25, 1.5, 2.0] {
            if a1 <= a {
                v.push(Row::I { a, a1 });
            }
        }
    }
    for a in [0.0, 0.5, 2.0, 6.0] {
        for a1 in [0.0, 0.25, 0.5, 2.0] {
            if a1 <= a {
                v.push(Row::Ii { a, a1 });
            }
        }
    }
    for b in [0.0, 0.25, 0.5, 0.75, 1.0] {
        for b1 in [0.0, 0.125, 0.5, 1.0] {
            v.push(Row::Iii { b, b1 });
        }
    }
    for b in [0.0, 0.125, 0.1875, 0.25] {
        for b1 in [0.0, 0.0625, 0.125, 0.25] {
            if b1 <= b {
                v.push(Row::Iv { b, b1 });
            }
        }
    }
    for (alpha, beta) in [(1.0, 1.0), (2.0, 1.0), (3.0, 2.0), (0.5, 0.25)] {
        v.push(Row::V { alpha, beta });
    }
    v.push(Row::Vi);
    for (a, b, eps) in [(0.0, 0.5, 1.0), (1.0, 0.25, 0.5), (2.0, 1.0, 2.0)] {
        v.push(Row::Vii { a, b, eps });
    }
    v
}

/// `(name, G, κ, f(t, κ))`
pub type ClosedForm = (&'static str, Coefficient, f64, fn(f64, f64) -> f64);

/// Closed-form Jacobi solutions.
pub fn closed_forms() -> Vec<ClosedForm> {
    vec![
        ("sin", Coefficient::constant(1.0), 1.0, |t, k| k * t.sin()),
        ("sinh", Coefficient::constant(-1.0), 1.0, |t, k| k * t.sinh()),
        ("line", Coefficient::constant(0.0), 1.0, |t, k| k * t),
        ("r^1.5", Coefficient::power_model(1.5), 1.0, |t, k| k * t.powf(1.5)),
        ("r^2", Coefficient::power_model(2.0), 1.0, |t, k| k * t * t),
        ("r^3", Coefficient::power_model(3.0), 1.0, |t, k| k * t.powi(3)),
    ]
}

pub fn lambda_row(row: Row) -> LambdaRow {
    match row {
        Row::I { a, a1 } => LambdaRow::TwoSidedPower { a, a1 },
        Row::Ii { a, a1 } => LambdaRow::TwoSidedRatio { a, a1 },
        Row::Iii { b, b1 } => LambdaRow::PinchPositive { b, b1 },
        Row::Iv { b, b1 } => LambdaRow::PinchQuarter { b, b1 },
        Row::V { alpha, beta } => LambdaRow::ConstPinch { alpha, beta },
        Row::Vi => LambdaRow::Flat,
        Row::Vii { a, b, eps } => LambdaRow::DecayPinch { a, b, eps },
    }
}

/// Coefficients with known Jacobi solutions, with an integration horizon.
pub fn duality_catalog() -> Vec<(String, Coefficient, f64)> {
    let mut v = vec![
        ("0".to_string(), Coefficient::constant(0.0), 3.0),
        ("1".to_string(), Coefficient::constant(1.0), 4.0),
        ("-1".to_string(), Coefficient::constant(-1.0), 3.0),
    ];
    for a in [1.0, 1.5, 2.0] {
        v.push((format!("power {a}"), Coefficient::power_model(a), 3.0));
    }
    for b1 in [0.3, 1.0] {
        v.push((format!("positive {b1}"), Coefficient::with_inverse_square(b1 * (1.0 - b1), RadialExpr::zero()), 3.0));
    }
    v
}

/// Ten models: closed-form warps and warps solved from a curvature.
pub fn catalog_models() -> Vec<(&'static str, ModelManifold)> {
    let opts = SolverOptions::default();
    vec![
        ("euclidean 2", ModelManifold::euclidean(2, 5.0).unwrap()),
        ("euclidean 4", ModelManifold::euclidean(4, 5.0).unwrap()),
        ("hyperbolic 3", ModelManifold::hyperbolic(3, 5.0).unwrap()),
        ("sphere 3", ModelManifold::from_warp(3, RadialExpr::sin(1.0), 3.0).unwrap()),
        ("power 1.5", ModelManifold::power(3, 1.5, 5.0).unwrap()),
        ("power 2", ModelManifold::power(4, 2.0, 5.0).unwrap()),
        ("solved K=-1/4", ModelManifold::from_curvature(3, Coefficient::constant(-0.25), 5.0, &opts).unwrap()),
        ("solved K=1", ModelManifold::from_curvature(3, Coefficient::constant(1.0), 3.0, &opts).unwrap()),
        ("solved ratio 2", ModelManifold::from_curvature(3, Coefficient::with_inverse_square(-2.0, RadialExpr::zero()), 4.0, &opts).unwrap()),
        (
            "solved positive 0.3",
            ModelManifold::from_curvature(5, Coefficient::with_inverse_square(0.21, RadialExpr::zero()), 4.0, &opts).unwrap(),
        ),
    ]
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn random_poly<R: Rng>(rng: &mut R, n: usize, max_degree: u32) -> Poly {
    (0..rng.random_range(1..=4)).fold(Poly::zero(n), |acc, _| {
        let c = Q::new(BigInt::from(rng.random_range(-5..=5)), BigInt::from(rng.random_range(1..=3)));
        let mut m = Poly::constant(n, c);
        for _ in 0..rng.random_range(0..=max_degree) {
            m = &m * &Poly::var(n, rng.random_range(0..n));
        }
        &acc + &m
    })
}

pub fn random_form<R: Rng>(rng: &mut R, n: usize, k: usize, max_degree: u32) -> PolyForm {
    (0..rng.random_range(1..=3)).fold(PolyForm::zero(n, k), |acc, _| {
        let mut idx: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            idx.swap(i, rng.random_range(0..=i));
        }
        idx.truncate(k);
        acc.try_add(&PolyForm::monomial(random_poly(rng, n, max_degree), &idx)).unwrap()
    })
}

/// `∏ (1 − xᵢ²)²`, vanishing with its first derivatives on the boundary of `[−1, 1]ⁿ`.
pub fn bump(n: usize) -> Poly {
    (0..n).fold(Poly::constant(n, q(1)), |acc, i| {
        let x = Poly::var(n, i);
        let s = &Poly::constant(n, q(1)) - &(&x * &x);
        &acc * &(&s * &s)
    })
}

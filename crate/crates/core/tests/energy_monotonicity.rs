mod common;

use rand::Rng;
use radcomp::energy::{
    check_density_ratio, check_monotonicity, stress_energy_pairing, vanishing_test, BallEnergy, FKind, LambdaQuery,
};
use radcomp::model::{geometric_grid, ModelManifold};
use radcomp::radial::RadialExpr;

/// Equal up to the rounding of a few arithmetic operations.
fn agrees(got: f64, want: f64) -> bool {
    got == want || (got - want).abs() <= 8.0 * f64::EPSILON * got.abs().max(want.abs()).max(1.0)
}

#[test]
fn master_formula_reproduces_every_table() {
    let mut compared = 0;
    for row in common::lambda_rows() {
        let lr = common::lambda_row(row);
        for n in 2..=8 {
            let nf = n as f64;
            for k in 1..=3 {
                for d in [0.5, 1.0, 1.5, 2.5] {
                    let got = LambdaQuery::new(lr, k, d, n).master();
                    let want = common::lambda_general(row, nf, k as f64, d);
                    assert!(agrees(got, want), "general {row:?} n={n} k={k} d={d}: {got} vs {want}");
                    compared += 1;
                }
            }
            for p in [1.5, 2.0, 3.0, 4.0] {
                let cases = [
                    ("forms", LambdaQuery::new(lr, 2, p / 2.0, n), common::lambda_p_forms(row, nf, p)),
                    ("maps", LambdaQuery::new(lr, 1, p / 2.0, n), common::lambda_p_maps(row, nf, p)),
                    ("dirichlet", LambdaQuery::new(lr, 1, p, n), common::lambda_dirichlet(row, nf, p)),
                ];
                for (name, q, want) in cases {
                    assert!(agrees(q.master(), want), "{name} {row:?} n={n} p={p}: {} vs {want}", q.master());
                    compared += 1;
                }
            }
            let bi = LambdaQuery::new(lr, 2, 1.0, n).master();
            let want = common::lambda_born_infeld(row, nf);
            assert!(agrees(bi, want), "born-infeld {row:?} n={n}: {bi} vs {want}");
        }
    }
    assert!(compared > 5000, "{compared}");
}

#[test]
fn integrand_degrees() {
    for p in [1.5, 2.0, 3.0, 7.0] {
        assert_eq!(FKind::PPower { p }.f_degree().unwrap(), p / 2.0);
        assert_eq!(FKind::PPower { p }.f_lower_degree().unwrap(), p / 2.0);
    }
    assert_eq!(FKind::Identity.f_degree().unwrap(), 1.0);
    assert_eq!(FKind::BornInfeldPlus.f_degree().unwrap(), 1.0);
    assert!((FKind::BornInfeldPlus.f_lower_degree().unwrap() - 0.5).abs() <= 1e-6);
    assert!(FKind::BornInfeldMinus.f_degree().unwrap().is_infinite());
}

#[test]
fn sampled_degree_ratio_stays_in_range() {
    let kinds = [FKind::Identity, FKind::PPower { p: 3.0 }, FKind::BornInfeldPlus, FKind::BornInfeldMinus];
    for fk in kinds {
        let hi = if fk == FKind::BornInfeldMinus { 0.49 } else { 1e4 };
        let (lo_ratio, hi_ratio) = fk.degree_range_numeric(1e-6, hi, 400).unwrap();
        let (l, d) = (fk.f_lower_degree().unwrap(), fk.f_degree().unwrap());
        assert!(lo_ratio >= l - 1e-9 && hi_ratio <= d + 1e-9, "{fk:?}: [{lo_ratio}, {hi_ratio}] vs [{l}, {d}]");
    }
}

#[test]
fn stress_energy_pairing_dominates_its_bound() {
    let models = [
        ModelManifold::euclidean(3, 5.0).unwrap(),
        ModelManifold::hyperbolic(4, 5.0).unwrap(),
        ModelManifold::power(3, 1.5, 5.0).unwrap(),
        ModelManifold::power(5, 2.0, 5.0).unwrap(),
    ];
    let kinds = [FKind::Identity, FKind::PPower { p: 2.5 }, FKind::PPower { p: 4.0 }, FKind::BornInfeldPlus];
    let profiles = [RadialExpr::constant(1.0), RadialExpr::power(0.7, 1.3), RadialExpr::sin(2.0), RadialExpr::power_log(2.0, -0.5, 1.0)];
    for m in &models {
        for fk in &kinds {
            for e in &profiles {
                for r in [0.1, 0.5, 1.0, 2.0, 4.0] {
                    let (pairing, bound) = stress_energy_pairing(m, fk, e, r).unwrap();
                    assert!(pairing >= bound - 1e-8 * bound.abs().max(1.0), "{fk:?} r={r}: {pairing} < {bound}");
                }
            }
        }
    }
}

#[test]
fn euclidean_ball_energy_is_monotone_at_n_minus_two() {
    let radii = geometric_grid(1e-2, 50.0, 200);
    for n in 2..=8 {
        for c in [0.1, 1.0, 30.0] {
            let e = BallEnergy(RadialExpr::power(c, n as f64));
            assert!(check_monotonicity(&e, n as f64 - 2.0, &radii).unwrap().passed, "n={n} c={c}");
        }
        let e = BallEnergy(RadialExpr::power(1.0, n as f64));
        assert!(!check_monotonicity(&e, n as f64 + 0.5, &radii).unwrap().passed);
    }
}

#[test]
fn density_ratio_implies_monotonicity() {
    let mut rng = common::rng(81);
    let radii = geometric_grid(0.05, 6.0, 80);
    let mut compliant = 0;
    let mut drawn = 0;
    while compliant < 100 {
        drawn += 1;
        assert!(drawn < 1000, "only {compliant} compliant profiles");
        let n = rng.random_range(2..=6);
        let m = match rng.random_range(0..3) {
            0 => ModelManifold::euclidean(n, 8.0).unwrap(),
            1 => ModelManifold::hyperbolic(n, 8.0).unwrap(),
            _ => ModelManifold::power(n, rng.random_range(1.0..2.0), 8.0).unwrap(),
        };
        let density = RadialExpr::power_log(rng.random_range(0.1..5.0), rng.random_range(0.0..3.0), rng.random_range(0.0..2.0));
        let lambda = rng.random_range(0.0..(n as f64 + 3.0));
        let report = check_density_ratio(&m, &density, lambda, &radii, 1e-9).unwrap();
        if report.ratio_holds {
            assert!(report.monotonicity.passed, "n={n} λ={lambda} {density:?}: {:?}", report.monotonicity.worst);
            compliant += 1;
        }
    }
}

#[test]
fn vanishing_matches_the_closed_form_rule() {
    let mut rng = common::rng(82);
    for _ in 0..100 {
        let lambda: f64 = rng.random_range(0.0..6.0);
        let alpha = if rng.random_bool(0.3) { lambda } else { rng.random_range(0.0..8.0) };
        let beta: f64 = if rng.random_bool(0.2) { 0.0 } else { rng.random_range(-2.0..2.0) };
        let c = rng.random_range(0.1..10.0);
        let want = alpha < lambda || (alpha == lambda && beta < 0.0);
        let v = vanishing_test(c, alpha, beta, lambda);
        assert_eq!(v.little_o, want, "α={alpha} β={beta} λ={lambda}");
        assert_eq!(v.contradiction.is_some(), want, "α={alpha} β={beta} λ={lambda}");
    }
}

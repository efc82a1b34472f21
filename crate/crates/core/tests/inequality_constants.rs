mod common;

use common::{Family, Params};
use rand::Rng;
use radcomp::inequalities::{
    ckn_constant, costa_constant, hardy_constant, near_sharpness_search, random_ckn_scenario, verify_ckn, verify_hardy, verify_identity,
    CknCondition as C, CknScenario, CostaCase, HardyScenario, InequalityError,
};
use radcomp::model::ModelManifold;

fn close(got: f64, want: f64) -> bool {
    (got - want).abs() <= 1e-12 * want.abs().max(1.0)
}

#[test]
fn every_row_matches_the_transcribed_tables() {
    let weights = [-1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.5];
    let shapes = [
        Params { big_a: 1.0, big_a1: 1.0, big_b: 0.0, big_b1: 0.0, c: 0.5 },
        Params { big_a: 1.5, big_a1: 1.25, big_b: 0.25, big_b1: 0.3, c: 1.0 },
        Params { big_a: 2.0, big_a1: 3.0, big_b: 0.8, big_b1: 1.0, c: 2.0 },
        Params { big_a: 3.0, big_a1: 1.5, big_b: 1.0, big_b1: 0.5, c: 0.25 },
    ];
    let mut seen = std::collections::BTreeSet::new();
    for p in &shapes {
        for n in 2..=7 {
            let nf = n as f64;
            for &a in &weights {
                for &b in &weights {
                    for cond in C::all_rows(p.big_a, p.big_a1, p.big_b, p.big_b1, p.c) {
                        let (table, numeral) = cond.row();
                        let rows = match table {
                            "sign" => common::sign_table(a, b, nf),
                            "ricci" => common::ricci_table(a, b, nf, p),
                            "radial" => common::radial_table(a, b, nf, p),
                            other => panic!("unknown table {other}"),
                        };
                        let want = rows.iter().find(|r| r.0 == numeral).unwrap_or_else(|| panic!("{table}-{numeral}")).1;
                        let got = cond.formula(a, b, n);
                        assert!(close(got, want), "{cond} a={a} b={b} n={n} {p:?}: {got} vs {want}");
                        if let Ok(c) = ckn_constant(&cond, a, b, n) {
                            assert_eq!(c, got);
                        }
                        seen.insert(format!("{table}-{numeral}"));
                    }
                }
            }
        }
    }
    assert_eq!(seen.len(), 3 + 5 + 12, "{seen:?}");
}

#[test]
fn side_conditions_are_enforced() {
    assert!(matches!(ckn_constant(&C::NonPositive, 2.0, 2.0, 3), Err(InequalityError::SideCondition { .. })));
    assert!(matches!(ckn_constant(&C::NonNegative, 0.0, 0.0, 3), Err(InequalityError::SideCondition { .. })));
    assert!(ckn_constant(&C::NonNegative, 1.0, 1.0, 3).is_ok());
    assert!(ckn_constant(&C::Flat, 7.0, -3.0, 3).is_ok());
}

fn family_rows(family: Family, x: f64, c: f64) -> Vec<C> {
    match family {
        Family::Power => vec![
            C::RicLowerPower { a: x, c },
            C::SecLowerPower { a: x, c },
            C::SecUpperPower { a1: x, c },
            C::EqualityPower { a: x, c },
        ],
        Family::Ratio => vec![C::EqualityRatio { a: x, c }],
        Family::Positive => vec![C::RicLowerPositive { b1: x, c }, C::SecLowerPositive { b1: x, c }],
        Family::RicZero => vec![C::RicNonNegative],
        Family::Upper => vec![C::SecUpperPositive { b: x, c }],
    }
}

#[test]
fn specialized_constants_match_the_transcribed_lists() {
    let families = [
        (Family::Power, vec![1.0, 1.25, 2.0, 3.0]),
        (Family::Ratio, vec![0.0, 0.75, 2.0, 6.0]),
        (Family::Positive, vec![0.0, 0.3, 0.5, 1.0]),
        (Family::RicZero, vec![0.0]),
        (Family::Upper, vec![0.0, 0.2, 0.5, 0.9, 1.0]),
    ];
    let mut compared = 0;
    for (family, xs) in families {
        for x in xs {
            for c in [0.0, 0.5] {
                for cond in family_rows(family, x, c) {
                    for n in 2..=7 {
                        for free in [-1.5, -0.5, 0.0, 0.5, 1.0, 2.5] {
                            let want = common::costa_table(family, n as f64, free, x);
                            for (case, w) in CostaCase::ALL.into_iter().zip(want) {
                                let got = costa_constant(case, free, &cond, n).unwrap();
                                assert!(close(got, w), "{family:?} {cond} C{} n={n} free={free}: {got} vs {w}", case.label());
                                compared += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(compared > 4000, "{compared}");
}

#[test]
fn sign_rows_have_no_specialized_constant() {
    for cond in [C::NonNegative, C::NonPositive, C::Flat] {
        for case in CostaCase::ALL {
            assert!(matches!(costa_constant(case, 0.0, &cond, 3), Err(InequalityError::UnmatchedRow { .. })));
        }
    }
}

#[test]
fn curved_rows_reduce_to_flat_rows() {
    for n in 2..=6 {
        for (a, b) in [(0.0, 0.0), (1.0, -0.5), (2.0, 1.0), (-1.0, 3.0)] {
            let pos = C::NonNegative.formula(a, b, n);
            let neg = C::NonPositive.formula(a, b, n);
            let flat = C::Flat.formula(a, b, n);
            for (cond, want) in [
                (C::RicLowerPower { a: 1.0, c: 0.0 }, pos),
                (C::SecLowerPower { a: 1.0, c: 0.0 }, pos),
                (C::SecUpperPower { a1: 1.0, c: 0.0 }, neg),
                (C::EqualityPower { a: 1.0, c: 0.0 }, flat),
                (C::EqualityRatio { a: 0.0, c: 0.0 }, flat),
                (C::RicLowerPositive { b1: 0.0, c: 0.0 }, pos),
                (C::RicLowerPositive { b1: 1.0, c: 0.0 }, pos),
                (C::SecLowerPositive { b1: 1.0, c: 0.0 }, pos),
                (C::SecUpperPositive { b: 0.0, c: 0.0 }, neg),
                (C::SecUpperPositive { b: 1.0, c: 0.0 }, neg),
                (C::RicNonNegative, pos),
            ] {
                assert!(close(cond.formula(a, b, n), want), "{cond} n={n} a={a} b={b}");
            }
        }
    }
}

#[test]
fn hardy_constant_values() {
    assert_eq!(hardy_constant(4.0, 3, 1.0).unwrap(), 1.0 / 256.0);
    assert!(close(hardy_constant(3.0, 2, 1.0).unwrap(), 1.0 / 27.0));
    assert!(matches!(hardy_constant(3.0, 3, 1.0), Err(InequalityError::HardyExponent { .. })));
    assert!(hardy_constant(4.0, 3, 0.5).is_err());
}

#[test]
fn seeded_scenarios_pass() {
    let mut rng = common::rng(91);
    let mut families = std::collections::BTreeSet::new();
    for i in 0..30 {
        let (s, cond) = random_ckn_scenario(&mut rng).unwrap();
        let m = verify_ckn(&s, &cond).unwrap_or_else(|e| panic!("ckn {i} {cond}: {e}"));
        assert!(m.passed && m.slack >= -1e-6, "ckn {i} {cond}: {m:?}");
        families.insert(cond.row());
    }
    assert_eq!(families.len(), 3);
    for i in 0..10 {
        let s = HardyScenario::random(&mut rng).unwrap();
        let m = verify_hardy(&s).unwrap_or_else(|e| panic!("hardy {i}: {e}"));
        assert!(m.passed && m.slack >= -1e-6, "hardy {i}: {m:?}");
    }
}

/// Composite Simpson rule with `2m` panels.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, m: usize) -> f64 {
    let h = (b - a) / (2 * m) as f64;
    let inner: f64 = (1..2 * m).map(|i| f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 }).sum();
    (f(a) + f(b) + inner) * h / 3.0
}

#[test]
fn divergence_identity_holds_on_models() {
    let mut rng = common::rng(92);
    let models = [
        ModelManifold::euclidean(3, 10.0).unwrap(),
        ModelManifold::hyperbolic(4, 10.0).unwrap(),
        ModelManifold::power(3, 1.7, 10.0).unwrap(),
        ModelManifold::from_warp(3, radcomp::radial::RadialExpr::sin(1.0), 3.0).unwrap(),
    ];
    for m in &models {
        for _ in 0..5 {
            let (a, b) = (rng.random_range(-1.0..1.5), rng.random_range(-1.0..1.5));
            let r1 = rng.random_range(0.1..0.8);
            let r2 = r1 + rng.random_range(0.5..1.8);
            let s = CknScenario::with_bump(m.clone(), a, b, r1, r2, 4.0, 5.0).unwrap();
            let rep = verify_identity(&s).unwrap();
            assert!(rep.consistent && rep.margin.passed, "{rep:?}");

            let n = m.dim() as i32;
            let (f, lap) = (m.warp(), m.laplacian_r());
            let direct = simpson(
                |r| {
                    let u = s.u.eval(r).unwrap();
                    u * u * r.powf(-(a + b + 1.0)) * (r * lap.eval(r).unwrap() - a - b) * f.eval(r).unwrap().powi(n - 1)
                },
                r1,
                r2,
                4000,
            );
            let it = rep.integrals;
            assert!((direct - it.identity).abs() <= 1e-6 * it.identity.abs().max(1.0), "{direct} vs {}", it.identity);
        }
    }
}

#[test]
fn flat_bumps_approach_the_sharp_constant() {
    let m = ModelManifold::euclidean(4, 20.0).unwrap();
    let c = ckn_constant(&C::Flat, 0.0, 0.0, 4).unwrap();
    assert_eq!(c, 1.5);
    let (ratio, _, _) = near_sharpness_search(&m, 0.0, 0.0, 10.0).unwrap();
    assert!(ratio >= c - 1e-6 && ratio <= 1.25 * c, "{ratio}");
}

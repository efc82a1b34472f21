mod common;

use rand::Rng;
use radcomp::growth::{GrowthProfile, GrowthVerdict};

fn finite_rule(p: f64, alpha: f64, beta: f64) -> bool {
    alpha < p || (alpha == p && beta <= 0.0)
}

/// `∫^∞ (r/B)^{1/(p−1)} dr = ∞` by the log-refined integral test.
fn small_rule(p: f64, alpha: f64, beta: f64) -> bool {
    alpha < p || (alpha == p && beta <= p - 1.0)
}

fn random_profile<R: Rng>(rng: &mut R) -> GrowthProfile {
    let p: f64 = rng.random_range(1.2..5.0);
    let alpha = match rng.random_range(0..5) {
        0 => p,
        1 => 0.0,
        _ => rng.random_range(0.0..2.0 * p),
    };
    let beta: f64 = match rng.random_range(0..6) {
        0 => 0.0,
        1 => p - 1.0,
        _ => rng.random_range(-3.0..3.0),
    };
    let beta = if alpha == 0.0 { beta.abs() } else { beta };
    GrowthProfile::new(p, rng.random_range(0.1..10.0), alpha, beta).unwrap()
}

#[test]
fn worked_profiles_classify_as_stated() {
    for p in [1.5, 2.0, 3.0, 4.5] {
        let v = GrowthProfile::new(p, 1.0, p, 0.0).unwrap().classify();
        assert_eq!(v, GrowthVerdict::from_flags(true, true, true, true, true), "r^p, p={p}");

        let v = GrowthProfile::new(p, 1.0, p + 1.0, 0.0).unwrap().classify();
        assert_eq!(v.flags(), [false, true, false, true, false, true, false, true, false, true], "r^(p+1), p={p}");

        let v = GrowthProfile::new(p, 1.0, p, (p - 1.0) / 2.0).unwrap().classify();
        assert!(!v.finite && v.small && v.mild && v.obtuse && v.moderate, "log profile, p={p}: {v:?}");
    }
}

#[test]
fn implication_chain_has_no_violations() {
    let mut rng = common::rng(54);
    for _ in 0..10_000 {
        let g = random_profile(&mut rng);
        let v = g.classify();
        assert!(v.chain_holds(), "{g:?}: {v:?}");
        assert_eq!(v.moderate, v.small, "{g:?}");
        assert_eq!(v.finite, finite_rule(g.p, g.alpha, g.beta), "{g:?}");
        assert_eq!(v.small, small_rule(g.p, g.alpha, g.beta), "{g:?}");
        assert_eq!(v.mild, small_rule(g.p, g.alpha, g.beta), "{g:?}");
        assert_eq!(v.obtuse, small_rule(g.p, g.alpha, g.beta), "{g:?}");
        let flags = v.flags();
        for pair in flags.chunks(2) {
            assert_ne!(pair[0], pair[1]);
        }
    }
}

#[test]
fn truncated_integrals_trend_with_the_verdict() {
    let mut rng = common::rng(55);
    let mut checked = 0;
    while checked < 50 {
        let p: f64 = rng.random_range(2.0..4.0);
        let alpha = rng.random_range(0.0..2.0 * p);
        let beta = rng.random_range(-1.0..1.0);
        let e = (1.0 - alpha) / (p - 1.0);
        if (e + 1.0).abs() < 0.3 || (alpha == 0.0 && beta < 0.0) {
            continue;
        }
        let g = GrowthProfile::new(p, 1.0, alpha, beta).unwrap();
        let i = |r: f64| g.truncated_small_integral(1.0, r).unwrap();
        let (a, b, c) = (i(1e2), i(1e4), i(1e6));
        let (d1, d2) = (b - a, c - b);
        if g.is_small() {
            assert!(d2 > d1, "{g:?}: increments {d1} then {d2}");
        } else {
            assert!(d2 < d1, "{g:?}: increments {d1} then {d2}");
        }
        checked += 1;
    }
}

//! Monotonicity exponents for energies under curvature conditions, and the checks built on them.

use radcomp::energy::{
    check_density_ratio, check_monotonicity, lambda_exponent, starlike_check, vanishing_test, BallEnergy, FKind, LambdaQuery,
    LambdaRow, StarDomain,
};
use radcomp::model::{geometric_grid, ModelManifold};
use radcomp::radial::RadialExpr;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rows = [
        LambdaRow::TwoSidedPower { a: 1.5, a1: 1.2 },
        LambdaRow::TwoSidedRatio { a: 0.5, a1: 0.2 },
        LambdaRow::PinchPositive { b: 0.8, b1: 0.3 },
        LambdaRow::PinchQuarter { b: 0.2, b1: 0.1 },
        LambdaRow::ConstPinch { alpha: 1.0, beta: 1.0 },
        LambdaRow::Flat,
    ];
    for fk in [FKind::Identity, FKind::PPower { p: 4.0 }, FKind::BornInfeldPlus] {
        let d_f = fk.f_degree()?;
        for row in rows {
            let q = LambdaQuery::new(row, 1, d_f, 6);
            match lambda_exponent(&q) {
                Ok(l) => println!("F = {fk:<10} row {:<4} lambda = {l:.6}", row.label()),
                Err(e) => println!("F = {fk:<10} row {:<4} {e}", row.label()),
            }
        }
    }

    let n = 4;
    let radii = geometric_grid(0.1, 10.0, 40);
    let e = BallEnergy(RadialExpr::power(1.0, n as f64));
    println!("E = rho^n with lambda = n - 2: monotone {}", check_monotonicity(&e, n as f64 - 2.0, &radii)?.passed);

    let m = ModelManifold::euclidean(n, 20.0)?;
    let rep = check_density_ratio(&m, &RadialExpr::power(1.0, -1.0), 2.0, &radii, 1e-9)?;
    println!("density 1/r: min ratio {:.6}, monotone {}", rep.min_ratio, rep.monotonicity.passed);

    let v = vanishing_test(1.0, 1.5, 0.0, 2.0);
    println!("E = rho^1.5 against lambda 2: little-o {}, monotonicity broken between {:?}", v.little_o, v.contradiction);

    let ellipsoid = StarDomain::Ellipsoid { semi_axes: vec![1.0, 2.0, 0.5] };
    let samples = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.3, -0.5, 0.8]];
    println!("ellipsoid starlike: {}", starlike_check(&ellipsoid, &samples)?.starlike);
    Ok(())
}

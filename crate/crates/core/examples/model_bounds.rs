//! Closed-form Hessian and Laplacian bounds from curvature hypotheses, checked on model spaces.

use radcomp::comparison::Tolerances;
use radcomp::model::{bound_catalog, verify_bounds, BoundTarget, CurvatureHypothesis, ModelManifold};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = CurvatureHypothesis::TwoSidedRatio { a: 2.0, a1: 0.0, c: 0.0 };
    for pair in bound_catalog(&h, 3)? {
        let (lo, hi) = pair.eval(2.0)?;
        println!("{h} {:<15} at r = 2: lower {lo:?}, upper {hi:?}", pair.applies_to.to_string());
    }

    let tol = Tolerances::default();
    let cases = [
        (ModelManifold::power(3, 2.0, 4.0)?, CurvatureHypothesis::SecLowerPower { a: 2.0, c: 0.0 }),
        (ModelManifold::hyperbolic(3, 4.0)?, CurvatureHypothesis::NonPositive),
        (ModelManifold::euclidean(4, 4.0)?, CurvatureHypothesis::Flat),
    ];
    for (m, h) in &cases {
        let cert = verify_bounds(m, h, &tol, 64)?;
        println!("{h}: {} (min margin {:.2e})", cert.verdict, cert.min_margin());
    }

    let sphere = ModelManifold::from_warp(3, radcomp::radial::RadialExpr::sin(1.0), 3.0)?;
    let lap = bound_catalog(&CurvatureHypothesis::SecLowerQuarter { b1: 0.0, c: 0.0 }, 3)?
        .into_iter()
        .find(|p| p.applies_to == BoundTarget::Laplacian)
        .expect("laplacian entry");
    println!("sphere: laplacian of r at 1.0 = {:.6}, bound {:?}", sphere.laplacian_r().eval(1.0)?, lap.eval(1.0)?);
    Ok(())
}

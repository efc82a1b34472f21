//! Certify comparison statements between two systems and inspect the margins.

use radcomp::comparison::{ComparisonCase, ComparisonError, Theorem, Tolerances};
use radcomp::ode::{Coefficient, SolverOptions};
use radcomp::radial::RadialExpr;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (tol, opts) = (Tolerances::default(), SolverOptions::default());
    let flat = Coefficient::constant(0.0);
    let curved = Coefficient::with_inverse_square(-0.75, RadialExpr::constant(-0.5));
    for theorem in [Theorem::Sturm, Theorem::Riccati, Theorem::MixedI, Theorem::MixedII] {
        let case = ComparisonCase { theorem, coef1: flat.clone(), coef2: curved.clone(), kappa: (1.0, 1.5), t_end: 2.5 };
        let cert = case.run(&tol, &opts)?;
        println!("{theorem:<9} verdict {} min margin {:.3e} over {} radii", cert.verdict, cert.min_margin(), cert.radii.len());
    }

    let swapped = ComparisonCase { theorem: Theorem::Sturm, coef1: curved, coef2: flat, kappa: (1.0, 1.0), t_end: 2.5 };
    match swapped.run(&tol, &opts) {
        Err(ComparisonError::HypothesisViolated { radius, margin }) => {
            println!("swapped systems rejected: G1 - G2 = {margin:.3e} at r = {radius:.3e}")
        }
        other => println!("unexpected: {other:?}"),
    }

    let cert = ComparisonCase { theorem: Theorem::Sturm, coef1: Coefficient::constant(1.0), coef2: Coefficient::constant(0.0), kappa: (1.0, 1.0), t_end: 3.0 }
        .run(&tol, &opts)?;
    cert.write_record(std::io::stdout().lock())?;
    Ok(())
}

//! Turn a Jacobi solution into the matching Riccati solution and back again.

use radcomp::duality::{reverse, sup_distance, transform};
use radcomp::ode::{solve_jacobi, Coefficient, SolverOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = SolverOptions::default();
    for (name, coef) in [
        ("G = 1", Coefficient::constant(1.0)),
        ("G = -1", Coefficient::constant(-1.0)),
        ("G = -A(A-1)/t^2, A = 1.5", Coefficient::power_model(1.5)),
    ] {
        for kappa in [0.5, 2.0] {
            let f = solve_jacobi(coef.clone(), kappa, 3.0, &opts)?;
            let g = transform(&f)?;
            let back = reverse(&g)?;
            let err = sup_distance(&f, &back, 2.0 * f.epsilon(), 0.9 * f.t_sup())?;
            println!("{name:<26} kappa = {kappa}: g(1) = {:+.9}, round-trip error {err:.2e}", g.g_at(1.0)?);
        }
    }
    Ok(())
}

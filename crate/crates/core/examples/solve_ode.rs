//! Solve Jacobi and Riccati problems for constant curvature and compare with closed forms.

use radcomp::ode::{solve_jacobi, solve_riccati, Coefficient, SolverOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = SolverOptions::default();
    let sphere = solve_jacobi(Coefficient::constant(1.0), 1.0, 4.0, &opts)?;
    println!("G = 1: first zero at {:.12} (pi = {:.12})", sphere.t_sup(), std::f64::consts::PI);
    for t in [0.5, 1.0, 2.0] {
        println!("  f({t}) = {:.12}  sin = {:.12}", sphere.f_at(t)?, t.sin());
    }

    let hyperbolic = solve_riccati(Coefficient::constant(-1.0), 1.0, 3.0, &opts)?;
    for t in [0.5, 1.0, 2.0] {
        println!("G = -1: g({t}) = {:.12}  coth = {:.12}", hyperbolic.g_at(t)?, 1.0 / t.tanh());
    }

    let power = solve_jacobi(Coefficient::power_model(2.0), 1.0, 2.0, &opts)?;
    println!("G = -2/t^2: exponent {}, f(1.5) = {:.12} vs 1.5^2 = 2.25", power.exponent(), power.f_at(1.5)?);
    Ok(())
}

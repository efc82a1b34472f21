//! Comparison geometry on rotationally symmetric models: Jacobi and Riccati equations and their
//! duality, curvature bound catalogs, growth classes, flat exterior calculus, weighted Hardy-type
//! inequalities and energy monotonicity.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod comparison;
pub mod duality;
pub mod energy;
pub mod forms;
pub mod growth;
pub mod inequalities;
pub mod model;
pub mod ode;
pub mod radial;

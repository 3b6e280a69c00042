//! Holonomy reduction of the classical three-body problem.
//!
//! The crate goes from Cartesian positions of three particles, through
//! mass-weighted Jacobi vectors and shape coordinates `(r, s, phi)`, to the
//! Hamiltonian dynamics on the holonomy bundle `Q = R^3_+ x S^1` and its
//! further reduction at fixed angular momentum. Every geometric statement
//! has a full-space counterpart that can be checked numerically:
//!
//! - [`kinematics`]: Jacobi vectors, shape and `w` coordinates, the
//!   democracy group and angular momentum.
//! - [`connection`]: gauge potential, holonomy of shape loops, curvature and
//!   the full-space horizontal frame lift.
//! - [`dynamics`]: reduced Hamiltonian, vector fields, integrators and the
//!   Newtonian oracle.
//! - [`potentials`]: rotationally invariant model potentials.
//! - [`cli`]: configuration files, batch runs and comparisons.

pub mod cli;
pub mod connection;
pub mod dynamics;
pub mod error;
pub mod kinematics;
pub mod potentials;

pub use error::{Error, Result};

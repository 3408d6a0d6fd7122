//! Exact scalar, linear and lattice algebra.

mod echelon;
pub mod lattice;
mod matrix;
mod rational;
mod tau;

pub use echelon::EchelonBasis;
pub use lattice::{hermite_normal_form, kernel_lattice, quotient_coordinates, smith_normal_form, Smith};
pub use matrix::{dot, kernel, rank, rref, solve, IntMatrix, Matrix, RatMatrix};
pub use rational::{ParseRationalError, Rational};
pub use tau::TauScalar;

//! Coefficient rings of the block algebras and finite quotients of them.

pub mod betti;
pub mod derham;
pub mod poly;
pub mod quotient;

pub use betti::{betti_local_quotient_basis, betti_local_quotient_chart, y_presentation_dim, LatticeGroupAlgebra, LaurentElement, LocalBettiRing, LocalQuotient};
pub use derham::{dr_reduce, finite_quotient_basis, DeRhamRing};
pub use poly::{monomial_degree, monomials_of_degree, Monomial, Poly};
pub use quotient::FiniteQuotient;

/// Default degree or truncation cap for a datum with `n` hyperplanes.
pub fn default_cap(n: usize) -> usize {
    4 * n.max(1)
}

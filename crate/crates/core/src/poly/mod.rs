//! Polynomials over `Z` and `F_p`.

mod int_poly;
mod irreducible;
pub mod modp;
mod resultant;

pub use int_poly::IntPolynomial;
pub use irreducible::{eisenstein_prime, is_irreducible_over_q, Irreducibility, IrreducibilityConfig};
pub use modp::{factor_mod_p, frobenius_matrix, poly_mod_compose, ModPolynomial};
pub use resultant::{discriminant, power_sums, resultant};

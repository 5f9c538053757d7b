//! Exact integer arithmetic: gcds, factorization, integer matrices and
//! dense linear algebra over prime fields.

mod factor;
pub mod fp;
mod int;
mod matrix;

pub use factor::{factor, factor_with, is_prime, FactorConfig, Factorization};
pub use int::{gcd_all, squarefree_part, valuation, xgcd};
pub use matrix::{hnf, snf, IntMatrix, Snf};

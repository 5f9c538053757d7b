//! Exact computation of rings of integers, prime splitting and the trace
//! ideal `Tr(O_K) = tZ` for number fields `K = Q[x]/(f)`.
//!
//! The pipeline is: [`poly`] (discriminants, irreducibility, factoring mod p)
//! feeds [`order`] (Dedekind test and Round 2), whose output drives
//! [`ramification`] (splitting of `pO_K`) and [`trace`] (trace ideal,
//! surjectivity criteria). [`analysis::analyze`] runs all of it for one
//! defining polynomial.

pub mod analysis;
pub mod arith;
mod error;
pub mod order;
pub mod poly;
pub mod ramification;
pub mod trace;

pub use error::{Error, Result};

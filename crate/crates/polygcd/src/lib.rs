//! Exact analysis of the integer sequence `G(n) = gcd(A(n), B(n))` for two
//! coprime integer polynomials.
//!
//! The sequence is periodic; its structure is governed by the resultant of
//! the pair. This crate computes the resultant and an integer Bézout
//! certificate, extracts the per-prime periodic patterns of `G`, assembles
//! them into a full profile (period, realizable value set), computes the
//! minimal Bézout constant by two independent routes, and ships brute-force
//! oracles for every claim so the optimized paths can be cross-checked.

mod arith;
pub mod error;
pub mod modular;
pub mod oracle;
pub mod patterns;
pub mod poly;
pub mod suite;
pub mod sylvester;

pub use error::{Error, Result};
pub use modular::{PrimePower, SplitFactorization};
pub use patterns::{GcdProfile, Pattern};
pub use poly::IntPoly;
pub use sylvester::{BezoutCertificate, ResultantReport, SylvesterMatrix};

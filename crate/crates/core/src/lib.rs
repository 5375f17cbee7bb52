//! Exact combinatorial engine for Euler characteristics, characteristic cycles
//! and Gaussian degrees of Ad-equivariant constructible functions on reductive
//! groups.
//!
//! A sheaf is modeled by its constructible function (one integer per stratum of
//! an admissible stratification). From that data the crate computes
//!
//! * the global Euler characteristic by Euler integration ([`strata::euler_integral`]),
//! * the characteristic-cycle multiplicities by the Dubson–Kashiwara index
//!   formula ([`strata::cc_multiplicities`]),
//! * Gaussian degrees of strata through torus reduction ([`gdeg`]),
//!
//! and compares `χ(G, F)` with `Σ c_α · gdeg(X_α)` ([`gdeg::gauss_bonnet`]).
//!
//! All value-carrying computations are generic over an exact integer scalar
//! ([`ExactInt`]); the aliases below fix the common choices.

pub mod casefile;
pub mod catalog;
pub mod error;
pub mod gdeg;
pub mod report;
pub mod scalar;
pub mod strata;
pub mod weyl;

pub use error::{Error, Result};
pub use scalar::ExactInt;

/// Default scalar: overflow-checked 64-bit integers.
pub type Chi = i64;
/// Arbitrary-precision scalar.
pub type BigChi = num_bigint::BigInt;

pub type ConstructibleFn = strata::ConstructibleFunction<Chi>;
pub type BigConstructibleFn = strata::ConstructibleFunction<BigChi>;
pub type Cycle = strata::CharCycle<Chi>;
pub type BigCycle = strata::CharCycle<BigChi>;
pub type Polytope = gdeg::LatticePolytope<i64>;
pub type BigPolytope = gdeg::LatticePolytope<BigChi>;

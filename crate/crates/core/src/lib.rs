//! Multiplicative bounds on the orders of finite subgroups of reductive
//! groups over arbitrary fields, in exact arithmetic.
//!
//! The crate computes Minkowski's and Schur's bounds for `GL_n`, the torus,
//! S- and M-bounds for groups of inner type, achievable exponents, corank
//! bounds and mass-formula denominators, and carries independent oracles
//! (finite-group orders, brute-force enumeration, Smith normal forms,
//! direct `ℓ`-adic evaluation) to check every closed form against.

pub mod bounds;
pub mod cyclo;
pub mod error;
pub mod exact_arith;
pub mod mass;
pub mod oracle;
pub mod root_data;
pub mod verify;

pub use bounds::{BoundExponent, BoundSource, BoundValue};
pub use cyclo::{CycloInvariants, FieldDescriptor, RootLevel, TwoAdicType};
pub use error::{Error, Result};
pub use exact_arith::{FactoredInteger, PadicApprox};
pub use root_data::RootSystem;

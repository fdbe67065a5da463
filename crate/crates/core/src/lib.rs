//! Exact construction and certification of generalized modified diagonal
//! cycles on products of curves.
//!
//! The crate works entirely with coefficient vectors over the rationals:
//!
//! * [`exact`]: big rationals, dense polynomials, binomials and falling
//!   products.
//! * [`operator`]: the Euler operator `x·d/dx` on `(1+x)^m`, its expansion
//!   table and `(1+x)`-adic valuation.
//! * [`linear`]: moment constraint systems, exact nullspaces, kernel vectors
//!   avoiding a functional, and the rank-based independence and membership
//!   checks.
//! * [`cycle`]: partial-diagonal bookkeeping with projection pushforwards (fast
//!   and by subset enumeration), Beauville components, the degree functional.
//! * [`certify`]: the end-to-end pipelines producing JSON certificates, and
//!   an independent verifier.

pub mod certify;
pub mod cycle;
pub mod error;
pub mod exact;
pub mod linear;
pub mod operator;

pub use error::{Error, Result};
pub use exact::{Poly, Rational};

//! Exact-arithmetic toolkit for the 2-categorical calculus of weak monads.
//!
//! Everything is computed with structure constants over an exact field
//! ([`FieldSpec`]): the rationals or a prime field. Linear maps between
//! tensor powers of finite-dimensional spaces ([`LinMap`]) play the role of
//! 2-cells; Kronecker products realize horizontal composition and matrix
//! products realize vertical composition.
//!
//! The main layers:
//!
//! * [`linalg`] — exact matrices, Kronecker products, idempotent splitting,
//!   cokernels.
//! * [`structures`] — algebras, coalgebras, pre-monads and weak bialgebras
//!   presented by structure constants, with axiom checkers and generators.
//! * [`emw`] — cells of the weak extension of the 2-category of monads,
//!   instantiated in finite-dimensional vector spaces, with the full law
//!   battery (composition, membership, monads-in-cells).
//! * [`premonad`] — the bijection between weak wreaths and composite
//!   pre-monads, in both directions, with round-trip checks.
//! * [`lifting`] — the module-category instance: lifting idempotents,
//!   canonically split retracts, corings built from entwining data, and the
//!   module correspondences.
//! * [`entwine`] — classifiers for mixed distributive laws and their weak,
//!   partial and lax relaxations, plus the weak-bialgebra characterization.
//! * [`io`] — the JSON structure-constant file format.
//! * [`sample`] — deterministic seeded generators for all instance families.

pub mod emw;
pub mod entwine;
mod error;
pub mod io;
pub mod lifting;
pub mod linalg;
pub mod premonad;
pub mod report;
pub mod sample;
pub mod structures;
pub mod term;

pub use error::Error;
pub use linalg::{FieldSpec, LinMap, Scalar, Splitting};
pub use report::{Report, Verdict};

/// Convenient result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

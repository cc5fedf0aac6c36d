//! Exact computation with representations of quivers with relations:
//! King (semi)stability, Schofield determinantal semi-invariants on the
//! double quiver, semi-invariant weight spaces and Hilbert functions of
//! moduli coordinate rings, polystabilization and S-equivalence.
//!
//! All arithmetic is exact (arbitrary-precision rationals or prime fields);
//! randomized searches take explicit seeds and are reproducible.

pub mod error;
pub mod field;
pub mod instances;
pub mod matrix;
pub mod par;
pub mod poly;
pub mod quiver;
pub mod schofield;
pub mod siring;
pub mod stability;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use matrix::Matrix;

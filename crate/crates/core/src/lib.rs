//! Discrete structures in finite-dimensional Hilbert spaces.
//!
//! Weyl–Heisenberg groups, finite fields, Latin squares and complex Hadamard
//! matrices, mutually unbiased bases, discrete Wigner functions, the
//! Clifford group, projective and unitary designs, and SIC fiducials, each
//! with numerical verification routines.

pub mod clifford;
pub mod combinat;
pub mod designs;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod mub;
pub mod persist;
pub mod report;
pub mod sic;
pub mod weyl;
pub mod wigner;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, StateVector, C64, EPS_MAT};
pub use report::{Check, RunReport};

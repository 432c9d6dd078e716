//! Exact arithmetic for the p-congruence filtration of SL_n over rings
//! that are free of finite rank over Z, the filtration quotients, and the
//! associated graded Lie algebra — together with machine-checkable
//! verification suites for the structural statements about them.
//!
//! Everything is computed over the integers or modulo explicit prime
//! powers; no floating point is involved anywhere.

pub mod error;
pub mod lie;
pub mod matrix;
pub mod quotient;
pub mod ring;
pub mod verify;

pub use error::{Error, Result};

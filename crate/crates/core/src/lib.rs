//! Character theory toolkit for fusion rings and finite-group class algebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`ring`] holds based rings (fusion rings and group class algebras),
//!   Frobenius–Perron dimensions, subring closures and the universal grading.
//! * [`chartab`] computes character tables, formal codegrees, the dual
//!   hypergroup and the Burnside vanishing check.
//! * [`identities`] builds class sums and supports in central-element
//!   coordinates and checks Harada-type identities numerically.
//! * [`group`] is the exact finite-group engine (Cayley tables, conjugacy
//!   classes, exact class-algebra arithmetic).
//! * [`arith`] holds square-free splits, type filters and the type enumerator.
//! * [`format`] reads and writes the JSON input files.

#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod chartab;
mod error;
pub mod format;
pub mod group;
pub mod identities;
mod linalg;
pub mod ring;
mod verdict;

pub use error::{Error, Result};
pub use verdict::{Status, Verdict};

/// Numerical thresholds shared by the floating-point parts of the toolkit.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Tolerances {
    /// Relative tolerance of eigenvalue iterations.
    pub eigen: f64,
    /// Distance below which a numeric dimension is snapped to an exact value.
    pub snap: f64,
    /// Absolute threshold under which a character value counts as zero.
    pub zero: f64,
    /// Maximum residual accepted by identity checks.
    pub identity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eigen: 1e-9,
            snap: 1e-6,
            zero: 1e-7,
            identity: 1e-7,
        }
    }
}

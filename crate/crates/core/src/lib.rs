//! Finite graded rings.
//!
//! Builds finite rings graded by finite groups (products, σ-graded matrix and
//! triangular rings, twisted group rings, trivial extensions, quotients and
//! corners), classifies homogeneous elements as graded NR-clean, graded U-nil
//! clean or graded nil-good with explicit witnesses, and checks the transfer
//! results for these classes by exhaustive computation.

pub mod classify;
pub mod constructions;
pub mod error;
pub mod graded;
pub mod group;
pub mod ring;
pub mod set;
pub mod spec;
pub mod verify;

pub use error::{Error, Result};
pub use graded::{GradedRing, HomogeneousIdeal, MorphismReport};
pub use group::{FiniteGroup, GroupElem};
pub use ring::FiniteRing;
pub use set::{Elem, ElementSet};

/// Default cap on the carrier size of any constructed ring.
pub const DEFAULT_MAX_CARRIER: usize = 1 << 20;

/// Global carrier cap; `GRLAB_MAX_CARRIER` overrides the default.
pub fn max_carrier() -> usize {
    std::env::var("GRLAB_MAX_CARRIER")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_CARRIER)
}

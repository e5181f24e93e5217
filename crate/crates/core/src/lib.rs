//! Exact symbolic computation with simply-laced root systems: Weyl-group
//! combinatorics, monomial crystals, sequence-indexed module characters,
//! multidegrees and asymptotic characters, and a harness that verifies the
//! identities tying them together (colored hook formulas, the minuscule
//! basis comparison, and the rank-2 worked pipeline) by exact arithmetic.
//!
//! All arithmetic is over arbitrary-precision rationals. Data-parallel inner
//! loops (reduced-word enumeration, inclusion-exclusion, the verification
//! suite) run on rayon when the `parallel` feature is enabled (the default)
//! and fall back to sequential execution otherwise; results are identical in
//! both modes.

pub mod asympchar;
pub mod crystal;
pub mod dbar;
pub mod error;
pub mod exec;
pub mod json;
pub mod klrchar;
pub mod rat;
pub mod ratfun;
pub mod rootsys;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Mode;
pub use rat::Rat;

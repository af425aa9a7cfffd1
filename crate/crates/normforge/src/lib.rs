//! Verification and falsification engine for subadditivity-style norm
//! inequalities on complex matrices.
//!
//! The crate checks inequalities of the shape "every symmetric norm of the
//! left side is at most the same norm of the right side" by reducing them to
//! partial-sum comparisons of singular value spectra, and hunts for
//! counterexamples to open variants with a seeded, class-preserving hill
//! climber. See the `examples/` directory for runnable tours of each
//! capability.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod funcs;
pub mod gen;
pub mod hunter;
pub mod linalg;
pub mod spectra;

pub use error::{Error, Result};

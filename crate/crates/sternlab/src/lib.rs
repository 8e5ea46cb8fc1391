//! # sternlab
//!
//! A desk-scale laboratory for Stern-style code-based identification and
//! signature schemes. The crate implements, side by side:
//!
//! - the baseline Stern identification scheme with randomized commitments,
//! - the seed-optimized variant with deterministic commitments (which leaks
//!   its secret key to a birthday-collision key-recovery attack),
//! - the salt + index repair of that variant,
//! - a fused variant that groups four rounds under seed and commitment trees,
//!
//! together with the Fiat-Shamir signatures built from each variant, the
//! collision attack and its negative control, honest-verifier zero-knowledge
//! simulators with distribution experiments, and an analytic signature-size
//! model.
//!
//! Everything runs at reduced, desk-scale parameters by design: seeds can be
//! shrunk to a few bits so the attack completes in seconds, and all counting
//! is exact. **Nothing here is hardened for production use.**
//!
//! The `examples/` directory contains one runnable demonstration per major
//! capability; `src/main.rs` provides a thin command-line front end.

pub mod algebra;
pub mod attack;
pub mod error;
pub mod fiatshamir;
pub mod primitives;
pub mod problems;
pub mod protocol;
pub mod sizemodel;

pub use error::Error;

//! Origin semantics for non-deterministic string transducers.
//!
//! The crate models one-way and two-way transducers together with the
//! origin graphs of their runs, and provides the machinery to compare
//! transducers up to a controlled distortion of origins:
//!
//! * [`automata`]: automata over letters extended with boolean tracks, the
//!   closure operations, and ambiguity classification.
//! * [`mso`]: monadic second-order formulas over words and their compilation
//!   to automata.
//! * [`transducer`]: 1NT/2NT models, run enumeration and origin graphs.
//! * [`resync`]: regular resynchronizers, their membership test, boundedness,
//!   composition and the extended (α, β, γ, δ) form.
//! * [`traversal`]: the traversal relation between two origin graphs and the
//!   greedy labelling that witnesses membership in `R_k`.
//! * [`containment`]: bounded-length containment up to a resynchronizer and
//!   the search for a universal `R_k` witness.
//! * [`reduction`]: Turing machines, domino tiles and the transducers
//!   `T_up`/`T_down` built from them.
//! * [`rational`]: interleaved words and rational resynchronizers for 1NTs.
//! * [`corpus`]: the canned transducers and machines used throughout the
//!   examples and tests.

#![allow(clippy::needless_range_loop)]

pub mod alphabet;
pub mod automata;
pub mod containment;
pub mod corpus;
pub mod dot;
pub mod error;
pub mod mso;
pub mod rational;
pub mod reduction;
pub mod resync;
pub mod transducer;
pub mod traversal;

pub use alphabet::{Alphabet, Symbol};
pub use error::{Error, Result};

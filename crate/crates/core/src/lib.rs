//! Exact partial metric spaces and rough convergence of sequences.
//!
//! Everything is computed over finite carriers with exact rationals, and
//! sequences are eventually periodic, so limits, limit sets and minimal
//! roughness degrees are decidable:
//!
//! * [`pmspace`]: spaces, axiom validation, balls, diameters, generators;
//! * [`seqlab`]: sequences, profiles, (rough / one-sided) convergence;
//! * [`topo`]: the ball topology τ(p), closedness and closures;
//! * [`theorems`]: one checker per rough-convergence theorem plus a seeded
//!   counterexample search.
//!
//! The only notion from the underlying theory without a runtime operation is
//! first countability, which is immediate for a finite carrier.

pub mod error;
mod par;
pub mod pmspace;
pub mod rational;
pub mod seqlab;
pub mod theorems;
pub mod topo;

pub use error::{Error, Result};
pub use par::PARALLEL;
pub use pmspace::{PointSet, Space};
pub use rational::{ParseRationalError, Rational};
pub use seqlab::{Sequence, Side};

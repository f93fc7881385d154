//! Exact arithmetic toolkit for deciding parametric feasibility and
//! nonexistence of quasi-symmetric 2-designs via the rational congruence
//! class of the block graph's minimal idempotent.
//!
//! Modules build on each other bottom-up: [`arith`] (factorization, square
//! classes), [`hilbert`] (local symbols), [`quadform`] (rational quadratic
//! forms and Hasse invariants), [`srg`] (strongly regular graphs and their
//! invariants) and [`designs`] (feasibility, the p-adic test and the
//! per-family enumerators).

pub mod arith;
pub mod designs;
pub mod error;
pub mod hilbert;
pub mod quadform;
pub mod srg;

pub use error::{Error, Result};

//! Exact verification and search tools for ternary sums of primes drawn
//! from dense prime subsets.
//!
//! * [`seq_inequality`]: the three-sequence inequality, its proof ledger and
//!   a counterexample searcher.
//! * [`modular_sumsets`]: unit groups, CRT coordinates and triple sumsets in
//!   `Z_m`.
//! * [`density_functions`]: witness-producing procedures for functions on
//!   unit groups with large means.
//! * [`goldbach_counting`]: sieve, prime subsets, exact representation
//!   counts, W-trick weights and Fourier diagnostics.

pub mod arith;
pub mod density_functions;
pub mod error;
pub mod goldbach_counting;
pub mod modular_sumsets;
pub mod pav;
pub mod rational;
pub mod report;
pub mod seq_inequality;

pub use error::{Error, Result};
pub use rational::Rational;

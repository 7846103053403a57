//! Arithmetic in `Z_m` for square-free odd `m`: unit groups, CRT
//! coordinates, triple sumsets, the Cauchy-Davenport bound and covering
//! checks for dense unit subsets.
//!
//! Sets are membership vectors. Sumsets are computed as two cyclic boolean
//! convolutions; exhaustive sweeps over tiny moduli use `u128` bitmasks.

mod cauchy_davenport;
mod corollary;
mod crt;
mod modulus;
mod residue_set;
mod sumset;

pub use cauchy_davenport::{
    cauchy_davenport_check, cauchy_davenport_exhaustive, CauchyDavenportReport,
    CauchyDavenportSweep, EXHAUSTIVE_PRIME_CAP,
};
pub use corollary::{
    counterexample_mod15, verify_corollary_1_4, CardinalityThresholds, CorollaryMode,
    CorollaryReport, CoverageWitness, Mod15Counterexample, EXHAUSTIVE_PHI_CAP,
};
pub use crt::{CrtCoordinates, SplitSet};
pub use modulus::{analyze_modulus, Modulus};
pub use residue_set::ResidueSet;
pub use sumset::{sumset2, sumset3};

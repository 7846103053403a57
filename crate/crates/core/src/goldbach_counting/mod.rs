//! Finite-range experiments on ternary representations by primes from
//! dense subsets.
//!
//! [`sieve`] builds a bit-packed [`PrimeTable`]; [`PrimeSubsetSpec`] selects
//! a subset of it. [`count_representations`] and [`scan_odd_range`] count
//! ordered triples `p1 + p2 + p3 = n` exactly, by modular convolution or by
//! brute force. [`w_trick_weights`] builds the residue-class weights modulo
//! a primorial and [`find_congruence_witness`] locates a unit triple with a
//! good weight product. The [`fourier_transform`] family measures the
//! transference hypotheses on `Z_N`.

mod count;
mod fourier;
mod ntt;
mod sieve;
mod subset;
mod wtrick;

pub use count::{
    count_representations, scan_odd_range, CountMethod, RangeReport, RangeRow, RepresentationCount,
    BRUTE_MAX_N,
};
pub use fourier::{
    dft_direct, dft_fast, eta_observed, fourier_transform, lq_norm, pseudorandomness_report,
    PseudorandomnessReport, SpectrumReport, DIRECT_CHECK_MAX_N,
};
pub use ntt::convolve_exact;
pub use sieve::{sieve, sieve_with_cap, PrimeTable, DEFAULT_SIEVE_CAP};
pub use subset::{relative_density, PrimeSubsetSpec};
pub use wtrick::{
    find_congruence_witness, w_trick_weights, CongruenceReport, CongruenceWitness, MeanCondition,
    RouteResult, WTrickParams, WTrickProfile, WitnessRoute, BRUTE_WITNESS_MAX_W, WTRICK_MAX_W,
};

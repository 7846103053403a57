use rayon::prelude::*;
use serde::Serialize;

use super::residue_set::ResidueSet;
use super::sumset::{mask, sumset3};
use crate::arith::is_prime;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CauchyDavenportReport {
    pub bound: u64,
    pub actual: u64,
    pub holds: bool,
}

/// Checks `|A + B + C| >= min(|A| + |B| + |C| - 2, p)` in `Z_p`.
///
/// Composite moduli are refused: the bound is a theorem only for primes.
pub fn cauchy_davenport_check(
    p: u64,
    a: &ResidueSet,
    b: &ResidueSet,
    c: &ResidueSet,
) -> Result<CauchyDavenportReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if a.modulus() != p {
        return Err(Error::ModulusMismatch {
            left: a.modulus(),
            right: p,
        });
    }
    if a.is_empty() || b.is_empty() || c.is_empty() {
        return Err(Error::Precondition(
            "Cauchy-Davenport needs nonempty sets".into(),
        ));
    }
    let actual = sumset3(a, b, c)?.len() as u64;
    let bound = cd_bound(p, a.len() as u64, b.len() as u64, c.len() as u64);
    Ok(CauchyDavenportReport {
        bound,
        actual,
        holds: actual >= bound,
    })
}

fn cd_bound(p: u64, a: u64, b: u64, c: u64) -> u64 {
    (a + b + c - 2).min(p)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CauchyDavenportSweep {
    pub p: u64,
    pub triples: u64,
    pub failures: u64,
    /// Lexicographically first failing triple, by bitmask.
    pub first_failure: Option<[ResidueSet; 3]>,
}

/// Largest prime accepted by [`cauchy_davenport_exhaustive`].
pub const EXHAUSTIVE_PRIME_CAP: u64 = 7;

/// Checks the bound for every triple of nonempty subsets of `Z_p`.
pub fn cauchy_davenport_exhaustive(p: u64) -> Result<CauchyDavenportSweep> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > EXHAUSTIVE_PRIME_CAP {
        return Err(Error::Capacity(format!(
            "exhaustive Cauchy-Davenport is capped at p <= {EXHAUSTIVE_PRIME_CAP}, got {p}"
        )));
    }
    let subsets = (1u128 << p) - 1;
    let per_a: Vec<(u64, u64, Option<(u128, u128, u128)>)> = (1..=subsets)
        .into_par_iter()
        .map(|a| {
            let (mut triples, mut failures, mut first) = (0u64, 0u64, None);
            for b in 1..=subsets {
                let ab = mask::sum2(a, b, p);
                for c in 1..=subsets {
                    triples += 1;
                    let actual = mask::sum2(ab, c, p).count_ones() as u64;
                    let bound = cd_bound(
                        p,
                        a.count_ones() as u64,
                        b.count_ones() as u64,
                        c.count_ones() as u64,
                    );
                    if actual < bound {
                        failures += 1;
                        first.get_or_insert((a, b, c));
                    }
                }
            }
            (triples, failures, first)
        })
        .collect();
    let triples = per_a.iter().map(|r| r.0).sum();
    let failures = per_a.iter().map(|r| r.1).sum();
    let first_failure = per_a.iter().find_map(|r| r.2).map(|(a, b, c)| {
        [
            ResidueSet::from_mask(p, a),
            ResidueSet::from_mask(p, b),
            ResidueSet::from_mask(p, c),
        ]
    });
    Ok(CauchyDavenportSweep {
        p,
        triples,
        failures,
        first_failure,
    })
}

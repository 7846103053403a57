use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::ntt::convolve_exact;
use super::sieve::PrimeTable;
use super::subset::PrimeSubsetSpec;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMethod {
    Convolution,
    Brute,
}

impl CountMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            CountMethod::Convolution => "convolution",
            CountMethod::Brute => "brute",
        }
    }
}

impl std::str::FromStr for CountMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "convolution" | "conv" => Ok(CountMethod::Convolution),
            "brute" => Ok(CountMethod::Brute),
            _ => Err(Error::Parse(format!("unknown method {s:?}"))),
        }
    }
}

/// Largest `n` for the brute-force method.
pub const BRUTE_MAX_N: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RepresentationCount {
    pub n: u64,
    /// Ordered triples `(p1, p2, p3)`, `p_i` in `P_i`, summing to `n`.
    pub count: u128,
    pub method: CountMethod,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RangeRow {
    pub n: u64,
    pub count: u128,
    pub ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RangeReport {
    pub n0: u64,
    pub n1: u64,
    pub method: CountMethod,
    pub rows: Vec<RangeRow>,
    /// Odd `n` in range with no representation.
    pub failures: Vec<u64>,
    pub elapsed_ms: f64,
}

fn indicators(specs: &[PrimeSubsetSpec; 3], table: &PrimeTable, n: u64) -> Result<[Vec<bool>; 3]> {
    Ok([
        specs[0].indicator(table, n)?,
        specs[1].indicator(table, n)?,
        specs[2].indicator(table, n)?,
    ])
}

fn as_u64(v: &[bool]) -> Vec<u64> {
    v.iter().map(|&b| b as u64).collect()
}

/// `r(x)` for every `x` in `[0, n]` by two exact convolutions.
fn triple_convolution(ind: &[Vec<bool>; 3], table: &PrimeTable, n: u64) -> Result<Vec<u128>> {
    let len = n as usize + 1;
    let pi = table.pi(n) as u128;
    let pairs = convolve_exact(&as_u64(&ind[0]), &as_u64(&ind[1]), len, pi)?;
    let pairs: Vec<u64> = pairs.into_iter().map(|x| x as u64).collect();
    convolve_exact(&pairs, &as_u64(&ind[2]), len, pi * pi)
}

fn brute_count(ind: &[Vec<bool>; 3], n: u64) -> u128 {
    let n = n as usize;
    let mut count = 0u128;
    for p1 in (2..=n).filter(|&p| ind[0][p]) {
        for p2 in (2..=n - p1).filter(|&p| ind[1][p]) {
            count += ind[2][n - p1 - p2] as u128;
        }
    }
    count
}

fn check_brute(n: u64) -> Result<()> {
    if n > BRUTE_MAX_N {
        return Err(Error::Capacity(format!(
            "brute method is limited to n <= {BRUTE_MAX_N}, got {n}"
        )));
    }
    Ok(())
}

/// Counts ordered representations `n = p1 + p2 + p3` with `p_i` in `P_i`.
/// Even `n` is accepted here as a diagnostic query.
pub fn count_representations(
    n: u64,
    specs: &[PrimeSubsetSpec; 3],
    table: &PrimeTable,
    method: CountMethod,
) -> Result<RepresentationCount> {
    if n < 3 {
        return Err(Error::Precondition(format!(
            "n must be at least 3, got {n}"
        )));
    }
    let start = Instant::now();
    let ind = indicators(specs, table, n)?;
    let count = match method {
        CountMethod::Brute => {
            check_brute(n)?;
            brute_count(&ind, n)
        }
        CountMethod::Convolution => {
            let len = n as usize + 1;
            let pairs =
                convolve_exact(&as_u64(&ind[0]), &as_u64(&ind[1]), len, table.pi(n) as u128)?;
            (0..len)
                .filter(|&x| ind[2][n as usize - x])
                .map(|x| pairs[x])
                .sum()
        }
    };
    Ok(RepresentationCount {
        n,
        count,
        method,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Counts for every odd `n` in `[n0, n1]`.
pub fn scan_odd_range(
    n0: u64,
    n1: u64,
    specs: &[PrimeSubsetSpec; 3],
    table: &PrimeTable,
    method: CountMethod,
) -> Result<RangeReport> {
    if n0.is_multiple_of(2) || n1.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "range bounds must be odd, got [{n0}, {n1}]"
        )));
    }
    if n0 < 3 || n0 > n1 {
        return Err(Error::Precondition(format!(
            "need 3 <= n0 <= n1, got [{n0}, {n1}]"
        )));
    }
    let start = Instant::now();
    let ind = indicators(specs, table, n1)?;
    let odds: Vec<u64> = (n0..=n1).step_by(2).collect();
    let rows: Vec<RangeRow> = match method {
        CountMethod::Brute => {
            check_brute(n1)?;
            odds.par_iter()
                .map(|&n| {
                    let t = Instant::now();
                    let count = brute_count(&ind, n);
                    RangeRow {
                        n,
                        count,
                        ms: t.elapsed().as_secs_f64() * 1e3,
                    }
                })
                .collect()
        }
        CountMethod::Convolution => {
            let r = triple_convolution(&ind, table, n1)?;
            let per = start.elapsed().as_secs_f64() * 1e3 / odds.len() as f64;
            odds.iter()
                .map(|&n| RangeRow {
                    n,
                    count: r[n as usize],
                    ms: per,
                })
                .collect()
        }
    };
    let failures = rows.iter().filter(|r| r.count == 0).map(|r| r.n).collect();
    Ok(RangeReport {
        n0,
        n1,
        method,
        rows,
        failures,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goldbach_counting::sieve;

    fn all3() -> [PrimeSubsetSpec; 3] {
        [
            PrimeSubsetSpec::All,
            PrimeSubsetSpec::All,
            PrimeSubsetSpec::All,
        ]
    }

    #[test]
    fn small_counts() {
        let t = sieve(100).unwrap();
        for method in [CountMethod::Brute, CountMethod::Convolution] {
            let r = |n| count_representations(n, &all3(), &t, method).unwrap().count;
            assert_eq!(r(7), 3);
            assert_eq!(r(9), 4);
            assert_eq!(r(5), 0);
            assert_eq!(r(6), 1);
        }
    }

    #[test]
    fn range_matches_single() {
        let t = sieve(500).unwrap();
        let conv = scan_odd_range(7, 499, &all3(), &t, CountMethod::Convolution).unwrap();
        let brute = scan_odd_range(7, 499, &all3(), &t, CountMethod::Brute).unwrap();
        assert!(conv.failures.is_empty());
        for (a, b) in conv.rows.iter().zip(&brute.rows) {
            assert_eq!((a.n, a.count), (b.n, b.count));
        }
        assert!(scan_odd_range(8, 99, &all3(), &t, CountMethod::Brute).is_err());
    }

    #[test]
    fn empty_subset_fails_everywhere() {
        let t = sieve(200).unwrap();
        let specs = [
            PrimeSubsetSpec::All,
            PrimeSubsetSpec::Explicit(vec![]),
            PrimeSubsetSpec::All,
        ];
        let r = scan_odd_range(7, 199, &specs, &t, CountMethod::Convolution).unwrap();
        assert_eq!(r.failures.len(), r.rows.len());
    }

    #[test]
    fn brute_cap() {
        let t = sieve(20_001).unwrap();
        assert!(count_representations(20_001, &all3(), &t, CountMethod::Brute).is_err());
        assert!(count_representations(1, &all3(), &t, CountMethod::Brute).is_err());
    }
}

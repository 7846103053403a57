use std::fmt;
use std::str::FromStr;

use num_traits::{One, ToPrimitive, Zero};

use super::sieve::PrimeTable;
use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::rational::{fmt_rational, parse_rational, Rational};

/// A subset of the primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeSubsetSpec {
    All,
    /// Primes in the given unit classes mod `m`.
    ResidueClasses {
        m: u64,
        classes: Vec<u64>,
    },
    /// An explicit finite list; non-primes are ignored.
    Explicit(Vec<u64>),
    /// In each block `[2^j, 2^(j+1))` keep the first `ceil(rho * k)` of its
    /// `k` primes.
    Truncation(Rational),
}

impl PrimeSubsetSpec {
    pub fn residue_classes(m: u64, classes: Vec<u64>) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroModulus);
        }
        let mut classes: Vec<u64> = classes.into_iter().map(|c| c % m).collect();
        classes.sort_unstable();
        classes.dedup();
        if let Some(c) = classes.iter().find(|&&c| gcd(c, m) != 1) {
            return Err(Error::Precondition(format!(
                "class {c} is not a unit mod {m}"
            )));
        }
        Ok(PrimeSubsetSpec::ResidueClasses { m, classes })
    }

    pub fn truncation(rho: Rational) -> Result<Self> {
        if rho <= Rational::zero() || rho > Rational::one() {
            return Err(Error::Precondition(format!(
                "truncation fraction {} not in (0,1]",
                fmt_rational(&rho)
            )));
        }
        Ok(PrimeSubsetSpec::Truncation(rho))
    }

    /// Smallest sieve limit that decides membership for all of `[0, n]`.
    pub fn required_limit(&self, n: u64) -> u64 {
        match self {
            // the dyadic block containing n must be complete
            PrimeSubsetSpec::Truncation(_) => (n + 1).next_power_of_two().max(2) - 1,
            _ => n.max(2),
        }
    }

    /// Membership vector over `[0, n]`.
    pub fn indicator(&self, table: &PrimeTable, n: u64) -> Result<Vec<bool>> {
        let need = self.required_limit(n);
        if table.limit() < need {
            return Err(Error::Capacity(format!(
                "subset {self} needs primes up to {need}, sieve covers {}",
                table.limit()
            )));
        }
        let mut out = vec![false; n as usize + 1];
        match self {
            PrimeSubsetSpec::All => {
                for p in table.primes_in(2, n) {
                    out[p as usize] = true;
                }
            }
            PrimeSubsetSpec::ResidueClasses { m, classes } => {
                let mut keep = vec![false; *m as usize];
                for &c in classes {
                    keep[c as usize] = true;
                }
                for p in table.primes_in(2, n) {
                    out[p as usize] = keep[(p % m) as usize];
                }
            }
            PrimeSubsetSpec::Explicit(list) => {
                for &p in list.iter().filter(|&&p| p <= n && table.is_prime(p)) {
                    out[p as usize] = true;
                }
            }
            PrimeSubsetSpec::Truncation(rho) => {
                let mut lo = 2u64;
                while lo <= n {
                    let hi = 2 * lo - 1;
                    let block: Vec<u64> = table.primes_in(lo, hi).collect();
                    let keep = ceil_fraction(rho, block.len());
                    for &p in block.iter().take(keep).filter(|&&p| p <= n) {
                        out[p as usize] = true;
                    }
                    lo *= 2;
                }
            }
        }
        Ok(out)
    }
}

fn ceil_fraction(rho: &Rational, k: usize) -> usize {
    let x = rho * Rational::from_integer(k.into());
    x.ceil().to_integer().to_usize().expect("nonnegative")
}

/// `|P ∩ [1, n]| / pi(n)`, exactly. Zero when there are no primes up to `n`.
pub fn relative_density(spec: &PrimeSubsetSpec, table: &PrimeTable, n: u64) -> Result<Rational> {
    let ind = spec.indicator(table, n)?;
    let count = ind.iter().filter(|&&b| b).count() as u64;
    let total = table.pi(n);
    if total == 0 {
        return Ok(Rational::zero());
    }
    Ok(Rational::new(count.into(), total.into()))
}

impl fmt::Display for PrimeSubsetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        match self {
            PrimeSubsetSpec::All => write!(f, "all"),
            PrimeSubsetSpec::ResidueClasses { m, classes } => {
                write!(f, "mod:{m}:{}", join(classes))
            }
            PrimeSubsetSpec::Explicit(list) => write!(f, "list:{}", join(list)),
            PrimeSubsetSpec::Truncation(rho) => write!(f, "trunc:{}", fmt_rational(rho)),
        }
    }
}

fn parse_list(body: &str) -> Result<Vec<u64>> {
    body.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Parse(format!("bad list entry {t:?}")))
        })
        .collect()
}

/// Grammar: `all`, `mod:<m>:<c1>,<c2>,...`, `list:<p1>,<p2>,...`,
/// `list:@<file>` (whitespace or comma separated), `trunc:<rho>`.
impl FromStr for PrimeSubsetSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "all" {
            return Ok(PrimeSubsetSpec::All);
        }
        let (kind, body) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("unknown subset spec {s:?}")))?;
        match kind {
            "mod" => {
                let (m, classes) = body.split_once(':').ok_or_else(|| {
                    Error::Parse(format!("expected mod:<m>:<classes>, got {s:?}"))
                })?;
                let m = m
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad modulus in {s:?}")))?;
                PrimeSubsetSpec::residue_classes(m, parse_list(classes)?)
            }
            "list" => {
                let items = match body.strip_prefix('@') {
                    Some(path) => {
                        let text = std::fs::read_to_string(path)
                            .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
                        parse_list(&text)?
                    }
                    None => parse_list(body)?,
                };
                let mut items = items;
                items.sort_unstable();
                items.dedup();
                Ok(PrimeSubsetSpec::Explicit(items))
            }
            "trunc" => PrimeSubsetSpec::truncation(parse_rational(body)?),
            _ => Err(Error::Parse(format!("unknown subset kind {kind:?}"))),
        }
    }
}

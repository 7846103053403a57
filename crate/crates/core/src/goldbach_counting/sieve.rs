use crate::error::{Error, Result};

/// Default largest sieve limit.
pub const DEFAULT_SIEVE_CAP: u64 = 100_000_000;

/// Primality table for `[0, limit]`, storing odd numbers only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    // bit i of word w marks 2 * (64 w + i) + 1
    odd_bits: Vec<u64>,
    // primes among odd numbers in words [0, w)
    prefix: Vec<u64>,
}

pub fn sieve(limit: u64) -> Result<PrimeTable> {
    sieve_with_cap(limit, DEFAULT_SIEVE_CAP)
}

pub fn sieve_with_cap(limit: u64, cap: u64) -> Result<PrimeTable> {
    if limit < 2 {
        return Err(Error::Precondition(format!(
            "sieve limit must be at least 2, got {limit}"
        )));
    }
    if limit > cap {
        return Err(Error::Capacity(format!(
            "sieve limit {limit} exceeds cap {cap}"
        )));
    }
    let odd_count = limit.div_ceil(2) as usize; // odd numbers 1, 3, ..., <= limit
    let words = odd_count.div_ceil(64);
    let mut odd_bits = vec![u64::MAX; words];
    // clear 1 and the tail past limit
    odd_bits[0] &= !1;
    let tail = odd_count % 64;
    if tail != 0 {
        odd_bits[words - 1] &= (1u64 << tail) - 1;
    }
    let mut p = 3u64;
    while p * p <= limit {
        let i = (p / 2) as usize;
        if odd_bits[i / 64] >> (i % 64) & 1 == 1 {
            let mut j = (p * p / 2) as usize;
            while j < odd_count {
                odd_bits[j / 64] &= !(1u64 << (j % 64));
                j += p as usize;
            }
        }
        p += 2;
    }
    let mut prefix = Vec::with_capacity(words + 1);
    let mut acc = 0u64;
    prefix.push(0);
    for w in &odd_bits {
        acc += w.count_ones() as u64;
        prefix.push(acc);
    }
    Ok(PrimeTable {
        limit,
        odd_bits,
        prefix,
    })
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn is_prime(&self, n: u64) -> bool {
        if n > self.limit {
            panic!("{n} is beyond the sieve limit {}", self.limit);
        }
        if n.is_multiple_of(2) {
            return n == 2;
        }
        let i = (n / 2) as usize;
        self.odd_bits[i / 64] >> (i % 64) & 1 == 1
    }

    /// Number of primes `<= x`.
    pub fn pi(&self, x: u64) -> u64 {
        let x = x.min(self.limit);
        if x < 2 {
            return 0;
        }
        // odd numbers <= x have indices 0..=(x-1)/2
        let count = ((x - 1) / 2 + 1) as usize;
        let (w, r) = (count / 64, count % 64);
        let mut odd = self.prefix[w];
        if r != 0 {
            odd += (self.odd_bits[w] & ((1u64 << r) - 1)).count_ones() as u64;
        }
        odd + 1
    }

    /// Primes in `[lo, hi]`, ascending.
    pub fn primes_in(&self, lo: u64, hi: u64) -> impl Iterator<Item = u64> + '_ {
        let hi = hi.min(self.limit);
        let two = (lo <= 2 && hi >= 2).then_some(2);
        let start = (lo.max(3) / 2) as usize;
        let end = if hi < 3 {
            0
        } else {
            ((hi - 1) / 2 + 1) as usize
        };
        two.into_iter().chain(
            (start..end)
                .filter(move |&i| self.odd_bits[i / 64] >> (i % 64) & 1 == 1)
                .map(|i| 2 * i as u64 + 1),
        )
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes_in(2, self.limit)
    }
}

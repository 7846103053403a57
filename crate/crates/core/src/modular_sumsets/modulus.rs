use serde::Serialize;

use crate::arith::{factorize, gcd};
use crate::error::{Error, Result};

/// A square-free modulus with its prime factors and totient.
///
/// Built by [`analyze_modulus`] the modulus is odd; [`Modulus::relaxed`]
/// also admits the factor 2, for products of all small primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Modulus {
    m: u64,
    prime_factors: Vec<u64>,
    phi: u64,
}

/// Factors `m` and checks that it is odd and square-free.
pub fn analyze_modulus(m: u64) -> Result<Modulus> {
    let md = Modulus::relaxed(m)?;
    if m.is_multiple_of(2) {
        return Err(Error::EvenModulus { m });
    }
    Ok(md)
}

impl Modulus {
    /// Square-free modulus of either parity.
    pub fn relaxed(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroModulus);
        }
        let factors = factorize(m);
        if let Some(&(p, _)) = factors.iter().find(|(_, e)| *e > 1) {
            return Err(Error::NotSquarefree { m, p });
        }
        let prime_factors: Vec<u64> = factors.into_iter().map(|(p, _)| p).collect();
        let phi = prime_factors.iter().map(|p| p - 1).product();
        Ok(Modulus {
            m,
            prime_factors,
            phi,
        })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn prime_factors(&self) -> &[u64] {
        &self.prime_factors
    }

    pub fn phi(&self) -> u64 {
        self.phi
    }

    pub fn is_odd(&self) -> bool {
        self.m % 2 == 1
    }

    pub fn is_squarefree_odd(&self) -> bool {
        self.is_odd()
    }

    pub fn is_coprime_to_30(&self) -> bool {
        gcd(self.m, 30) == 1
    }

    pub fn largest_prime(&self) -> Option<u64> {
        self.prime_factors.last().copied()
    }

    pub fn is_unit(&self, x: u64) -> bool {
        gcd(x % self.m, self.m) == 1 || self.m == 1
    }

    /// Units in ascending order. `Z_1` has the single unit `0`.
    pub fn units(&self) -> Vec<u64> {
        (0..self.m).filter(|&x| self.is_unit(x)).collect()
    }

    /// The modulus with the prime `p` removed.
    pub fn without(&self, p: u64) -> Result<Modulus> {
        if !self.prime_factors.contains(&p) {
            return Err(Error::Precondition(format!(
                "{p} does not divide {}",
                self.m
            )));
        }
        Modulus::relaxed(self.m / p)
    }
}

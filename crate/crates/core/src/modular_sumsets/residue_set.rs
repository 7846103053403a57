use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::modulus::Modulus;
use crate::error::{Error, Result};

/// A subset of `Z_m` stored as a membership vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ResidueSet {
    modulus: u64,
    members: Vec<bool>,
    cardinality: usize,
}

impl ResidueSet {
    pub fn empty(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroModulus);
        }
        Ok(ResidueSet {
            modulus: m,
            members: vec![false; m as usize],
            cardinality: 0,
        })
    }

    pub fn full(m: u64) -> Result<Self> {
        let mut s = Self::empty(m)?;
        s.members.fill(true);
        s.cardinality = m as usize;
        Ok(s)
    }

    /// Builds a set from residues, reducing each modulo `m`.
    pub fn from_residues<I: IntoIterator<Item = u64>>(m: u64, residues: I) -> Result<Self> {
        let mut s = Self::empty(m)?;
        for r in residues {
            s.insert(r);
        }
        Ok(s)
    }

    /// Builds a set from a membership vector of length `m`.
    pub fn from_members(members: Vec<bool>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::ZeroModulus);
        }
        let cardinality = members.iter().filter(|&&b| b).count();
        Ok(ResidueSet {
            modulus: members.len() as u64,
            members,
            cardinality,
        })
    }

    /// Set whose bit `i` of `mask` marks residue `i`. Requires `m <= 128`.
    pub(crate) fn from_mask(m: u64, mask: u128) -> Self {
        debug_assert!(m <= 128);
        let members: Vec<bool> = (0..m).map(|i| mask >> i & 1 == 1).collect();
        Self::from_members(members).expect("m >= 1")
    }

    #[cfg(test)]
    pub(crate) fn to_mask(&self) -> Option<u128> {
        (self.modulus <= 128).then(|| self.iter().fold(0u128, |acc, r| acc | 1 << r))
    }

    pub fn units(md: &Modulus) -> Self {
        Self::from_residues(md.m(), md.units()).expect("modulus >= 1")
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.cardinality
    }

    pub fn is_empty(&self) -> bool {
        self.cardinality == 0
    }

    pub fn members(&self) -> &[bool] {
        &self.members
    }

    pub fn contains(&self, r: u64) -> bool {
        self.members[(r % self.modulus) as usize]
    }

    pub fn insert(&mut self, r: u64) -> bool {
        let slot = &mut self.members[(r % self.modulus) as usize];
        let fresh = !*slot;
        *slot = true;
        self.cardinality += fresh as usize;
        fresh
    }

    pub fn remove(&mut self, r: u64) -> bool {
        let slot = &mut self.members[(r % self.modulus) as usize];
        let present = *slot;
        *slot = false;
        self.cardinality -= present as usize;
        present
    }

    /// Residues in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i as u64)
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }

    pub fn complement(&self) -> Self {
        let members = self.members.iter().map(|b| !b).collect();
        Self::from_members(members).expect("nonempty")
    }

    pub fn is_subset(&self, other: &ResidueSet) -> bool {
        self.modulus == other.modulus && self.iter().all(|r| other.contains(r))
    }

    pub fn is_full(&self) -> bool {
        self.cardinality as u64 == self.modulus
    }

    /// The translate `self + t`.
    pub fn shift(&self, t: u64) -> Self {
        let m = self.modulus;
        Self::from_residues(m, self.iter().map(|r| (r + t % m) % m)).expect("modulus >= 1")
    }

    pub(crate) fn check_same_modulus(&self, other: &ResidueSet) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        Ok(())
    }
}

impl fmt::Display for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|r| r.to_string()).collect();
        write!(f, "m={}; {{{}}}", self.modulus, items.join(","))
    }
}

impl fmt::Debug for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ResidueSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses `m=<int>; {r1,r2,...}`. Residues must lie in `[0, m)`.
impl FromStr for ResidueSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("residue set {s:?}: {why}"));
        let (head, body) = s.split_once(';').ok_or_else(|| bad("missing ';'"))?;
        let m: u64 = head
            .trim()
            .strip_prefix("m=")
            .ok_or_else(|| bad("expected m=<int>"))?
            .trim()
            .parse()
            .map_err(|_| bad("modulus is not an integer"))?;
        let inner = body
            .trim()
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .ok_or_else(|| bad("expected {...}"))?;
        let mut set = ResidueSet::empty(m)?;
        for tok in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let r: u64 = tok.parse().map_err(|_| bad("residue is not an integer"))?;
            if r >= m {
                return Err(bad(&format!("residue {r} out of range")));
            }
            set.insert(r);
        }
        Ok(set)
    }
}

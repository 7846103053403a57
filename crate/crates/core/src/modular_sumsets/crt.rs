use super::residue_set::ResidueSet;
use crate::arith::{gcd, mod_inverse};
use crate::error::{Error, Result};

/// The isomorphism `Z_m -> Z_left x Z_right` for coprime `left * right = m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrtCoordinates {
    left: u64,
    right: u64,
    // join_table[u * right + v] = x with x = u mod left, x = v mod right
    join_table: Vec<u64>,
}

impl CrtCoordinates {
    pub fn new(left: u64, right: u64) -> Result<Self> {
        let m = left.checked_mul(right).ok_or(Error::ZeroModulus)?;
        if m == 0 {
            return Err(Error::ZeroModulus);
        }
        if gcd(left, right) != 1 {
            return Err(Error::BadSplit { m, left, right });
        }
        // x = u * right * (right^-1 mod left) + v * left * (left^-1 mod right)
        let e_left = (right as u128 * mod_inverse(right, left).unwrap() as u128) % m as u128;
        let e_right = (left as u128 * mod_inverse(left, right).unwrap() as u128) % m as u128;
        let mut join_table = vec![0; m as usize];
        for u in 0..left {
            for v in 0..right {
                join_table[(u * right + v) as usize] =
                    ((u as u128 * e_left + v as u128 * e_right) % m as u128) as u64;
            }
        }
        Ok(CrtCoordinates {
            left,
            right,
            join_table,
        })
    }

    /// Splits `m` as `(m / p) x p`.
    pub fn peel(m: u64, p: u64) -> Result<Self> {
        if p == 0 || !m.is_multiple_of(p) {
            return Err(Error::BadSplit {
                m,
                left: if p == 0 { 0 } else { m / p },
                right: p,
            });
        }
        Self::new(m / p, p)
    }

    pub fn modulus(&self) -> u64 {
        self.left * self.right
    }

    pub fn left(&self) -> u64 {
        self.left
    }

    pub fn right(&self) -> u64 {
        self.right
    }

    pub fn split(&self, x: u64) -> (u64, u64) {
        (x % self.left, x % self.right)
    }

    pub fn join(&self, u: u64, v: u64) -> u64 {
        self.join_table[((u % self.left) * self.right + v % self.right) as usize]
    }

    pub fn split_set(&self, s: &ResidueSet) -> Result<SplitSet> {
        if s.modulus() != self.modulus() {
            return Err(Error::ModulusMismatch {
                left: s.modulus(),
                right: self.modulus(),
            });
        }
        let mut cells = vec![false; self.modulus() as usize];
        for x in s.iter() {
            let (u, v) = self.split(x);
            cells[(u * self.right + v) as usize] = true;
        }
        Ok(SplitSet {
            left: self.left,
            right: self.right,
            cells,
        })
    }

    pub fn join_set(&self, s: &SplitSet) -> Result<ResidueSet> {
        if (s.left, s.right) != (self.left, self.right) {
            return Err(Error::ModulusMismatch {
                left: s.left * s.right,
                right: self.modulus(),
            });
        }
        ResidueSet::from_residues(
            self.modulus(),
            (0..self.left)
                .flat_map(|u| (0..self.right).map(move |v| (u, v)))
                .filter(|&(u, v)| s.contains(u, v))
                .map(|(u, v)| self.join(u, v)),
        )
    }

    /// The set `{x : x mod left in a, x mod right in b}`.
    pub fn product(&self, a: &ResidueSet, b: &ResidueSet) -> Result<ResidueSet> {
        if a.modulus() != self.left || b.modulus() != self.right {
            return Err(Error::ModulusMismatch {
                left: a.modulus() * b.modulus(),
                right: self.modulus(),
            });
        }
        ResidueSet::from_residues(
            self.modulus(),
            a.iter()
                .flat_map(|u| b.iter().map(move |v| (u, v)))
                .map(|(u, v)| self.join(u, v)),
        )
    }
}

/// A subset of `Z_left x Z_right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitSet {
    left: u64,
    right: u64,
    cells: Vec<bool>,
}

impl SplitSet {
    pub fn contains(&self, u: u64, v: u64) -> bool {
        self.cells[(u * self.right + v) as usize]
    }

    /// Elements `v` with `(u, v)` in the set.
    pub fn fiber(&self, u: u64) -> ResidueSet {
        let start = (u * self.right) as usize;
        ResidueSet::from_members(self.cells[start..start + self.right as usize].to_vec())
            .expect("right >= 1")
    }

    pub fn project_left(&self) -> ResidueSet {
        ResidueSet::from_residues(
            self.left,
            (0..self.left).filter(|&u| !self.fiber(u).is_empty()),
        )
        .expect("left >= 1")
    }

    pub fn project_right(&self) -> ResidueSet {
        ResidueSet::from_residues(
            self.right,
            (0..self.right).filter(|&v| (0..self.left).any(|u| self.contains(u, v))),
        )
        .expect("right >= 1")
    }

    /// The factors `(A, B)` if the set equals `A x B`.
    pub fn as_product(&self) -> Option<(ResidueSet, ResidueSet)> {
        let (a, b) = (self.project_left(), self.project_right());
        let count = self.cells.iter().filter(|&&c| c).count();
        (count == a.len() * b.len()).then_some((a, b))
    }
}

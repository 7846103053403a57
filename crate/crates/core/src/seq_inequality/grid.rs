use num_bigint::BigInt;

use super::sequences::TripleSequences;
use crate::rational::{ExactInt, Rational};

/// First `(i, j, k)` in lexicographic order with `i + j + k >= n` at which
/// the scaled form `8(ab + bc + ca) - 5d(a + b + c)` is positive, together
/// with the number of triples examined.
pub(crate) fn first_violation<T: ExactInt>(
    d: &T,
    a: &[T],
    b: &[T],
    c: &[T],
) -> (Option<(usize, usize, usize)>, u64) {
    let n = a.len();
    let eight = T::from_i64(8).unwrap();
    let five_d = T::from_i64(5).unwrap() * d.clone();
    let mut scanned = 0u64;
    for i in 0..n {
        for j in 0..n {
            let k0 = n.saturating_sub(i + j);
            let ab = a[i].clone() * b[j].clone();
            let a_plus_b = a[i].clone() + b[j].clone();
            for k in k0..n {
                scanned += 1;
                let form = ab.clone() + c[k].clone() * a_plus_b.clone();
                if eight.clone() * form > five_d.clone() * (a_plus_b.clone() + c[k].clone()) {
                    return (Some((i, j, k)), scanned);
                }
            }
        }
    }
    (None, scanned)
}

/// Scaled form `8 n^2 d^2 * [(AB + BC + CA) - 5/8 (A + B + C)]` of the
/// averages, from the scaled sums.
pub(crate) fn scaled_average_excess<T: ExactInt>(d: &T, n: usize, a: &[T], b: &[T], c: &[T]) -> T {
    let sa: T = a.iter().sum();
    let sb: T = b.iter().sum();
    let sc: T = c.iter().sum();
    let eight = T::from_i64(8).unwrap();
    let five_nd = T::from_i64(5).unwrap() * T::from_usize(n).unwrap() * d.clone();
    eight * (sa.clone() * sb.clone() + sb.clone() * sc.clone() + sc.clone() * sa.clone())
        - five_nd * (sa + sb + sc)
}

/// Sequences whose entries are multiples of `1/denom`, held as integer
/// numerators. Used where many candidate instances are generated and
/// checked, since every operation stays in machine integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridTriple {
    pub denom: i128,
    pub seqs: [Vec<i128>; 3],
}

impl GridTriple {
    pub fn len(&self) -> usize {
        self.seqs[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.seqs[0].is_empty()
    }

    pub fn first_violation(&self) -> Option<(usize, usize, usize)> {
        let [a, b, c] = &self.seqs;
        first_violation(&self.denom, a, b, c).0
    }

    pub fn satisfies_hypothesis(&self) -> bool {
        self.first_violation().is_none()
    }

    /// `8 n^2 d^2` times the excess of the average form over `5/8` of the
    /// average sum. Positive means the average conclusion fails.
    pub fn scaled_excess(&self) -> i128 {
        let [a, b, c] = &self.seqs;
        scaled_average_excess(&self.denom, self.len(), a, b, c)
    }

    /// Excess as an exact rational, on the same scale as
    /// `(AB + BC + CA) - 5/8 (A + B + C)`.
    pub fn excess(&self) -> Rational {
        let n = self.len() as i128;
        let scale = 8 * n * n * self.denom * self.denom;
        Rational::new(BigInt::from(self.scaled_excess()), BigInt::from(scale))
    }

    pub fn to_sequences(&self) -> TripleSequences {
        let conv = |s: &[i128]| {
            s.iter()
                .map(|&v| Rational::new(BigInt::from(v), BigInt::from(self.denom)))
                .collect::<Vec<_>>()
        };
        TripleSequences::new(
            conv(&self.seqs[0]),
            conv(&self.seqs[1]),
            conv(&self.seqs[2]),
        )
        .expect("grid triples are kept nonincreasing and inside [0, denom]")
    }

    /// Lowers the value at `(which, idx)` to `value` and restores
    /// monotonicity by capping every later entry.
    pub fn lower(&mut self, which: usize, idx: usize, value: i128) {
        let seq = &mut self.seqs[which];
        for v in seq[idx..].iter_mut() {
            if *v > value {
                *v = value;
            }
        }
    }

    /// Largest grid value `v` for the coordinate `which` of the violated
    /// triple such that the form is at most zero with the other two fixed.
    pub fn max_feasible(&self, which: usize, ijk: (usize, usize, usize)) -> i128 {
        let idx = [ijk.0, ijk.1, ijk.2];
        let others: Vec<i128> = (0..3)
            .filter(|&w| w != which)
            .map(|w| self.seqs[w][idx[w]])
            .collect();
        let (y, z) = (others[0], others[1]);
        let d = self.denom;
        // 8(v(y+z) + yz) <= 5d(v + y + z)  <=>  v (8(y+z) - 5d) <= 5d(y+z) - 8yz
        let slope = 8 * (y + z) - 5 * d;
        let rhs = 5 * d * (y + z) - 8 * y * z;
        if slope <= 0 {
            return d;
        }
        rhs.div_euclid(slope).clamp(0, d)
    }

    /// Repairs a grid triple until the pointwise hypothesis holds, lowering
    /// one coordinate of each violated triple. `pick` chooses the coordinate.
    pub fn repair(&mut self, mut pick: impl FnMut() -> usize) {
        while let Some(ijk) = self.first_violation() {
            let which = pick() % 3;
            let idx = [ijk.0, ijk.1, ijk.2][which];
            let target = self.max_feasible(which, ijk);
            let current = self.seqs[which][idx];
            // A violated triple has every pairwise sum above 5/8, so the
            // bound is strictly below the current value.
            let value = if target < current {
                target
            } else {
                current - 1
            };
            self.lower(which, idx, value.max(0));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repair_terminates_with_hypothesis() {
        let mut g = GridTriple {
            denom: 8,
            seqs: [vec![8; 6], vec![8; 6], vec![8; 6]],
        };
        assert!(!g.satisfies_hypothesis());
        let mut turn = 0;
        g.repair(|| {
            turn += 1;
            turn
        });
        assert!(g.satisfies_hypothesis());
        for s in &g.seqs {
            assert!(s.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn max_feasible_is_tight() {
        // y = z = 1 forces v <= 2/11, which is 1/8 on this grid.
        let g = GridTriple {
            denom: 8,
            seqs: [vec![8, 8], vec![8, 8], vec![8, 8]],
        };
        assert_eq!(g.max_feasible(0, (1, 1, 1)), 1);
    }

    #[test]
    fn excess_of_equality_point_is_zero() {
        let g = GridTriple {
            denom: 8,
            seqs: [vec![5; 6], vec![5; 6], vec![5; 6]],
        };
        assert_eq!(g.scaled_excess(), 0);
        assert!(g.satisfies_hypothesis());
    }
}

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::ops::h_margin;
use super::unit_function::UnitFunction;
use crate::rational::{q, ExactInt, Rational};
use crate::with_scaled;

/// Units `a, b, c` with `a + b + c = target (mod m)` and their values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessTriple {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    #[serde(serialize_with = "crate::rational::serialize_rationals")]
    pub values: [Rational; 3],
    #[serde(serialize_with = "crate::rational::serialize_rational")]
    pub h_margin: Rational,
    #[serde(serialize_with = "crate::rational::serialize_rational")]
    pub value_sum: Rational,
}

impl WitnessTriple {
    pub fn new(fs: &[UnitFunction; 3], a: u64, b: u64, c: u64) -> Self {
        let values = [
            fs[0].value(a).clone(),
            fs[1].value(b).clone(),
            fs[2].value(c).clone(),
        ];
        let h = h_margin(&values[0], &values[1], &values[2]);
        let value_sum = &values[0] + &values[1] + &values[2];
        WitnessTriple {
            a,
            b,
            c,
            values,
            h_margin: h,
            value_sum,
        }
    }

    pub fn units(&self) -> [u64; 3] {
        [self.a, self.b, self.c]
    }

    fn congruent(&self, fs: &[UnitFunction; 3], target: u64) -> bool {
        let md = fs[0].modulus();
        let m = md.m();
        self.units().iter().all(|&u| u < m && md.is_unit(u))
            && (self.a + self.b + self.c) % m == target % m
    }

    /// Re-evaluates the triple and checks congruence and `h > 0`.
    pub fn verify_h(&self, fs: &[UnitFunction; 3], target: u64) -> bool {
        *self == WitnessTriple::new(fs, self.a, self.b, self.c)
            && self.congruent(fs, target)
            && self.h_margin > Rational::zero()
    }

    /// Re-evaluates the triple and checks congruence, positive values and
    /// value sum above 3/2.
    pub fn verify_sum_product(&self, fs: &[UnitFunction; 3], target: u64) -> bool {
        *self == WitnessTriple::new(fs, self.a, self.b, self.c)
            && self.congruent(fs, target)
            && self.values.iter().all(|v| *v > Rational::zero())
            && self.value_sum > q(3, 2)
    }
}

/// What an exhaustive scan looks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanCriterion {
    /// `h > 0`, maximising `h`.
    PositiveH,
    /// All values positive and sum above 3/2, maximising the sum.
    SumProduct,
}

/// Exhaustive scan over unit pairs `(a, b)` with `c = target - a - b`.
///
/// Returns the triple maximising the criterion's objective, ties broken by
/// the lexicographically smallest `(a, b, c)`.
pub fn scan_witness(
    fs: &[UnitFunction; 3],
    target: u64,
    criterion: ScanCriterion,
) -> Option<WitnessTriple> {
    let md = fs[0].modulus();
    let m = md.m();
    let units = md.units();
    let is_unit: Vec<bool> = (0..m).map(|x| md.is_unit(x)).collect();
    let hit = with_scaled!(&[fs[0].dense(), fs[1].dense(), fs[2].dense()], |s| {
        scan_kernel(
            &s.denom,
            &s.groups,
            &units,
            &is_unit,
            m,
            target % m,
            criterion,
        )
    });
    hit.map(|(a, b, c)| WitnessTriple::new(fs, a, b, c))
}

fn scan_kernel<T: ExactInt>(
    d: &T,
    g: &[Vec<T>],
    units: &[u64],
    is_unit: &[bool],
    m: u64,
    target: u64,
    criterion: ScanCriterion,
) -> Option<(u64, u64, u64)> {
    let eight = T::from_u8(8).unwrap();
    let five_d = T::from_u8(5).unwrap() * d.clone();
    let three_d = T::from_u8(3).unwrap() * d.clone();
    let two = T::from_u8(2).unwrap();
    let zero = T::zero();
    let best_for_a = |&a: &u64| -> Option<(T, u64, u64, u64)> {
        let x = &g[0][a as usize];
        let mut best: Option<(T, u64, u64, u64)> = None;
        for &b in units {
            let c = (target + 2 * m - a - b) % m;
            if !is_unit[c as usize] {
                continue;
            }
            let (y, z) = (&g[1][b as usize], &g[2][c as usize]);
            let key = match criterion {
                ScanCriterion::PositiveH => {
                    let form =
                        x.clone() * y.clone() + y.clone() * z.clone() + z.clone() * x.clone();
                    let k =
                        eight.clone() * form - five_d.clone() * (x.clone() + y.clone() + z.clone());
                    if k <= zero {
                        continue;
                    }
                    k
                }
                ScanCriterion::SumProduct => {
                    if *x <= zero || *y <= zero || *z <= zero {
                        continue;
                    }
                    let s = x.clone() + y.clone() + z.clone();
                    if two.clone() * s.clone() <= three_d {
                        continue;
                    }
                    s
                }
            };
            if best.as_ref().is_none_or(|bk| key > bk.0) {
                best = Some((key, a, b, c));
            }
        }
        best
    };
    let better = |l: Option<(T, u64, u64, u64)>, r: Option<(T, u64, u64, u64)>| match (l, r) {
        (Some(l), Some(r)) => {
            if r.0 > l.0 || (r.0 == l.0 && (r.1, r.2) < (l.1, l.2)) {
                Some(r)
            } else {
                Some(l)
            }
        }
        (l, r) => l.or(r),
    };
    let best = if units.len() >= 64 {
        units.par_iter().map(best_for_a).reduce(|| None, better)
    } else {
        units.iter().map(best_for_a).fold(None, better)
    };
    best.map(|(_, a, b, c)| (a, b, c))
}

use serde::Serialize;

use super::unit_function::UnitFunction;
use crate::error::{Error, Result};
use crate::modular_sumsets::ResidueSet;
use crate::rational::{five_eighths, fmt_rational, q, Rational};

/// `xy + yz + zx - 5/8 (x + y + z)`.
pub fn h_margin(x: &Rational, y: &Rational, z: &Rational) -> Rational {
    x * y + y * z + z * x - five_eighths() * (x + y + z)
}

/// Values sorted nonincreasingly, paired with their units. Ties keep
/// ascending unit order.
pub fn decreasing_rearrangement(f: &UnitFunction) -> Vec<(u64, Rational)> {
    let mut v: Vec<(u64, Rational)> = f
        .units()
        .into_iter()
        .map(|u| (u, f.value(u).clone()))
        .collect();
    v.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    v
}

/// Units where `f >= threshold`.
pub fn level_set(f: &UnitFunction, threshold: &Rational) -> ResidueSet {
    ResidueSet::from_residues(
        f.m(),
        f.units().into_iter().filter(|&u| f.value(u) >= threshold),
    )
    .expect("modulus >= 1")
}

/// `0 < delta < 5/32` and `0 < eta < 2 delta / 5`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdParams {
    #[serde(serialize_with = "crate::rational::serialize_rational")]
    delta: Rational,
    #[serde(serialize_with = "crate::rational::serialize_rational")]
    eta: Rational,
}

impl ThresholdParams {
    pub fn new(delta: Rational, eta: Rational) -> Result<Self> {
        let zero = Rational::from_integer(0.into());
        if delta <= zero || delta >= q(5, 32) {
            return Err(Error::Precondition(format!(
                "delta = {} must lie in (0, 5/32)",
                fmt_rational(&delta)
            )));
        }
        if eta <= zero || eta >= q(2, 5) * &delta {
            return Err(Error::Precondition(format!(
                "eta = {} must lie in (0, 2*delta/5) = (0, {})",
                fmt_rational(&eta),
                fmt_rational(&(q(2, 5) * &delta))
            )));
        }
        Ok(ThresholdParams { delta, eta })
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    pub fn eta(&self) -> &Rational {
        &self.eta
    }

    /// Strict lower bounds for the three means.
    pub fn mean_bounds(&self) -> [Rational; 3] {
        let low = five_eighths() - &self.eta;
        [five_eighths() + &self.delta, low.clone(), low]
    }

    /// Checks `mean(f1) > 5/8 + delta` and `mean(f2), mean(f3) > 5/8 - eta`.
    pub fn check_means(&self, fs: &[UnitFunction; 3]) -> Result<()> {
        let m = fs[0].m();
        for f in &fs[1..] {
            if f.m() != m {
                return Err(Error::ModulusMismatch {
                    left: m,
                    right: f.m(),
                });
            }
        }
        for (i, (f, bound)) in fs.iter().zip(self.mean_bounds()).enumerate() {
            let mean = f.mean();
            if mean <= bound {
                return Err(Error::Precondition(format!(
                    "mean of f{} is {}, must exceed {}",
                    i + 1,
                    fmt_rational(&mean),
                    fmt_rational(&bound)
                )));
            }
        }
        Ok(())
    }
}

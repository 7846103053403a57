use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::modular_sumsets::{CrtCoordinates, Modulus, ResidueSet};
use crate::rational::{fmt_rational, q, Rational};

/// A function `Z_m^* -> [0, 1]` with exact rational values.
///
/// Values are stored densely over `Z_m`; entries at non-units are zero and
/// never read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitFunction {
    modulus: Modulus,
    values: Vec<Rational>,
    sum: Rational,
}

impl UnitFunction {
    /// Builds a function from `(unit, value)` pairs; units not listed are 0.
    pub fn from_pairs<I>(md: &Modulus, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, Rational)>,
    {
        let mut values = vec![Rational::zero(); md.m() as usize];
        let mut seen = vec![false; md.m() as usize];
        for (u, v) in pairs {
            if u >= md.m() || !md.is_unit(u) {
                return Err(Error::Precondition(format!(
                    "{u} is not a unit mod {}",
                    md.m()
                )));
            }
            if std::mem::replace(&mut seen[u as usize], true) {
                return Err(Error::Precondition(format!("unit {u} given twice")));
            }
            values[u as usize] = v;
        }
        Self::from_dense(md, values)
    }

    /// Builds a function from a length-`m` vector. Non-unit entries are
    /// discarded.
    pub fn from_dense(md: &Modulus, mut values: Vec<Rational>) -> Result<Self> {
        if values.len() as u64 != md.m() {
            return Err(Error::Precondition(format!(
                "expected {} values, got {}",
                md.m(),
                values.len()
            )));
        }
        let mut sum = Rational::zero();
        for (x, v) in values.iter_mut().enumerate() {
            if !md.is_unit(x as u64) {
                *v = Rational::zero();
                continue;
            }
            if *v < Rational::zero() || *v > Rational::one() {
                return Err(Error::Precondition(format!(
                    "value {} at unit {x} lies outside [0,1]",
                    fmt_rational(v)
                )));
            }
            sum += &*v;
        }
        Ok(UnitFunction {
            modulus: md.clone(),
            values,
            sum,
        })
    }

    pub fn constant(md: &Modulus, c: Rational) -> Result<Self> {
        Self::from_dense(md, vec![c; md.m() as usize])
    }

    pub fn indicator(md: &Modulus, s: &ResidueSet) -> Result<Self> {
        if s.modulus() != md.m() {
            return Err(Error::ModulusMismatch {
                left: s.modulus(),
                right: md.m(),
            });
        }
        let values = s
            .members()
            .iter()
            .map(|&b| if b { Rational::one() } else { Rational::zero() });
        Self::from_dense(md, values.collect())
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn m(&self) -> u64 {
        self.modulus.m()
    }

    /// Value at `x mod m`; zero at non-units.
    pub fn value(&self, x: u64) -> &Rational {
        &self.values[(x % self.m()) as usize]
    }

    /// Dense values over `Z_m`.
    pub fn dense(&self) -> &[Rational] {
        &self.values
    }

    pub fn sum(&self) -> &Rational {
        &self.sum
    }

    pub fn mean(&self) -> Rational {
        &self.sum / Rational::from_integer(self.modulus.phi().into())
    }

    pub fn units(&self) -> Vec<u64> {
        self.modulus.units()
    }

    /// The function `x -> f(x mod m)` on `Z_big` for a multiple `big` of `m`.
    /// Units of `Z_big` cover units of `Z_m` evenly, so the mean is unchanged.
    pub fn pull_back(&self, big: &Modulus) -> Result<Self> {
        if !big.m().is_multiple_of(self.m()) {
            return Err(Error::Precondition(format!(
                "{} does not divide {}",
                self.m(),
                big.m()
            )));
        }
        let values = (0..big.m()).map(|x| self.value(x).clone()).collect();
        Self::from_dense(big, values)
    }

    /// The fiber `y -> f(join(u, y))` on `Z_right` over a fixed left
    /// coordinate `u`.
    pub fn fiber(&self, crt: &CrtCoordinates, u: u64) -> Result<Self> {
        if crt.modulus() != self.m() {
            return Err(Error::ModulusMismatch {
                left: crt.modulus(),
                right: self.m(),
            });
        }
        let md = Modulus::relaxed(crt.right())?;
        let values = (0..crt.right())
            .map(|y| self.value(crt.join(u, y)).clone())
            .collect();
        Self::from_dense(&md, values)
    }

    /// Averages over the `Z_q^*` coordinate: a function on `Z_{m/q}`.
    pub fn marginalize(&self, q_factor: u64) -> Result<Self> {
        let crt = CrtCoordinates::peel(self.m(), q_factor)?;
        let left = Modulus::relaxed(crt.left())?;
        let right = Modulus::relaxed(crt.right())?;
        let fiber_units = right.units();
        let scale = q(1, right.phi() as i64);
        let values = (0..crt.left())
            .map(|x| {
                if !left.is_unit(x) {
                    return Rational::zero();
                }
                let s: Rational = fiber_units
                    .iter()
                    .map(|&y| self.value(crt.join(x, y)))
                    .sum();
                s * &scale
            })
            .collect();
        Self::from_dense(&left, values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular_sumsets::analyze_modulus;

    #[test]
    fn mean_and_sum() {
        let md = analyze_modulus(15).unwrap();
        let s = ResidueSet::from_residues(15, [1, 4, 7, 11, 13]).unwrap();
        let f = UnitFunction::indicator(&md, &s).unwrap();
        assert_eq!(f.sum(), &q(5, 1));
        assert_eq!(f.mean(), q(5, 8));
    }

    #[test]
    fn rejects_bad_values() {
        let md = analyze_modulus(7).unwrap();
        assert!(UnitFunction::constant(&md, q(9, 8)).is_err());
        assert!(UnitFunction::from_pairs(&md, [(0, q(1, 2))]).is_err());
        assert!(UnitFunction::from_pairs(&md, [(1, q(1, 2)), (1, q(1, 3))]).is_err());
    }

    #[test]
    fn marginalize_examples() {
        let md = analyze_modulus(15).unwrap();
        let s = ResidueSet::from_residues(15, (0..15).filter(|x| x % 3 == 1)).unwrap();
        let f = UnitFunction::indicator(&md, &s).unwrap();
        let g = f.marginalize(5).unwrap();
        assert_eq!(g.m(), 3);
        assert_eq!(g.value(1), &q(1, 1));
        assert_eq!(g.value(2), &q(0, 1));
        assert_eq!(g.mean(), f.mean());

        let c = UnitFunction::constant(&md, q(3, 7)).unwrap();
        assert_eq!(
            c.marginalize(3).unwrap(),
            UnitFunction::constant(&analyze_modulus(5).unwrap(), q(3, 7)).unwrap()
        );
        assert_eq!(c.marginalize(15).unwrap().value(0), &q(3, 7));
        assert!(c.marginalize(7).is_err());
    }

    #[test]
    fn pull_back_keeps_mean() {
        let md = analyze_modulus(7).unwrap();
        let f = UnitFunction::from_pairs(&md, [(1, q(1, 1)), (3, q(1, 2))]).unwrap();
        let g = f.pull_back(&analyze_modulus(105).unwrap()).unwrap();
        assert_eq!(g.mean(), f.mean());
        assert_eq!(g.value(8), &q(1, 1));
    }
}

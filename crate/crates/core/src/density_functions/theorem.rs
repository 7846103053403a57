use num_traits::Zero;
use serde::Serialize;

use super::lemma31::{Lemma31Solver, SolveMode};
use super::ops::ThresholdParams;
use super::unit_function::UnitFunction;
use super::witness::{scan_witness, ScanCriterion, WitnessTriple};
use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::modular_sumsets::{CrtCoordinates, Modulus};
use crate::rational::{fmt_rational, int, Rational};

/// Sums `F_i` over the 8 units of `Z_15` and whether
/// `F1 F2 + F2 F3 + F3 F1 > 5 (F1 + F2 + F3)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SumHypothesis {
    #[serde(serialize_with = "crate::rational::serialize_rationals")]
    pub sums: [Rational; 3],
    #[serde(serialize_with = "crate::rational::serialize_rational")]
    pub lhs: Rational,
    #[serde(serialize_with = "crate::rational::serialize_rational")]
    pub rhs: Rational,
    pub holds: bool,
}

pub fn lemma_3_2_hypothesis(fs: &[UnitFunction; 3]) -> SumHypothesis {
    let sums = [
        fs[0].sum().clone(),
        fs[1].sum().clone(),
        fs[2].sum().clone(),
    ];
    let lhs = &sums[0] * &sums[1] + &sums[1] * &sums[2] + &sums[2] * &sums[0];
    let rhs = int(5) * (&sums[0] + &sums[1] + &sums[2]);
    SumHypothesis {
        holds: lhs > rhs,
        sums,
        lhs,
        rhs,
    }
}

/// Finds units `b1 + b2 + b3 = target (mod 15)` with all values positive
/// and value sum above 3/2.
///
/// The search is exhaustive; among valid triples the largest value sum is
/// returned, ties broken lexicographically.
pub fn verify_lemma_3_2(fs: &[UnitFunction; 3], target: u64) -> Result<WitnessTriple> {
    if fs.iter().any(|f| f.m() != 15) {
        return Err(Error::Precondition(
            "functions must live on the units of Z_15".into(),
        ));
    }
    let hyp = lemma_3_2_hypothesis(fs);
    if !hyp.holds {
        return Err(Error::Precondition(format!(
            "F = ({}, {}, {}): F1F2+F2F3+F3F1 = {} is not > 5(F1+F2+F3) = {}",
            fmt_rational(&hyp.sums[0]),
            fmt_rational(&hyp.sums[1]),
            fmt_rational(&hyp.sums[2]),
            fmt_rational(&hyp.lhs),
            fmt_rational(&hyp.rhs)
        )));
    }
    scan_witness(fs, target, ScanCriterion::SumProduct).ok_or_else(|| {
        Error::Certificate(format!(
            "no unit triple with positive values and sum > 3/2 reaches {target} mod 15"
        ))
    })
}

/// How a constructive witness was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremRoute {
    /// Exhaustive scan on `Z_m`.
    Brute,
    /// `m` coprime to 30: the recursive lemma directly.
    Coprime,
    /// `15 | m`: recursion on `Z_{m/15}` and the mod-15 lemma on the fibers.
    Fifteen,
    /// Exactly one of 3, 5 divides `m`: solved on `Z_{lcm(m,15)}` for the
    /// pulled-back functions and reduced.
    Lifted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremWitness {
    #[serde(flatten)]
    pub witness: WitnessTriple,
    pub route: TheoremRoute,
}

/// Finds units `a + b + c = target (mod m)` with all values positive and
/// value sum above 3/2, for square-free odd `m` and means above the
/// thresholds.
pub fn verify_theorem_1_3(
    md: &Modulus,
    fs: &[UnitFunction; 3],
    params: &ThresholdParams,
    target: u64,
    mode: SolveMode,
) -> Result<TheoremWitness> {
    TheoremSolver::new(md, fs.clone(), params, mode)?.solve(target)
}

enum Plan {
    Brute([UnitFunction; 3]),
    Coprime(Lemma31Solver),
    Fifteen {
        crt: CrtCoordinates,
        outer: Lemma31Solver,
        fs: [UnitFunction; 3],
    },
}

/// Precomputed solver for many targets with one triple of functions.
pub struct TheoremSolver {
    m: u64,
    fs: [UnitFunction; 3],
    plan: Plan,
    lifted: bool,
}

impl TheoremSolver {
    pub fn new(
        md: &Modulus,
        fs: [UnitFunction; 3],
        params: &ThresholdParams,
        mode: SolveMode,
    ) -> Result<Self> {
        if !md.is_odd() {
            return Err(Error::EvenModulus { m: md.m() });
        }
        if fs.iter().any(|f| f.m() != md.m()) {
            return Err(Error::ModulusMismatch {
                left: fs[0].m(),
                right: md.m(),
            });
        }
        params.check_means(&fs)?;
        let m = md.m();
        if mode == SolveMode::Brute {
            return Ok(TheoremSolver {
                m,
                plan: Plan::Brute(fs.clone()),
                fs,
                lifted: false,
            });
        }
        if gcd(m, 30) == 1 {
            let solver = Lemma31Solver::new(md, fs.clone(), params, false)?;
            return Ok(TheoremSolver {
                m,
                fs,
                plan: Plan::Coprime(solver),
                lifted: false,
            });
        }
        let lifted = !m.is_multiple_of(15);
        let big = Modulus::relaxed(m * 15 / gcd(m, 15))?;
        let work: [UnitFunction; 3] = if lifted {
            [
                fs[0].pull_back(&big)?,
                fs[1].pull_back(&big)?,
                fs[2].pull_back(&big)?,
            ]
        } else {
            fs.clone()
        };
        let crt = CrtCoordinates::new(big.m() / 15, 15)?;
        let outer_md = Modulus::relaxed(crt.left())?;
        let outer_fs = [
            work[0].marginalize(15)?,
            work[1].marginalize(15)?,
            work[2].marginalize(15)?,
        ];
        let outer = Lemma31Solver::new(&outer_md, outer_fs, params, false)?;
        Ok(TheoremSolver {
            m,
            fs,
            plan: Plan::Fifteen {
                crt,
                outer,
                fs: work,
            },
            lifted,
        })
    }

    pub fn solve(&self, target: u64) -> Result<TheoremWitness> {
        let target = target % self.m;
        let (units, route) = match &self.plan {
            Plan::Brute(fs) => {
                let w = scan_witness(fs, target, ScanCriterion::SumProduct).ok_or_else(|| {
                    Error::Certificate(format!("no valid triple reaches {target} mod {}", self.m))
                })?;
                return Ok(TheoremWitness {
                    witness: w,
                    route: TheoremRoute::Brute,
                });
            }
            Plan::Coprime(solver) => {
                let w = solver.solve(target)?;
                if w.h_margin <= Rational::zero() {
                    return Err(Error::Certificate("lemma witness has h <= 0".into()));
                }
                (w.units(), TheoremRoute::Coprime)
            }
            Plan::Fifteen { crt, outer, fs } => {
                let (u, v) = crt.split(target);
                let a = outer.solve(u)?;
                let sharp = [
                    fs[0].fiber(crt, a.a)?,
                    fs[1].fiber(crt, a.b)?,
                    fs[2].fiber(crt, a.c)?,
                ];
                let inner = verify_lemma_3_2(&sharp, v).map_err(|e| match e {
                    Error::Precondition(msg) => Error::Certificate(format!(
                        "fiber functions miss the mod-15 hypothesis: {msg}"
                    )),
                    other => other,
                })?;
                let joined = [
                    crt.join(a.a, inner.a),
                    crt.join(a.b, inner.b),
                    crt.join(a.c, inner.c),
                ];
                let route = if self.lifted {
                    TheoremRoute::Lifted
                } else {
                    TheoremRoute::Fifteen
                };
                (joined.map(|x| x % self.m), route)
            }
        };
        let witness = WitnessTriple::new(&self.fs, units[0], units[1], units[2]);
        if !witness.verify_sum_product(&self.fs, target) {
            return Err(Error::Certificate(format!(
                "constructed triple {units:?} fails re-verification"
            )));
        }
        Ok(TheoremWitness { witness, route })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular_sumsets::{analyze_modulus, ResidueSet};
    use crate::rational::q;

    fn constant15(c: Rational) -> UnitFunction {
        UnitFunction::constant(&analyze_modulus(15).unwrap(), c).unwrap()
    }

    #[test]
    fn lemma_3_2_examples() {
        let one = constant15(q(1, 1));
        let fs = [one.clone(), one.clone(), one.clone()];
        let h = lemma_3_2_hypothesis(&fs);
        assert_eq!((h.lhs.clone(), h.rhs.clone()), (int(192), int(120)));
        for v in 0..15 {
            assert!(verify_lemma_3_2(&fs, v).unwrap().verify_sum_product(&fs, v));
        }

        let s = ResidueSet::from_residues(15, [1, 4, 7, 11, 13]).unwrap();
        let ind = UnitFunction::indicator(&analyze_modulus(15).unwrap(), &s).unwrap();
        let err = verify_lemma_3_2(&[ind.clone(), ind.clone(), ind], 2).unwrap_err();
        assert!(
            err.to_string().contains("75 is not > 5(F1+F2+F3) = 75"),
            "{err}"
        );

        let seven = constant15(q(7, 8));
        let fs = [one, seven.clone(), seven];
        let h = lemma_3_2_hypothesis(&fs);
        assert_eq!((h.lhs, h.rhs), (int(161), int(110)));
        assert_eq!(verify_lemma_3_2(&fs, 0).unwrap().value_sum, q(11, 4));
    }

    #[test]
    fn theorem_on_fifteen() {
        let md = analyze_modulus(15).unwrap();
        let one = constant15(q(1, 1));
        let fs = [one.clone(), one.clone(), one];
        let params = ThresholdParams::new(q(1, 10), q(1, 100)).unwrap();
        for mode in [SolveMode::Brute, SolveMode::Constructive] {
            let w = verify_theorem_1_3(&md, &fs, &params, 2, mode).unwrap();
            assert_eq!(w.witness.value_sum, int(3));
            assert_eq!((w.witness.a + w.witness.b + w.witness.c) % 15, 2);
        }
    }

    #[test]
    fn routes() {
        let params = ThresholdParams::new(q(1, 10), q(1, 100)).unwrap();
        for (m, route) in [
            (7, TheoremRoute::Coprime),
            (105, TheoremRoute::Fifteen),
            (21, TheoremRoute::Lifted),
            (35, TheoremRoute::Lifted),
        ] {
            let md = analyze_modulus(m).unwrap();
            let c = UnitFunction::constant(&md, q(3, 4)).unwrap();
            let fs = [c.clone(), c.clone(), c];
            let solver = TheoremSolver::new(&md, fs, &params, SolveMode::Constructive).unwrap();
            for t in 0..m {
                assert_eq!(solver.solve(t).unwrap().route, route);
            }
        }
    }
}

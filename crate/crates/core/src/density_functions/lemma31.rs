use num_traits::Zero;
use serde::Serialize;

use super::ops::{decreasing_rearrangement, level_set, ThresholdParams};
use super::unit_function::UnitFunction;
use super::witness::{scan_witness, ScanCriterion, WitnessTriple};
use crate::error::{Error, Result};
use crate::modular_sumsets::{cauchy_davenport_check, CrtCoordinates, Modulus};
use crate::rational::{fmt_rational, Rational};
use crate::seq_inequality::{check_pointwise_hypothesis, TripleSequences};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveMode {
    Brute,
    Constructive,
}

/// Smallest prime factor allowed in the constructive recursion, and the
/// stricter alternative.
pub const BASE_PRIME: u64 = 7;
pub const STRICT_BASE_PRIME: u64 = 11;

/// Finds units `a + b + c = target` with `h(f1(a), f2(b), f3(c)) > 0`, for
/// `m` square-free, coprime to 30, and means above the thresholds.
pub fn verify_lemma_3_1(
    md: &Modulus,
    fs: &[UnitFunction; 3],
    params: &ThresholdParams,
    target: u64,
    mode: SolveMode,
) -> Result<WitnessTriple> {
    match mode {
        SolveMode::Brute => {
            check_lemma_3_1_preconditions(md, fs, params, BASE_PRIME)?;
            brute_lemma_3_1(fs, target)
        }
        SolveMode::Constructive => Lemma31Solver::new(md, fs.clone(), params, false)?.solve(target),
    }
}

fn check_lemma_3_1_preconditions(
    md: &Modulus,
    fs: &[UnitFunction; 3],
    params: &ThresholdParams,
    min_prime: u64,
) -> Result<()> {
    if !md.is_odd() {
        return Err(Error::EvenModulus { m: md.m() });
    }
    if let Some(&p) = md.prime_factors().iter().find(|&&p| p < min_prime) {
        return Err(Error::Precondition(format!(
            "modulus {} has prime factor {p} below {min_prime}",
            md.m()
        )));
    }
    if fs.iter().any(|f| f.m() != md.m()) {
        return Err(Error::ModulusMismatch {
            left: fs[0].m(),
            right: md.m(),
        });
    }
    params.check_means(fs)
}

fn brute_lemma_3_1(fs: &[UnitFunction; 3], target: u64) -> Result<WitnessTriple> {
    scan_witness(fs, target, ScanCriterion::PositiveH).ok_or_else(|| {
        Error::Certificate(format!(
            "no h-positive triple sums to {target} mod {}",
            fs[0].m()
        ))
    })
}

struct Level {
    /// Splits this level's modulus as `(next level) x p`.
    crt: CrtCoordinates,
    fs: [UnitFunction; 3],
}

/// The constructive proof of the lemma with marginals precomputed, so many
/// targets can be solved for one triple of functions.
///
/// The recursion peels the largest prime `p` first: witnesses over
/// `Z_{m/p}` for the averaged functions are lifted through the fibers over
/// them, using the first strictly violated triple of the three-sequence
/// inequality and the Cauchy-Davenport bound on the level sets.
pub struct Lemma31Solver {
    levels: Vec<Level>,
    base: [UnitFunction; 3],
}

impl Lemma31Solver {
    /// `strict_base` raises the smallest allowed prime factor from 7 to 11.
    pub fn new(
        md: &Modulus,
        fs: [UnitFunction; 3],
        params: &ThresholdParams,
        strict_base: bool,
    ) -> Result<Self> {
        let min_prime = if strict_base {
            STRICT_BASE_PRIME
        } else {
            BASE_PRIME
        };
        check_lemma_3_1_preconditions(md, &fs, params, min_prime)?;
        let mut levels = Vec::new();
        let mut current = fs;
        let mut modulus = md.clone();
        while let Some(p) = modulus.largest_prime() {
            let crt = CrtCoordinates::peel(modulus.m(), p)?;
            let next = [
                current[0].marginalize(p)?,
                current[1].marginalize(p)?,
                current[2].marginalize(p)?,
            ];
            modulus = modulus.without(p)?;
            levels.push(Level { crt, fs: current });
            current = next;
        }
        Ok(Lemma31Solver {
            levels,
            base: current,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.levels.first().map_or(1, |l| l.crt.modulus())
    }

    /// Primes in peeling order.
    pub fn peeled_primes(&self) -> Vec<u64> {
        self.levels.iter().map(|l| l.crt.right()).collect()
    }

    pub fn solve(&self, target: u64) -> Result<WitnessTriple> {
        let m = self.modulus();
        let target = target % m;
        // targets at each level, top down
        let mut targets = Vec::with_capacity(self.levels.len());
        let mut t = target;
        for level in &self.levels {
            targets.push(t);
            t %= level.crt.left();
        }

        let base = WitnessTriple::new(&self.base, 0, 0, 0);
        if base.h_margin <= Rational::zero() {
            return Err(Error::Certificate(format!(
                "averaged values {:?} give h = {} <= 0",
                base.values.iter().map(fmt_rational).collect::<Vec<_>>(),
                fmt_rational(&base.h_margin)
            )));
        }
        let mut w = base.units();
        for (level, &t) in self.levels.iter().zip(&targets).rev() {
            w = lift(level, w, t)?;
        }
        let fs = self.levels.first().map_or(&self.base, |l| &l.fs);
        let witness = WitnessTriple::new(fs, w[0], w[1], w[2]);
        if !witness.verify_h(fs, target) {
            return Err(Error::Certificate(format!(
                "lifted triple {:?} fails re-verification",
                witness.units()
            )));
        }
        Ok(witness)
    }
}

/// Lifts a witness `w` over `Z_{m/p}` to one over `Z_m` summing to `target`.
fn lift(level: &Level, w: [u64; 3], target: u64) -> Result<[u64; 3]> {
    let crt = &level.crt;
    let p = crt.right();
    let fibers = [
        level.fs[0].fiber(crt, w[0])?,
        level.fs[1].fiber(crt, w[1])?,
        level.fs[2].fiber(crt, w[2])?,
    ];
    let sorted: Vec<Vec<Rational>> = fibers
        .iter()
        .map(|f| {
            decreasing_rearrangement(f)
                .into_iter()
                .map(|(_, v)| v)
                .collect()
        })
        .collect();
    let seqs = TripleSequences::new(sorted[0].clone(), sorted[1].clone(), sorted[2].clone())?;
    let violation = check_pointwise_hypothesis(&seqs)
        .first_violation
        .ok_or_else(|| {
            Error::Certificate(format!(
                "fiber sequences over {:?} mod {p} have no strictly violated triple",
                w
            ))
        })?;
    let (i, j, k) = (violation.i, violation.j, violation.k);
    let sets = [
        level_set(&fibers[0], &sorted[0][i]),
        level_set(&fibers[1], &sorted[1][j]),
        level_set(&fibers[2], &sorted[2][k]),
    ];
    let total: usize = sets.iter().map(|s| s.len()).sum();
    if total < p as usize + 2 {
        return Err(Error::Certificate(format!(
            "level sets at ({i},{j},{k}) have total size {total} < p + 2 = {}",
            p + 2
        )));
    }
    let cd = cauchy_davenport_check(p, &sets[0], &sets[1], &sets[2])?;
    if !cd.holds || cd.actual != p {
        return Err(Error::Certificate(format!(
            "level sets do not cover Z_{p}: {cd:?}"
        )));
    }
    let t = target % p;
    for u in sets[0].iter() {
        for v in sets[1].iter() {
            let r = (t + 2 * p - u - v) % p;
            if sets[2].contains(r) {
                return Ok([crt.join(w[0], u), crt.join(w[1], v), crt.join(w[2], r)]);
            }
        }
    }
    Err(Error::Certificate(format!(
        "no level-set triple sums to {t} mod {p}"
    )))
}

/// The averaged value at the base of the recursion, for diagnostics.
pub fn averaged_h(fs: &[UnitFunction; 3]) -> Rational {
    let [a, b, c] = [fs[0].mean(), fs[1].mean(), fs[2].mean()];
    super::ops::h_margin(&a, &b, &c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular_sumsets::analyze_modulus;
    use crate::rational::q;

    fn params() -> ThresholdParams {
        ThresholdParams::new(q(3, 20), q(1, 20)).unwrap()
    }

    #[test]
    fn constant_functions_mod_seven() {
        let md = analyze_modulus(7).unwrap();
        let f1 = UnitFunction::constant(&md, q(4, 5)).unwrap();
        let f2 = UnitFunction::constant(&md, q(3, 5)).unwrap();
        let fs = [f1, f2.clone(), f2];
        for mode in [SolveMode::Brute, SolveMode::Constructive] {
            let w = verify_lemma_3_1(&md, &fs, &params(), 0, mode).unwrap();
            assert_eq!(w.h_margin, q(7, 100));
            assert!(w.verify_h(&fs, 0));
        }
    }

    #[test]
    fn all_ones_mod_seven() {
        let md = analyze_modulus(7).unwrap();
        let one = UnitFunction::constant(&md, q(1, 1)).unwrap();
        let fs = [one.clone(), one.clone(), one];
        let w = verify_lemma_3_1(&md, &fs, &params(), 3, SolveMode::Constructive).unwrap();
        assert_eq!(w.h_margin, q(9, 8));
        assert_eq!((w.a + w.b + w.c) % 7, 3);
    }

    #[test]
    fn preconditions() {
        let md = analyze_modulus(15).unwrap();
        let one = UnitFunction::constant(&md, q(1, 1)).unwrap();
        let fs = [one.clone(), one.clone(), one];
        assert!(verify_lemma_3_1(&md, &fs, &params(), 0, SolveMode::Brute).is_err());

        let md7 = analyze_modulus(7).unwrap();
        let one = UnitFunction::constant(&md7, q(1, 1)).unwrap();
        let fs = [one.clone(), one.clone(), one];
        assert!(Lemma31Solver::new(&md7, fs.clone(), &params(), true).is_err());
        let md11 = analyze_modulus(11).unwrap();
        let one = UnitFunction::constant(&md11, q(1, 1)).unwrap();
        assert!(
            Lemma31Solver::new(&md11, [one.clone(), one.clone(), one], &params(), true).is_ok()
        );
    }

    #[test]
    fn solver_peels_largest_first() {
        let md = analyze_modulus(77).unwrap();
        let one = UnitFunction::constant(&md, q(1, 1)).unwrap();
        let solver =
            Lemma31Solver::new(&md, [one.clone(), one.clone(), one], &params(), false).unwrap();
        assert_eq!(solver.peeled_primes(), vec![11, 7]);
        for t in 0..77 {
            assert!(solver.solve(t).is_ok());
        }
    }
}

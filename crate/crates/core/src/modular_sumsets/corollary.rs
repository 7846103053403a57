use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::modulus::{analyze_modulus, Modulus};
use super::residue_set::ResidueSet;
use super::sumset::{mask, sumset3};
use crate::error::{Error, Result};
use crate::rational::{q, Rational};

/// Largest totient for which [`CorollaryMode::Exhaustive`] runs.
pub const EXHAUSTIVE_PHI_CAP: u64 = 10;

/// Smallest admissible cardinalities: `|A1| * 8 > 5 phi` and
/// `|A2|, |A3| * 8 >= 5 phi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CardinalityThresholds {
    pub first: usize,
    pub rest: usize,
}

impl CardinalityThresholds {
    pub fn for_phi(phi: u64) -> Self {
        let phi = phi as usize;
        CardinalityThresholds {
            first: 5 * phi / 8 + 1,
            rest: (5 * phi).div_ceil(8),
        }
    }

    fn check(&self, sets: &[ResidueSet; 3], phi: u64) -> Result<()> {
        if sets[0].len() < self.first {
            return Err(Error::Precondition(format!(
                "|A1| = {} must exceed (5/8)*phi = {}",
                sets[0].len(),
                crate::rational::fmt_rational(
                    &(q(5, 8) * Rational::from_integer((phi as i64).into()))
                )
            )));
        }
        for (i, s) in sets.iter().enumerate().skip(1) {
            if s.len() < self.rest {
                return Err(Error::Precondition(format!(
                    "|A{}| = {} must be at least (5/8)*phi = {}",
                    i + 1,
                    s.len(),
                    crate::rational::fmt_rational(
                        &(q(5, 8) * Rational::from_integer((phi as i64).into()))
                    )
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub enum CorollaryMode {
    /// One triple. With `diagnostic`, coverage is computed even when the
    /// cardinality precondition fails.
    Single {
        sets: [ResidueSet; 3],
        diagnostic: bool,
    },
    /// Every admissible triple of unit subsets; requires `phi <= 10`.
    Exhaustive,
    Random {
        seed: u64,
        trials: u64,
    },
    /// Local search for a minimum-coverage triple at the threshold sizes.
    Adversarial {
        seed: u64,
        budget: u64,
    },
}

impl CorollaryMode {
    pub fn name(&self) -> &'static str {
        match self {
            CorollaryMode::Single { .. } => "single",
            CorollaryMode::Exhaustive => "exhaustive",
            CorollaryMode::Random { .. } => "random",
            CorollaryMode::Adversarial { .. } => "adversarial",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageWitness {
    pub sets: [ResidueSet; 3],
    pub missing: ResidueSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorollaryReport {
    pub mode: &'static str,
    pub modulus: u64,
    pub phi: u64,
    pub thresholds: CardinalityThresholds,
    pub precondition_met: bool,
    pub scanned: u64,
    /// Scanned triples whose sumset misses some residue.
    pub exceptions: u64,
    /// Smallest sumset size seen.
    pub min_coverage: u64,
    /// First exception, or for adversarial mode the worst triple found.
    pub witness: Option<CoverageWitness>,
}

impl CorollaryReport {
    pub fn all_cover(&self) -> bool {
        self.exceptions == 0
    }
}

/// Checks that admissible unit subsets `A1, A2, A3` of `Z_m` satisfy
/// `A1 + A2 + A3 = Z_m`.
pub fn verify_corollary_1_4(md: &Modulus, mode: &CorollaryMode) -> Result<CorollaryReport> {
    if !md.is_odd() {
        return Err(Error::EvenModulus { m: md.m() });
    }
    let th = CardinalityThresholds::for_phi(md.phi());
    let base = CorollaryReport {
        mode: mode.name(),
        modulus: md.m(),
        phi: md.phi(),
        thresholds: th,
        precondition_met: true,
        scanned: 0,
        exceptions: 0,
        min_coverage: md.m(),
        witness: None,
    };
    match mode {
        CorollaryMode::Single { sets, diagnostic } => single(md, sets, *diagnostic, base),
        CorollaryMode::Exhaustive => exhaustive(md, base),
        CorollaryMode::Random { seed, trials } => random(md, *seed, *trials, base),
        CorollaryMode::Adversarial { seed, budget } => adversarial(md, *seed, *budget, base),
    }
}

fn witness(sets: [ResidueSet; 3], sum: &ResidueSet) -> CoverageWitness {
    CoverageWitness {
        sets,
        missing: sum.complement(),
    }
}

fn single(
    md: &Modulus,
    sets: &[ResidueSet; 3],
    diagnostic: bool,
    mut report: CorollaryReport,
) -> Result<CorollaryReport> {
    let units = ResidueSet::units(md);
    for (i, s) in sets.iter().enumerate() {
        if s.modulus() != md.m() {
            return Err(Error::ModulusMismatch {
                left: s.modulus(),
                right: md.m(),
            });
        }
        if !s.is_subset(&units) {
            return Err(Error::Precondition(format!(
                "A{} contains a non-unit",
                i + 1
            )));
        }
    }
    if let Err(e) = report.thresholds.check(sets, md.phi()) {
        if !diagnostic {
            return Err(e);
        }
        report.precondition_met = false;
    }
    let sum = sumset3(&sets[0], &sets[1], &sets[2])?;
    report.scanned = 1;
    report.min_coverage = sum.len() as u64;
    if !sum.is_full() {
        report.exceptions = 1;
        report.witness = Some(witness(sets.clone(), &sum));
    }
    Ok(report)
}

fn exhaustive(md: &Modulus, mut report: CorollaryReport) -> Result<CorollaryReport> {
    if md.phi() > EXHAUSTIVE_PHI_CAP {
        return Err(Error::Capacity(format!(
            "exhaustive mode is capped at phi(m) <= {EXHAUSTIVE_PHI_CAP}, got {}",
            md.phi()
        )));
    }
    let m = md.m();
    let units = md.units();
    let th = report.thresholds;
    let subsets_of_size = |min: usize| -> Vec<u128> {
        (0u32..1 << units.len())
            .filter(|bits| bits.count_ones() as usize >= min)
            .map(|bits| {
                units
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| bits >> i & 1 == 1)
                    .fold(0u128, |acc, (_, &u)| acc | 1 << u)
            })
            .collect()
    };
    let firsts = subsets_of_size(th.first);
    let rests = subsets_of_size(th.rest);
    let full = mask::full(m);

    let per_first: Vec<(u64, u64, u64, Option<[u128; 3]>)> = firsts
        .par_iter()
        .map(|&a| {
            let (mut scanned, mut exceptions, mut min_cov, mut first) = (0u64, 0u64, m, None);
            for &b in &rests {
                let ab = mask::sum2(a, b, m);
                for &c in &rests {
                    scanned += 1;
                    let sum = mask::sum2(ab, c, m);
                    min_cov = min_cov.min(sum.count_ones() as u64);
                    if sum != full {
                        exceptions += 1;
                        first.get_or_insert([a, b, c]);
                    }
                }
            }
            (scanned, exceptions, min_cov, first)
        })
        .collect();

    report.scanned = per_first.iter().map(|r| r.0).sum();
    report.exceptions = per_first.iter().map(|r| r.1).sum();
    report.min_coverage = per_first.iter().map(|r| r.2).min().unwrap_or(m);
    report.witness = per_first.iter().find_map(|r| r.3).map(|masks| {
        let sets = masks.map(|x| ResidueSet::from_mask(m, x));
        let sum = sumset3(&sets[0], &sets[1], &sets[2]).expect("same modulus");
        witness(sets, &sum)
    });
    Ok(report)
}

fn draw_size<R: Rng>(rng: &mut R, min: usize, max: usize) -> usize {
    // half the draws sit on the threshold, where covering is hardest
    if rng.gen_bool(0.5) {
        min
    } else {
        rng.gen_range(min..=max)
    }
}

fn random_subset<R: Rng>(rng: &mut R, m: u64, units: &[u64], size: usize) -> ResidueSet {
    ResidueSet::from_residues(m, units.choose_multiple(rng, size).copied()).expect("m >= 1")
}

fn random(
    md: &Modulus,
    seed: u64,
    trials: u64,
    mut report: CorollaryReport,
) -> Result<CorollaryReport> {
    let m = md.m();
    let units = md.units();
    let th = report.thresholds;
    let phi = units.len();
    let results: Vec<(u64, Option<CoverageWitness>)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t);
            let sizes = [
                draw_size(&mut rng, th.first, phi),
                draw_size(&mut rng, th.rest, phi),
                draw_size(&mut rng, th.rest, phi),
            ];
            let sets = sizes.map(|k| random_subset(&mut rng, m, &units, k));
            let sum = sumset3(&sets[0], &sets[1], &sets[2]).expect("same modulus");
            let cov = sum.len() as u64;
            (cov, (!sum.is_full()).then(|| witness(sets, &sum)))
        })
        .collect();
    report.scanned = trials;
    report.exceptions = results.iter().filter(|r| r.1.is_some()).count() as u64;
    report.min_coverage = results.iter().map(|r| r.0).min().unwrap_or(m);
    report.witness = results.into_iter().find_map(|r| r.1);
    Ok(report)
}

fn adversarial(
    md: &Modulus,
    seed: u64,
    budget: u64,
    mut report: CorollaryReport,
) -> Result<CorollaryReport> {
    let m = md.m();
    let units = md.units();
    let th = report.thresholds;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sizes = [th.first, th.rest, th.rest];
    let mut sets = sizes.map(|k| random_subset(&mut rng, m, &units, k));
    let coverage = |s: &[ResidueSet; 3]| sumset3(&s[0], &s[1], &s[2]).expect("same modulus");
    let mut current = coverage(&sets).len();
    let mut worst = (current, sets.clone());
    report.scanned = 1;

    for _ in 0..budget {
        let i = rng.gen_range(0..3);
        if sets[i].len() == units.len() {
            continue;
        }
        let inside: Vec<u64> = sets[i].to_vec();
        let outside: Vec<u64> = units
            .iter()
            .copied()
            .filter(|&u| !sets[i].contains(u))
            .collect();
        let (drop, add) = (
            *inside.choose(&mut rng).unwrap(),
            *outside.choose(&mut rng).unwrap(),
        );
        let mut candidate = sets.clone();
        candidate[i].remove(drop);
        candidate[i].insert(add);
        let cov = coverage(&candidate).len();
        report.scanned += 1;
        // sideways moves keep the walk from freezing on plateaus
        if cov <= current || rng.gen_bool(0.05) {
            sets = candidate;
            current = cov;
            if cov < worst.0 {
                worst = (cov, sets.clone());
            }
        }
    }
    let sum = coverage(&worst.1);
    report.min_coverage = worst.0 as u64;
    report.exceptions = (!sum.is_full()) as u64;
    report.witness = Some(witness(worst.1, &sum));
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mod15Counterexample {
    pub set: ResidueSet,
    pub missing: ResidueSet,
    /// `|S| / phi(15)`.
    #[serde(serialize_with = "crate::rational::serialize_rational")]
    pub density: Rational,
}

/// The residues `{1, 4, 7, 11, 13}` mod 15: relative density exactly 5/8
/// among the units, yet the triple sumset misses `2`.
pub fn counterexample_mod15() -> Mod15Counterexample {
    let md = analyze_modulus(15).expect("15 is square-free and odd");
    let set = ResidueSet::from_residues(15, [1, 4, 7, 11, 13]).expect("m >= 1");
    let missing = sumset3(&set, &set, &set)
        .expect("same modulus")
        .complement();
    let density = q(set.len() as i64, md.phi() as i64);
    assert!(missing.contains(2));
    assert_eq!(density, q(5, 8));
    Mod15Counterexample {
        set,
        missing,
        density,
    }
}

use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::grid::GridTriple;
use super::hypothesis::{verify_theorem_1_2_instance, InstanceStatus};
use super::sequences::TripleSequences;
use crate::error::{Error, Result};
use crate::pav::project_nonincreasing_box;
use crate::rational::{fmt_rational, to_f64, Rational};

/// Grid on which the searcher moves. A multiple of 8, so the equality
/// point 5/8 is reachable.
pub const SEARCH_GRID_DENOMINATOR: i128 = 5 * 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub n: usize,
    /// Total proposal budget, split evenly over the restarts.
    pub steps: u64,
    pub seed: u64,
    /// Largest single move as a fraction of the unit interval.
    pub step_scale: Rational,
    pub restarts: u32,
}

impl SearchConfig {
    pub fn new(n: usize, steps: u64, seed: u64) -> Self {
        SearchConfig {
            n,
            steps,
            seed,
            step_scale: Rational::new(1.into(), 4.into()),
            restarts: 8,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 || !self.n.is_multiple_of(2) {
            return Err(Error::Precondition(format!(
                "n must be even and >= 2, got {}",
                self.n
            )));
        }
        if self.steps == 0 {
            return Err(Error::Precondition("steps must be at least 1".into()));
        }
        if self.restarts == 0 {
            return Err(Error::Precondition("restarts must be at least 1".into()));
        }
        if self.step_scale <= Rational::zero() || self.step_scale > Rational::one() {
            return Err(Error::Precondition(format!(
                "step_scale must lie in (0, 1], got {}",
                fmt_rational(&self.step_scale)
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// Best hypothesis-satisfying instance found.
    pub best: TripleSequences,
    /// `(AB + BC + CA) - 5/8 (A + B + C)` at `best`; positive means the
    /// average conclusion fails.
    pub best_margin: Rational,
    /// Present only when `best` re-verifies exactly as a counterexample.
    pub counterexample: Option<TripleSequences>,
    /// Restart that produced `best`.
    pub best_restart: u32,
    pub steps_run: u64,
    pub accepted: u64,
}

struct RestartResult {
    best: GridTriple,
    best_excess: i128,
    steps: u64,
    accepted: u64,
}

/// Simulated-annealing search for instances that satisfy the pointwise
/// hypothesis while maximising the average excess.
///
/// Moves perturb one coordinate, project the touched sequence back onto
/// the nonincreasing `[0,1]` cone with pool-adjacent-violators, and snap to
/// the search grid. Proposals leaving the hypothesis region are rejected.
/// Restart `r` is seeded with `seed + r`, so the outcome does not depend on
/// how restarts are scheduled across threads.
pub fn search_counterexample(cfg: &SearchConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    let per_restart = cfg.steps.div_ceil(cfg.restarts as u64);
    let scale = to_f64(&cfg.step_scale);
    let results: Vec<RestartResult> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| run_restart(cfg.n, per_restart, cfg.seed.wrapping_add(r as u64), scale))
        .collect();

    let steps_run = results.iter().map(|r| r.steps).sum();
    let accepted = results.iter().map(|r| r.accepted).sum();
    // first restart wins ties
    let (best_restart, winner) = results
        .iter()
        .enumerate()
        .fold(None::<(usize, &RestartResult)>, |acc, (i, r)| match acc {
            Some((_, b)) if b.best_excess >= r.best_excess => acc,
            _ => Some((i, r)),
        })
        .expect("at least one restart");

    let best = winner.best.to_sequences();
    let verdict = verify_theorem_1_2_instance(&best);
    if verdict.status == InstanceStatus::HypothesisFails {
        return Err(Error::Certificate(
            "search returned an instance outside the hypothesis region".into(),
        ));
    }
    let best_margin = -verdict.conclusion.margin.clone();
    if best_margin != winner.best.excess() {
        return Err(Error::Certificate(
            "grid excess disagrees with exact re-evaluation".into(),
        ));
    }
    let counterexample = (verdict.status == InstanceStatus::Counterexample).then(|| best.clone());
    Ok(SearchOutcome {
        best,
        best_margin,
        counterexample,
        best_restart: best_restart as u32,
        steps_run,
        accepted,
    })
}

fn run_restart(n: usize, steps: u64, seed: u64, step_scale: f64) -> RestartResult {
    let d = SEARCH_GRID_DENOMINATOR;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        let mut v: Vec<i128> = (0..n).map(|_| rng.gen_range(0..=d)).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    };
    let seqs = [draw(&mut rng), draw(&mut rng), draw(&mut rng)];
    let mut state = GridTriple { denom: d, seqs };
    state.repair(|| rng.gen_range(0..3));

    let norm = (8 * (n as i128) * (n as i128) * d * d) as f64;
    let mut current = state.scaled_excess();
    let mut best = state.clone();
    let mut best_excess = current;
    let max_move = (step_scale * d as f64).max(1.0);
    let (t_start, t_end) = (5e-2f64, 1e-6f64);
    let mut accepted = 0u64;

    for step in 0..steps {
        let progress = step as f64 / steps as f64;
        let temperature = t_start * (t_end / t_start).powf(progress);
        let size = (max_move * (1.0 - progress).powi(2)).max(1.0) as i128;

        let which = rng.gen_range(0..3);
        let idx = rng.gen_range(0..n);
        let delta = rng.gen_range(-size..=size);
        if delta == 0 {
            continue;
        }
        let mut values: Vec<f64> = state.seqs[which].iter().map(|&v| v as f64).collect();
        values[idx] += delta as f64;
        let projected = project_nonincreasing_box(&values, 0.0, d as f64);
        let mut candidate = state.clone();
        candidate.seqs[which] = projected.iter().map(|v| v.floor() as i128).collect();
        if candidate == state || !candidate.satisfies_hypothesis() {
            continue;
        }
        let excess = candidate.scaled_excess();
        let gain = (excess - current) as f64 / norm;
        if gain >= 0.0 || rng.gen::<f64>() < (gain / temperature).exp() {
            state = candidate;
            current = excess;
            accepted += 1;
            if current > best_excess {
                best_excess = current;
                best = state.clone();
            }
        }
    }
    RestartResult {
        best,
        best_excess,
        steps,
        accepted,
    }
}

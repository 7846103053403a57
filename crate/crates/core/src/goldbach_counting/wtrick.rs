use serde::Serialize;

use super::sieve::PrimeTable;
use super::subset::PrimeSubsetSpec;
use crate::arith::primes_below;
use crate::density_functions::{
    scan_witness, ScanCriterion, SolveMode, TheoremSolver, ThresholdParams, UnitFunction,
    WitnessTriple,
};
use crate::error::{Error, Result};
use crate::modular_sumsets::{CrtCoordinates, Modulus};
use crate::rational::{fmt_rational, from_f64_exact, q, to_f64, Rational};

/// Largest `W` accepted by [`w_trick_weights`].
pub const WTRICK_MAX_W: u64 = 30_030;
/// Largest `W` for the exhaustive witness search.
pub const BRUTE_WITNESS_MAX_W: u64 = 10_000;

/// `0 < delta < 5/12`, `0 < eta < delta / 50`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WTrickParams {
    #[serde(serialize_with = "crate::rational::serialize_rational")]
    pub delta: Rational,
    #[serde(serialize_with = "crate::rational::serialize_rational")]
    pub eta: Rational,
}

impl WTrickParams {
    pub fn new(delta: Rational, eta: Rational) -> Result<Self> {
        let zero = q(0, 1);
        if delta <= zero || delta >= q(5, 12) {
            return Err(Error::Precondition(format!(
                "delta = {} must lie in (0, 5/12)",
                fmt_rational(&delta)
            )));
        }
        if eta <= zero || eta >= &delta / Rational::from_integer(50.into()) {
            return Err(Error::Precondition(format!(
                "eta = {} must lie in (0, delta/50)",
                fmt_rational(&eta)
            )));
        }
        Ok(WTrickParams { delta, eta })
    }

    /// Strict lower bounds on the means of the three weights.
    pub fn mean_bounds(&self) -> [Rational; 3] {
        let low = q(5, 8) - (q(5, 4) * &self.eta + &self.delta / Rational::from_integer(8.into()));
        [q(5, 8) + q(3, 8) * &self.delta, low.clone(), low]
    }

    /// The thresholds handed to the density theorem on the odd part:
    /// `3 delta / 8` and `5 eta / 4 + delta / 8`.
    pub fn theorem_params(&self) -> Result<ThresholdParams> {
        ThresholdParams::new(
            q(3, 8) * &self.delta,
            q(5, 4) * &self.eta + &self.delta / Rational::from_integer(8.into()),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeanCondition {
    pub sum: f64,
    pub bound: f64,
    /// Point evaluation `sum > bound`.
    pub holds: bool,
    /// Whether the rounding-error interval around `sum` agrees with `holds`.
    pub certain: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WTrickProfile {
    pub z: u64,
    pub w: u64,
    pub phi: u64,
    pub n: u64,
    pub params: WTrickParams,
    /// Units of `Z_W`, ascending.
    pub units: Vec<u64>,
    /// Weight of each unit, aligned with `units`, for `P_1, P_2, P_3`.
    pub weights: [Vec<f64>; 3],
    pub means: [MeanCondition; 3],
}

impl WTrickProfile {
    pub fn mean_conditions_hold(&self) -> bool {
        self.means.iter().all(|c| c.holds)
    }

    /// Weights as exact unit functions on `Z_W` (the binary values of the
    /// doubles).
    pub fn unit_functions(&self) -> Result<[UnitFunction; 3]> {
        let md = Modulus::relaxed(self.w)?;
        let build = |ws: &Vec<f64>| -> Result<UnitFunction> {
            let pairs = self
                .units
                .iter()
                .zip(ws)
                .map(|(&u, &v)| Ok((u, from_f64_exact(v)?)));
            UnitFunction::from_pairs(&md, pairs.collect::<Result<Vec<_>>>()?)
        };
        Ok([
            build(&self.weights[0])?,
            build(&self.weights[1])?,
            build(&self.weights[2])?,
        ])
    }
}

/// Weights `f_i(b) = max(3 phi(W) / (2n) * sum log x - delta/8, 0)` over
/// `x in P_i`, `x = b (mod W)`, `x < 2n/3`, clamped above at 1, for
/// `W = product of primes below z`.
pub fn w_trick_weights(
    z: u64,
    n: u64,
    specs: &[PrimeSubsetSpec; 3],
    params: &WTrickParams,
    table: &PrimeTable,
) -> Result<WTrickProfile> {
    if n.is_multiple_of(2) || n < 3 {
        return Err(Error::Precondition(format!(
            "n must be odd and at least 3, got {n}"
        )));
    }
    let primes = primes_below(z);
    if primes.is_empty() {
        return Err(Error::Precondition(format!(
            "z = {z} leaves W = 1; need z >= 3"
        )));
    }
    let w = primes.iter().try_fold(1u64, |acc, &p| {
        acc.checked_mul(p).filter(|&x| x <= WTRICK_MAX_W)
    });
    let w = w.ok_or_else(|| Error::Capacity(format!("W for z = {z} exceeds {WTRICK_MAX_W}")))?;
    let md = Modulus::relaxed(w)?;
    let units = md.units();
    let phi = md.phi();
    // largest x with 3x < 2n
    let top = (2 * n - 1) / 3;
    if table.limit() < top {
        return Err(Error::Capacity(format!(
            "sieve covers {}, need {top}",
            table.limit()
        )));
    }

    let scale = 3.0 * phi as f64 / (2.0 * n as f64);
    let shift = to_f64(&params.delta) / 8.0;
    let bounds = params.mean_bounds();
    let mut weights: [Vec<f64>; 3] = Default::default();
    let mut means: Vec<MeanCondition> = Vec::new();
    for (i, spec) in specs.iter().enumerate() {
        let ind = spec.indicator(table, top)?;
        let mut log_sum = vec![0f64; w as usize];
        let mut count = vec![0u64; w as usize];
        for x in table.primes_in(2, top).filter(|&x| ind[x as usize]) {
            log_sum[(x % w) as usize] += (x as f64).ln();
            count[(x % w) as usize] += 1;
        }
        let (mut point, mut lo, mut hi) = (0f64, 0f64, 0f64);
        for &u in &units {
            let raw = scale * log_sum[u as usize] - shift;
            // log rounding plus sequential summation, both relative to the sum
            let err = scale * log_sum[u as usize] * (count[u as usize] as f64 + 4.0) * f64::EPSILON
                + 4.0 * f64::EPSILON;
            let value = raw.clamp(0.0, 1.0);
            weights[i].push(value);
            point += value;
            lo += (raw - err).clamp(0.0, 1.0);
            hi += (raw + err).clamp(0.0, 1.0);
        }
        let bound = to_f64(&(&bounds[i] * Rational::from_integer(phi.into())));
        let slack = (phi as f64 + bound) * 4.0 * f64::EPSILON;
        let holds = point > bound;
        let certain = if holds {
            lo - slack > bound
        } else {
            hi + slack <= bound
        };
        means.push(MeanCondition {
            sum: point,
            bound,
            holds,
            certain,
        });
    }
    let means: [MeanCondition; 3] = means.try_into().expect("three specs");
    Ok(WTrickProfile {
        z,
        w,
        phi,
        n,
        params: params.clone(),
        units,
        weights,
        means,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessRoute {
    /// Exhaustive scan over `Z_W^*`.
    Direct,
    /// The density theorem on `Z_{W/2}` with the mod-2 coordinate fixed to 1.
    OddPart,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceWitness {
    pub route: WitnessRoute,
    /// `b1 + b2 + b3 = n (mod W)`.
    pub residues: [u64; 3],
    #[serde(flatten)]
    pub witness: WitnessTriple,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RouteResult {
    Found(CongruenceWitness),
    Failed(String),
}

impl RouteResult {
    pub fn found(&self) -> Option<&CongruenceWitness> {
        match self {
            RouteResult::Found(w) => Some(w),
            RouteResult::Failed(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CongruenceReport {
    pub n: u64,
    pub w: u64,
    /// `None` when `W` is too large for the exhaustive scan.
    pub direct: Option<RouteResult>,
    pub odd_part: RouteResult,
}

impl CongruenceReport {
    /// The exhaustive witness when available, else the odd-part one.
    pub fn witness(&self) -> Option<&CongruenceWitness> {
        match &self.direct {
            Some(r) => r.found(),
            None => self.odd_part.found(),
        }
    }

    pub fn all_found(&self) -> bool {
        self.direct.as_ref().is_none_or(|r| r.found().is_some()) && self.odd_part.found().is_some()
    }
}

/// Units `b1 + b2 + b3 = n (mod W)` with all weights positive and weight
/// sum above 3/2, found by both routes.
pub fn find_congruence_witness(profile: &WTrickProfile, n: u64) -> Result<CongruenceReport> {
    if !profile.mean_conditions_hold() {
        return Err(Error::Precondition(
            "W-trick mean conditions do not hold".into(),
        ));
    }
    if n.is_multiple_of(2) {
        return Err(Error::Precondition(format!("n must be odd, got {n}")));
    }
    let w = profile.w;
    let fs = profile.unit_functions()?;
    let direct = (w <= BRUTE_WITNESS_MAX_W).then(|| {
        match scan_witness(&fs, n % w, ScanCriterion::SumProduct) {
            Some(wt) => RouteResult::Found(CongruenceWitness {
                route: WitnessRoute::Direct,
                residues: wt.units(),
                witness: wt,
            }),
            None => RouteResult::Failed(format!("no unit triple reaches {} mod {w}", n % w)),
        }
    });
    let odd_part = match odd_part_witness(profile, &fs, n) {
        Ok(w) => RouteResult::Found(w),
        Err(e) => RouteResult::Failed(e.to_string()),
    };
    Ok(CongruenceReport {
        n,
        w,
        direct,
        odd_part,
    })
}

fn odd_part_witness(
    profile: &WTrickProfile,
    fs: &[UnitFunction; 3],
    n: u64,
) -> Result<CongruenceWitness> {
    let w = profile.w;
    if !w.is_multiple_of(2) {
        return Err(Error::Precondition("W is expected to be even".into()));
    }
    let crt = CrtCoordinates::new(2, w / 2)?;
    let odd = Modulus::relaxed(w / 2)?;
    let restrict = |f: &UnitFunction| -> Result<UnitFunction> {
        let values = (0..odd.m())
            .map(|y| f.value(crt.join(1, y)).clone())
            .collect();
        UnitFunction::from_dense(&odd, values)
    };
    let gs = [restrict(&fs[0])?, restrict(&fs[1])?, restrict(&fs[2])?];
    let params = profile.params.theorem_params()?;
    let solved =
        TheoremSolver::new(&odd, gs, &params, SolveMode::Constructive)?.solve(n % odd.m())?;
    let b = solved.witness.units().map(|y| crt.join(1, y));
    let witness = WitnessTriple::new(fs, b[0], b[1], b[2]);
    if !witness.verify_sum_product(fs, n % w) {
        return Err(Error::Certificate(format!(
            "odd-part witness {b:?} fails on Z_{w}"
        )));
    }
    Ok(CongruenceWitness {
        route: WitnessRoute::OddPart,
        residues: b,
        witness,
    })
}

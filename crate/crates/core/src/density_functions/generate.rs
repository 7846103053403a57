use rand::seq::SliceRandom;
use rand::Rng;

use super::ops::ThresholdParams;
use super::unit_function::UnitFunction;
use crate::modular_sumsets::Modulus;
use crate::rational::{q, Rational};

const GRID: [i64; 4] = [8, 24, 40, 120];

/// Draws three functions whose means clear the thresholds of `params`,
/// usually by a single grid step.
///
/// Values start from one of several shapes (uniform, 0/1 indicator, low
/// with spikes) and are raised one grid step at a time on random units
/// until the strict mean bound holds.
pub fn random_admissible_functions<R: Rng + ?Sized>(
    md: &Modulus,
    params: &ThresholdParams,
    rng: &mut R,
) -> [UnitFunction; 3] {
    let bounds = params.mean_bounds();
    let denom = *GRID.choose(rng).unwrap();
    let shape = rng.gen_range(0..3);
    let draw = |rng: &mut R, bound: &Rational| -> UnitFunction {
        let units = md.units();
        let mut steps: Vec<i64> = vec![0; md.m() as usize];
        for &u in &units {
            steps[u as usize] = match shape {
                0 => rng.gen_range(0..=denom),
                1 => {
                    if rng.gen_bool(0.5) {
                        denom
                    } else {
                        0
                    }
                }
                _ => {
                    if rng.gen_bool(0.2) {
                        denom
                    } else {
                        rng.gen_range(0..=denom / 2)
                    }
                }
            };
        }
        // raise until sum / phi > bound, i.e. sum_steps > bound * phi * denom
        let phi = units.len() as i64;
        let target = bound * Rational::from_integer((phi * denom).into());
        let mut total: i64 = steps.iter().sum();
        let increment = if shape == 1 { denom } else { 1 };
        while Rational::from_integer(total.into()) <= target {
            let u = *units.choose(rng).unwrap() as usize;
            let room = denom - steps[u];
            if room == 0 {
                continue;
            }
            let add = increment.min(room);
            steps[u] += add;
            total += add;
        }
        if rng.gen_bool(0.3) {
            // occasional slack
            for _ in 0..units.len() / 4 {
                let u = *units.choose(rng).unwrap() as usize;
                steps[u] = denom;
            }
        }
        let values = steps.into_iter().map(|s| q(s, denom)).collect();
        UnitFunction::from_dense(md, values).expect("grid values lie in [0,1]")
    };
    [
        draw(rng, &bounds[0]),
        draw(rng, &bounds[1]),
        draw(rng, &bounds[2]),
    ]
}

/// Draws three functions on the units of `Z_15` whose unit sums satisfy
/// `F1 F2 + F2 F3 + F3 F1 > 5 (F1 + F2 + F3)`, usually by one grid step.
///
/// Values start from random grid points, then single grid steps are added
/// to a randomly weighted choice of function until the sum condition holds.
pub fn random_lemma_3_2_functions<R: Rng + ?Sized>(rng: &mut R) -> [UnitFunction; 3] {
    let md = Modulus::relaxed(15).expect("15 is square-free");
    let units = md.units();
    let denom = *GRID.choose(rng).unwrap();
    let mut steps: [Vec<i64>; 3] = Default::default();
    for s in steps.iter_mut() {
        *s = vec![0; 15];
        let cap = rng.gen_range(1..=denom);
        for &u in &units {
            s[u as usize] = rng.gen_range(0..=cap);
        }
    }
    let weights: [u32; 3] = [
        rng.gen_range(1..=4),
        rng.gen_range(1..=4),
        rng.gen_range(1..=4),
    ];
    let holds = |steps: &[Vec<i64>; 3]| {
        let f = steps.each_ref().map(|s| s.iter().sum::<i64>() as i128);
        let d = denom as i128;
        // scaled by denom^2
        f[0] * f[1] + f[1] * f[2] + f[2] * f[0] > 5 * d * (f[0] + f[1] + f[2])
    };
    while !holds(&steps) {
        let pick = rng.gen_range(0..weights.iter().sum::<u32>());
        let i = if pick < weights[0] {
            0
        } else if pick < weights[0] + weights[1] {
            1
        } else {
            2
        };
        let open: Vec<u64> = units
            .iter()
            .copied()
            .filter(|&u| steps[i][u as usize] < denom)
            .collect();
        if let Some(&u) = open.choose(rng) {
            steps[i][u as usize] += 1;
        }
    }
    steps.map(|s| {
        let values = s.into_iter().map(|v| q(v, denom)).collect();
        UnitFunction::from_dense(&md, values).expect("grid values lie in [0,1]")
    })
}

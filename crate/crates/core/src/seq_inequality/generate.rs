use rand::seq::SliceRandom;
use rand::Rng;

use super::grid::GridTriple;
use super::sequences::TripleSequences;

/// Shapes of the raw random draw before it is repaired into the hypothesis
/// region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceStyle {
    /// Independent uniform grid values, sorted.
    Uniform,
    /// A block of large values followed by small ones, which makes the
    /// unconstrained head triples matter.
    Staircase,
    /// Values clustered around 5/8, where the inequality is tight.
    NearEquality,
    /// A high first half over a flat second half near 5/16, the point where
    /// the transformed tail entries vanish.
    Plateau,
}

const STYLES: [InstanceStyle; 4] = [
    InstanceStyle::Uniform,
    InstanceStyle::Staircase,
    InstanceStyle::NearEquality,
    InstanceStyle::Plateau,
];

const GRID_DENOMINATORS: [i128; 5] = [8, 16, 40, 64, 120];

/// Draws a random instance satisfying the pointwise hypothesis.
///
/// A raw draw on a grid with small denominator is repaired by repeatedly
/// lowering one coordinate of a violated triple to the largest grid value
/// that satisfies it. Lowering only moves values down a finite grid, so the
/// loop terminates.
pub fn random_hypothesis_instance<R: Rng + ?Sized>(n: usize, rng: &mut R) -> TripleSequences {
    random_hypothesis_grid(n, rng).to_sequences()
}

pub(crate) fn random_hypothesis_grid<R: Rng + ?Sized>(n: usize, rng: &mut R) -> GridTriple {
    let denom = *GRID_DENOMINATORS.choose(rng).unwrap();
    let style = *STYLES.choose(rng).unwrap();
    let draw = |rng: &mut R| -> Vec<i128> {
        let mut v: Vec<i128> = match style {
            InstanceStyle::Uniform => (0..n).map(|_| rng.gen_range(0..=denom)).collect(),
            InstanceStyle::Staircase => {
                let cut = rng.gen_range(0..=n);
                (0..n)
                    .map(|i| {
                        if i < cut {
                            rng.gen_range(denom * 3 / 4..=denom)
                        } else {
                            rng.gen_range(0..=denom / 2)
                        }
                    })
                    .collect()
            }
            InstanceStyle::NearEquality => {
                let centre = denom * 5 / 8;
                let spread = (denom / 8).max(1);
                (0..n)
                    .map(|_| (centre + rng.gen_range(-spread..=spread)).clamp(0, denom))
                    .collect()
            }
            InstanceStyle::Plateau => {
                let low = rng.gen_range(denom / 4..=denom * 3 / 8);
                (0..n)
                    .map(|i| {
                        if i < n / 2 {
                            rng.gen_range(denom / 2..=denom)
                        } else {
                            low
                        }
                    })
                    .collect()
            }
        };
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    };
    let seqs = [draw(rng), draw(rng), draw(rng)];
    let mut grid = GridTriple { denom, seqs };
    grid.repair(|| rng.gen_range(0..3));
    grid
}

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, int, q, Rational};

/// Smallest length for which the pointwise hypothesis is known to imply the
/// average conclusion.
pub const THEOREM_MIN_LEN: usize = 6;

/// Three nonincreasing sequences of equal even length with entries in `[0,1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleSequences {
    a: Vec<Rational>,
    b: Vec<Rational>,
    c: Vec<Rational>,
}

impl TripleSequences {
    pub fn new(a: Vec<Rational>, b: Vec<Rational>, c: Vec<Rational>) -> Result<Self> {
        let n = a.len();
        if b.len() != n || c.len() != n {
            return Err(Error::InvalidSequences(format!(
                "lengths differ: {}, {}, {}",
                n,
                b.len(),
                c.len()
            )));
        }
        if n < 2 || !n.is_multiple_of(2) {
            return Err(Error::InvalidSequences(format!(
                "length must be even and at least 2, got {n}"
            )));
        }
        for (name, seq) in [("a", &a), ("b", &b), ("c", &c)] {
            check_sequence(name, seq, &Rational::zero(), &Rational::one())?;
        }
        Ok(TripleSequences { a, b, c })
    }

    /// Three copies of the same constant sequence.
    pub fn constant(n: usize, value: Rational) -> Result<Self> {
        let v = vec![value; n];
        Self::new(v.clone(), v.clone(), v)
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// Whether `n` is large enough for the implication to be a theorem.
    pub fn in_theorem_range(&self) -> bool {
        self.len() >= THEOREM_MIN_LEN
    }

    pub fn a(&self) -> &[Rational] {
        &self.a
    }

    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    pub fn c(&self) -> &[Rational] {
        &self.c
    }

    pub fn averages(&self) -> [Rational; 3] {
        let n = int(self.len() as i64);
        [&self.a, &self.b, &self.c].map(|s| s.iter().sum::<Rational>() / &n)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let render = |s: &[Rational]| s.iter().map(fmt_rational).collect::<Vec<_>>();
        serde_json::json!({
            "n": self.len(),
            "a": render(&self.a),
            "b": render(&self.b),
            "c": render(&self.c),
        })
    }
}

fn check_sequence(name: &str, seq: &[Rational], lo: &Rational, hi: &Rational) -> Result<()> {
    for (i, v) in seq.iter().enumerate() {
        if v < lo || v > hi {
            return Err(Error::InvalidSequences(format!(
                "{name}[{i}] = {} outside [{}, {}]",
                fmt_rational(v),
                fmt_rational(lo),
                fmt_rational(hi)
            )));
        }
    }
    for (i, w) in seq.windows(2).enumerate() {
        if w[0] < w[1] {
            return Err(Error::InvalidSequences(format!(
                "{name} increases at index {}: {} < {}",
                i + 1,
                fmt_rational(&w[0]),
                fmt_rational(&w[1])
            )));
        }
    }
    Ok(())
}

/// The sequences after the affine change `v -> 16/5 v - 1`, which moves the
/// threshold form to `xy + yz + zx <= 3` with entries in `[-1, 11/5]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransformedSequences {
    #[serde(skip)]
    pub x: Vec<Rational>,
    #[serde(skip)]
    pub y: Vec<Rational>,
    #[serde(skip)]
    pub z: Vec<Rational>,
    pub n: usize,
    /// Half length.
    pub m: usize,
}

fn forward(v: &Rational) -> Rational {
    q(16, 5) * v - int(1)
}

fn backward(v: &Rational) -> Rational {
    (v + int(1)) * q(5, 16)
}

pub fn transform_to_xyz(seqs: &TripleSequences) -> TransformedSequences {
    let map = |s: &[Rational]| s.iter().map(forward).collect::<Vec<_>>();
    TransformedSequences {
        x: map(&seqs.a),
        y: map(&seqs.b),
        z: map(&seqs.c),
        n: seqs.len(),
        m: seqs.len() / 2,
    }
}

impl TransformedSequences {
    /// Builds transformed sequences directly, validating the bounds and
    /// monotonicity implied by the change of variables.
    pub fn new(x: Vec<Rational>, y: Vec<Rational>, z: Vec<Rational>) -> Result<Self> {
        let back = |s: &[Rational]| s.iter().map(backward).collect::<Vec<_>>();
        let seqs = TripleSequences::new(back(&x), back(&y), back(&z))?;
        Ok(transform_to_xyz(&seqs))
    }

    pub fn inverse(&self) -> TripleSequences {
        let back = |s: &[Rational]| s.iter().map(backward).collect::<Vec<_>>();
        TripleSequences::new(back(&self.x), back(&self.y), back(&self.z))
            .expect("transformed sequences always map back to valid sequences")
    }
}

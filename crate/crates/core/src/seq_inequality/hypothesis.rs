use num_traits::Zero;
use serde::Serialize;

use super::grid::first_violation;
use super::sequences::TripleSequences;
use crate::rational::{five_eighths, fmt_rational, Rational};
use crate::with_scaled;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// `a_i b_j + b_j c_k + c_k a_i`
    pub form: Rational,
    /// `5/8 (a_i + b_j + c_k)`
    pub bound: Rational,
}

impl Violation {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "i": self.i, "j": self.j, "k": self.k,
            "form": fmt_rational(&self.form),
            "bound": fmt_rational(&self.bound),
        })
    }
}

/// Result of scanning every triple `i + j + k >= n`.
///
/// The scan stops at the first violation, so `scanned` counts the triples
/// examined up to and including it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisReport {
    pub holds: bool,
    pub first_violation: Option<Violation>,
    pub scanned: u64,
}

pub fn check_pointwise_hypothesis(seqs: &TripleSequences) -> HypothesisReport {
    let (hit, scanned) = with_scaled!(&[seqs.a(), seqs.b(), seqs.c()], |s| {
        first_violation(&s.denom, &s.groups[0], &s.groups[1], &s.groups[2])
    });
    let first_violation = hit.map(|(i, j, k)| {
        let (a, b, c) = (&seqs.a()[i], &seqs.b()[j], &seqs.c()[k]);
        Violation {
            i,
            j,
            k,
            form: a * b + b * c + c * a,
            bound: five_eighths() * (a + b + c),
        }
    });
    HypothesisReport {
        holds: first_violation.is_none(),
        first_violation,
        scanned,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AverageConclusion {
    pub holds: bool,
    /// `5/8 (A + B + C) - (AB + BC + CA)`
    pub margin: Rational,
}

pub fn check_average_conclusion(seqs: &TripleSequences) -> AverageConclusion {
    let [a, b, c] = seqs.averages();
    let margin = five_eighths() * (&a + &b + &c) - (&a * &b + &b * &c + &c * &a);
    AverageConclusion {
        holds: margin >= Rational::zero(),
        margin,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum InstanceStatus {
    HypothesisFails,
    Confirmed,
    Counterexample,
}

impl InstanceStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            InstanceStatus::HypothesisFails => "HYPOTHESIS_FAILS",
            InstanceStatus::Confirmed => "CONFIRMED",
            InstanceStatus::Counterexample => "COUNTEREXAMPLE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceVerdict {
    pub status: InstanceStatus,
    pub hypothesis: HypothesisReport,
    pub conclusion: AverageConclusion,
    /// A counterexample at a length where the implication is a theorem.
    pub contradicts_theorem: bool,
}

pub fn verify_theorem_1_2_instance(seqs: &TripleSequences) -> InstanceVerdict {
    let hypothesis = check_pointwise_hypothesis(seqs);
    let conclusion = check_average_conclusion(seqs);
    let status = if !hypothesis.holds {
        InstanceStatus::HypothesisFails
    } else if conclusion.holds {
        InstanceStatus::Confirmed
    } else {
        InstanceStatus::Counterexample
    };
    InstanceVerdict {
        status,
        contradicts_theorem: status == InstanceStatus::Counterexample && seqs.in_theorem_range(),
        hypothesis,
        conclusion,
    }
}

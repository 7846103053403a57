//! The three-sequence inequality.
//!
//! Three nonincreasing sequences `a`, `b`, `c` in `[0,1]` of even length `n`
//! satisfy the *pointwise hypothesis* when
//!
//! ```text
//! a_i b_j + b_j c_k + c_k a_i <= 5/8 (a_i + b_j + c_k)   for all i + j + k >= n,
//! ```
//!
//! and the *average conclusion* when the same inequality holds for the three
//! averages. For `n >= 6` the hypothesis implies the conclusion; this module
//! checks both sides exactly, evaluates the chain of intermediate bounds that
//! proves the implication, and searches for counterexamples.

mod certificate;
mod generate;
mod grid;
mod hypothesis;
mod search;
mod sequences;
mod text;

pub use certificate::{
    compute_proof_quantities, index_set_head_head_tail, index_set_tail, verify_proof_inequalities,
    LedgerEntry, ProofLedger, ProofQuantities,
};
pub use generate::{random_hypothesis_instance, InstanceStyle};
pub use grid::GridTriple;
pub use hypothesis::{
    check_average_conclusion, check_pointwise_hypothesis, verify_theorem_1_2_instance,
    AverageConclusion, HypothesisReport, InstanceStatus, InstanceVerdict, Violation,
};
pub use search::{search_counterexample, SearchConfig, SearchOutcome, SEARCH_GRID_DENOMINATOR};
pub use sequences::{transform_to_xyz, TransformedSequences, TripleSequences, THEOREM_MIN_LEN};
pub use text::{format_instance, parse_instance};

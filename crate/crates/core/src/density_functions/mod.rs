//! Functions on unit groups with large means, and the witness-producing
//! procedures built on them.
//!
//! Every procedure has a brute mode (exhaustive scan) and, where a proof is
//! available, a constructive mode that follows it step by step. A
//! constructive step that fails while the preconditions hold is reported as
//! a certificate error rather than a missing witness.

mod generate;
mod lemma31;
mod ops;
mod text;
mod theorem;
mod unit_function;
mod witness;

pub use generate::{random_admissible_functions, random_lemma_3_2_functions};
pub use lemma31::{
    averaged_h, verify_lemma_3_1, Lemma31Solver, SolveMode, BASE_PRIME, STRICT_BASE_PRIME,
};
pub use ops::{decreasing_rearrangement, h_margin, level_set, ThresholdParams};
pub use text::{format_unit_function, parse_unit_function, ParsedUnitFunction};
pub use theorem::{
    lemma_3_2_hypothesis, verify_lemma_3_2, verify_theorem_1_3, SumHypothesis, TheoremRoute,
    TheoremSolver, TheoremWitness,
};
pub use unit_function::UnitFunction;
pub use witness::{scan_witness, ScanCriterion, WitnessTriple};

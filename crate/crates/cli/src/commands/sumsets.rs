use anyhow::Context;
use serde_json::json;
use ternary_core::modular_sumsets::{
    analyze_modulus, counterexample_mod15, sumset2, sumset3, verify_corollary_1_4, CorollaryMode,
    ResidueSet,
};
use ternary_core::rational::fmt_rational;
use ternary_core::report::RunRecord;

use super::residue_set;
use crate::args::CorollaryModeArg;
use crate::output::Outcome;

pub fn sumset(m: u64, a: &str, b: &str, c: Option<&str>) -> anyhow::Result<Outcome> {
    let a = residue_set(m, a)?;
    let b = residue_set(m, b)?;
    let sum = match c {
        Some(c) => sumset3(&a, &b, &residue_set(m, c)?)?,
        None => sumset2(&a, &b)?,
    };
    let missing = sum.complement();
    let status = if missing.is_empty() {
        "COVERS"
    } else {
        "MISSES"
    };
    let record = RunRecord::new("sumset", json!(null), status)
        .with_witness(json!({ "sumset": sum, "size": sum.len(), "missing": missing }));
    Ok(Outcome::new(
        record,
        format!("{status}: {sum} (missing {:?})", missing.to_vec()),
    ))
}

pub fn corollary(
    m: u64,
    mode: CorollaryModeArg,
    trials: Option<u64>,
    sets: [&Option<String>; 3],
    diagnostic: bool,
    seed: u64,
) -> anyhow::Result<Outcome> {
    let md = analyze_modulus(m)?;
    let budget = || trials.context("--trials is required for randomized modes");
    let mode = match mode {
        CorollaryModeArg::Exhaustive => CorollaryMode::Exhaustive,
        CorollaryModeArg::Random => CorollaryMode::Random {
            seed,
            trials: budget()?,
        },
        CorollaryModeArg::Adversarial => CorollaryMode::Adversarial {
            seed,
            budget: budget()?,
        },
        CorollaryModeArg::Single => {
            let get = |s: &Option<String>, name: &str| -> anyhow::Result<ResidueSet> {
                residue_set(
                    m,
                    s.as_deref()
                        .with_context(|| format!("--{name} is required in single mode"))?,
                )
            };
            let sets = [get(sets[0], "a")?, get(sets[1], "b")?, get(sets[2], "c")?];
            CorollaryMode::Single { sets, diagnostic }
        }
    };
    let rep = verify_corollary_1_4(&md, &mode)?;
    let failed = rep.precondition_met && rep.exceptions > 0;
    let status = if !rep.precondition_met {
        "PRECONDITION_FAILS"
    } else if failed {
        "EXCEPTION"
    } else {
        "ALL_COVER"
    };
    let record = RunRecord::new("corollary14", json!(null), status)
        .with_witness(serde_json::to_value(&rep)?)
        .with_scanned(rep.scanned)
        .with_seed(seed);
    let human = format!(
        "{status}: m = {m}, mode {}, thresholds ({}, {}), scanned {}, exceptions {}, min coverage {}",
        rep.mode, rep.thresholds.first, rep.thresholds.rest, rep.scanned, rep.exceptions, rep.min_coverage
    );
    Ok(Outcome::new(record, human).failed_if(failed))
}

pub fn counterexample15() -> anyhow::Result<Outcome> {
    let ce = counterexample_mod15();
    let sum = sumset3(&ce.set, &ce.set, &ce.set)?;
    let record = RunRecord::new("counterexample15", json!({}), "PASS").with_witness(json!({
        "set": ce.set,
        "sumset": sum,
        "missing": ce.missing,
        "density": fmt_rational(&ce.density),
    }));
    let human = format!(
        "S = {:?}, density {}, S+S+S misses {:?}",
        ce.set.to_vec(),
        fmt_rational(&ce.density),
        ce.missing.to_vec()
    );
    Ok(Outcome::new(record, human))
}

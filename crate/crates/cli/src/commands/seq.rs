use std::path::Path;

use serde_json::json;
use ternary_core::rational::fmt_rational;
use ternary_core::report::RunRecord;
use ternary_core::seq_inequality::{
    parse_instance, search_counterexample, transform_to_xyz, verify_proof_inequalities,
    verify_theorem_1_2_instance, SearchConfig,
};

use super::read;
use crate::output::Outcome;

pub fn check(file: &Path) -> anyhow::Result<Outcome> {
    let seqs = parse_instance(&read(file)?)?;
    let v = verify_theorem_1_2_instance(&seqs);
    let status = v.status.as_str();
    let record = RunRecord::new("seq-check", json!(null), status)
        .with_witness(json!({
            "instance": seqs.to_json(),
            "first_violation": v.hypothesis.first_violation.as_ref().map(|x| x.to_json()),
            "contradicts_theorem": v.contradicts_theorem,
        }))
        .with_margin(fmt_rational(&v.conclusion.margin))
        .with_scanned(v.hypothesis.scanned);
    let human = format!(
        "{status} (n = {}, margin {})",
        seqs.len(),
        fmt_rational(&v.conclusion.margin)
    );
    Ok(Outcome::new(record, human).failed_if(v.contradicts_theorem))
}

pub fn search(n: usize, steps: u64, restarts: u32, seed: u64) -> anyhow::Result<Outcome> {
    let mut cfg = SearchConfig::new(n, steps, seed);
    cfg.restarts = restarts;
    let out = search_counterexample(&cfg)?;
    let contradicts = out.counterexample.is_some() && out.best.in_theorem_range();
    let status = match (&out.counterexample, contradicts) {
        (Some(_), true) => "COUNTEREXAMPLE",
        (Some(_), false) => "COUNTEREXAMPLE_BELOW_RANGE",
        (None, _) => "NONE_FOUND",
    };
    let record = RunRecord::new("seq-search", json!(null), status)
        .with_witness(json!({
            "best": out.best.to_json(),
            "best_restart": out.best_restart,
            "accepted": out.accepted,
        }))
        .with_margin(fmt_rational(&out.best_margin))
        .with_scanned(out.steps_run)
        .with_seed(seed);
    let human = format!(
        "{status}: best_margin {} after {} steps",
        fmt_rational(&out.best_margin),
        out.steps_run
    );
    Ok(Outcome::new(record, human).failed_if(contradicts))
}

pub fn certificate(file: &Path) -> anyhow::Result<Outcome> {
    let seqs = parse_instance(&read(file)?)?;
    let ledger = verify_proof_inequalities(&transform_to_xyz(&seqs));
    let failures: Vec<&str> = ledger.failures().iter().map(|e| e.name).collect();
    let applicable = ledger.entries.iter().filter(|e| e.applicable).count();
    let status = if !ledger.hypothesis_holds {
        "HYPOTHESIS_FAILS"
    } else if failures.is_empty() {
        "PASS"
    } else {
        "FAIL"
    };
    let record = RunRecord::new("seq-certificate", json!(null), status)
        .with_witness(ledger.to_json())
        .with_scanned(ledger.entries.len() as u64);
    let mut human = format!(
        "{status}: {applicable} applicable entries, {} failing\n",
        failures.len()
    );
    for e in ledger.entries.iter().filter(|e| e.applicable) {
        human.push_str(&format!(
            "  {:<32} {} <= {}  {}\n",
            e.name,
            fmt_rational(&e.lhs),
            fmt_rational(&e.rhs),
            if e.holds { "ok" } else { "FAIL" }
        ));
    }
    Ok(Outcome::new(record, human).failed_if(!failures.is_empty()))
}

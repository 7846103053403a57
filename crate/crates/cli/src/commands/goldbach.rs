use std::path::Path;

use anyhow::Context;
use serde_json::json;
use ternary_core::goldbach_counting::{
    count_representations, eta_observed, find_congruence_witness, fourier_transform, lq_norm,
    scan_odd_range, sieve_with_cap, w_trick_weights, CountMethod, PrimeSubsetSpec, PrimeTable,
    WTrickParams,
};
use ternary_core::report::RunRecord;

use super::{rational, read};
use crate::args::SubsetSpecs;
use crate::output::{Outcome, Table};

/// Relative tolerance for the transform self-checks.
const SPECTRUM_TOL: f64 = 1e-9;

fn specs(s: &SubsetSpecs) -> anyhow::Result<[PrimeSubsetSpec; 3]> {
    Ok([s.p1.parse()?, s.p2.parse()?, s.p3.parse()?])
}

fn table_for(specs: &[PrimeSubsetSpec; 3], n: u64, cap: u64) -> anyhow::Result<PrimeTable> {
    let limit = specs.iter().map(|s| s.required_limit(n)).max().unwrap_or(2);
    Ok(sieve_with_cap(limit, cap)?)
}

fn parse_range(text: &str) -> anyhow::Result<(u64, u64)> {
    let (a, b) = text.split_once(':').context("--range expects n0:n1")?;
    Ok((
        a.trim().parse().context("bad n0")?,
        b.trim().parse().context("bad n1")?,
    ))
}

pub fn count(
    n: Option<u64>,
    range: Option<&str>,
    spec_args: &SubsetSpecs,
    method: &str,
    cap: u64,
) -> anyhow::Result<Outcome> {
    let specs = specs(spec_args)?;
    let method: CountMethod = method.parse()?;
    match (n, range) {
        (Some(n), None) => {
            let table = table_for(&specs, n, cap)?;
            let r = count_representations(n, &specs, &table, method)?;
            let status = if r.count > 0 {
                "REPRESENTED"
            } else {
                "NO_REPRESENTATION"
            };
            let record = RunRecord::new("goldbach-count", json!(null), status).with_witness(
                json!({ "n": n, "count": r.count.to_string(), "method": method.as_str() }),
            );
            Ok(Outcome::new(record, r.count.to_string()))
        }
        (None, Some(range)) => {
            let (n0, n1) = parse_range(range)?;
            let table = table_for(&specs, n1, cap)?;
            let rep = scan_odd_range(n0, n1, &specs, &table, method)?;
            let status = if rep.failures.is_empty() {
                "ALL_REPRESENTED"
            } else {
                "FAILURES"
            };
            let shown: Vec<u64> = rep.failures.iter().take(20).copied().collect();
            let human = format!(
                "{status}: {} odd n in [{n0}, {n1}], {} without representation{}",
                rep.rows.len(),
                rep.failures.len(),
                if shown.is_empty() {
                    String::new()
                } else {
                    format!(", first {shown:?}")
                }
            );
            let rows = rep
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.count.to_string(),
                        method.as_str().to_string(),
                        format!("{:.6}", r.ms),
                    ]
                })
                .collect();
            let record = RunRecord::new("goldbach-count", json!(null), status)
                .with_witness(
                    json!({ "failures": rep.failures, "failure_count": rep.failures.len() }),
                )
                .with_scanned(rep.rows.len() as u64);
            Ok(Outcome::new(record, human).with_table(Table {
                header: vec!["n", "count", "method", "ms"],
                rows,
            }))
        }
        _ => anyhow::bail!("give exactly one of --n or --range"),
    }
}

pub fn wtrick(
    z: u64,
    n: u64,
    spec_args: &SubsetSpecs,
    delta: &str,
    eta: &str,
    cap: u64,
) -> anyhow::Result<Outcome> {
    let specs = specs(spec_args)?;
    let params = WTrickParams::new(rational(delta)?, rational(eta)?)?;
    let top = (2 * n).saturating_sub(1) / 3;
    let table = table_for(&specs, top.max(2), cap)?;
    let profile = w_trick_weights(z, n, &specs, &params, &table)?;
    let means = serde_json::to_value(&profile.means)?;
    let mut human = format!("W = {}, phi(W) = {}\n", profile.w, profile.phi);
    for (i, c) in profile.means.iter().enumerate() {
        human.push_str(&format!(
            "  f{}: sum {:.6} vs bound {:.6}: {}{}\n",
            i + 1,
            c.sum,
            c.bound,
            if c.holds { "holds" } else { "fails" },
            if c.certain { "" } else { " (within rounding)" }
        ));
    }
    if !profile.mean_conditions_hold() {
        let record = RunRecord::new("wtrick", json!(null), "MEANS_FAIL")
            .with_witness(json!({ "means": means }));
        return Ok(Outcome::new(record, format!("MEANS_FAIL\n{human}")));
    }
    let rep = find_congruence_witness(&profile, n)?;
    let status = if rep.all_found() {
        "PASS"
    } else {
        "NO_WITNESS"
    };
    if let Some(w) = rep.witness() {
        human.push_str(&format!(
            "witness b = {:?} ({:?}), value sum {}\n",
            w.residues, w.route, w.witness.value_sum
        ));
    }
    let record = RunRecord::new("wtrick", json!(null), status)
        .with_witness(json!({ "means": means, "congruence": rep }))
        .with_scanned(profile.phi);
    Ok(Outcome::new(record, format!("{status}\n{human}")).failed_if(!rep.all_found()))
}

pub fn spectrum(file: &Path, q: f64) -> anyhow::Result<Outcome> {
    anyhow::ensure!(q > 2.0 && q < 3.0, "q = {q} must lie in (2, 3)");
    let f: Vec<f64> = read(file)?
        .split_whitespace()
        .map(|t| t.parse::<f64>().with_context(|| format!("bad value {t:?}")))
        .collect::<anyhow::Result<_>>()?;
    let rep = fourier_transform(&f)?;
    let mass: f64 = f.iter().sum();
    let zero_rel = if mass == 0.0 {
        rep.zero_mode_error
    } else {
        rep.zero_mode_error / mass.abs()
    };
    let ok = rep.parseval_rel_error <= SPECTRUM_TOL
        && zero_rel <= SPECTRUM_TOL
        && rep.direct_rel_error.is_none_or(|e| e <= SPECTRUM_TOL);
    let status = if ok { "PASS" } else { "FAIL" };
    let eta = eta_observed(&rep.values);
    let norm = lq_norm(&rep.values, q);
    let record = RunRecord::new("spectrum", json!(null), status).with_witness(json!({
        "n": rep.n,
        "eta_observed": eta,
        "lq_norm": norm,
        "q": q,
        "parseval_rel_error": rep.parseval_rel_error,
        "zero_mode_error": rep.zero_mode_error,
        "direct_rel_error": rep.direct_rel_error,
    }));
    let human = format!(
        "{status}: N = {}, eta_observed {eta:.3e}, l^{q} norm {norm:.6}, Parseval error {:.3e}",
        rep.n, rep.parseval_rel_error
    );
    Ok(Outcome::new(record, human).failed_if(!ok))
}

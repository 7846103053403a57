use serde_json::{json, Value};
use ternary_core::density_functions::{
    lemma_3_2_hypothesis, parse_unit_function, verify_lemma_3_1, verify_lemma_3_2, Lemma31Solver,
    SolveMode, TheoremSolver, ThresholdParams, UnitFunction,
};
use ternary_core::modular_sumsets::{analyze_modulus, Modulus};
use ternary_core::report::RunRecord;

use super::{rational, read};
use crate::args::{FunctionFiles, Mode, Thresholds};
use crate::output::Outcome;

struct Loaded {
    fs: [UnitFunction; 3],
    missing: [Vec<u64>; 3],
}

fn load(files: &FunctionFiles) -> anyhow::Result<Loaded> {
    let parse = |p| -> anyhow::Result<_> { Ok(parse_unit_function(&read(p)?)?) };
    let [a, b, c] = [parse(&files.f1)?, parse(&files.f2)?, parse(&files.f3)?];
    anyhow::ensure!(
        a.function.m() == b.function.m() && b.function.m() == c.function.m(),
        "functions live on different moduli: {}, {}, {}",
        a.function.m(),
        b.function.m(),
        c.function.m()
    );
    Ok(Loaded {
        missing: [a.missing_units, b.missing_units, c.missing_units],
        fs: [a.function, b.function, c.function],
    })
}

fn params(t: &Thresholds) -> anyhow::Result<ThresholdParams> {
    Ok(ThresholdParams::new(
        rational(&t.delta)?,
        rational(&t.eta)?,
    )?)
}

fn targets(m: u64, x: Option<u64>) -> Vec<u64> {
    match x {
        Some(x) => vec![x % m],
        None => (0..m).collect(),
    }
}

fn solve_mode(mode: Mode) -> SolveMode {
    match mode {
        Mode::Constructive => SolveMode::Constructive,
        Mode::Brute => SolveMode::Brute,
    }
}

fn finish(
    op: &str,
    md: &Modulus,
    missing: &[Vec<u64>; 3],
    witnesses: Vec<(u64, Value)>,
) -> Outcome {
    let n = witnesses.len();
    let human = witnesses
        .iter()
        .map(|(t, w)| format!("x = {t}: ({}, {}, {})", w["a"], w["b"], w["c"]))
        .collect::<Vec<_>>()
        .join("\n");
    let record = RunRecord::new(op, json!(null), "PASS")
        .with_witness(json!({
            "modulus": md.m(),
            "missing_units": missing,
            "witnesses": witnesses.into_iter().map(|(t, w)| json!({"target": t, "witness": w})).collect::<Vec<_>>(),
        }))
        .with_scanned(n as u64);
    Outcome::new(
        record,
        format!("PASS: {n} target(s) on Z_{}\n{human}", md.m()),
    )
}

pub fn lemma31(
    files: &FunctionFiles,
    thresholds: &Thresholds,
    x: Option<u64>,
    mode: Mode,
    strict_base: bool,
) -> anyhow::Result<Outcome> {
    let loaded = load(files)?;
    let md = analyze_modulus(loaded.fs[0].m())?;
    let params = params(thresholds)?;
    let mut out = Vec::new();
    match mode {
        Mode::Constructive => {
            let solver = Lemma31Solver::new(&md, loaded.fs.clone(), &params, strict_base)?;
            for t in targets(md.m(), x) {
                out.push((t, serde_json::to_value(solver.solve(t)?)?));
            }
        }
        Mode::Brute => {
            for t in targets(md.m(), x) {
                let w = verify_lemma_3_1(&md, &loaded.fs, &params, t, SolveMode::Brute)?;
                out.push((t, serde_json::to_value(w)?));
            }
        }
    }
    Ok(finish("lemma31", &md, &loaded.missing, out))
}

pub fn lemma32(files: &FunctionFiles, v: Option<u64>) -> anyhow::Result<Outcome> {
    let loaded = load(files)?;
    let md = Modulus::relaxed(loaded.fs[0].m())?;
    let hyp = lemma_3_2_hypothesis(&loaded.fs);
    let mut out = Vec::new();
    for t in targets(15, v) {
        out.push((t, serde_json::to_value(verify_lemma_3_2(&loaded.fs, t)?)?));
    }
    let mut outcome = finish("lemma32", &md, &loaded.missing, out);
    outcome.record.witness["hypothesis"] = serde_json::to_value(hyp)?;
    Ok(outcome)
}

pub fn theorem13(
    files: &FunctionFiles,
    thresholds: &Thresholds,
    x: Option<u64>,
    mode: Mode,
) -> anyhow::Result<Outcome> {
    let loaded = load(files)?;
    let md = analyze_modulus(loaded.fs[0].m())?;
    let params = params(thresholds)?;
    let solver = TheoremSolver::new(&md, loaded.fs.clone(), &params, solve_mode(mode))?;
    let mut out = Vec::new();
    for t in targets(md.m(), x) {
        out.push((t, serde_json::to_value(solver.solve(t)?)?));
    }
    Ok(finish("theorem13", &md, &loaded.missing, out))
}

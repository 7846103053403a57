mod density;
mod goldbach;
mod seq;
mod sumsets;

use std::path::Path;
use std::time::Instant;

use anyhow::Context;
use ternary_core::modular_sumsets::ResidueSet;
use ternary_core::rational::parse_rational;
use ternary_core::Rational;

use crate::args::{Cli, Command};
use crate::output::Outcome;

pub fn dispatch(cli: &Cli) -> anyhow::Result<Outcome> {
    let start = Instant::now();
    let seed = cli.global.seed;
    let mut outcome = match &cli.command {
        Command::SeqCheck { file } => seq::check(file)?,
        Command::SeqSearch { n, steps, restarts } => seq::search(*n, *steps, *restarts, seed)?,
        Command::SeqCertificate { file } => seq::certificate(file)?,
        Command::Sumset { m, a, b, c } => sumsets::sumset(*m, a, b, c.as_deref())?,
        Command::Corollary14 {
            m,
            mode,
            trials,
            a,
            b,
            c,
            diagnostic,
        } => sumsets::corollary(*m, *mode, *trials, [a, b, c], *diagnostic, seed)?,
        Command::Counterexample15 => sumsets::counterexample15()?,
        Command::Lemma31 {
            fs,
            thresholds,
            x,
            mode,
            strict_base,
        } => density::lemma31(fs, thresholds, *x, *mode, *strict_base)?,
        Command::Lemma32 { fs, v } => density::lemma32(fs, *v)?,
        Command::Theorem13 {
            fs,
            thresholds,
            x,
            mode,
        } => density::theorem13(fs, thresholds, *x, *mode)?,
        Command::GoldbachCount {
            n,
            range,
            specs,
            method,
            sieve_cap,
        } => goldbach::count(*n, range.as_deref(), specs, method, *sieve_cap)?,
        Command::Wtrick {
            z,
            n,
            specs,
            delta,
            eta,
            sieve_cap,
        } => goldbach::wtrick(*z, *n, specs, delta, eta, *sieve_cap)?,
        Command::Spectrum { file, q } => goldbach::spectrum(file, *q)?,
    };
    outcome.record.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(outcome)
}

pub(crate) fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub(crate) fn rational(s: &str) -> anyhow::Result<Rational> {
    Ok(parse_rational(s)?)
}

/// A comma list `1,4,7` or the full form `m=15; {1,4,7}`.
pub(crate) fn residue_set(m: u64, text: &str) -> anyhow::Result<ResidueSet> {
    if text.contains('{') {
        let set: ResidueSet = text.parse()?;
        anyhow::ensure!(set.modulus() == m, "set {text:?} is not mod {m}");
        return Ok(set);
    }
    let mut residues = Vec::new();
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let r: u64 = tok
            .parse()
            .with_context(|| format!("bad residue {tok:?}"))?;
        anyhow::ensure!(r < m, "residue {r} out of range mod {m}");
        residues.push(r);
    }
    Ok(ResidueSet::from_residues(m, residues)?)
}

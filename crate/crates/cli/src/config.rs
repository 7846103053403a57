use std::collections::BTreeMap;

use anyhow::{bail, Context};
use clap::{ArgMatches, CommandFactory};
use serde_json::{Map, Value};

use crate::args::Cli;

pub const THREADS_ENV: &str = "TERNARY_THREADS";

fn config_path(argv: &[String]) -> Option<String> {
    let mut it = argv.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

/// Parses `key=value` lines. `#` starts a comment; `key=true` stands for a
/// bare flag and `key=false` drops it.
pub fn parse_config(text: &str) -> anyhow::Result<Vec<String>> {
    let mut out = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("config line {}: expected key=value, got {line:?}", no + 1);
        };
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        if key.is_empty() || key == "config" {
            bail!("config line {}: invalid key {key:?}", no + 1);
        }
        match value {
            "true" => out.push(format!("--{key}")),
            "false" => {}
            _ => out.push(format!("--{key}={value}")),
        }
    }
    Ok(out)
}

/// Inserts the config file's flags right after the subcommand name, ahead of
/// the command-line flags, so the latter override them.
pub fn merge_config(argv: Vec<String>) -> anyhow::Result<Vec<String>> {
    let Some(path) = config_path(&argv) else {
        return Ok(argv);
    };
    let text =
        std::fs::read_to_string(&path).with_context(|| format!("cannot read config {path}"))?;
    let extra = parse_config(&text)?;
    let names: Vec<String> = Cli::command()
        .get_subcommands()
        .map(|s| s.get_name().to_string())
        .collect();
    let Some(pos) = argv.iter().skip(1).position(|a| names.contains(a)) else {
        return Ok(argv);
    };
    let at = pos + 2;
    let mut merged = argv[..at].to_vec();
    merged.extend(extra);
    merged.extend_from_slice(&argv[at..]);
    Ok(merged)
}

pub fn configure_threads() -> anyhow::Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .with_context(|| format!("{THREADS_ENV}={raw:?} is not a count"))?;
    if n == 0 {
        bail!("{THREADS_ENV} must be positive");
    }
    // a pool may already exist when running inside a test harness
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

fn collect(m: &ArgMatches, cmd: &clap::Command, out: &mut BTreeMap<String, Value>) {
    let known: Vec<&str> = cmd.get_arguments().map(|a| a.get_id().as_str()).collect();
    for id in m.ids() {
        let key = id.as_str();
        // skip argument groups, which share the id space
        if key == "config" || !known.contains(&key) || m.value_source(key).is_none() {
            continue;
        }
        let Ok(Some(raw)) = m.try_get_raw(key) else {
            if let Ok(Some(flag)) = m.try_get_one::<bool>(key) {
                out.insert(key.to_string(), Value::Bool(*flag));
            }
            continue;
        };
        let vals: Vec<Value> = raw
            .map(|v| Value::String(v.to_string_lossy().into_owned()))
            .collect();
        let v = if vals.len() == 1 {
            vals.into_iter().next().unwrap()
        } else {
            Value::Array(vals)
        };
        out.insert(key.to_string(), v);
    }
}

/// Every resolved argument, defaults included, keyed by flag name.
pub fn resolved_config(matches: &ArgMatches, cmd: &clap::Command) -> Value {
    let mut params = BTreeMap::new();
    collect(matches, cmd, &mut params);
    let mut root = Map::new();
    if let Some((name, sub)) = matches.subcommand() {
        if let Some(sub_cmd) = cmd.find_subcommand(name) {
            collect(sub, sub_cmd, &mut params);
        }
        root.insert("subcommand".into(), Value::String(name.to_string()));
    }
    root.insert("params".into(), Value::Object(params.into_iter().collect()));
    Value::Object(root)
}

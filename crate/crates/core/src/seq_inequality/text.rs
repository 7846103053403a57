//! Line-oriented instance format:
//!
//! ```text
//! n=6
//! a: 1 1 5/8 5/8 0 0
//! b: ...
//! c: ...
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use super::sequences::TripleSequences;
use crate::error::{Error, Result};
use crate::rational::{fmt_rational, parse_rational, Rational};

pub fn parse_instance(text: &str) -> Result<TripleSequences> {
    let mut n: Option<usize> = None;
    let mut rows: [Option<Vec<Rational>>; 3] = [None, None, None];
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
        if let Some(rest) = line.strip_prefix("n=") {
            n = Some(rest.trim().parse().map_err(|_| err("bad length"))?);
            continue;
        }
        let (key, values) = line
            .split_once(':')
            .ok_or_else(|| err("expected `a:`, `b:` or `c:`"))?;
        let slot = match key.trim() {
            "a" => 0,
            "b" => 1,
            "c" => 2,
            other => return Err(err(&format!("unknown row {other:?}"))),
        };
        if rows[slot].is_some() {
            return Err(err("duplicate row"));
        }
        let parsed = values
            .split_whitespace()
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        rows[slot] = Some(parsed);
    }
    let n = n.ok_or_else(|| Error::Parse("missing `n=` header".into()))?;
    let [a, b, c] = rows.map(|r| r.unwrap_or_default());
    for (name, row) in [("a", &a), ("b", &b), ("c", &c)] {
        if row.len() != n {
            return Err(Error::Parse(format!(
                "row {name} has {} entries, header says {n}",
                row.len()
            )));
        }
    }
    TripleSequences::new(a, b, c)
}

pub fn format_instance(seqs: &TripleSequences) -> String {
    let row = |s: &[Rational]| s.iter().map(fmt_rational).collect::<Vec<_>>().join(" ");
    format!(
        "n={}\na: {}\nb: {}\nc: {}\n",
        seqs.len(),
        row(seqs.a()),
        row(seqs.b()),
        row(seqs.c())
    )
}

use super::unit_function::UnitFunction;
use crate::error::{Error, Result};
use crate::modular_sumsets::Modulus;
use crate::rational::{fmt_rational, parse_rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedUnitFunction {
    pub function: UnitFunction,
    /// Units with no line in the input; their value is 0.
    pub missing_units: Vec<u64>,
}

/// Parses `m=<int>` followed by lines `u <unit> <value>`. Blank lines and
/// `#` comments are ignored. Even square-free moduli are accepted.
pub fn parse_unit_function(text: &str) -> Result<ParsedUnitFunction> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .enumerate()
        .filter(|(_, l)| !l.is_empty());
    let (_, head) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty unit function".into()))?;
    let m: u64 = head
        .strip_prefix("m=")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| Error::Parse(format!("expected m=<int>, got {head:?}")))?;
    let md = Modulus::relaxed(m)?;
    let mut pairs = Vec::new();
    for (no, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["u", unit, value] => {
                let unit: u64 = unit
                    .parse()
                    .map_err(|_| Error::Parse(format!("line {}: bad unit {unit:?}", no + 1)))?;
                pairs.push((unit, parse_rational(value)?));
            }
            _ => {
                return Err(Error::Parse(format!(
                    "line {}: expected `u <unit> <value>`",
                    no + 1
                )))
            }
        }
    }
    let given: Vec<u64> = pairs.iter().map(|p| p.0).collect();
    let function = UnitFunction::from_pairs(&md, pairs)?;
    let missing_units = md
        .units()
        .into_iter()
        .filter(|u| !given.contains(u))
        .collect();
    Ok(ParsedUnitFunction {
        function,
        missing_units,
    })
}

pub fn format_unit_function(f: &UnitFunction) -> String {
    let mut out = format!("m={}\n", f.m());
    for u in f.units() {
        out.push_str(&format!("u {u} {}\n", fmt_rational(f.value(u))));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn parse_and_report_missing() {
        let p = parse_unit_function("# f1\nm=7\nu 1 3/4\nu 3 1\n\nu 6 0.5\n").unwrap();
        assert_eq!(p.function.value(1), &q(3, 4));
        assert_eq!(p.function.value(6), &q(1, 2));
        assert_eq!(p.missing_units, vec![2, 4, 5]);
        let again = parse_unit_function(&format_unit_function(&p.function)).unwrap();
        assert_eq!(again.function, p.function);
        assert!(again.missing_units.is_empty());
    }

    #[test]
    fn parse_errors() {
        assert!(parse_unit_function("").is_err());
        assert!(parse_unit_function("m=7\nu 0 1").is_err());
        assert!(parse_unit_function("m=7\nu 1 2").is_err());
        assert!(parse_unit_function("m=9\nu 1 1").is_err());
        assert!(parse_unit_function("m=7\nv 1 1").is_err());
    }
}

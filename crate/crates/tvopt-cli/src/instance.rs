//! Instance files: JSON objects with an `ell` payoff array, a `mu`
//! probability array, and an optional `name`.
//!
//! Array entries are either plain JSON numbers or strings. A string holds
//! one exactly parsed number: either a decimal literal or a fraction like
//! `"23/72"`, evaluated as a single correctly rounded division so that
//! rational weights can be transcribed without decimal rounding.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use tvopt::{PayoffVector, ProbabilityVector};

/// A parsed, validated instance.
#[derive(Debug)]
pub struct Instance {
    pub name: Option<String>,
    pub ell: PayoffVector,
    pub mu: ProbabilityVector,
}

#[derive(Debug, Deserialize)]
struct RawInstance {
    #[serde(default)]
    name: Option<String>,
    ell: Vec<RawNumber>,
    mu: Vec<RawNumber>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawNumber {
    Number(f64),
    Text(String),
}

/// Reads and validates an instance file.
pub fn load(path: &Path) -> Result<Instance, String> {
    let text = fs::read_to_string(path)
        .map_err(|error| format!("cannot read {}: {error}", path.display()))?;
    from_json(&text).map_err(|error| format!("{}: {error}", path.display()))
}

/// Parses instance JSON from a string.
pub fn from_json(text: &str) -> Result<Instance, String> {
    let raw: RawInstance =
        serde_json::from_str(text).map_err(|error| format!("malformed instance file: {error}"))?;
    let ell = PayoffVector::new(resolve_all(&raw.ell)?)
        .map_err(|error| format!("invalid ell: {error}"))?;
    let mu = ProbabilityVector::new(resolve_all(&raw.mu)?)
        .map_err(|error| format!("invalid mu: {error}"))?;
    Ok(Instance {
        name: raw.name,
        ell,
        mu,
    })
}

/// Serializes an instance back to the file format with plain numbers.
///
/// `serde_json` prints the shortest representation that parses back to the
/// same `f64`, so writing and re-reading an instance is lossless. The
/// binary itself never writes instance files; this is the canonical writer
/// for tooling and is exercised by the round-trip tests.
#[allow(dead_code)]
pub fn to_json(instance: &Instance) -> String {
    #[derive(Serialize)]
    struct Flat<'a> {
        #[serde(skip_serializing_if = "Option::is_none")]
        name: Option<&'a str>,
        ell: &'a [f64],
        mu: &'a [f64],
    }
    let mut text = serde_json::to_string_pretty(&Flat {
        name: instance.name.as_deref(),
        ell: instance.ell.entries(),
        mu: instance.mu.entries(),
    })
    .expect("plain floats always serialize");
    text.push('\n');
    text
}

fn resolve_all(raw: &[RawNumber]) -> Result<Vec<f64>, String> {
    raw.iter().map(resolve).collect()
}

fn resolve(raw: &RawNumber) -> Result<f64, String> {
    match raw {
        RawNumber::Number(value) => Ok(*value),
        RawNumber::Text(text) => parse_number(text),
    }
}

/// Parses `"a/b"` as one rounded division of two decimals, or a plain
/// decimal otherwise.
pub fn parse_number(text: &str) -> Result<f64, String> {
    let trimmed = text.trim();
    if let Some((numerator, denominator)) = trimmed.split_once('/') {
        let numerator: f64 = numerator
            .trim()
            .parse()
            .map_err(|_| format!("cannot parse numerator of '{trimmed}'"))?;
        let denominator: f64 = denominator
            .trim()
            .parse()
            .map_err(|_| format!("cannot parse denominator of '{trimmed}'"))?;
        if denominator == 0.0 {
            return Err(format!("zero denominator in '{trimmed}'"));
        }
        Ok(numerator / denominator)
    } else {
        trimmed
            .parse()
            .map_err(|_| format!("cannot parse number '{trimmed}'"))
    }
}

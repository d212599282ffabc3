//! Text formats for algebras and measures, and the content hash that ties
//! them together.
//!
//! Algebra files (`.pea`) have a three-line header followed by the table:
//!
//! ```text
//! elements: 0 a a' 1
//! zero: 0
//! one: 1
//! 0 + 0 = 0
//! a + a' = 1
//! ```
//!
//! The body may instead be a JSON-style array of 3-element arrays
//! (`[["0","0","0"], ["a","a'","1"]]`). Canonical export always uses the
//! line form with triples sorted lexicographically by `(a, b)` labels; the
//! algebra's identity is the SHA-256 of that canonical export.
//!
//! Measure files (`.pm`) reference the algebra by hash and list one exact
//! rational per element, `label = p/q` in lowest terms, sorted by element
//! index:
//!
//! ```text
//! algebra: 3f5a…
//! 0 = 0
//! a = 1/2
//! ```

use crate::algebra::PseudoEffectAlgebra;
use crate::measure::{MeasureError, SignedMeasure};
use crate::Rat;
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::str::FromStr;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing `{0}:` header line")]
    MissingHeader(&'static str),
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse { line, message: message.into() }
}

/// Canonical algebra text: header plus `a + b = c` lines sorted by `(a, b)`.
pub fn canonical_text(
    labels: &[String],
    zero: &str,
    one: &str,
    triples: &[(String, String, String)],
) -> String {
    let mut sorted: Vec<&(String, String, String)> = triples.iter().collect();
    sorted.sort();
    sorted.dedup();
    let mut out = String::new();
    writeln!(out, "elements: {}", labels.join(" ")).unwrap();
    writeln!(out, "zero: {zero}").unwrap();
    writeln!(out, "one: {one}").unwrap();
    for (a, b, c) in sorted {
        writeln!(out, "{a} + {b} = {c}").unwrap();
    }
    out
}

/// SHA-256 of the canonical export, as lowercase hex.
pub fn content_hash(canonical: &str) -> String {
    let digest = Sha256::digest(canonical.as_bytes());
    let mut hex = String::with_capacity(64);
    for byte in digest {
        write!(hex, "{byte:02x}").unwrap();
    }
    hex
}

/// Canonical export of a validated algebra.
pub fn export_algebra(e: &PseudoEffectAlgebra) -> String {
    let triples: Vec<(String, String, String)> = e
        .triples()
        .iter()
        .map(|&(a, b, c)| {
            (
                e.label(a).to_string(),
                e.label(b).to_string(),
                e.label(c).to_string(),
            )
        })
        .collect();
    canonical_text(
        e.labels(),
        e.label(e.zero()),
        e.label(e.one()),
        &triples,
    )
}

/// Parse and validate an algebra file (line-form or JSON-array body).
pub fn parse_algebra(text: &str) -> Result<PseudoEffectAlgebra, FormatError> {
    let mut labels: Option<Vec<String>> = None;
    let mut zero: Option<String> = None;
    let mut one: Option<String> = None;
    let mut triples: Vec<(String, String, String)> = Vec::new();
    let mut json_body = String::new();
    let mut in_json = false;

    for (lineno, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        if in_json {
            json_body.push_str(line);
            continue;
        }
        if let Some(rest) = line.strip_prefix("elements:") {
            labels = Some(rest.split_whitespace().map(String::from).collect());
        } else if let Some(rest) = line.strip_prefix("zero:") {
            zero = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("one:") {
            one = Some(rest.trim().to_string());
        } else if line.starts_with('[') {
            in_json = true;
            json_body.push_str(line);
        } else {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.as_slice() {
                [a, "+", b, "=", c] => {
                    triples.push((a.to_string(), b.to_string(), c.to_string()))
                }
                _ => {
                    return Err(parse_err(
                        lineno + 1,
                        format!("expected `a + b = c`, got `{line}`"),
                    ))
                }
            }
        }
    }

    if in_json {
        let parsed: Vec<[String; 3]> = serde_json::from_str(&json_body)
            .map_err(|e| parse_err(0, format!("invalid JSON triple array: {e}")))?;
        triples.extend(parsed.into_iter().map(|[a, b, c]| (a, b, c)));
    }

    let labels = labels.ok_or(FormatError::MissingHeader("elements"))?;
    let zero = zero.ok_or(FormatError::MissingHeader("zero"))?;
    let one = one.ok_or(FormatError::MissingHeader("one"))?;
    Ok(PseudoEffectAlgebra::build(labels, &zero, &one, &triples)?)
}

/// Canonical export of a signed measure, sorted by element index.
pub fn export_measure(e: &PseudoEffectAlgebra, m: &SignedMeasure) -> String {
    let mut out = String::new();
    writeln!(out, "algebra: {}", e.content_hash()).unwrap();
    for x in e.elements() {
        writeln!(out, "{} = {}", e.label(x), m.value(x)).unwrap();
    }
    out
}

/// Parse a measure file against its algebra.
///
/// The header hash must match `e`, every element must be assigned exactly
/// once, and the values must validate as a signed measure.
pub fn parse_measure(e: &PseudoEffectAlgebra, text: &str) -> Result<SignedMeasure, FormatError> {
    let mut hash: Option<String> = None;
    let mut values: Vec<Option<Rat>> = vec![None; e.n()];
    for (lineno, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("algebra:") {
            hash = Some(rest.trim().to_string());
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let [label, "=", value] = tokens.as_slice() else {
            return Err(parse_err(
                lineno + 1,
                format!("expected `label = p/q`, got `{line}`"),
            ));
        };
        let x = e
            .elem(label)
            .ok_or_else(|| parse_err(lineno + 1, format!("unknown element `{label}`")))?;
        let v = Rat::from_str(value)
            .map_err(|err| parse_err(lineno + 1, format!("bad rational `{value}`: {err}")))?;
        if values[x.idx()].replace(v).is_some() {
            return Err(parse_err(lineno + 1, format!("element `{label}` assigned twice")));
        }
    }
    let hash = hash.ok_or(FormatError::MissingHeader("algebra"))?;
    if hash != e.content_hash() {
        return Err(MeasureError::AlgebraMismatch {
            expected: e.content_hash().to_string(),
            got: hash,
        }
        .into());
    }
    let values: Vec<Rat> = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| parse_err(0, format!("element `{}` missing a value", e.labels()[i])))
        })
        .collect::<Result<_, _>>()?;
    Ok(SignedMeasure::validate(e, values)?)
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

//! Plain-text coefficient table files.
//!
//! ```text
//! # function=gamma
//! # digits=30
//! # ncoeffs=53
//! # convention=half-a0
//! # argmap=inverse-z
//! # normalization=2-over-m
//! # precision=40
//! # nodes=152
//! # oracle_digits=40
//! # source=stirling-oracle
//! # tail_bound=6.512e-31
//! 0 +2.0844437...e0
//! 1 +1.6...e-1
//! ```
//!
//! Coefficients are written with `precision` significant digits. Reading a
//! file and writing it again reproduces it byte for byte.

use std::collections::BTreeMap;
use std::path::Path;

use crate::chebcore::{ArgMap, ChebSeries};
use crate::error::{Error, Result};
use crate::gammafam::{FunctionKind, FunctionTable, Provenance};
use crate::mp;

const CONVENTION: &str = "half-a0";
const ARGMAP: &str = "inverse-z";
const NORMALIZATION: &str = "2-over-m";

/// Renders a table in the file format.
pub fn to_text(table: &FunctionTable) -> String {
    let series = table.series();
    let prov = table.provenance();
    let precision = series.precision_digits();
    let tail = table
        .tail_bound()
        .map(|t| format!("{t:.6e}"))
        .unwrap_or_else(|| "unknown".into());
    let mut out = String::new();
    let mut header = |k: &str, v: &dyn std::fmt::Display| out.push_str(&format!("# {k}={v}\n"));
    header("function", &table.kind());
    header("digits", &table.target_digits());
    header("ncoeffs", &series.len());
    header("convention", &CONVENTION);
    header("argmap", &ARGMAP);
    header("normalization", &NORMALIZATION);
    header("precision", &precision);
    header("nodes", &prov.node_count_m);
    header("oracle_digits", &prov.oracle_digits);
    header("source", &prov.source);
    header("tail_bound", &tail);
    for (r, c) in series.coeffs().iter().enumerate() {
        out.push_str(&format!("{r} {}\n", mp::format_sci(c, precision)));
    }
    out
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the file format.
pub fn from_text(text: &str) -> Result<FunctionTable> {
    let mut headers: BTreeMap<String, (usize, String)> = BTreeMap::new();
    let mut coeff_lines: Vec<(usize, &str)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(h) = line.strip_prefix('#') {
            if !coeff_lines.is_empty() {
                return Err(parse_err(line_no, "header line after coefficients"));
            }
            let (k, v) = h
                .trim()
                .split_once('=')
                .ok_or_else(|| parse_err(line_no, format!("expected key=value, got '{h}'")))?;
            headers.insert(k.trim().to_string(), (line_no, v.trim().to_string()));
        } else {
            coeff_lines.push((line_no, line));
        }
    }

    let last_header = headers.values().map(|(l, _)| *l).max().unwrap_or(1);
    let get = |key: &str| -> Result<(usize, &str)> {
        headers
            .get(key)
            .map(|(l, v)| (*l, v.as_str()))
            .ok_or_else(|| parse_err(last_header, format!("missing header '{key}'")))
    };
    let number = |key: &str| -> Result<usize> {
        let (l, v) = get(key)?;
        v.parse()
            .map_err(|_| parse_err(l, format!("'{key}' must be a nonnegative integer, got '{v}'")))
    };
    let expect = |key: &str, want: &str| -> Result<()> {
        let (l, v) = get(key)?;
        if v != want {
            return Err(parse_err(l, format!("unsupported {key} '{v}', expected '{want}'")));
        }
        Ok(())
    };

    let (kind_line, kind_name) = get("function")?;
    let kind: FunctionKind = kind_name
        .parse()
        .map_err(|e: Error| parse_err(kind_line, e.to_string()))?;
    let digits = number("digits")?;
    if digits == 0 {
        return Err(parse_err(get("digits")?.0, "digits must be positive"));
    }
    let ncoeffs = number("ncoeffs")?;
    expect("convention", CONVENTION)?;
    expect("argmap", ARGMAP)?;
    expect("normalization", NORMALIZATION)?;
    let precision = if headers.contains_key("precision") {
        number("precision")?
    } else {
        digits + crate::chebcore::DEFAULT_EXTRA_DIGITS
    };
    if precision == 0 {
        return Err(parse_err(get("precision")?.0, "precision must be positive"));
    }
    let optional = |key: &str| -> Result<usize> {
        if headers.contains_key(key) {
            number(key)
        } else {
            Ok(0)
        }
    };
    let provenance = Provenance {
        node_count_m: optional("nodes")?,
        work_digits: precision,
        oracle_digits: optional("oracle_digits")?,
        source: headers
            .get("source")
            .map(|(_, v)| v.clone())
            .unwrap_or_else(|| "unknown".into()),
    };
    let tail_bound = match headers.get("tail_bound") {
        None => None,
        Some((_, v)) if v == "unknown" => None,
        Some((l, v)) => Some(
            v.parse::<f64>()
                .ok()
                .filter(|t| t.is_finite() && *t >= 0.0)
                .ok_or_else(|| parse_err(*l, format!("bad tail_bound '{v}'")))?,
        ),
    };

    let bits = mp::bits_for_digits(precision);
    let mut coeffs = Vec::with_capacity(coeff_lines.len());
    for (expected, (line_no, line)) in coeff_lines.iter().enumerate() {
        let mut parts = line.split_whitespace();
        let (idx, val) = match (parts.next(), parts.next(), parts.next()) {
            (Some(i), Some(v), None) => (i, v),
            _ => {
                return Err(parse_err(*line_no, "expected '<index> <signed decimal>'"));
            }
        };
        let idx: usize = idx
            .parse()
            .map_err(|_| parse_err(*line_no, format!("bad coefficient index '{idx}'")))?;
        if idx != expected {
            return Err(parse_err(
                *line_no,
                format!("coefficient index {idx} out of sequence, expected {expected}"),
            ));
        }
        if !(val.starts_with('+') || val.starts_with('-')) {
            return Err(parse_err(*line_no, format!("coefficient '{val}' needs an explicit sign")));
        }
        let c = mp::parse_decimal(val, bits)
            .ok_or_else(|| parse_err(*line_no, format!("bad decimal '{val}'")))?;
        coeffs.push(c);
    }
    if coeffs.len() != ncoeffs {
        let line = coeff_lines.last().map(|(l, _)| *l).unwrap_or(last_header);
        return Err(parse_err(
            line,
            format!("header says {ncoeffs} coefficients, found {}", coeffs.len()),
        ));
    }
    let series = ChebSeries::new(coeffs, ArgMap::InverseZ, precision)
        .map_err(|e| parse_err(last_header, e.to_string()))?;
    FunctionTable::from_parts(kind, series, digits, provenance, tail_bound)
}

pub fn save(table: &FunctionTable, path: &Path) -> Result<()> {
    std::fs::write(path, to_text(table))?;
    Ok(())
}

pub fn load(path: &Path) -> Result<FunctionTable> {
    from_text(&std::fs::read_to_string(path)?)
}

//! Exchange formats. Big integers are always decimal strings in JSON, and
//! rationals are written `p/q`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebraics::AlgebraicEquation;
use crate::error::Error;
use crate::genfunc::CoeffSeries;
use crate::poly::IntPoly;
use crate::recurrence::Recurrence;

fn bad(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

fn parse_int(s: &str) -> Result<BigInt, Error> {
    BigInt::from_str(s.trim()).map_err(|_| bad(format!("not an integer: {s:?}")))
}

fn parse_rational(s: &str) -> Result<BigRational, Error> {
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q == BigInt::from(0) {
                return Err(bad(format!("zero denominator: {s:?}")));
            }
            Ok(BigRational::new(parse_int(p)?, q))
        }
    }
}

fn rational_string(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn poly_strings(p: &IntPoly) -> Vec<String> {
    p.coeffs().iter().map(ToString::to_string).collect()
}

fn poly_from_strings(v: &[String]) -> Result<IntPoly, Error> {
    Ok(IntPoly::new(v.iter().map(|s| parse_int(s)).collect::<Result<_, _>>()?))
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T, Error> {
    serde_json::from_str(text).map_err(|e| bad(e.to_string()))
}

/// Accepts either the bare object or a guess report that nests it under `key`.
fn from_report<T: for<'de> Deserialize<'de>>(text: &str, key: &str) -> Result<T, Error> {
    let mut value: serde_json::Value = from_json(text)?;
    if let Some(inner) = value.get_mut(key) {
        if inner.is_null() {
            return Err(bad(format!("the report has no {key}")));
        }
        value = inner.take();
    }
    serde_json::from_value(value).map_err(|e| bad(e.to_string()))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data always serializes")
}

/// `{"n": .., "value": ".."}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountJson {
    pub n: usize,
    pub value: String,
}

pub fn count_to_json(n: usize, value: &impl ToString) -> String {
    to_json(&CountJson {
        n,
        value: value.to_string(),
    })
}

/// JSON array of decimal strings.
pub fn sequence_to_json(terms: &[BigInt]) -> String {
    to_json(&terms.iter().map(ToString::to_string).collect::<Vec<_>>())
}

/// Accepts an array of decimal strings (or plain JSON integers).
pub fn sequence_from_json(text: &str) -> Result<Vec<BigInt>, Error> {
    let raw: Vec<serde_json::Value> = from_json(text)?;
    raw.iter()
        .map(|v| match v {
            serde_json::Value::String(s) => parse_int(s),
            serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => parse_int(&n.to_string()),
            other => Err(bad(format!("not an integer: {other}"))),
        })
        .collect()
}

/// CSV with header `n,value`, indices starting at 0.
pub fn sequence_to_csv(terms: &[BigInt]) -> String {
    let mut out = String::from("n,value\n");
    for (n, t) in terms.iter().enumerate() {
        out.push_str(&format!("{n},{t}\n"));
    }
    out
}

/// Reads `n,value` CSV; rows must be numbered `0, 1, 2, ..`.
pub fn sequence_from_csv(text: &str) -> Result<Vec<BigInt>, Error> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    match lines.next() {
        Some(h) if h.trim() == "n,value" => {}
        _ => return Err(bad("CSV header must be n,value")),
    }
    lines
        .enumerate()
        .map(|(expect, line)| {
            let (n, v) = line
                .split_once(',')
                .ok_or_else(|| bad(format!("bad CSV row: {line:?}")))?;
            if n.trim().parse::<usize>().ok() != Some(expect) {
                return Err(bad(format!("CSV row {expect} has index {n:?}")));
            }
            parse_int(v)
        })
        .collect()
}

/// Sequence from JSON or CSV, detected from the first character.
pub fn sequence_from_text(text: &str) -> Result<Vec<BigInt>, Error> {
    if text.trim_start().starts_with('[') {
        sequence_from_json(text)
    } else {
        sequence_from_csv(text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub order: usize,
    pub coeffs: Vec<String>,
}

pub fn series_to_json(s: &CoeffSeries) -> String {
    to_json(&SeriesJson {
        order: s.order(),
        coeffs: s.coeffs().iter().map(rational_string).collect(),
    })
}

pub fn series_from_json(text: &str) -> Result<CoeffSeries, Error> {
    let dto: SeriesJson = from_json(text)?;
    if dto.coeffs.len() != dto.order {
        return Err(bad(format!(
            "series order {} but {} coefficients",
            dto.order,
            dto.coeffs.len()
        )));
    }
    Ok(CoeffSeries::new(
        dto.coeffs.iter().map(|c| parse_rational(c)).collect::<Result<_, _>>()?,
    ))
}

/// Series from JSON, or from a plain sequence (JSON array or CSV).
pub fn series_from_text(text: &str) -> Result<CoeffSeries, Error> {
    if text.trim_start().starts_with('{') {
        series_from_json(text)
    } else {
        Ok(CoeffSeries::from_ints(sequence_from_text(text)?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationJson {
    pub y_degree: usize,
    pub coeffs: Vec<Vec<String>>,
}

pub fn equation_to_json(eq: &AlgebraicEquation) -> String {
    to_json(&EquationJson {
        y_degree: eq.y_degree(),
        coeffs: eq.coeffs().iter().map(poly_strings).collect(),
    })
}

/// Parses and normalizes an equation.
pub fn equation_from_json(text: &str) -> Result<AlgebraicEquation, Error> {
    let dto: EquationJson = from_report(text, "equation")?;
    if dto.coeffs.len() != dto.y_degree + 1 {
        return Err(bad(format!(
            "y_degree {} needs {} coefficient lists, got {}",
            dto.y_degree,
            dto.y_degree + 1,
            dto.coeffs.len()
        )));
    }
    let polys = dto
        .coeffs
        .iter()
        .map(|c| poly_from_strings(c))
        .collect::<Result<Vec<_>, _>>()?;
    AlgebraicEquation::new(polys).ok_or_else(|| bad("equation is identically zero"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceJson {
    pub order: usize,
    pub coeff_polys: Vec<Vec<String>>,
}

pub fn recurrence_to_json(rec: &Recurrence) -> String {
    to_json(&RecurrenceJson {
        order: rec.order(),
        coeff_polys: rec.coeff_polys().iter().map(poly_strings).collect(),
    })
}

/// Parses and normalizes a recurrence.
pub fn recurrence_from_json(text: &str) -> Result<Recurrence, Error> {
    let dto: RecurrenceJson = from_report(text, "recurrence")?;
    if dto.coeff_polys.len() != dto.order + 1 {
        return Err(bad(format!(
            "order {} needs {} coefficient polynomials, got {}",
            dto.order,
            dto.order + 1,
            dto.coeff_polys.len()
        )));
    }
    let polys = dto
        .coeff_polys
        .iter()
        .map(|c| poly_from_strings(c))
        .collect::<Result<Vec<_>, _>>()?;
    Recurrence::new(polys).ok_or_else(|| bad("recurrence is identically zero"))
}

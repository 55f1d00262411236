//! Text grammar for exact values.
//!
//! ```text
//! rational  := ["-"] digits ["/" digits]
//! gaussian  := [rational] ("+" | "-") [rational "*"] "i" | [rational "*"] "i"
//! poly      := "[" scalar ("," scalar)* "]"          lowest degree first
//! element   := scalar | poly | poly "/" poly
//! list      := "[" [element ("," element)*] "]"
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{FieldElement, Poly, Scalar};
use crate::error::{Error, Result};

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational literal `{s}`"));
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let (p, q) = match body.split_once('/') {
        Some((p, q)) => (p, q),
        None => (body, "1"),
    };
    if !digits(p) || !digits(q) {
        return Err(bad());
    }
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    let r = BigRational::new(p, q);
    Ok(if neg { -r } else { r })
}

pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty scalar literal".into()));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Scalar::from_rational(parse_rational(&s)?));
    };
    // split into real part and signed imaginary coefficient
    let split = body
        .char_indices()
        .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
        .map(|(k, _)| k)
        .next_back();
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re = if re.is_empty() {
        BigRational::zero()
    } else {
        parse_rational(re)?
    };
    let im = match im.strip_suffix('*') {
        Some(coef) => parse_rational(coef)?,
        None => match im {
            "" | "+" => BigRational::from_integer(1.into()),
            "-" => BigRational::from_integer((-1).into()),
            _ => return Err(Error::Parse(format!("malformed gaussian literal `{s}`"))),
        },
    };
    Ok(Scalar::new(re, im))
}

/// Splits on `sep` at bracket depth zero.
pub fn split_top_level(s: &str, sep: char) -> Result<Vec<&str>> {
    let mut depth = 0i32;
    let mut parts = Vec::new();
    let mut start = 0;
    for (k, c) in s.char_indices() {
        match c {
            '[' | '{' => depth += 1,
            ']' | '}' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced brackets in `{s}`")));
                }
            }
            _ if c == sep && depth == 0 => {
                parts.push(&s[start..k]);
                start = k + c.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced brackets in `{s}`")));
    }
    parts.push(&s[start..]);
    Ok(parts)
}

/// Contents of a bracketed list, split at top level. `[]` yields no items.
pub fn list_items(s: &str) -> Result<Vec<&str>> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected a bracketed list, got `{s}`")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(split_top_level(inner, ',')?
        .into_iter()
        .map(str::trim)
        .collect())
}

pub fn parse_poly(s: &str) -> Result<Poly> {
    let items = list_items(s)?;
    if items.is_empty() {
        return Err(Error::Parse("empty coefficient list".into()));
    }
    Ok(Poly::new(
        items.into_iter().map(parse_scalar).collect::<Result<_>>()?,
    ))
}

pub fn parse_element(s: &str) -> Result<FieldElement> {
    let s = s.trim();
    if !s.starts_with('[') {
        return Ok(FieldElement::from_scalar(parse_scalar(s)?));
    }
    let parts = split_top_level(s, '/')?;
    match parts.as_slice() {
        [p] => Ok(FieldElement::from_poly(parse_poly(p)?)),
        [p, q] => FieldElement::normalize(parse_poly(p)?, parse_poly(q)?)
            .map_err(|_| Error::Parse(format!("zero denominator polynomial in `{s}`"))),
        _ => Err(Error::Parse(format!("malformed element literal `{s}`"))),
    }
}

pub fn parse_element_list(s: &str) -> Result<Vec<FieldElement>> {
    list_items(s)?.into_iter().map(parse_element).collect()
}

pub fn format_element_list(xs: &[FieldElement]) -> String {
    let items: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("[{}]", items.join(", "))
}

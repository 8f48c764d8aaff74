//! The compact textual form of Novikov elements:
//! `c1*T^(p1/q1) + c2*T^(p2/q2) + ...`, with `c`, `c*T^k`, and bare `T`
//! accepted, and a truncation suffix `mod T^(p/q)` or `exact`.

use novflow::novikov::{NovikovElement, Truncation};
use novflow::{Int, Novikov, Rat};
use num_traits::One;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextError(pub String);

impl std::fmt::Display for TextError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn parse_rational(s: &str) -> Result<Rat, TextError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: Int = num.parse().map_err(|_| TextError(format!("bad integer '{}'", num)))?;
    let d: Int = den.parse().map_err(|_| TextError(format!("bad integer '{}'", den)))?;
    if d <= 0.into() {
        return Err(TextError(format!("denominator must be positive in '{}'", s)));
    }
    Ok(Rat::new(n, d))
}

pub fn parse_truncation(s: &str) -> Result<Truncation<Int>, TextError> {
    let s = s.trim();
    if s == "exact" {
        return Ok(Truncation::Exact);
    }
    let inner = s
        .strip_prefix("mod T^")
        .map(|r| r.trim_start_matches('(').trim_end_matches(')'))
        .unwrap_or(s);
    Ok(Truncation::Finite(parse_rational(inner)?))
}

/// One term: `c`, `T`, `T^e`, `c*T^e`, `c*T^(p/q)`, with optional sign.
fn parse_term(s: &str) -> Result<(Int, Rat), TextError> {
    let mut s = s.trim();
    if s.is_empty() {
        return Err(TextError("empty term".into()));
    }
    let mut sign = 1i64;
    while let Some(rest) = s.strip_prefix('-').or_else(|| s.strip_prefix('+')) {
        if s.starts_with('-') {
            sign = -sign;
        }
        s = rest.trim();
    }
    let (coeff_str, exp_str) = match s.split_once('*') {
        Some((c, t)) => (c.trim(), Some(t.trim())),
        None => {
            if s.contains('T') {
                ("1", Some(s))
            } else {
                (s, None)
            }
        }
    };
    let coeff_owned;
    let coeff_str = if sign < 0 {
        coeff_owned = format!("-{}", coeff_str);
        coeff_owned.as_str()
    } else {
        coeff_str
    };
    let coeff: Int = coeff_str
        .parse()
        .map_err(|_| TextError(format!("bad coefficient '{}'", coeff_str)))?;
    let exp = match exp_str {
        None => Rat::new(0.into(), Int::one()),
        Some(t) => {
            let t = t.trim();
            if t == "T" {
                Rat::new(1.into(), Int::one())
            } else if let Some(e) = t.strip_prefix("T^") {
                parse_rational(e.trim_start_matches('(').trim_end_matches(')'))?
            } else {
                return Err(TextError(format!("bad monomial '{}'", t)));
            }
        }
    };
    Ok((coeff, exp))
}

/// Parse `c1*T^(p/q) + ... [mod T^(p/q) | exact]`. Minus signs join the
/// following term.
pub fn parse_element(s: &str) -> Result<Novikov, TextError> {
    let (body, truncation) = match s.split_once("mod") {
        Some((b, t)) => (b.trim(), parse_truncation(&format!("mod {}", t.trim()))?),
        None => {
            let body = s.trim();
            match body.strip_suffix("exact") {
                Some(b) => (b.trim(), Truncation::Exact),
                None => (body, Truncation::Exact),
            }
        }
    };
    if body == "0" || body.is_empty() {
        return Ok(NovikovElement::zero(truncation));
    }
    // Normalize "a - b" to "a + -b", then split on '+'.
    let normalized = body.replace(" - ", " + -").replace("+-", "+ -");
    let mut terms = Vec::new();
    for part in normalized.split('+') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        terms.push(parse_term(part)?);
    }
    Ok(NovikovElement::new(terms, truncation))
}

pub fn render_element(e: &Novikov) -> String {
    e.to_text()
}

pub fn render_truncation(t: &Truncation<Int>) -> String {
    t.to_string()
}

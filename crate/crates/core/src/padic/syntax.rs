//! Text syntax for integers: plain decimals with optional sign, or the
//! symbolic standard form `a*p^(b*p^k)`.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

use super::{PValue, StandardForm};
use crate::error::{Error, Result};
use crate::limits;
use crate::prime::Prime;

/// A parsed integer argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Int(BigInt),
    Form(StandardForm),
}

impl Parsed {
    /// The value seen through `p`. Forms must have been written with `p`.
    pub fn to_pvalue(&self, p: Prime) -> Result<PValue> {
        match self {
            Parsed::Int(x) => Ok(PValue::from_int(p, x)),
            Parsed::Form(f) => {
                if f.prime() != p {
                    return Err(Error::invalid(format!(
                        "'{f}' is written with prime {} but --p is {p}",
                        f.prime()
                    )));
                }
                Ok(PValue::NonZero(f.to_psplit()?))
            }
        }
    }

    /// The plain integer value; forms are materialized under the size guard.
    pub fn to_int(&self) -> Result<BigInt> {
        match self {
            Parsed::Int(x) => Ok(x.clone()),
            Parsed::Form(f) => f.materialize(),
        }
    }
}

fn decimal_int(tok: &str, whole: &str) -> Result<BigInt> {
    let digits = tok.strip_prefix(['+', '-']).unwrap_or(tok);
    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
        return Err(Error::invalid(format!(
            "malformed integer '{tok}' in '{whole}'"
        )));
    }
    let bits_estimate = (digits.len() as u64).saturating_mul(10) / 3;
    if bits_estimate > limits::max_bits() + 4 {
        return Err(Error::TooLarge {
            what: format!(
                "decimal literal with {} digits; write huge values as a*p^(b*p^k)",
                digits.len()
            ),
            bits: bits_estimate,
            limit: limits::max_bits(),
        });
    }
    tok.parse::<BigInt>()
        .map_err(|_| Error::invalid(format!("malformed integer '{tok}' in '{whole}'")))
}

fn decimal_nat(tok: &str, whole: &str) -> Result<BigUint> {
    if tok.starts_with(['+', '-']) {
        return Err(Error::invalid(format!(
            "expected unsigned integer, found '{tok}' in '{whole}'"
        )));
    }
    Ok(decimal_int(tok, whole)?.magnitude().clone())
}

fn parse_form(text: &str) -> Result<StandardForm> {
    let bad = |what: &str| Error::invalid(format!("malformed standard form '{text}': {what}"));
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let (a, rest) = s.split_once('*').ok_or_else(|| bad("missing '*'"))?;
    let (p1, rest) = rest.split_once("^(").ok_or_else(|| bad("missing '^('"))?;
    let inner = rest.strip_suffix(')').ok_or_else(|| bad("missing ')'"))?;
    let (b, rest) = inner
        .split_once('*')
        .ok_or_else(|| bad("missing '*' inside parentheses"))?;
    let (p2, k) = rest
        .split_once('^')
        .ok_or_else(|| bad("missing '^' inside parentheses"))?;

    let a = decimal_int(a, text)?;
    let p1 = decimal_nat(p1, text)?;
    let b = decimal_nat(b, text)?;
    let p2 = decimal_nat(p2, text)?;
    let k = decimal_nat(k, text)?;
    if p1 != p2 {
        return Err(bad(&format!("prime {p1} and {p2} differ")));
    }
    let p = p1
        .to_u64()
        .ok_or_else(|| bad(&format!("prime {p1} out of range")))
        .and_then(Prime::new)?;
    let k = k
        .to_u64()
        .ok_or_else(|| bad(&format!("k = {k} out of range")))?;
    StandardForm::new(p, a, b, k)
}

/// Parses a decimal integer or a standard-form string.
pub fn parse_value(text: &str) -> Result<Parsed> {
    let t = text.trim();
    if t.contains('*') || t.contains('^') {
        parse_form(t).map(Parsed::Form)
    } else {
        decimal_int(t, t).map(Parsed::Int)
    }
}

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ord_nat, pow_guarded, split_valuation};
use crate::error::{Error, Result};
use crate::limits;
use crate::prime::Prime;

/// A nonzero integer written as `unit · p^exponent` with `p ∤ unit`.
///
/// The integer itself is never built unless [`PSplit::materialize`] is
/// called, so the exponent may be arbitrarily large.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PSplit {
    prime: Prime,
    unit: BigInt,
    exponent: BigUint,
}

impl PSplit {
    pub fn new(prime: Prime, unit: BigInt, exponent: BigUint) -> Result<Self> {
        if unit.is_zero() {
            return Err(Error::invalid("unit must be nonzero"));
        }
        if unit.magnitude().is_multiple_of(&prime.big()) {
            return Err(Error::invalid(format!("{prime} divides unit {unit}")));
        }
        Ok(PSplit {
            prime,
            unit,
            exponent,
        })
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn unit(&self) -> &BigInt {
        &self.unit
    }

    pub fn exponent(&self) -> &BigUint {
        &self.exponent
    }

    pub fn is_negative(&self) -> bool {
        self.unit.is_negative()
    }

    /// Estimated bit length of `|unit · p^exponent|`, saturating.
    pub fn bits_estimate(&self) -> u64 {
        let e = self.exponent.to_u64().unwrap_or(u64::MAX);
        e.saturating_mul(self.prime.bits_ceil())
            .saturating_add(self.unit.bits())
    }

    /// Estimated decimal length of the materialized value:
    /// `⌊exponent·log10(p) + log10|unit|⌋ + 1` in 18-digit fixed point.
    pub fn estimated_digits(&self) -> BigUint {
        const SCALE: u64 = 1_000_000_000_000_000_000;
        let log10_p = ((self.prime.get() as f64).log10() * SCALE as f64).round() as u64;
        let unit = self.unit.magnitude().to_string();
        let lead_len = unit.len().min(17);
        let lead: f64 = unit[..lead_len].parse().expect("decimal digits");
        let lead_frac = (lead.log10() - (lead_len - 1) as f64).clamp(0.0, 1.0);
        let unit_scaled = BigUint::from(unit.len() as u64 - 1) * SCALE
            + BigUint::from((lead_frac * SCALE as f64) as u64);
        let total = &self.exponent * BigUint::from(log10_p) + unit_scaled;
        total / BigUint::from(SCALE) + 1u32
    }

    pub fn materialize(&self) -> Result<BigInt> {
        limits::check_bits(&format!("materializing {self}"), self.bits_estimate())?;
        let power = pow_guarded(self.prime, &self.exponent)?;
        Ok(&self.unit * BigInt::from(power))
    }

    /// Symbolic `D_p`: `D_p(u·p^e) = (u·e/p^j)·p^(e−1+j)` with `j = ord_p(e)`.
    pub fn dp(&self) -> PValue {
        if self.exponent.is_zero() {
            return PValue::Zero;
        }
        let (j, e_unit) = split_valuation(self.prime, &self.exponent);
        let unit = &self.unit * BigInt::from(e_unit);
        let exponent = &self.exponent - 1u32 + BigUint::from(j);
        PValue::NonZero(PSplit {
            prime: self.prime,
            unit,
            exponent,
        })
    }
}

impl fmt::Display for PSplit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent.is_zero() {
            write!(f, "{}", self.unit)
        } else {
            match to_standard(self) {
                Ok(sf) => sf.fmt(f),
                Err(_) => write!(f, "{}*{}^{}", self.unit, self.prime, self.exponent),
            }
        }
    }
}

/// An integer viewed through `p`: zero, or a [`PSplit`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PValue {
    Zero,
    NonZero(PSplit),
}

impl PValue {
    pub fn from_int(p: Prime, x: &BigInt) -> Self {
        if x.is_zero() {
            PValue::Zero
        } else {
            PValue::NonZero(psplit(p, x).expect("nonzero"))
        }
    }

    pub fn ord(&self) -> super::ExtNat {
        match self {
            PValue::Zero => super::ExtNat::Infinity,
            PValue::NonZero(s) => super::ExtNat::Finite(s.exponent.clone()),
        }
    }

    pub fn dp(&self) -> PValue {
        match self {
            PValue::Zero => PValue::Zero,
            PValue::NonZero(s) => s.dp(),
        }
    }

    pub fn as_split(&self) -> Option<&PSplit> {
        match self {
            PValue::Zero => None,
            PValue::NonZero(s) => Some(s),
        }
    }

    pub fn materialize(&self) -> Result<BigInt> {
        match self {
            PValue::Zero => Ok(BigInt::zero()),
            PValue::NonZero(s) => s.materialize(),
        }
    }
}

impl From<PSplit> for PValue {
    fn from(s: PSplit) -> Self {
        PValue::NonZero(s)
    }
}

impl fmt::Display for PValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PValue::Zero => f.write_str("0"),
            PValue::NonZero(s) => s.fmt(f),
        }
    }
}

/// The unique writing `x = a·p^(b·p^k)` with `p ∤ ab`, `b > 0`, of an
/// integer with `ord_p(x) > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StandardForm {
    prime: Prime,
    a: BigInt,
    b: BigUint,
    k: u64,
}

impl StandardForm {
    pub fn new(prime: Prime, a: BigInt, b: BigUint, k: u64) -> Result<Self> {
        let pb = prime.big();
        if a.is_zero() || a.magnitude().is_multiple_of(&pb) {
            return Err(Error::invalid(format!(
                "a = {a} must be nonzero and prime to {prime}"
            )));
        }
        if b.is_zero() || b.is_multiple_of(&pb) {
            return Err(Error::invalid(format!(
                "b = {b} must be positive and prime to {prime}"
            )));
        }
        Ok(StandardForm { prime, a, b, k })
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigUint {
        &self.b
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// The exponent `b·p^k`, guarded.
    pub fn exponent(&self) -> Result<BigUint> {
        let bits = self
            .k
            .saturating_mul(self.prime.bits_floor())
            .saturating_add(self.b.bits());
        limits::check_bits(&format!("exponent of {self}"), bits)?;
        Ok(&self.b * pow_guarded(self.prime, &BigUint::from(self.k))?)
    }

    pub fn to_psplit(&self) -> Result<PSplit> {
        Ok(PSplit {
            prime: self.prime,
            unit: self.a.clone(),
            exponent: self.exponent()?,
        })
    }

    pub fn materialize(&self) -> Result<BigInt> {
        self.to_psplit()?.materialize()
    }
}

impl fmt::Display for StandardForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.prime;
        write!(f, "{}*{p}^({}*{p}^{})", self.a, self.b, self.k)
    }
}

/// Factors out the p-part of a nonzero integer; the sign stays in the unit.
pub fn psplit(p: Prime, x: &BigInt) -> Result<PSplit> {
    if x.is_zero() {
        return Err(Error::invalid("cannot split 0"));
    }
    let (v, m) = split_valuation(p, x.magnitude());
    let sign = if x.is_negative() {
        Sign::Minus
    } else {
        Sign::Plus
    };
    Ok(PSplit {
        prime: p,
        unit: BigInt::from_biguint(sign, m),
        exponent: BigUint::from(v),
    })
}

/// Converts a split with positive exponent into standard form:
/// `k = ord_p(exponent)`, `b = exponent / p^k`.
pub fn to_standard(s: &PSplit) -> Result<StandardForm> {
    let k = ord_nat(s.prime, &s.exponent)
        .ok_or_else(|| Error::invalid(format!("{} has ord_p = 0 and no standard form", s.unit)))?;
    let (_, b) = split_valuation(s.prime, &s.exponent);
    Ok(StandardForm {
        prime: s.prime,
        a: s.unit.clone(),
        b,
        k,
    })
}

/// `D_p(a·p^(b·p^k)) = ab·p^(b·p^k + k − 1)`, computed without building the
/// power.
pub fn dp_standard(x: &StandardForm) -> Result<PSplit> {
    let exponent = x.exponent()? + BigUint::from(x.k) - BigUint::one();
    Ok(PSplit {
        prime: x.prime,
        unit: &x.a * BigInt::from(x.b.clone()),
        exponent,
    })
}

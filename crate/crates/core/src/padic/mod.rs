//! Exact p-adic arithmetic: `ord_p`, `⌊x⌋_p`, the partial derivative `D_p`
//! on plain integers and on symbolic forms, and the full derivative `D`.

mod forms;
mod full;
mod syntax;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::limits;
use crate::prime::Prime;

pub use forms::{dp_standard, psplit, to_standard, PSplit, PValue, StandardForm};
pub use full::{d_full, factor};
pub use syntax::{parse_value, Parsed};

/// A natural number or `+∞`; the codomain of `ord_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtNat {
    Finite(BigUint),
    Infinity,
}

impl ExtNat {
    pub fn finite(v: impl Into<BigUint>) -> Self {
        ExtNat::Finite(v.into())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtNat::Infinity)
    }

    pub fn as_finite(&self) -> Option<&BigUint> {
        match self {
            ExtNat::Finite(v) => Some(v),
            ExtNat::Infinity => None,
        }
    }
}

impl PartialOrd for ExtNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtNat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtNat::Infinity, ExtNat::Infinity) => Ordering::Equal,
            (ExtNat::Infinity, _) => Ordering::Greater,
            (_, ExtNat::Infinity) => Ordering::Less,
            (ExtNat::Finite(a), ExtNat::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(v) => v.fmt(f),
            ExtNat::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtNat::Finite(v) => crate::render::json_nat(v).serialize(s),
            ExtNat::Infinity => s.serialize_str("inf"),
        }
    }
}

/// Splits `n > 0` as `p^v · m` with `p ∤ m`, returning `(v, m)`.
///
/// Uses repeated squaring of `p` so the cost is logarithmic in `v` rather
/// than linear.
pub(crate) fn split_valuation(p: Prime, n: &BigUint) -> (u64, BigUint) {
    debug_assert!(!n.is_zero());
    if p.get() == 2 {
        let v = n.trailing_zeros().unwrap_or(0);
        return (v, n >> v);
    }
    if let Some(small) = n.to_u64() {
        let (mut v, mut m) = (0u64, small);
        while m % p.get() == 0 {
            m /= p.get();
            v += 1;
        }
        return (v, BigUint::from(m));
    }
    let mut powers = vec![p.big()];
    loop {
        let last = powers.last().unwrap();
        if last.bits() * 2 - 1 > n.bits() {
            break;
        }
        let sq = last * last;
        if &sq > n {
            break;
        }
        powers.push(sq);
    }
    let mut v = 0u64;
    let mut m = n.clone();
    for (j, pw) in powers.iter().enumerate().rev() {
        let (q, r) = m.div_rem(pw);
        if r.is_zero() {
            m = q;
            v += 1 << j;
        }
    }
    (v, m)
}

/// `ord_p` of a natural number; `None` at zero.
pub(crate) fn ord_nat(p: Prime, n: &BigUint) -> Option<u64> {
    if n.is_zero() {
        None
    } else {
        Some(split_valuation(p, n).0)
    }
}

/// The p-adic valuation of `x`; `Infinity` exactly when `x = 0`.
pub fn ord(p: Prime, x: &BigInt) -> ExtNat {
    match ord_nat(p, x.magnitude()) {
        Some(v) => ExtNat::finite(v),
        None => ExtNat::Infinity,
    }
}

/// The largest multiple of `p` that is `≤ x`, using the floored modulus
/// (`x mod p ∈ [0, p−1]` for negative `x` too).
pub fn pfloor(p: Prime, x: &BigInt) -> BigInt {
    let pb = BigInt::from(p.get());
    x - x.mod_floor(&pb)
}

/// `D_p(x) = (x/p)·ord_p(x)`, with `D_p(0) = 0`.
pub fn dp(p: Prime, x: &BigInt) -> BigInt {
    if x.is_zero() {
        return BigInt::zero();
    }
    let (v, _) = split_valuation(p, x.magnitude());
    if v == 0 {
        return BigInt::zero();
    }
    (x / BigInt::from(p.get())) * BigInt::from(v)
}

/// `p^e`, refusing anything beyond the bit guard.
pub(crate) fn pow_guarded(p: Prime, e: &BigUint) -> Result<BigUint> {
    let e = e
        .to_u64()
        .filter(|e| e.saturating_mul(p.bits_floor()) <= limits::max_bits())
        .ok_or_else(|| Error::TooLarge {
            what: format!("{p}^{e}"),
            bits: e
                .to_u64()
                .map_or(u64::MAX, |e| e.saturating_mul(p.bits_floor())),
            limit: limits::max_bits(),
        })?;
    Ok(num_traits::pow(p.big(), e as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn ord_oracle(p: u64, x: i64) -> Option<u64> {
        if x == 0 {
            return None;
        }
        let mut x = x.unsigned_abs();
        let mut v = 0;
        while x.is_multiple_of(p) {
            x /= p;
            v += 1;
        }
        Some(v)
    }

    #[test]
    fn ord_examples() {
        assert_eq!(ord(pr(2), &big(72)), ExtNat::finite(3u32));
        assert_eq!(ord(pr(5), &big(0)), ExtNat::Infinity);
        assert_eq!(ord(pr(3), &big(10)), ExtNat::finite(0u32));
    }

    #[test]
    fn ord_matches_repeated_division() {
        for p in [2, 3, 5, 7] {
            for x in -3000..=3000 {
                let got = ord(pr(p), &big(x)).as_finite().map(|v| v.to_u64().unwrap());
                assert_eq!(got, ord_oracle(p, x), "p={p} x={x}");
            }
        }
    }

    #[test]
    fn ord_of_huge_powers() {
        for p in [3u64, 5, 7, 101] {
            for e in [1u32, 63, 64, 65, 1000, 4097] {
                let x = num_traits::pow(BigUint::from(p), e as usize) * BigUint::from(p + 1);
                assert_eq!(ord_nat(pr(p), &x), Some(e as u64), "p={p} e={e}");
            }
        }
    }

    #[test]
    fn infinity_is_largest() {
        assert!(ExtNat::Infinity > ExtNat::finite(u64::MAX));
        assert!(ExtNat::finite(3u32) < ExtNat::finite(4u32));
        assert_eq!(ExtNat::Infinity.to_string(), "inf");
    }

    #[test]
    fn pfloor_examples() {
        assert_eq!(pfloor(pr(2), &big(9)), big(8));
        assert_eq!(pfloor(pr(5), &big(30)), big(30));
        assert_eq!(pfloor(pr(3), &big(-4)), big(-6));
    }

    #[test]
    fn pfloor_is_largest_multiple_below() {
        for p in [2i64, 3, 5, 7] {
            for x in -200i64..=200 {
                let oracle = (-1000..=x).rev().find(|m| m % p == 0).unwrap();
                assert_eq!(pfloor(pr(p as u64), &big(x)), big(oracle));
            }
        }
    }

    #[test]
    fn dp_examples() {
        assert_eq!(dp(pr(2), &big(72)), big(108));
        assert_eq!(dp(pr(7), &big(0)), big(0));
        assert_eq!(dp(pr(2), &big(1024)), big(5120));
        assert_eq!(dp(pr(2), &big(1280)), big(5120));
        assert_eq!(dp(pr(3), &big(10)), big(0));
        assert_eq!(dp(pr(2), &big(2)), big(1));
    }

    #[test]
    fn guarded_power() {
        assert_eq!(
            pow_guarded(pr(3), &BigUint::from(4u32)).unwrap(),
            BigUint::from(81u32)
        );
        let huge = BigUint::from(limits::max_bits() + 1);
        assert!(matches!(
            pow_guarded(pr(2), &huge),
            Err(Error::TooLarge { .. })
        ));
    }
}

//! Anti-partial derivatives: every `x` with `D_p(x) = y`.
//!
//! Writing `x = a·p^(b·p^k)` and `y = a_0·p^{ℓ_0}`, `D_p(x) = y` holds iff
//! `ab = a_0` and `b·p^k + k − 1 = ℓ_0`. So `k` determines `b`, which
//! determines `a`, and `k ≤ log_p(ℓ_0 + 1)`.

mod construct;
mod cset;

pub use construct::{
    construct_a0, construct_b0, construct_k0, construct_with_n_antis, is_construction_k0,
    ConstructionResult,
};
pub use cset::{
    c_set, c_set_rational, count_anti_rational, count_rational_pairs, expand_c,
    rational_exponent_form, RationalCSet,
};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::limits;
use crate::padic::{PSplit, PValue, StandardForm};
use crate::prime::Prime;

pub const ZERO_PREIMAGE: &str = "{x : p ∤ x} ∪ {0}";

/// All integral anti-partial derivatives of a nonzero target, sorted by
/// ascending `k`. The first member is the primitive one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntiSet {
    pub prime: Prime,
    pub target: PSplit,
    pub members: Vec<StandardForm>,
    /// `c` with `k = p^{k_0}·c + k_0`, aligned with `members`.
    pub c_values: Vec<u64>,
}

impl AntiSet {
    pub fn count(&self) -> usize {
        self.members.len()
    }

    pub fn primitive(&self) -> Option<&StandardForm> {
        self.members.first()
    }

    pub fn primitive_index(&self) -> Option<usize> {
        (!self.members.is_empty()).then_some(0)
    }
}

fn nonzero_target(y: &PValue) -> Result<&PSplit> {
    y.as_split().ok_or(Error::InfiniteSet(ZERO_PREIMAGE))
}

/// Pairs `(k, b)` with `b = (ℓ_0 + 1 − k)/p^k` a positive integer prime to
/// `p`, ascending in `k`. This ignores whether `b | a_0`.
pub(crate) fn exponent_pairs(p: Prime, ell0: &BigUint) -> Result<Vec<(u64, BigUint)>> {
    limits::check_bits("target valuation", ell0.bits())?;
    let pb = p.big();
    let total = ell0 + 1u32;
    let mut out = Vec::new();
    let mut pk = BigUint::one();
    for k in 0u64.. {
        let kb = BigUint::from(k);
        if kb > total {
            break;
        }
        let num = &total - &kb;
        if pk > num {
            break;
        }
        let (b, r) = num.div_rem(&pk);
        if r.is_zero() && !b.is_multiple_of(&pb) {
            out.push((k, b));
        }
        pk *= &pb;
    }
    Ok(out)
}

pub fn anti_derivatives(p: Prime, y: &PValue) -> Result<AntiSet> {
    let target = nonzero_target(y)?;
    let a0 = target.unit();
    let mut members = Vec::new();
    if target.exponent().is_zero() {
        // D_p(x) = y with p ∤ y forces x = y·p
        members.push(StandardForm::new(p, a0.clone(), BigUint::one(), 0)?);
    } else {
        for (k, b) in exponent_pairs(p, target.exponent())? {
            let (a, r) = a0.div_rem(&BigInt::from(b.clone()));
            if r.is_zero() {
                members.push(StandardForm::new(p, a, b, k)?);
            }
        }
    }
    let c_values = match members.first() {
        None => Vec::new(),
        Some(x0) => {
            let k0 = x0.k();
            let step = p_pow_u64(p, k0);
            members
                .iter()
                .map(|m| match step {
                    Some(s) => (m.k() - k0) / s,
                    None => 0,
                })
                .collect()
        }
    };
    Ok(AntiSet {
        prime: p,
        target: target.clone(),
        members,
        c_values,
    })
}

pub fn count_anti(p: Prime, y: &PValue) -> Result<usize> {
    Ok(anti_derivatives(p, y)?.count())
}

pub fn primitive_anti(p: Prime, y: &PValue) -> Result<StandardForm> {
    let set = anti_derivatives(p, y)?;
    set.members
        .into_iter()
        .next()
        .ok_or_else(|| Error::EmptySet(y.to_string()))
}

/// `p^e` when it fits in a u64.
pub(crate) fn p_pow_u64(p: Prime, e: u64) -> Option<u64> {
    u32::try_from(e).ok().and_then(|e| p.get().checked_pow(e))
}

pub(crate) fn to_u64_or_too_large(v: &BigUint, what: &str) -> Result<u64> {
    v.to_u64().ok_or_else(|| Error::TooLarge {
        what: what.to_string(),
        bits: v.bits(),
        limit: 64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn pv(p: u64, y: i64) -> PValue {
        PValue::from_int(pr(p), &BigInt::from(y))
    }

    fn values(set: &AntiSet) -> Vec<BigInt> {
        set.members
            .iter()
            .map(|m| m.materialize().unwrap())
            .collect()
    }

    #[test]
    fn examples() {
        let s = anti_derivatives(pr(2), &pv(2, 5120)).unwrap();
        assert_eq!(values(&s), [BigInt::from(1024), BigInt::from(1280)]);
        assert_eq!(s.members[0].to_string(), "1*2^(5*2^1)");
        assert_eq!(s.members[1].to_string(), "5*2^(1*2^3)");
        assert_eq!(s.c_values, [0, 1]);

        assert_eq!(count_anti(pr(2), &pv(2, 2)).unwrap(), 0);
        let s = anti_derivatives(pr(2), &pv(2, 3)).unwrap();
        assert_eq!(values(&s), [BigInt::from(6)]);
    }

    #[test]
    fn counts() {
        assert_eq!(count_anti(pr(2), &pv(2, 12)).unwrap(), 2);
        assert_eq!(count_anti(pr(2), &pv(2, 448)).unwrap(), 1);
    }

    #[test]
    fn primitives() {
        assert_eq!(
            primitive_anti(pr(2), &pv(2, 5120))
                .unwrap()
                .materialize()
                .unwrap(),
            BigInt::from(1024)
        );
        let x = primitive_anti(pr(2), &pv(2, 12)).unwrap();
        assert_eq!((x.materialize().unwrap(), x.k()), (BigInt::from(8), 0));
        assert_eq!(
            primitive_anti(pr(2), &pv(2, 448))
                .unwrap()
                .materialize()
                .unwrap(),
            BigInt::from(128)
        );
        assert!(matches!(
            primitive_anti(pr(2), &pv(2, 2)),
            Err(Error::EmptySet(_))
        ));
    }

    #[test]
    fn zero_is_infinite() {
        assert_eq!(
            anti_derivatives(pr(3), &PValue::Zero).unwrap_err(),
            Error::InfiniteSet(ZERO_PREIMAGE)
        );
        assert!(count_anti(pr(3), &PValue::Zero).is_err());
    }

    #[test]
    fn negative_targets_reverse_order() {
        let s = anti_derivatives(pr(2), &pv(2, -5120)).unwrap();
        assert_eq!(values(&s), [BigInt::from(-1024), BigInt::from(-1280)]);
    }

    #[test]
    fn no_anti_family() {
        for p in [2u64, 3, 5, 7] {
            for a0 in (1i64..200).filter(|a| a.unsigned_abs() % p != 0).take(50) {
                for sign in [1, -1] {
                    let y = sign * a0 * (p as i64).pow(p as u32 - 1);
                    assert_eq!(count_anti(pr(p), &pv(p, y)).unwrap(), 0, "p={p} y={y}");
                }
            }
        }
    }
}

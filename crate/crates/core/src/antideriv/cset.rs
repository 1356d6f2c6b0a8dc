//! The correspondence sets `C(x_0)` and `C_Q(x_0)` attached to a primitive
//! anti-partial derivative `x_0 = a_0·p^(b_0·p^{k_0})`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::{anti_derivatives, exponent_pairs, nonzero_target, p_pow_u64};
use crate::error::{Error, Result};
use crate::padic::{dp_standard, split_valuation, PValue, StandardForm};
use crate::prime::Prime;

/// `C_Q(x_0)`: parameters of the rational anti-partial derivatives.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalCSet {
    pub c_values: Vec<u64>,
}

impl RationalCSet {
    pub fn len(&self) -> usize {
        self.c_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c_values.is_empty()
    }
}

/// All `c ∈ [0, b_0)` with `p^{p^{k_0}·c} ∥ (b_0 − c)`, each with the
/// quotient `b = (b_0 − c)/p^{p^{k_0}·c}`.
///
/// For `c ≥ 1` the exact power forces `p^{k_0}·c ≤ log_p(b_0)`, so only a
/// logarithmic number of candidates is inspected.
pub(crate) fn exact_power_candidates(p: Prime, b0: &BigUint, k0: u64) -> Vec<(u64, BigUint)> {
    let mut out = vec![(0, b0.clone())];
    let Some(step) = p_pow_u64(p, k0) else {
        return out;
    };
    for c in 1u64.. {
        let Some(e) = step.checked_mul(c) else { break };
        if e.saturating_mul(p.bits_floor()) > b0.bits() {
            break;
        }
        let cb = BigUint::from(c);
        if &cb >= b0 {
            break;
        }
        let diff = b0 - cb;
        let (v, b) = split_valuation(p, &diff);
        if v == e {
            out.push((c, b));
        }
    }
    out
}

fn ensure_primitive(x0: &StandardForm) -> Result<()> {
    let y = PValue::NonZero(dp_standard(x0)?);
    let set = anti_derivatives(x0.prime(), &y)?;
    match set.primitive() {
        Some(first) if first.k() == x0.k() => Ok(()),
        _ => Err(Error::NotPrimitive(x0.to_string())),
    }
}

fn divides(b: &BigUint, n: &BigInt) -> bool {
    n.magnitude().is_multiple_of(b)
}

/// `C(x_0)`; rejects a non-primitive `x_0`.
pub fn c_set(x0: &StandardForm) -> Result<Vec<u64>> {
    ensure_primitive(x0)?;
    let a0b0 = x0.a() * BigInt::from(x0.b().clone());
    Ok(exact_power_candidates(x0.prime(), x0.b(), x0.k())
        .into_iter()
        .filter(|(_, b)| divides(b, &a0b0))
        .map(|(c, _)| c)
        .collect())
}

/// `C_Q(x_0)`: as [`c_set`] without requiring `b | a_0·b_0`.
pub fn c_set_rational(x0: &StandardForm) -> Result<RationalCSet> {
    ensure_primitive(x0)?;
    Ok(RationalCSet {
        c_values: exact_power_candidates(x0.prime(), x0.b(), x0.k())
            .into_iter()
            .map(|(c, _)| c)
            .collect(),
    })
}

fn k_for(p: Prime, k0: u64, c: u64) -> Result<u64> {
    p_pow_u64(p, k0)
        .and_then(|s| s.checked_mul(c))
        .and_then(|v| v.checked_add(k0))
        .ok_or_else(|| Error::TooLarge {
            what: format!("k = {p}^{k0}·{c} + {k0}"),
            bits: 65,
            limit: 64,
        })
}

fn exact_quotient(x0: &StandardForm, c: u64) -> Result<(BigUint, u64)> {
    let p = x0.prime();
    let not_in = || Error::NotInCSet {
        c: c.to_string(),
        x0: x0.to_string(),
    };
    let cb = BigUint::from(c);
    if &cb >= x0.b() {
        return Err(not_in());
    }
    let k = if c == 0 { x0.k() } else { k_for(p, x0.k(), c)? };
    let e = k - x0.k();
    let (v, b) = split_valuation(p, &(x0.b() - cb));
    if v != e {
        return Err(not_in());
    }
    Ok((b, k))
}

/// `(b, k)` of the rational anti-partial derivative for `c ∈ C_Q(x_0)`:
/// `k = p^{k_0}·c + k_0`, `b = (b_0 − c)/p^{p^{k_0}·c}`.
pub fn rational_exponent_form(x0: &StandardForm, c: u64) -> Result<(BigUint, u64)> {
    exact_quotient(x0, c)
}

/// The anti-partial derivative attached to `c ∈ C(x_0)`.
pub fn expand_c(x0: &StandardForm, c: u64) -> Result<StandardForm> {
    let (b, k) = exact_quotient(x0, c)?;
    let a0b0 = x0.a() * BigInt::from(x0.b().clone());
    let (a, r) = a0b0.div_rem(&BigInt::from(b.clone()));
    if !r.is_zero() {
        return Err(Error::NotInCSet {
            c: c.to_string(),
            x0: x0.to_string(),
        });
    }
    StandardForm::new(x0.prime(), a, b, k)
}

/// Number of rational anti-partial derivatives of `y`, via `C_Q` of the
/// rational primitive (smallest admissible `k`).
pub fn count_anti_rational(p: Prime, y: &PValue) -> Result<usize> {
    let target = nonzero_target(y)?;
    let pairs = exponent_pairs(p, target.exponent())?;
    let Some((k0, b0)) = pairs.into_iter().next() else {
        return Ok(0);
    };
    Ok(exact_power_candidates(p, &b0, k0).len())
}

/// Direct count of admissible `(k, b)` pairs; an independent route to
/// [`count_anti_rational`].
pub fn count_rational_pairs(p: Prime, y: &PValue) -> Result<usize> {
    let target = nonzero_target(y)?;
    Ok(exponent_pairs(p, target.exponent())?.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::antideriv::count_anti;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn sf(p: u64, a: i64, b: u64, k: u64) -> StandardForm {
        StandardForm::new(pr(p), BigInt::from(a), BigUint::from(b), k).unwrap()
    }

    #[test]
    fn c_set_examples() {
        assert_eq!(c_set(&sf(2, 1, 3, 0)).unwrap(), [0, 1]);
        assert_eq!(c_set(&sf(2, 1, 5, 0)).unwrap(), [0]);
        assert_eq!(c_set(&sf(2, 1, 7, 0)).unwrap(), [0]);
        assert_eq!(c_set(&sf(2, 1, 5, 1)).unwrap(), [0, 1]);
    }

    #[test]
    fn c_set_rational_examples() {
        assert_eq!(c_set_rational(&sf(2, 1, 7, 0)).unwrap().c_values, [0, 1]);
        assert_eq!(c_set_rational(&sf(2, 1, 3, 0)).unwrap().c_values, [0, 1]);
        for p in [2u64, 3, 5] {
            assert_eq!(c_set_rational(&sf(p, 7, 1, 0)).unwrap().c_values, [0]);
        }
        // (7/3)·2^6 is a rational anti-partial derivative of 7·2^6
        let (b, k) = rational_exponent_form(&sf(2, 1, 7, 0), 1).unwrap();
        assert_eq!((b, k), (BigUint::from(3u32), 1));
    }

    #[test]
    fn expand_examples() {
        assert_eq!(expand_c(&sf(2, 1, 3, 0), 0).unwrap(), sf(2, 1, 3, 0));
        let x = expand_c(&sf(2, 1, 3, 0), 1).unwrap();
        assert_eq!(x, sf(2, 3, 1, 1));
        assert_eq!(x.materialize().unwrap(), BigInt::from(12));
        let x = expand_c(&sf(2, 1, 5, 1), 1).unwrap();
        assert_eq!(x, sf(2, 5, 1, 3));
        assert_eq!(x.materialize().unwrap(), BigInt::from(1280));
    }

    #[test]
    fn expand_rejects_outside_c() {
        assert!(matches!(
            expand_c(&sf(2, 1, 7, 0), 1),
            Err(Error::NotInCSet { .. })
        ));
        assert!(matches!(
            expand_c(&sf(2, 1, 5, 0), 2),
            Err(Error::NotInCSet { .. })
        ));
        assert!(matches!(
            expand_c(&sf(2, 1, 3, 0), 3),
            Err(Error::NotInCSet { .. })
        ));
    }

    #[test]
    fn non_primitive_rejected() {
        // 12 = 3·2^(1·2^1) shares its image with the primitive 8
        assert!(matches!(
            c_set(&sf(2, 3, 1, 1)),
            Err(Error::NotPrimitive(_))
        ));
        assert!(matches!(
            c_set_rational(&sf(2, 3, 1, 1)),
            Err(Error::NotPrimitive(_))
        ));
    }

    #[test]
    fn rational_count_two_routes() {
        for p in [2u64, 3, 5] {
            for y in 1i64..=3000 {
                let y = PValue::from_int(pr(p), &BigInt::from(y));
                let via_c = count_anti_rational(pr(p), &y).unwrap();
                assert_eq!(via_c, count_rational_pairs(pr(p), &y).unwrap());
                assert!(via_c >= count_anti(pr(p), &y).unwrap());
            }
        }
    }
}

use num_bigint::BigUint;
use serde::Serialize;

use super::{inc_profile, ord_step};
use crate::error::{Error, Result};
use crate::limits;
use crate::padic::{PSplit, PValue};
use crate::prime::Prime;

/// Long-run behaviour of the `D_p`-orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitClass {
    /// The orbit reaches 0.
    Zero,
    /// The orbit lands on `a·p^p`, which `D_p` fixes. `value` is `None`
    /// when the landed coefficient exceeds the size guard.
    FixedPoint {
        value: Option<PSplit>,
    },
    DivergesPositive,
    DivergesNegative,
}

impl OrbitClass {
    pub fn name(&self) -> &'static str {
        match self {
            OrbitClass::Zero => "zero",
            OrbitClass::FixedPoint { .. } => "fixed-point",
            OrbitClass::DivergesPositive => "diverges-positive",
            OrbitClass::DivergesNegative => "diverges-negative",
        }
    }

    /// The landed fixed point, failing if it was too large to track.
    pub fn fixed_point_value(&self) -> Result<Option<&PSplit>> {
        match self {
            OrbitClass::FixedPoint { value: Some(v) } => Ok(Some(v)),
            OrbitClass::FixedPoint { value: None } => Err(Error::TooLarge {
                what: "fixed-point coefficient".into(),
                bits: limits::max_bits() + 1,
                limit: limits::max_bits(),
            }),
            _ => Ok(None),
        }
    }
}

/// Where the orbit enters its periodic part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleEntry {
    /// Number of `D_p` applications from `x` to the first periodic term.
    pub steps: u64,
    /// Valuation `b·p^k` of that term.
    #[serde(serialize_with = "crate::render::ser_nat")]
    pub exponent: BigUint,
    pub period: u64,
}

/// `None` when the orbit terminates (x = 0 or `ord_p(x) < p`).
pub fn cycle_entry(p: Prime, x: &PValue) -> Option<CycleEntry> {
    let split = x.as_split()?;
    if split.exponent() < &p.big() {
        return None;
    }
    let profile = inc_profile(p, split.exponent()).expect("ℓ ≥ p");
    let steps = profile.pre_period_len();
    let mut exponent = split.exponent().clone();
    for _ in 0..steps {
        exponent = ord_step(p, &exponent).expect("exponent stays ≥ 1 before the cycle");
    }
    Some(CycleEntry {
        steps,
        exponent,
        period: profile.period,
    })
}

/// Eventual period of the valuation sequence; at most `p`.
pub fn period(p: Prime, x: &PValue) -> u64 {
    cycle_entry(p, x).map_or(1, |c| c.period)
}

pub fn classify(p: Prime, x: &PValue) -> OrbitClass {
    let Some(entry) = cycle_entry(p, x) else {
        return OrbitClass::Zero;
    };
    let split = x.as_split().expect("nonzero");
    if entry.exponent == p.big() {
        return OrbitClass::FixedPoint {
            value: landed_value(split, entry.steps),
        };
    }
    if split.is_negative() {
        OrbitClass::DivergesNegative
    } else {
        OrbitClass::DivergesPositive
    }
}

/// Iterates the symbolic `D_p` to recover the landed coefficient.
fn landed_value(start: &PSplit, steps: u64) -> Option<PSplit> {
    let mut cur = start.clone();
    for _ in 0..steps {
        cur = match cur.dp() {
            PValue::NonZero(s) => s,
            PValue::Zero => unreachable!("orbit with ℓ ≥ p never reaches 0"),
        };
        if cur.unit().bits() > limits::max_bits() {
            return None;
        }
    }
    Some(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn pv(p: u64, x: i64) -> PValue {
        PValue::from_int(pr(p), &BigInt::from(x))
    }

    #[test]
    fn period_examples() {
        assert_eq!(period(pr(2), &pv(2, 0)), 1);
        assert_eq!(period(pr(2), &pv(2, 1 << 12)), 2);
        assert_eq!(period(pr(3), &pv(3, 3i64.pow(9))), 2);
        assert_eq!(period(pr(5), &pv(5, 5i64.pow(4) * 2)), 1);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(pr(2), &pv(2, 0)), OrbitClass::Zero);
        assert_eq!(classify(pr(2), &pv(2, 48)), OrbitClass::DivergesPositive);
        assert_eq!(classify(pr(2), &pv(2, -48)), OrbitClass::DivergesNegative);
        let c = classify(pr(2), &pv(2, 12));
        let v = c.fixed_point_value().unwrap().unwrap();
        assert_eq!(v.materialize().unwrap(), BigInt::from(12));
        // D_2(8) = 12
        let c = classify(pr(2), &pv(2, 8));
        assert_eq!(
            c.fixed_point_value()
                .unwrap()
                .unwrap()
                .materialize()
                .unwrap(),
            BigInt::from(12)
        );
        assert_eq!(classify(pr(3), &pv(3, 9 * 5)), OrbitClass::Zero);
    }

    #[test]
    fn cycle_entry_for_48() {
        // 48 = 3·2^4: 4 = 1·2^2 so the cycle starts immediately with exponents (4, 5)
        let e = cycle_entry(pr(2), &pv(2, 48)).unwrap();
        assert_eq!(
            (e.steps, e.exponent.clone(), e.period),
            (0, BigUint::from(4u32), 2)
        );
    }

    #[test]
    fn untracked_fixed_point() {
        assert!(OrbitClass::FixedPoint { value: None }
            .fixed_point_value()
            .is_err());
        assert_eq!(OrbitClass::Zero.fixed_point_value().unwrap(), None);
    }
}

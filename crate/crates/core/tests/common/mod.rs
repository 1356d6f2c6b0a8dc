#![allow(dead_code)]

use num_bigint::BigInt;
use pderiv::{AntiSet, PValue, Prime};

pub fn pr(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

pub fn pv(p: u64, x: i64) -> PValue {
    PValue::from_int(pr(p), &BigInt::from(x))
}

/// Checks the four lockstep orders of an anti-derivative set: k ascending,
/// b descending, and a and value ascending for y > 0 (descending for y < 0).
/// Returns a description of the first violation.
pub fn lockstep_violation(set: &AntiSet) -> Option<String> {
    let negative = set.target.is_negative();
    for (i, w) in set.members.windows(2).enumerate() {
        let (u, v) = (&w[0], &w[1]);
        let uv = u.materialize().ok()?;
        let vv = v.materialize().ok()?;
        let a_ok = if negative {
            u.a() > v.a()
        } else {
            u.a() < v.a()
        };
        let x_ok = if negative { uv > vv } else { uv < vv };
        if !(u.k() < v.k() && u.b() > v.b() && a_ok && x_ok) {
            return Some(format!(
                "y={} members {i},{}: {u} vs {v}",
                set.target,
                i + 1
            ));
        }
    }
    None
}

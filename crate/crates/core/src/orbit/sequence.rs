use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic::{split_valuation, ExtNat, PValue};
use crate::prime::Prime;

/// Valuation of `D_p(a·p^ℓ)` for `p ∤ a`: `ℓ − 1 + ord_p(ℓ)`.
pub fn ord_step(p: Prime, ell: &BigUint) -> Result<BigUint> {
    if ell.is_zero() {
        return Err(Error::invalid("ord_step needs ℓ ≥ 1; the next term is inf"));
    }
    let (j, _) = split_valuation(p, ell);
    Ok(ell - 1u32 + BigUint::from(j))
}

/// The first `truncated_at` valuations along the orbit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrdSequence {
    pub terms: Vec<ExtNat>,
    pub truncated_at: usize,
}

impl OrdSequence {
    /// Consecutive differences up to the first infinite term.
    pub fn increments(&self) -> Vec<i64> {
        self.terms
            .windows(2)
            .map_while(|w| match (&w[0], &w[1]) {
                (ExtNat::Finite(a), ExtNat::Finite(b)) => {
                    (BigInt::from(b.clone()) - BigInt::from(a.clone())).to_i64()
                }
                _ => None,
            })
            .collect()
    }
}

pub fn ord_sequence(p: Prime, start: &PValue, terms: usize) -> OrdSequence {
    let mut out = Vec::with_capacity(terms);
    let mut cur = start.ord();
    for _ in 0..terms {
        let next = match &cur {
            ExtNat::Infinity => ExtNat::Infinity,
            ExtNat::Finite(ell) if ell.is_zero() => ExtNat::Infinity,
            ExtNat::Finite(ell) => ExtNat::Finite(ord_step(p, ell).expect("ℓ ≥ 1")),
        };
        out.push(std::mem::replace(&mut cur, next));
    }
    OrdSequence {
        terms: out,
        truncated_at: terms,
    }
}

//! Brute-force ground truth used to cross-check the analytic routines.

mod spill;
mod sweep;

pub use sweep::{
    dp_literal, sweep_invert, sweep_invert_with, Mismatch, SweepConfig, SweepRecord, SweepReport,
};

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::error::Result;
use crate::limits;
use crate::orbit::{inc_profile, ord_sequence};
use crate::padic::{dp, PSplit, PValue};
use crate::prime::Prime;

/// `[x, D_p(x), …, D_p^steps(x)]` by literal big-integer evaluation.
pub fn simulate_literal(p: Prime, x: &BigInt, steps: usize) -> Result<Vec<BigInt>> {
    let mut out = Vec::with_capacity(steps + 1);
    let mut cur = x.clone();
    for _ in 0..steps {
        limits::check_bits("literal orbit iterate", cur.bits())?;
        let next = dp(p, &cur);
        out.push(std::mem::replace(&mut cur, next));
    }
    limits::check_bits("literal orbit iterate", cur.bits())?;
    out.push(cur);
    Ok(out)
}

/// Outcome of comparing the predicted increments with simulated ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IncVerdict {
    pub pass: bool,
    pub first_divergence: Option<usize>,
    pub predicted: Vec<i64>,
    pub simulated: Vec<i64>,
}

pub fn check_inc_prediction(p: Prime, ell: &BigUint, terms: usize) -> Result<IncVerdict> {
    let predicted = inc_profile(p, ell)?.unroll(terms);
    let start = PValue::NonZero(PSplit::new(p, BigInt::from(1), ell.clone())?);
    let simulated = ord_sequence(p, &start, terms + 1).increments();
    let first_divergence = (0..terms).find(|&i| predicted.get(i) != simulated.get(i));
    Ok(IncVerdict {
        pass: first_divergence.is_none(),
        first_divergence,
        predicted,
        simulated,
    })
}

/// Smallest `L ≥ 1` with `seq[i + L] == seq[i]` throughout.
pub fn measured_period(seq: &[i64]) -> usize {
    (1..=seq.len())
        .find(|&l| seq.iter().zip(&seq[l..]).all(|(a, b)| a == b))
        .unwrap_or(seq.len())
}

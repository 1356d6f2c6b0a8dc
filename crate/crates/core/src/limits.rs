//! Process-wide size guards.
//!
//! Every operation that would materialize an integer, or grow an exponent
//! tower, checks its estimated bit length against [`max_bits`] first and
//! returns [`Error::TooLarge`] instead of allocating.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_MAX_BITS: u64 = 1 << 20;
pub const DEFAULT_FACTOR_BOUND: u64 = 10_000_000;
/// Decimal renderings longer than this are replaced by the symbolic form.
pub const DEFAULT_MAX_DECIMAL_DIGITS: u64 = 1000;

static MAX_BITS: AtomicU64 = AtomicU64::new(DEFAULT_MAX_BITS);
static FACTOR_BOUND: AtomicU64 = AtomicU64::new(DEFAULT_FACTOR_BOUND);
static MAX_DECIMAL_DIGITS: AtomicU64 = AtomicU64::new(DEFAULT_MAX_DECIMAL_DIGITS);

pub fn max_bits() -> u64 {
    MAX_BITS.load(Ordering::Relaxed)
}

pub fn set_max_bits(bits: u64) {
    MAX_BITS.store(bits, Ordering::Relaxed);
}

pub fn factor_bound() -> u64 {
    FACTOR_BOUND.load(Ordering::Relaxed)
}

pub fn set_factor_bound(bound: u64) {
    FACTOR_BOUND.store(bound, Ordering::Relaxed);
}

pub fn max_decimal_digits() -> u64 {
    MAX_DECIMAL_DIGITS.load(Ordering::Relaxed)
}

pub fn set_max_decimal_digits(digits: u64) {
    MAX_DECIMAL_DIGITS.store(digits, Ordering::Relaxed);
}

/// Fails with `TooLarge` when `bits` exceeds the configured bound.
pub fn check_bits(what: &str, bits: u64) -> Result<()> {
    let limit = max_bits();
    if bits > limit {
        Err(Error::TooLarge {
            what: what.to_string(),
            bits,
            limit,
        })
    } else {
        Ok(())
    }
}

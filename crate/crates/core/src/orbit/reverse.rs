use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::limits;
use crate::padic::pow_guarded;
use crate::prime::Prime;

/// Builds `ℓ` such that the increments of the valuation sequence of `p^ℓ`
/// start with `i_0` copies of `−1` and the `j`-th segment carries exactly
/// `i_j` copies of `−1`.
///
/// `k_N = i_N + 1`, `k_j = p^{k_{j+1}} + i_j + 1`, `ℓ = k_0 − 1`. Each tower
/// level is checked against the size guard before the power is formed.
pub fn reverse_construct(p: Prime, runs: &[u64]) -> Result<BigUint> {
    if runs.len() < 2 {
        return Err(Error::invalid("need at least two run lengths i_0, i_1"));
    }
    if let Some(bad) = runs.iter().find(|&&i| i >= p.get()) {
        return Err(Error::invalid(format!(
            "run length {bad} is not in [0, {}]",
            p.get() - 1
        )));
    }
    let (last, rest) = runs.split_last().expect("len ≥ 2");
    let mut k = BigUint::from(last + 1);
    for &i in rest.iter().rev() {
        let bits = u64::try_from(&k)
            .unwrap_or(u64::MAX)
            .saturating_mul(p.bits_floor());
        limits::check_bits("reverse construction tower level", bits)?;
        k = pow_guarded(p, &k)? + BigUint::from(i + 1);
    }
    Ok(k - 1u32)
}

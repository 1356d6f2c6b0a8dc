//! Integers whose image under `D_p` has exactly `n` anti-partial
//! derivatives.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{anti_derivatives, to_u64_or_too_large};
use crate::error::{Error, Result};
use crate::padic::{dp_standard, pow_guarded, split_valuation, PSplit, PValue, StandardForm};
use crate::prime::Prime;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionResult {
    pub p: Prime,
    pub n: u64,
    pub k0: u64,
    /// `c_1, …, c_{n+1}`
    pub c_list: Vec<BigUint>,
    pub b0: BigUint,
    pub a0: BigUint,
    pub x0: StandardForm,
    pub y: PSplit,
    /// Count of anti-partial derivatives of `y`, found by enumeration.
    pub count: usize,
}

/// `k_0 = p + p^2 + … + p^m`. Any `x_0` with this `k_0` is the primitive
/// anti-partial derivative of its image.
pub fn construct_k0(p: Prime, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::invalid(format!("m = {m} must be ≥ 2")));
    }
    let too_large = || Error::TooLarge {
        what: format!("k0 = {p} + … + {p}^{m}"),
        bits: 65,
        limit: 64,
    };
    let mut sum = 0u64;
    let mut term = 1u64;
    for _ in 0..m {
        term = term.checked_mul(p.get()).ok_or_else(too_large)?;
        sum = sum.checked_add(term).ok_or_else(too_large)?;
    }
    Ok(sum)
}

/// True for `k_0 = 0` and for every `p + … + p^m` with `m ≥ 2`.
pub fn is_construction_k0(p: Prime, k0: u64) -> bool {
    if k0 == 0 {
        return true;
    }
    (2..64)
        .map_while(|m| construct_k0(p, m).ok())
        .any(|v| v == k0)
}

/// `c_1 = 0`, `c_i = p^{p^{k_0}·c_{i−1}} + c_{i−1}`, `b_0 = c_{n+1}`.
pub fn construct_b0(p: Prime, n: u64, k0: u64) -> Result<(BigUint, Vec<BigUint>)> {
    if n == 0 {
        return Err(Error::invalid("n must be ≥ 1"));
    }
    let step = pow_guarded(p, &BigUint::from(k0))?;
    let mut c_list = vec![BigUint::zero()];
    for _ in 0..n {
        let prev = c_list.last().expect("nonempty");
        let next = pow_guarded(p, &(&step * prev))? + prev;
        c_list.push(next);
    }
    Ok((c_list.last().expect("nonempty").clone(), c_list))
}

/// `a_0 = ∏_{j=2}^{n} (b_0 − c_j)/p^{p^{k_0}·c_j}`.
pub fn construct_a0(
    p: Prime,
    n: u64,
    k0: u64,
    b0: &BigUint,
    c_list: &[BigUint],
) -> Result<BigUint> {
    if c_list.len() as u64 != n + 1 {
        return Err(Error::invalid(format!(
            "expected {} values c_1..c_(n+1), got {}",
            n + 1,
            c_list.len()
        )));
    }
    let step = pow_guarded(p, &BigUint::from(k0))?;
    let mut a0 = BigUint::one();
    for c in &c_list[1..n as usize] {
        let exact = to_u64_or_too_large(&(&step * c), "p^k0·c")?;
        let (v, a_j) = split_valuation(p, &(b0 - c));
        if v != exact {
            return Err(Error::VerificationFailed(format!(
                "p^{exact} does not exactly divide b0 − {c}"
            )));
        }
        a0 *= a_j;
    }
    Ok(a0)
}

/// Builds `x_0 = a_0·p^(b_0·p^{k_0})` and verifies, by enumeration, that
/// `D_p(x_0)` has exactly `n` anti-partial derivatives with `x_0` primitive.
pub fn construct_with_n_antis(p: Prime, n: u64, k0: u64) -> Result<ConstructionResult> {
    if !is_construction_k0(p, k0) {
        return Err(Error::invalid(format!(
            "k0 = {k0} must be 0 or of the form {p} + {p}^2 + … + {p}^m"
        )));
    }
    let (b0, c_list) = construct_b0(p, n, k0)?;
    let a0 = construct_a0(p, n, k0, &b0, &c_list)?;
    let x0 = StandardForm::new(p, BigInt::from(a0.clone()), b0.clone(), k0)?;
    let y = dp_standard(&x0)?;
    let set = anti_derivatives(p, &PValue::NonZero(y.clone()))?;
    if set.primitive() != Some(&x0) {
        return Err(Error::VerificationFailed(format!(
            "{x0} is not primitive for its image"
        )));
    }
    if set.count() as u64 != n {
        return Err(Error::VerificationFailed(format!(
            "image of {x0} has {} anti-partial derivatives, expected {n}",
            set.count()
        )));
    }
    debug_assert!(!a0.is_multiple_of(&p.big()));
    Ok(ConstructionResult {
        p,
        n,
        k0,
        c_list,
        b0,
        a0,
        x0,
        y,
        count: set.count(),
    })
}

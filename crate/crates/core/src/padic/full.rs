use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::limits;

/// Prime factorization by trial division up to [`limits::factor_bound`].
///
/// Returns `(prime, multiplicity)` pairs in ascending order. Fails when a
/// cofactor is left that could still be composite.
pub fn factor(n: &BigUint) -> Result<Vec<(BigUint, u64)>> {
    let bound = limits::factor_bound();
    let mut n = n.clone();
    let mut out = Vec::new();
    if n.is_zero() {
        return Err(Error::invalid("cannot factor 0"));
    }
    let mut d: u64 = 2;
    while !n.is_one() {
        if let Some(small) = n.to_u64() {
            return factor_u64(small, d, bound, out);
        }
        let dd = BigUint::from(d) * d;
        if dd > n {
            out.push((n.clone(), 1));
            break;
        }
        if d > bound {
            return Err(Error::FactorBoundExceeded(n.to_string()));
        }
        let mut e = 0;
        loop {
            let (q, r) = n.div_rem(&BigUint::from(d));
            if !r.is_zero() {
                break;
            }
            n = q;
            e += 1;
        }
        if e > 0 {
            out.push((BigUint::from(d), e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    Ok(out)
}

fn factor_u64(
    mut n: u64,
    mut d: u64,
    bound: u64,
    mut out: Vec<(BigUint, u64)>,
) -> Result<Vec<(BigUint, u64)>> {
    while n > 1 {
        if d.checked_mul(d).is_none_or(|dd| dd > n) {
            out.push((BigUint::from(n), 1));
            break;
        }
        if d > bound {
            return Err(Error::FactorBoundExceeded(n.to_string()));
        }
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((BigUint::from(d), e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    Ok(out)
}

/// The arithmetic derivative `D`, folded over the factorization with the
/// Leibniz rule: `D(uv) = u·D(v) + v·D(u)`, `D(q^e) = e·q^(e−1)`.
pub fn d_full(x: &BigInt) -> Result<BigInt> {
    if x.magnitude() <= &BigUint::one() {
        return Ok(BigInt::zero());
    }
    let mut value = BigUint::one();
    let mut deriv = BigUint::zero();
    for (q, e) in factor(x.magnitude())? {
        let qe1 = num_traits::pow(q.clone(), (e - 1) as usize);
        let qe = &qe1 * &q;
        let dqe = qe1 * e;
        deriv = deriv * &qe + &value * dqe;
        value *= qe;
    }
    Ok(BigInt::from_biguint(
        if x.sign() == Sign::Minus {
            Sign::Minus
        } else {
            Sign::Plus
        },
        deriv,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::dp;
    use crate::prime::Prime;

    fn d(x: i64) -> BigInt {
        d_full(&BigInt::from(x)).unwrap()
    }

    #[test]
    fn known_values() {
        assert_eq!(d(72), BigInt::from(156));
        assert_eq!(d(1_647_082), BigInt::from(823_543));
        assert_eq!(d(7), BigInt::one());
        assert_eq!(d(0), BigInt::zero());
        assert_eq!(d(1), BigInt::zero());
        assert_eq!(d(-1), BigInt::zero());
        assert_eq!(d(-72), BigInt::from(-156));
    }

    #[test]
    fn equals_sum_of_partials() {
        // smallest prime factor sieve as the independent factorization
        const N: usize = 100_000;
        let mut spf = vec![0u64; N + 1];
        for i in 2..=N {
            if spf[i] == 0 {
                for j in (i..=N).step_by(i) {
                    if spf[j] == 0 {
                        spf[j] = i as u64;
                    }
                }
            }
        }
        for x in (2i64..=N as i64).chain(-3000..=-2) {
            let xb = BigInt::from(x);
            let mut m = x.unsigned_abs();
            let mut sum = BigInt::from(0);
            while m > 1 {
                let q = spf[m as usize];
                sum += dp(Prime::new(q).unwrap(), &xb);
                while m % q == 0 {
                    m /= q;
                }
            }
            assert_eq!(d_full(&xb).unwrap(), sum, "x={x}");
        }
    }

    #[test]
    fn factor_bound_enforced() {
        // product of two primes just above the bound
        let q = BigUint::from(10_000_019u64);
        let n = &q * &q;
        assert!(matches!(factor(&n), Err(Error::FactorBoundExceeded(_))));
        // a large prime below bound^2 is accepted
        let f = factor(&BigUint::from(10_000_019u64)).unwrap();
        assert_eq!(f, vec![(q, 1)]);
    }
}

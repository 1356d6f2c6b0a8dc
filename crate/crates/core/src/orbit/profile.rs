use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::pfloor_nat;
use crate::error::{Error, Result};
use crate::padic::ord_nat;
use crate::prime::Prime;

/// The `k`-segment: `k − 1` followed by `(k − 1) mod p` copies of `−1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SegmentSpec {
    pub k: u64,
    pub head: i64,
    pub run_len: u64,
}

impl SegmentSpec {
    pub fn len(&self) -> u64 {
        self.run_len + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn terms(&self) -> impl Iterator<Item = i64> {
        std::iter::once(self.head).chain(std::iter::repeat_n(-1, self.run_len as usize))
    }
}

pub fn segment(p: Prime, k: u64) -> Result<SegmentSpec> {
    if k == 0 {
        return Err(Error::invalid("segment parameter k must be ≥ 1"));
    }
    let head = i64::try_from(k - 1)
        .map_err(|_| Error::invalid(format!("segment k = {k} out of range")))?;
    Ok(SegmentSpec {
        k,
        head,
        run_len: (k - 1) % p.get(),
    })
}

/// `ℓ_1 = ord_p(⌊ℓ⌋_p)`, `ℓ_i = ord_p(⌊ℓ_{i−1} − 1⌋_p)`, stopping at the
/// first `ℓ_N ∈ [1, p]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LChain {
    pub ell: BigUint,
    pub steps: Vec<u64>,
}

impl LChain {
    pub fn n(&self) -> usize {
        self.steps.len()
    }

    pub fn last(&self) -> u64 {
        *self.steps.last().expect("chain is never empty")
    }
}

fn check_ell(p: Prime, ell: &BigUint) -> Result<()> {
    if ell < &p.big() {
        Err(Error::invalid(format!(
            "ℓ = {ell} < p = {p}: the orbit terminates, no segment structure"
        )))
    } else {
        Ok(())
    }
}

pub fn lchain(p: Prime, ell: &BigUint) -> Result<LChain> {
    check_ell(p, ell)?;
    let first = ord_nat(p, &pfloor_nat(p, ell)).expect("⌊ℓ⌋_p ≥ p > 0");
    let mut steps = vec![first];
    let mut cur = first;
    while cur > p.get() {
        let below = BigUint::from(cur - 1);
        cur = ord_nat(p, &pfloor_nat(p, &below)).expect("⌊ℓ−1⌋_p ≥ p > 0");
        steps.push(cur);
    }
    Ok(LChain {
        ell: ell.clone(),
        steps,
    })
}

/// Predicted shape of the increments of the valuation sequence: a run of
/// `−1`s, then `S_{ℓ_1}, …, S_{ℓ_N}`, then `S_{ℓ_N}` forever.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IncProfile {
    pub prefix_len: u64,
    pub segments: Vec<SegmentSpec>,
    pub period: u64,
}

impl IncProfile {
    /// The repeating segment `S_{ℓ_N}`.
    pub fn tail(&self) -> &SegmentSpec {
        self.segments
            .last()
            .expect("profile has at least one segment")
    }

    /// Number of orbit steps before the periodic part starts.
    pub fn pre_period_len(&self) -> u64 {
        let head: u64 = self.segments[..self.segments.len() - 1]
            .iter()
            .map(SegmentSpec::len)
            .sum();
        self.prefix_len + head
    }

    /// The first `n` increments.
    pub fn unroll(&self, n: usize) -> Vec<i64> {
        let tail = *self.tail();
        std::iter::repeat_n(-1, self.prefix_len as usize)
            .chain(self.segments.iter().flat_map(|s| s.terms()))
            .chain(std::iter::repeat(tail).flat_map(|s| s.terms()))
            .take(n)
            .collect()
    }

    /// `(i_0, i_1, …, i_N)`: the lengths of the `−1` runs.
    pub fn minus_one_runs(&self) -> Vec<u64> {
        std::iter::once(self.prefix_len)
            .chain(self.segments.iter().map(|s| s.run_len))
            .collect()
    }
}

impl fmt::Display for IncProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "prefix={}", self.prefix_len)?;
        for s in &self.segments {
            write!(f, "; S({})[{}]", s.k, s.run_len)?;
        }
        write!(f, "; tail=S({}) period={}", self.tail().k, self.period)
    }
}

pub fn inc_profile(p: Prime, ell: &BigUint) -> Result<IncProfile> {
    let chain = lchain(p, ell)?;
    let prefix_len = (ell % p.big()).to_u64().expect("residue < p");
    let segments = chain
        .steps
        .iter()
        .map(|&k| segment(p, k))
        .collect::<Result<Vec<_>>>()?;
    debug_assert!(!segments.is_empty() && !ell.is_zero());
    Ok(IncProfile {
        prefix_len,
        segments,
        period: chain.last(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn n(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn segment_examples() {
        let s = segment(pr(3), 3).unwrap();
        assert_eq!(s.terms().collect::<Vec<_>>(), [2, -1, -1]);
        let s = segment(pr(2), 3).unwrap();
        assert_eq!(s.terms().collect::<Vec<_>>(), [2]);
        let s = segment(pr(5), 1).unwrap();
        assert_eq!(s.terms().collect::<Vec<_>>(), [0]);
        assert!(segment(pr(2), 0).is_err());
    }

    #[test]
    fn small_segments_sum_to_zero() {
        for p in [2u64, 3, 5, 7] {
            for k in 1..=p {
                let s = segment(pr(p), k).unwrap();
                assert_eq!(s.run_len, k - 1);
                assert_eq!(s.terms().sum::<i64>(), 0);
            }
        }
    }

    #[test]
    fn lchain_examples() {
        assert_eq!(lchain(pr(2), &n(8)).unwrap().steps, [3, 1]);
        assert_eq!(lchain(pr(2), &n(12)).unwrap().steps, [2]);
        assert_eq!(lchain(pr(3), &n(9)).unwrap().steps, [2]);
        assert!(lchain(pr(3), &n(2)).is_err());
    }

    #[test]
    fn lchain_decays_super_logarithmically() {
        for p in [2u64, 3, 5, 7] {
            for ell in p..5000 {
                let c = lchain(pr(p), &n(ell)).unwrap();
                assert!((1..=p).contains(&c.last()));
                assert!(c.steps[..c.n() - 1].iter().all(|&s| s > p));
                for w in c.steps.windows(2) {
                    assert!(
                        (w[1] as f64) < (w[0] as f64).ln() / (p as f64).ln(),
                        "p={p} ell={ell} {w:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn profile_examples() {
        let prof = inc_profile(pr(2), &n(8)).unwrap();
        assert_eq!(prof.prefix_len, 0);
        assert_eq!(
            prof.segments.iter().map(|s| s.k).collect::<Vec<_>>(),
            [3, 1]
        );
        assert_eq!(prof.period, 1);
        assert_eq!(prof.unroll(5), [2, 0, 0, 0, 0]);

        let prof = inc_profile(pr(2), &n(9)).unwrap();
        assert_eq!(prof.prefix_len, 1);
        assert_eq!(
            prof.segments.iter().map(|s| s.k).collect::<Vec<_>>(),
            [3, 1]
        );

        let prof = inc_profile(pr(2), &n(12)).unwrap();
        assert_eq!((prof.prefix_len, prof.period), (0, 2));
        assert_eq!(prof.unroll(6), [1, -1, 1, -1, 1, -1]);
    }

    #[test]
    fn canonical_text() {
        assert_eq!(
            inc_profile(pr(2), &n(8)).unwrap().to_string(),
            "prefix=0; S(3)[0]; S(1)[0]; tail=S(1) period=1"
        );
        assert_eq!(
            inc_profile(pr(3), &n(11)).unwrap().to_string(),
            "prefix=2; S(2)[1]; tail=S(2) period=2"
        );
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(inc_profile(pr(2), &n(12)).unwrap()).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"prefix_len": 0, "segments": [{"k": 2, "head": 1, "run_len": 1}], "period": 2})
        );
    }

    #[test]
    fn pre_period() {
        assert_eq!(inc_profile(pr(2), &n(9)).unwrap().pre_period_len(), 2);
        assert_eq!(inc_profile(pr(2), &n(12)).unwrap().pre_period_len(), 0);
    }
}

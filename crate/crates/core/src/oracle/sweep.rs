use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use super::spill::{Pair, RunWriter};
use crate::antideriv::anti_derivatives;
use crate::error::{Error, Result};
use crate::padic::PValue;
use crate::prime::Prime;

const CHUNK: i64 = 1 << 16;
const BATCH: usize = 1 << 12;
/// Largest `p·Y` a sweep accepts.
pub const MAX_SWEEP_X: u64 = 1_000_000_000;

/// `D_p(x)` straight from the definition on machine integers.
pub fn dp_literal(p: u64, x: i64) -> i64 {
    if x == 0 {
        return 0;
    }
    let p = p as i64;
    let mut m = x;
    let mut v = 0;
    while m % p == 0 {
        m /= p;
        v += 1;
    }
    (x / p) * v
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Above this many x values the pairs are spilled to sorted disk runs.
    pub in_memory_keys: u64,
    /// Keep the full inverse map in the report.
    pub keep_map: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            jobs: None,
            in_memory_keys: 10_000_000,
            keep_map: true,
        }
    }
}

/// One JSON-lines record: every `x` in range with `D_p(x) = y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRecord {
    pub y: i64,
    pub antis: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub y: i64,
    pub brute: Vec<i64>,
    pub analytic: std::result::Result<Vec<i64>, String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub p: Prime,
    pub bound: u64,
    /// `y → sorted x`, for `1 ≤ |y| ≤ bound` (empty when `keep_map` is off).
    pub inverse_map: BTreeMap<i64, Vec<i64>>,
    /// `n →` number of `y ∈ (0, bound]` with exactly `n` anti-partial derivatives.
    pub histogram: BTreeMap<usize, u64>,
    /// Smallest positive `y` realizing each histogram key.
    pub witnesses: BTreeMap<usize, i64>,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Serialize)]
struct HistogramRecord<'a> {
    histogram: Vec<(usize, u64)>,
    witnesses: Vec<(usize, i64)>,
    p: u64,
    range: u64,
    mismatches: &'a [Mismatch],
}

impl SweepReport {
    /// The trailing JSON-lines record.
    pub fn histogram_line(&self) -> String {
        serde_json::to_string(&HistogramRecord {
            histogram: self.histogram.iter().map(|(&n, &c)| (n, c)).collect(),
            witnesses: self.witnesses.iter().map(|(&n, &y)| (n, y)).collect(),
            p: self.p.get(),
            range: self.bound,
            mismatches: &self.mismatches,
        })
        .expect("serializable")
    }
}

fn pairs_in(p: u64, bound: i64, lo: i64, hi: i64) -> Vec<Pair> {
    (lo..=hi)
        .filter_map(|x| {
            let y = dp_literal(p, x);
            (y != 0 && y.abs() <= bound).then_some((y, x))
        })
        .collect()
}

fn generate(p: u64, bound: i64, lo: i64, hi: i64) -> Vec<Pair> {
    let chunks: Vec<(i64, i64)> = (0..)
        .map(|i| lo + i * CHUNK)
        .take_while(|&s| s <= hi)
        .map(|s| (s, (s + CHUNK - 1).min(hi)))
        .collect();
    let mut pairs: Vec<Pair> = chunks
        .par_iter()
        .flat_map_iter(|&(a, b)| pairs_in(p, bound, a, b))
        .collect();
    pairs.par_sort_unstable();
    pairs
}

fn analytic(p: Prime, y: i64) -> std::result::Result<Vec<i64>, String> {
    let set =
        anti_derivatives(p, &PValue::from_int(p, &BigInt::from(y))).map_err(|e| e.to_string())?;
    let mut xs = set
        .members
        .iter()
        .map(|m| {
            m.materialize()
                .map_err(|e| e.to_string())?
                .to_i64()
                .ok_or_else(|| format!("member {m} exceeds i64"))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    xs.sort_unstable();
    Ok(xs)
}

pub fn sweep_invert(p: Prime, bound: u64) -> Result<SweepReport> {
    sweep_invert_with(p, bound, &SweepConfig::default(), |_| Ok(()))
}

/// Inverts `D_p` over all `|x| ≤ p·bound`, which is exhaustive for
/// `|y| ≤ bound`, and checks every `y` against the analytic enumeration.
/// Records are passed to `sink` in ascending `y`; output does not depend on
/// the worker count.
pub fn sweep_invert_with<F>(
    p: Prime,
    bound: u64,
    config: &SweepConfig,
    mut sink: F,
) -> Result<SweepReport>
where
    F: FnMut(&SweepRecord) -> Result<()>,
{
    let x_max = p
        .get()
        .checked_mul(bound)
        .filter(|&v| v <= MAX_SWEEP_X)
        .ok_or_else(|| Error::TooLarge {
            what: format!("sweep over |x| ≤ {p}·{bound}"),
            bits: 64,
            limit: MAX_SWEEP_X.ilog2() as u64,
        })? as i64;
    let pool = match config.jobs {
        Some(n) => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::invalid(e.to_string()))?,
        ),
        None => None,
    };
    let install = |f: &(dyn Fn() -> Vec<Pair> + Sync)| match &pool {
        Some(pool) => pool.install(f),
        None => f(),
    };
    let y_max = bound as i64;
    let pv = p.get();

    let sorted: Box<dyn Iterator<Item = Result<Pair>>> =
        if 2 * (x_max as u64) < config.in_memory_keys {
            let pairs = install(&|| generate(pv, y_max, -x_max, x_max));
            Box::new(pairs.into_iter().map(Ok))
        } else {
            let block = config.in_memory_keys.max(1) as i64;
            let mut runs = RunWriter::new()?;
            let mut lo = -x_max;
            while lo <= x_max {
                let hi = (lo + block - 1).min(x_max);
                runs.push(&install(&|| generate(pv, y_max, lo, hi)))?;
                lo = hi + 1;
            }
            Box::new(runs.merge()?)
        };

    let mut report = SweepReport {
        p,
        bound,
        inverse_map: BTreeMap::new(),
        histogram: BTreeMap::new(),
        witnesses: BTreeMap::new(),
        mismatches: Vec::new(),
    };
    let mut sorted = sorted.peekable();
    let mut batch: Vec<SweepRecord> = Vec::with_capacity(BATCH);
    let ys = (-y_max..=y_max).filter(|&y| y != 0);
    let mut ys = ys.peekable();
    while ys.peek().is_some() {
        batch.clear();
        for y in ys.by_ref().take(BATCH) {
            let mut antis = Vec::new();
            while let Some(Ok((yy, _))) = sorted.peek() {
                if *yy != y {
                    break;
                }
                let (_, x) = sorted.next().expect("peeked")?;
                antis.push(x);
            }
            if let Some(Err(_)) = sorted.peek() {
                sorted.next().expect("peeked")?;
            }
            batch.push(SweepRecord { y, antis });
        }
        let checked: Vec<_> = match &pool {
            Some(pool) => pool.install(|| batch.par_iter().map(|r| analytic(p, r.y)).collect()),
            None => batch.par_iter().map(|r| analytic(p, r.y)).collect(),
        };
        for (rec, analytic) in batch.iter().zip(checked) {
            if analytic.as_ref() != Ok(&rec.antis) {
                report.mismatches.push(Mismatch {
                    y: rec.y,
                    brute: rec.antis.clone(),
                    analytic,
                });
            }
            if rec.y > 0 {
                let n = rec.antis.len();
                *report.histogram.entry(n).or_default() += 1;
                report.witnesses.entry(n).or_insert(rec.y);
            }
            sink(rec)?;
            if config.keep_map {
                report.inverse_map.insert(rec.y, rec.antis.clone());
            }
        }
    }
    Ok(report)
}

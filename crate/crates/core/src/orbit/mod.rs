//! The `D_p`-orbit of an integer, tracked through exponents only.
//!
//! If `x = a·p^ℓ` with `p ∤ a`, then `D_p(x) = aℓ·p^(ℓ−1)`, so the valuation
//! of the next iterate is `ℓ − 1 + ord_p(ℓ)` regardless of `a`. Every
//! routine here runs that recursion on (possibly huge) exponents and never
//! materializes orbit values.

mod classify;
mod profile;
mod reverse;
mod sequence;

pub use classify::{classify, cycle_entry, period, CycleEntry, OrbitClass};
pub use profile::{inc_profile, lchain, segment, IncProfile, LChain, SegmentSpec};
pub use reverse::reverse_construct;
pub use sequence::{ord_sequence, ord_step, OrdSequence};

use num_bigint::BigUint;
use num_integer::Integer;

use crate::prime::Prime;

/// `⌊n⌋_p` on naturals.
pub(crate) fn pfloor_nat(p: Prime, n: &BigUint) -> BigUint {
    n - n.mod_floor(&p.big())
}
